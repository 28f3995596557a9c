#pragma once

// Score variances under each assessor and the variance-scaled Pareto
// exchange of net gains. Each party receives the other's net gain, signed
// by the receiver's prevision for it and scaled by the two assessed
// standard deviations, so both sides value what they give at zero and what
// they receive at non-negative prevision.

#include <cmath>

#include "scorex/core.hpp"
#include "scorex/gains.hpp"
#include "scorex/scoring.hpp"

namespace scorex {

// Standard deviations below this floor suppress the corresponding award
// term: a zero-variance net gain is identically zero, so the scaled term
// is 0/0 and its value is 0.
inline constexpr double kDegenerateSdFloor = 1e-12;

// Variance, under the assessor's weights, of the scored pmv's total log
// score. Only the outcome-dependent logit term varies, so this is the
// weighted variance of the scored logits (computed in shifted form, which
// keeps exactly-constant logits at exactly zero variance).
inline double score_variance_under(const Pmv& assessor, const Pmv& scored,
                                   ScorePart part = ScorePart::Total) {
  detail::require_same_realm(assessor, scored);
  double mean = 0.0;
  for (std::size_t i = 0; i < assessor.size(); ++i)
    mean += assessor.weights()[i] *
            detail::outcome_term(scored.weights()[i], part);
  double var = 0.0;
  for (std::size_t i = 0; i < assessor.size(); ++i) {
    const double d =
        detail::outcome_term(scored.weights()[i], part) - mean;
    var += assessor.weights()[i] * d * d;
  }
  return var < 0.0 ? 0.0 : var;
}

// V_a[S(X,b)] for all four assessor/scored combinations, with square roots.
struct VarianceTable {
  double v_pp = 0.0, v_pq = 0.0, v_qq = 0.0, v_qp = 0.0;
  double sd_pp = 0.0, sd_pq = 0.0, sd_qq = 0.0, sd_qp = 0.0;
};

inline VarianceTable variance_table(const Pmv& p, const Pmv& q,
                                    ScorePart part = ScorePart::Total) {
  VarianceTable t;
  t.v_pp = score_variance_under(p, p, part);
  t.v_pq = score_variance_under(p, q, part);
  t.v_qq = score_variance_under(q, q, part);
  t.v_qp = score_variance_under(q, p, part);
  t.sd_pp = std::sqrt(t.v_pp);
  t.sd_pq = std::sqrt(t.v_pq);
  t.sd_qq = std::sqrt(t.v_qq);
  t.sd_qp = std::sqrt(t.v_qp);
  return t;
}

struct ExchangeSigns {
  int for_p = 1;  // sign p applies to the NG(X,q) claim p receives
  int for_q = 1;  // sign q applies to the NG(X,p) claim q receives
};

// Each receiver buys or sells the other's net gain according to the sign
// of the receiver's prevision for it; a prevision of exactly zero is an
// indifference point resolved to +1 for reproducibility.
inline ExchangeSigns exchange_signs(const Pmv& p, const Pmv& q,
                                    ScorePart part = ScorePart::Total) {
  ExchangeSigns s;
  s.for_p = expected_net_gain_cross(p, q, part) >= 0.0 ? 1 : -1;
  s.for_q = expected_net_gain_cross(q, p, part) >= 0.0 ? 1 : -1;
  return s;
}

struct ExchangeAward {
  double award_to_p = 0.0;  // signed NG(x,q) scaled by 1/sd_pq + 1/sd_qq
  double award_to_q = 0.0;  // signed NG(x,p) scaled by 1/sd_pp + 1/sd_qp
  int sign_for_p = 1;
  int sign_for_q = 1;
  bool degenerate_p = false;  // award_to_p had a zero-variance term dropped
  bool degenerate_q = false;
};

inline ExchangeAward pareto_awards(const Pmv& p, const Pmv& q, OutcomeIndex o,
                                   ScorePart part = ScorePart::Total) {
  detail::require_same_realm(p, q);
  detail::require_outcome(p, o);
  const VarianceTable vt = variance_table(p, q, part);
  const ExchangeSigns signs = exchange_signs(p, q, part);

  ExchangeAward award;
  award.sign_for_p = signs.for_p;
  award.sign_for_q = signs.for_q;

  const double ng_star_p = signs.for_q * net_gain(p, o, part);
  const double ng_star_q = signs.for_p * net_gain(q, o, part);

  const auto scaled = [](double value, double sd, bool& degenerate) {
    if (sd < kDegenerateSdFloor) {
      degenerate = true;
      return 0.0;
    }
    return value / sd;
  };
  award.award_to_q = scaled(ng_star_p, vt.sd_pp, award.degenerate_q) +
                     scaled(ng_star_p, vt.sd_qp, award.degenerate_q);
  award.award_to_p = scaled(ng_star_q, vt.sd_pq, award.degenerate_p) +
                     scaled(ng_star_q, vt.sd_qq, award.degenerate_p);
  return award;
}

}  // namespace scorex
