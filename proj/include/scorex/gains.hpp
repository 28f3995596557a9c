#pragma once

// Realized and expected net gains and comparative gains. A net gain is the
// realized score minus the owner's prevision for it; a comparative gain is
// the difference of the two forecasters' realized scores. Every operation
// accepts a ScorePart so the two proper-score components stay available.

#include <cmath>
#include <cstdlib>

#include "scorex/core.hpp"
#include "scorex/information.hpp"
#include "scorex/scoring.hpp"

namespace scorex {

namespace detail {

// The outcome-dependent term of the chosen score component: the rest of the
// score is a constant the owner's prevision absorbs.
inline double outcome_term(double w, ScorePart part) {
  switch (part) {
    case ScorePart::Log:
      return std::log(w);
    case ScorePart::Complementary:
      return -std::log1p(-w);
    default:
      return std::log(w) - std::log1p(-w);  // the logit
  }
}

}  // namespace detail

inline double net_gain(const Pmv& p, OutcomeIndex o,
                       ScorePart part = ScorePart::Total) {
  return score_part(total_log_score(p, o), part) - score_prevision_own(p, part);
}

inline double comparative_gain(const Pmv& p, const Pmv& q, OutcomeIndex o,
                               ScorePart part = ScorePart::Total) {
  detail::require_same_realm(p, q);
  return score_part(total_log_score(p, o), part) -
         score_part(total_log_score(q, o), part);
}

// P_assessor[NG(X, owner)] = sum (a - w) * outcome_term(w). Either sign can
// occur; the assessor's own case is identically zero.
inline double expected_net_gain_cross(const Pmv& assessor, const Pmv& owner,
                                      ScorePart part = ScorePart::Total) {
  detail::require_same_realm(assessor, owner);
  double g = 0.0;
  for (std::size_t i = 0; i < assessor.size(); ++i)
    g += (assessor.weights()[i] - owner.weights()[i]) *
         detail::outcome_term(owner.weights()[i], part);
  return g;
}

// P_a[CG(X, a, other)]: the assessor's expected comparative gain over the
// other, always strictly positive for distinct pmvs.
inline double expected_comparative_gain(const Pmv& assessor_own,
                                        const Pmv& other,
                                        ScorePart part = ScorePart::Total) {
  detail::require_same_realm(assessor_own, other);
  if (part == ScorePart::Total)
    return expected_comparative_gain(assessor_own, other, ScorePart::Log) +
           expected_comparative_gain(assessor_own, other,
                                     ScorePart::Complementary);
  return score_prevision_own(assessor_own, part) -
         score_prevision_cross(assessor_own, other, part);
}

struct GainSummary {
  double ng_p = 0.0;    // realized net gain of p
  double ng_q = 0.0;    // realized net gain of q
  double cg_pq = 0.0;   // realized comparative gain of p over q
  double exp_ng_p_by_q = 0.0;  // P_q[NG(X,p)]
  double exp_ng_q_by_p = 0.0;  // P_p[NG(X,q)]
  double exp_cg_p = 0.0;       // P_p[CG(X,p,q)]
  double exp_cg_q = 0.0;       // P_q[CG(X,q,p)]
};

inline GainSummary gain_summary(const Pmv& p, const Pmv& q, OutcomeIndex o) {
  detail::require_same_realm(p, q);
  GainSummary s;
  s.ng_p = net_gain(p, o);
  s.ng_q = net_gain(q, o);
  s.cg_pq = comparative_gain(p, q, o);
  s.exp_ng_p_by_q = expected_net_gain_cross(q, p);
  s.exp_ng_q_by_p = expected_net_gain_cross(p, q);
  s.exp_cg_p = expected_comparative_gain(p, q);
  s.exp_cg_q = expected_comparative_gain(q, p);

  // The comparative-gain previsions must sum to the total symmetric
  // divergence and the cross net-gain previsions to its negative.
  const double total = symmetric_divergences(p, q).total;
  const double scale =
      1.0 + total + std::abs(s.exp_cg_p) + std::abs(s.exp_cg_q);
  if (std::abs(s.exp_cg_p + s.exp_cg_q - total) > 1e-9 * scale ||
      std::abs(s.exp_ng_p_by_q + s.exp_ng_q_by_p + total) > 1e-9 * scale)
    throw DomainViolation("gain summary failed its divergence identities");
  return s;
}

}  // namespace scorex
