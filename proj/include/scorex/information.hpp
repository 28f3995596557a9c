#pragma once

// Entropies, extropies, cross measures, the four fundamental score
// previsions, the directed divergence generators, the four-dimensional
// divergence complex with its prevision isomorphism, and numerical
// diagnostics for which generators are Bregman divergences.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "scorex/core.hpp"
#include "scorex/scoring.hpp"

namespace scorex {

// ---------------------------------------------------------------------------
// Entropy family

inline double entropy(const Pmv& p) {
  double h = 0.0;
  for (double w : p.weights()) h -= w * std::log(w);
  return h;
}

inline double extropy(const Pmv& p) {
  double j = 0.0;
  for (double w : p.weights()) j -= (1.0 - w) * std::log1p(-w);
  return j;
}

// Cross measures are not symmetric in their arguments.
inline double cross_entropy(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double ch = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    ch -= p.weights()[i] * std::log(q.weights()[i]);
  return ch;
}

inline double cross_extropy(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double cj = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    cj -= (1.0 - p.weights()[i]) * std::log1p(-q.weights()[i]);
  return cj;
}

// ---------------------------------------------------------------------------
// Score previsions

// A pmv proponent's prevision for their own total log score (or one of its
// components): -[H + J], -H, or -J.
inline double score_prevision_own(const Pmv& p,
                                  ScorePart part = ScorePart::Total) {
  switch (part) {
    case ScorePart::Log:
      return -entropy(p);
    case ScorePart::Complementary:
      return -extropy(p);
    default:
      return -(entropy(p) + extropy(p));
  }
}

// The assessor's prevision for the score the scored pmv will receive:
// -[CH + CJ] and its component pieces.
inline double score_prevision_cross(const Pmv& assessor, const Pmv& scored,
                                    ScorePart part = ScorePart::Total) {
  switch (part) {
    case ScorePart::Log:
      return -cross_entropy(assessor, scored);
    case ScorePart::Complementary:
      return -cross_extropy(assessor, scored);
    default:
      return -(cross_entropy(assessor, scored) +
               cross_extropy(assessor, scored));
  }
}

// The 2x2 table of each forecaster's prevision for each forecaster's score.
// Propriety makes p_own > p_other and q_own > q_other whenever p != q.
struct FourPrevisions {
  double p_own = 0.0;    // P_p of p's score
  double p_other = 0.0;  // P_p of q's score
  double q_own = 0.0;    // P_q of q's score
  double q_other = 0.0;  // P_q of p's score
};

inline FourPrevisions four_fundamental_previsions(
    const Pmv& p, const Pmv& q, ScorePart part = ScorePart::Total) {
  detail::require_same_realm(p, q);
  FourPrevisions fp;
  fp.p_own = score_prevision_own(p, part);
  fp.p_other = score_prevision_cross(p, q, part);
  fp.q_own = score_prevision_own(q, part);
  fp.q_other = score_prevision_cross(q, p, part);
  return fp;
}

// ---------------------------------------------------------------------------
// Directed divergences

inline double kl_directed(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d += p.weights()[i] * std::log(p.weights()[i] / q.weights()[i]);
  return d;
}

inline double kl_directed_complement(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d += (1.0 - p.weights()[i]) *
         (std::log1p(-p.weights()[i]) - std::log1p(-q.weights()[i]));
  return d;
}

inline double delta_directed(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d += (p.weights()[i] - q.weights()[i]) * std::log(p.weights()[i]);
  return d;
}

inline double delta_directed_complement(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    d += (q.weights()[i] - p.weights()[i]) * std::log1p(-p.weights()[i]);
  return d;
}

struct SymmetricDivergences {
  double direct = 0.0;         // D(p||q) + D(q||p)
  double complementary = 0.0;  // same for the complementary pieces
  double total = 0.0;          // sum of the two
};

inline SymmetricDivergences symmetric_divergences(const Pmv& p, const Pmv& q) {
  SymmetricDivergences s;
  s.direct = kl_directed(p, q) + kl_directed(q, p);
  s.complementary = kl_directed_complement(p, q) + kl_directed_complement(q, p);
  s.total = s.direct + s.complementary;
  return s;
}

// The three interchangeable generators of the symmetric divergence.
enum class DivergenceGenerator { KlD, Delta, CrossH };

// G(p||q) + G(q||p) - G(p||p) - G(q||q); identical for all three generators
// once the self-divergence location is subtracted out. The complementary
// flag swaps in the extropic analogues.
inline double generalized_symmetric(DivergenceGenerator generator,
                                    const Pmv& p, const Pmv& q,
                                    bool complementary = false) {
  detail::require_same_realm(p, q);
  const auto g = [&](const Pmv& a, const Pmv& b) {
    switch (generator) {
      case DivergenceGenerator::KlD:
        return complementary ? kl_directed_complement(a, b) : kl_directed(a, b);
      case DivergenceGenerator::Delta:
        return complementary ? delta_directed_complement(a, b)
                             : delta_directed(a, b);
      default:
        return complementary ? cross_extropy(a, b) : cross_entropy(a, b);
    }
  };
  return g(p, q) + g(q, p) - g(p, p) - g(q, q);
}

// ---------------------------------------------------------------------------
// The divergence complex and its prevision isomorphism

// The 4-vector of paired generators. total_symmetric >= 0 with equality
// iff p = q; d_generator > 0 whenever p != q.
struct KullbackComplex {
  double total_symmetric = 0.0;  // symmetric divergence + its complement
  double d_generator = 0.0;      // D(p||q) + Dc(p||q)
  double delta_generator = 0.0;  // Delta(p||q) + Deltac(p||q)
  double cross_generator = 0.0;  // CH(p||q)+CH(q||p) + CJ(p||q)+CJ(q||p)
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

// Exact integer/half-integer constants; the two matrices are inverse to one
// another, which tests verify as an exact product.
inline constexpr Matrix4 kComplexFromPrevisionsMatrix = {{
    {{1.0, -1.0, 1.0, -1.0}},
    {{1.0, -1.0, 0.0, 0.0}},
    {{1.0, 0.0, 0.0, -1.0}},
    {{0.0, -1.0, 0.0, -1.0}},
}};

inline constexpr Matrix4 kPrevisionsFromComplexMatrix = {{
    {{0.0, 0.5, 0.5, -0.5}},
    {{0.0, -0.5, 0.5, -0.5}},
    {{1.0, -0.5, -0.5, -0.5}},
    {{0.0, 0.5, -0.5, -0.5}},
}};

namespace detail {

inline std::array<double, 4> apply4(const Matrix4& m,
                                    const std::array<double, 4>& v) noexcept {
  std::array<double, 4> out{};
  for (std::size_t r = 0; r < 4; ++r)
    out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
  return out;
}

}  // namespace detail

inline KullbackComplex complex_from_previsions(const FourPrevisions& fp) {
  const auto v = detail::apply4(kComplexFromPrevisionsMatrix,
                                {fp.p_own, fp.p_other, fp.q_own, fp.q_other});
  return KullbackComplex{v[0], v[1], v[2], v[3]};
}

inline FourPrevisions previsions_from_complex(const KullbackComplex& kc) {
  const auto v = detail::apply4(
      kPrevisionsFromComplexMatrix,
      {kc.total_symmetric, kc.d_generator, kc.delta_generator,
       kc.cross_generator});
  return FourPrevisions{v[0], v[1], v[2], v[3]};
}

inline KullbackComplex kullback_complex(const Pmv& p, const Pmv& q,
                                        ScorePart part = ScorePart::Total) {
  return complex_from_previsions(four_fundamental_previsions(p, q, part));
}

// The complex computed separately on the log-score and complementary-log
// components; the two parts sum to the total complex by linearity.
struct ComponentComplexes {
  KullbackComplex log_part;
  KullbackComplex complementary_part;
};

inline ComponentComplexes kullback_complex_components(const Pmv& p,
                                                      const Pmv& q) {
  return ComponentComplexes{kullback_complex(p, q, ScorePart::Log),
                            kullback_complex(p, q, ScorePart::Complementary)};
}

// ---------------------------------------------------------------------------
// Bregman diagnostics

// Residual of the separable Bregman identity for the KL generator with
// phi(t) = t log t. Zero (to rounding) for every pair of valid pmvs, since
// the (p - q) correction sums away over the simplex.
inline double bregman_residual_kl(const Pmv& p, const Pmv& q) {
  detail::require_same_realm(p, q);
  double bregman = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.weights()[i];
    const double qi = q.weights()[i];
    bregman += pi * std::log(pi) - qi * std::log(qi) -
               (pi - qi) * (std::log(qi) + 1.0);
  }
  return bregman - kl_directed(p, q);
}

enum class BregmanCandidate { KlD, Delta, CrossH };
enum class BregmanVerdict { BregmanConsistent, ConstantGap, DivergentGap };

// Scalar residuals of the defining Bregman condition with the trial
// function phi(t) = t log t, evaluated at p = q + delta for each delta.
// Exhibits the limiting obstruction for the Delta and cross-entropy
// generators: the Delta gap stabilizes at log(q) instead of 0, the
// cross-entropy gap diverges like 1/delta. A single trial function cannot
// prove non-existence; the verdict records what the residuals did.
struct BregmanDiagnostic {
  BregmanCandidate candidate = BregmanCandidate::KlD;
  std::vector<double> deltas;
  std::vector<double> gaps;
  BregmanVerdict verdict = BregmanVerdict::BregmanConsistent;
};

namespace detail {

inline BregmanVerdict classify_gaps(const std::vector<double>& gaps) {
  const double last = gaps.back();
  if (std::abs(last) < 1e-6) return BregmanVerdict::BregmanConsistent;
  if (gaps.size() < 2) return BregmanVerdict::ConstantGap;
  const double prev = gaps[gaps.size() - 2];
  if (std::abs(last - prev) <= 1e-3 * (1.0 + std::abs(last)))
    return BregmanVerdict::ConstantGap;
  return BregmanVerdict::DivergentGap;
}

}  // namespace detail

inline BregmanDiagnostic bregman_limit_gap(BregmanCandidate candidate,
                                           double q_scalar,
                                           const std::vector<double>& deltas) {
  if (!(q_scalar > 0.0) || !(q_scalar < 1.0))
    throw DomainViolation("q_scalar must lie in (0, 1), got " +
                          std::to_string(q_scalar));
  if (deltas.empty()) throw DomainViolation("deltas must be non-empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0))
      throw DomainViolation("deltas must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1]))
      throw DomainViolation("deltas must be strictly decreasing");
  }
  if (!(q_scalar + deltas.front() < 1.0))
    throw DomainViolation("q_scalar + max(delta) must stay below 1");

  const double log_q = std::log(q_scalar);
  const double phi_q = q_scalar * log_q;
  const double dphi_q = log_q + 1.0;

  BregmanDiagnostic diag;
  diag.candidate = candidate;
  diag.deltas = deltas;
  diag.gaps.reserve(deltas.size());
  for (const double delta : deltas) {
    const double p = q_scalar + delta;
    const double secant = (p * std::log(p) - phi_q) / delta;
    double gap = 0.0;
    switch (candidate) {
      case BregmanCandidate::Delta:
        gap = dphi_q - secant + std::log(p);
        break;
      case BregmanCandidate::CrossH:
        gap = dphi_q - secant - p * log_q / delta;
        break;
      case BregmanCandidate::KlD:
        gap = dphi_q - secant + p * (std::log(p) - log_q) / delta - 1.0;
        break;
    }
    diag.gaps.push_back(gap);
  }
  diag.verdict = detail::classify_gaps(diag.gaps);
  return diag;
}

}  // namespace scorex
