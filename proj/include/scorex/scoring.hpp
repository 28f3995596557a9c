#pragma once

// The total logarithmic scoring rule and its two component proper scores.
// All scores are natural-log values (nats) and negative for any strictly
// interior pmv; a larger (less negative) score is a better award.

#include <cmath>

#include "scorex/core.hpp"

namespace scorex {

// Selects the whole score or one of its two proper-score components.
enum class ScorePart { Total, Log, Complementary };

struct ScoreBreakdown {
  double log_component = 0.0;            // log of the realized weight
  double complementary_component = 0.0;  // sum of log(1 - w) over the rest
  double total = 0.0;                    // exactly the sum of the two
};

inline double score_part(const ScoreBreakdown& b, ScorePart part) noexcept {
  switch (part) {
    case ScorePart::Log:
      return b.log_component;
    case ScorePart::Complementary:
      return b.complementary_component;
    default:
      return b.total;
  }
}

inline double log_score(const Pmv& p, OutcomeIndex o) {
  detail::require_outcome(p, o);
  return std::log(p.weight(o));
}

inline double comp_log_score(const Pmv& p, OutcomeIndex o) {
  detail::require_outcome(p, o);
  const std::size_t realized = static_cast<std::size_t>(o.value()) - 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != realized) sum += std::log1p(-p.weights()[i]);
  return sum;
}

inline ScoreBreakdown total_log_score(const Pmv& p, OutcomeIndex o) {
  ScoreBreakdown b;
  b.log_component = log_score(p, o);
  b.complementary_component = comp_log_score(p, o);
  b.total = b.log_component + b.complementary_component;
  return b;
}

}  // namespace scorex
