#pragma once

// Validated probability mass vectors over a finite outcome realm, plus
// reproducible uniform sampling of the open simplex.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scorex {

// Sum of pmv weights must be 1 within this absolute tolerance.
inline constexpr double kPmvSumTolerance = 1e-9;
// Simplex draws with any coordinate this close to 0 or 1 are redrawn.
inline constexpr double kSimplexRejectionBand = 1e-12;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("pmv length " + std::to_string(actual) +
              " does not match realm size " + std::to_string(expected)),
        expected_(expected),
        actual_(actual) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t actual() const noexcept { return actual_; }

 private:
  std::size_t expected_;
  std::size_t actual_;
};

class NotStrictlyInterior : public Error {
 public:
  // component is 1-based.
  NotStrictlyInterior(std::size_t component, double value)
      : Error("pmv weight " + std::to_string(value) + " at component " +
              std::to_string(component) +
              " lies outside the open interval (0, 1)"),
        component_(component),
        value_(value) {}
  std::size_t component() const noexcept { return component_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t component_;
  double value_;
};

class SumNotOne : public Error {
 public:
  explicit SumNotOne(double sum)
      : Error("pmv weights sum to " + std::to_string(sum) +
              ", expected 1 within " + std::to_string(kPmvSumTolerance)),
        sum_(sum) {}
  double sum() const noexcept { return sum_; }

 private:
  double sum_;
};

class RealmMismatch : public Error {
 public:
  explicit RealmMismatch(std::string what) : Error(std::move(what)) {}
  RealmMismatch(std::size_t line, std::string what)
      : Error("line " + std::to_string(line) + ": " + std::move(what)),
        line_(line) {}
  // 0 when no input line is associated with the mismatch.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

class DomainViolation : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Domain types

// The finite set of N possible outcome values, identified by index 1..N.
class Realm {
 public:
  explicit Realm(int size) : size_(size) {
    if (size < 2)
      throw DomainViolation("realm size must be at least 2, got " +
                            std::to_string(size));
  }
  int size() const noexcept { return size_; }
  friend bool operator==(Realm a, Realm b) noexcept {
    return a.size_ == b.size_;
  }

 private:
  int size_;
};

// 1-based index of the partition event that was observed to equal 1.
class OutcomeIndex {
 public:
  explicit OutcomeIndex(int value) : value_(value) {
    if (value < 1)
      throw DomainViolation("outcome index must be at least 1, got " +
                            std::to_string(value));
  }
  int value() const noexcept { return value_; }

 private:
  int value_;
};

class Pmv;
Pmv validate_pmv(std::vector<double> raw, const Realm& realm);

// A strictly interior probability mass vector. Instances only exist after
// passing validate_pmv, so every weight is in (0, 1) and the sum is 1
// within kPmvSumTolerance.
class Pmv {
 public:
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  Realm realm() const { return Realm(static_cast<int>(weights_.size())); }

  // Weight of the given outcome; throws DomainViolation if out of realm.
  double weight(OutcomeIndex o) const {
    if (static_cast<std::size_t>(o.value()) > weights_.size())
      throw DomainViolation("outcome index " + std::to_string(o.value()) +
                            " outside realm of size " +
                            std::to_string(weights_.size()));
    return weights_[static_cast<std::size_t>(o.value()) - 1];
  }

 private:
  friend Pmv validate_pmv(std::vector<double>, const Realm&);
  explicit Pmv(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

// Strict validation; the input weights are adopted unmodified (no
// renormalization, so caller bugs surface instead of being masked).
inline Pmv validate_pmv(std::vector<double> raw, const Realm& realm) {
  if (raw.size() != static_cast<std::size_t>(realm.size()))
    throw LengthMismatch(static_cast<std::size_t>(realm.size()), raw.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double w = raw[i];
    if (!(w > 0.0) || !(w < 1.0)) throw NotStrictlyInterior(i + 1, w);
    sum += w;
  }
  if (std::abs(sum - 1.0) > kPmvSumTolerance) throw SumNotOne(sum);
  return Pmv(std::move(raw));
}

namespace detail {

inline void require_same_realm(const Pmv& a, const Pmv& b) {
  if (a.size() != b.size())
    throw RealmMismatch("pmv sizes differ: " + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()));
}

inline void require_outcome(const Pmv& p, OutcomeIndex o) {
  if (static_cast<std::size_t>(o.value()) > p.size())
    throw DomainViolation("outcome index " + std::to_string(o.value()) +
                          " outside realm of size " + std::to_string(p.size()));
}

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Reproducible sampling

// SplitMix64 generator. Substream k of a seed starts from a mixed state, so
// (seed, index) pairs give decorrelated, scheduling-independent streams.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(detail::mix64(seed + kGamma * (index + 1)));
  }

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return detail::mix64(state_);
  }

  // Uniform double in the open interval (0, 1), 53-bit resolution.
  double next_unit_open() noexcept {
    for (;;) {
      const double u =
          static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
      if (u > 0.0) return u;
    }
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t state_;
};

// Uniform draw from the open unit simplex by sorted uniform spacings:
// N-1 variates on (0,1) are sorted and the successive gaps (including the
// two end gaps) become the weights. Deterministic in (seed, trial_index);
// draws with any coordinate inside the rejection band are redrawn from the
// same substream.
inline Pmv sample_simplex_uniform(const Realm& realm, std::uint64_t seed,
                                  std::uint64_t trial_index) {
  const int n = realm.size();
  SplitMix64 rng = SplitMix64::substream(seed, trial_index);
  std::vector<double> cuts(static_cast<std::size_t>(n) - 1);
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (;;) {
    for (double& c : cuts) c = rng.next_unit_open();
    std::sort(cuts.begin(), cuts.end());
    double prev = 0.0;
    bool accepted = true;
    for (int i = 0; i < n; ++i) {
      const double hi = (i + 1 < n) ? cuts[static_cast<std::size_t>(i)] : 1.0;
      const double w = hi - prev;
      prev = hi;
      if (w <= kSimplexRejectionBand || w >= 1.0 - kSimplexRejectionBand) {
        accepted = false;
        break;
      }
      weights[static_cast<std::size_t>(i)] = w;
    }
    if (accepted) return validate_pmv(weights, realm);
  }
}

}  // namespace scorex
