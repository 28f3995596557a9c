#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "scorex/core.hpp"
#include "test_support.hpp"

using scorex::OutcomeIndex;
using scorex::Pmv;
using scorex::Realm;
using scorex::sample_simplex_uniform;
using scorex::validate_pmv;

TEST_CASE("validate_pmv accepts a strictly interior unit-sum vector") {
  const Pmv p = validate_pmv({0.5, 0.25, 0.25}, Realm(3));
  CHECK(p.size() == 3);
  CHECK(p.weights() == std::vector<double>{0.5, 0.25, 0.25});
}

TEST_CASE("validate_pmv adopts weights unmodified") {
  // No renormalization: the stored weights are bitwise the inputs.
  const std::vector<double> raw{0.2000000001, 0.3, 0.4999999999};
  const Pmv p = validate_pmv(raw, Realm(3));
  CHECK(p.weights() == raw);
  const Pmv again = validate_pmv(p.weights(), Realm(3));
  CHECK(again.weights() == p.weights());
}

TEST_CASE("validate_pmv rejects boundary weights with the component index") {
  try {
    validate_pmv({0.5, 0.5, 0.0}, Realm(3));
    FAIL("expected NotStrictlyInterior");
  } catch (const scorex::NotStrictlyInterior& e) {
    CHECK(e.component() == 3);
    CHECK(e.value() == 0.0);
  }
  CHECK_THROWS_AS(validate_pmv({1.0, 0.0000001, -0.0000001}, Realm(3)),
                  scorex::NotStrictlyInterior);
  CHECK_THROWS_AS(validate_pmv({0.5, std::nan("")}, Realm(2)),
                  scorex::NotStrictlyInterior);
}

TEST_CASE("validate_pmv rejects a wrong sum") {
  try {
    validate_pmv({0.6, 0.6}, Realm(2));
    FAIL("expected SumNotOne");
  } catch (const scorex::SumNotOne& e) {
    CHECK(e.sum() == Catch::Approx(1.2));
  }
  // Inside the 1e-9 tolerance passes, outside fails.
  CHECK_NOTHROW(validate_pmv({0.5, 0.5 + 5e-10}, Realm(2)));
  CHECK_THROWS_AS(validate_pmv({0.5, 0.5 + 5e-9}, Realm(2)), scorex::SumNotOne);
}

TEST_CASE("validate_pmv rejects a length mismatch") {
  try {
    validate_pmv({0.5, 0.5}, Realm(3));
    FAIL("expected LengthMismatch");
  } catch (const scorex::LengthMismatch& e) {
    CHECK(e.expected() == 3);
    CHECK(e.actual() == 2);
  }
}

TEST_CASE("realm and outcome preconditions") {
  CHECK_THROWS_AS(Realm(1), scorex::DomainViolation);
  CHECK_THROWS_AS(Realm(0), scorex::DomainViolation);
  CHECK_THROWS_AS(OutcomeIndex(0), scorex::DomainViolation);
  const Pmv p = test_support::make_pmv({0.5, 0.5});
  CHECK_THROWS_AS(p.weight(OutcomeIndex(3)), scorex::DomainViolation);
}

TEST_CASE("simplex sampling is deterministic in (seed, trial)") {
  const Realm realm(3);
  const Pmv a = sample_simplex_uniform(realm, 42, 0);
  const Pmv b = sample_simplex_uniform(realm, 42, 0);
  CHECK(a.weights() == b.weights());
  const Pmv c = sample_simplex_uniform(realm, 42, 1);
  CHECK(a.weights() != c.weights());
  const Pmv d = sample_simplex_uniform(realm, 43, 0);
  CHECK(a.weights() != d.weights());
}

TEST_CASE("simplex samples validate across realm sizes") {
  for (const int n : {2, 3, 5, 17}) {
    const Realm realm(n);
    for (std::uint64_t k = 0; k < 200; ++k) {
      const Pmv p = sample_simplex_uniform(realm, 7, k);
      CHECK_NOTHROW(validate_pmv(p.weights(), realm));
    }
  }
}

TEST_CASE("two-outcome samples are an exact complement pair") {
  const Realm realm(2);
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    const Pmv p = sample_simplex_uniform(realm, 7, k);
    const double u = p.weights()[0];
    CHECK(p.weights()[1] == 1.0 - u);
    CHECK(u + p.weights()[1] == 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // The first coordinate sweeps the open interval.
  CHECK(lo < 0.05);
  CHECK(hi > 0.95);
}

TEST_CASE("coordinate means match the flat simplex distribution") {
  const Realm realm(3);
  double sums[3] = {0.0, 0.0, 0.0};
  const int trials = 100000;
  for (int k = 0; k < trials; ++k) {
    const Pmv p = sample_simplex_uniform(realm, 42, static_cast<std::uint64_t>(k));
    for (int i = 0; i < 3; ++i) sums[i] += p.weights()[static_cast<std::size_t>(i)];
  }
  for (double s : sums)
    CHECK(s / trials == Catch::Approx(1.0 / 3.0).margin(0.005));
}
