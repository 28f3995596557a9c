#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "scorex/core.hpp"
#include "scorex/scoring.hpp"
#include "test_support.hpp"

using scorex::OutcomeIndex;
using scorex::Pmv;
using scorex::Realm;
using scorex::ScoreBreakdown;
using test_support::make_pmv;

namespace {

// Eq-by-definition evaluation with explicit event indicators.
double brute_total(const Pmv& p, OutcomeIndex o) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool realized = i + 1 == static_cast<std::size_t>(o.value());
    s += realized ? std::log(p.weights()[i]) : std::log(1.0 - p.weights()[i]);
  }
  return s;
}

double logit_form_total(const Pmv& p, OutcomeIndex o) {
  const double po = p.weight(o);
  double s = std::log(po / (1.0 - po));
  for (double w : p.weights()) s += std::log(1.0 - w);
  return s;
}

}  // namespace

TEST_CASE("log score at the realized outcome") {
  CHECK(scorex::log_score(make_pmv({0.5, 0.25, 0.25}), OutcomeIndex(1)) ==
        Catch::Approx(-0.69314718055994531).margin(1e-12));
  const Pmv u3 = make_pmv({1.0 / 3, 1.0 / 3, 1.0 / 3});
  for (int o = 1; o <= 3; ++o)
    CHECK(scorex::log_score(u3, OutcomeIndex(o)) ==
          Catch::Approx(-1.0986122886681098).margin(1e-12));
  CHECK(scorex::log_score(make_pmv({0.8, 0.2}), OutcomeIndex(2)) ==
        Catch::Approx(-1.6094379124341003).margin(1e-12));
}

TEST_CASE("complementary score over the non-realized outcomes") {
  CHECK(scorex::comp_log_score(make_pmv({0.5, 0.25, 0.25}), OutcomeIndex(1)) ==
        Catch::Approx(-0.57536414490356185).margin(1e-12));
  CHECK(scorex::comp_log_score(make_pmv({0.8, 0.2}), OutcomeIndex(1)) ==
        Catch::Approx(-0.22314355131420976).margin(1e-12));
  const Pmv u3 = make_pmv({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(scorex::comp_log_score(u3, OutcomeIndex(2)) ==
        Catch::Approx(-0.81093021621632876).margin(1e-12));
}

TEST_CASE("total log score worked values") {
  const Pmv u3 = make_pmv({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(scorex::total_log_score(u3, OutcomeIndex(1)).total ==
        Catch::Approx(-1.9095425048844385).margin(1e-12));
  CHECK(scorex::total_log_score(make_pmv({0.8, 0.2}), OutcomeIndex(1)).total ==
        Catch::Approx(-0.44628710262841951).margin(1e-12));
  CHECK(scorex::total_log_score(make_pmv({0.5, 0.25, 0.25}), OutcomeIndex(1))
            .total == Catch::Approx(-1.2685113254635072).margin(1e-12));
}

TEST_CASE("breakdown total is exactly the sum of its components") {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Pmv p = scorex::sample_simplex_uniform(Realm(4), 11, k);
    for (int o = 1; o <= 4; ++o) {
      const ScoreBreakdown b = scorex::total_log_score(p, OutcomeIndex(o));
      CHECK(b.total == b.log_component + b.complementary_component);
      CHECK(b.total < 0.0);
    }
  }
}

TEST_CASE("the three algebraic forms of the total score agree") {
  for (const int n : {2, 3, 5, 8}) {
    const Realm realm(n);
    for (std::uint64_t k = 0; k < 50; ++k) {
      const Pmv p = scorex::sample_simplex_uniform(realm, 99, k);
      for (int o = 1; o <= n; ++o) {
        const double total = scorex::total_log_score(p, OutcomeIndex(o)).total;
        CHECK(total ==
              Catch::Approx(brute_total(p, OutcomeIndex(o))).margin(1e-12));
        CHECK(total ==
              Catch::Approx(logit_form_total(p, OutcomeIndex(o))).margin(1e-12));
      }
    }
  }
}

TEST_CASE("raising the realized weight proportionally improves the score") {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Pmv p = scorex::sample_simplex_uniform(Realm(4), 5, k);
    for (int o = 1; o <= 4; ++o) {
      const double lambda = 0.1;
      std::vector<double> raised = p.weights();
      for (std::size_t i = 0; i < raised.size(); ++i)
        raised[i] = i + 1 == static_cast<std::size_t>(o)
                        ? raised[i] + lambda * (1.0 - raised[i])
                        : (1.0 - lambda) * raised[i];
      const Pmv better = scorex::validate_pmv(raised, Realm(4));
      CHECK(scorex::total_log_score(better, OutcomeIndex(o)).total >
            scorex::total_log_score(p, OutcomeIndex(o)).total);
    }
  }
}

TEST_CASE("the uniform pmv scores identically at every outcome") {
  const Pmv u4 = make_pmv({0.25, 0.25, 0.25, 0.25});
  const double first = scorex::total_log_score(u4, OutcomeIndex(1)).total;
  for (int o = 2; o <= 4; ++o)
    CHECK(scorex::total_log_score(u4, OutcomeIndex(o)).total == first);
}

TEST_CASE("scoring rejects an outcome outside the realm") {
  const Pmv p = make_pmv({0.8, 0.2});
  CHECK_THROWS_AS(scorex::total_log_score(p, OutcomeIndex(3)),
                  scorex::DomainViolation);
}
