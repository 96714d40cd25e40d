#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "agan/errors.hpp"
#include "agan/gradients.hpp"
#include "agan/rng.hpp"

using namespace agan;

namespace {

// Scenario with the decision on the wrong side of 1/2, where the gradient
// never crosses zero over any alpha grid and the acceleration claim holds
// in its strict form.
GradScenario wrong_side_scenario(SeededRng& rng) {
  for (;;) {
    const double pr = rng.uniform(0.1, 1.0);
    const double pg = rng.uniform(0.1, 1.0);
    if (std::fabs(pr - pg) < 0.05 * (pr + pg)) continue;
    const double d = pr > pg ? rng.uniform(0.1, 0.45) : rng.uniform(0.55, 0.9);
    return {pr, pg, d};
  }
}

}  // namespace

TEST_CASE("discriminator gradient vanishes at the closed-form optimum") {
  SeededRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double pr = rng.uniform(0.1, 1.0);
    const double pg = rng.uniform(0.1, 1.0);
    const double a = rng.uniform(0.2, 6.0);
    const double dstar =
        std::pow(pr, a) / (std::pow(pr, a) + std::pow(pg, a));
    CHECK(std::fabs(grad_wrt_discriminator(AlphaOrder(a), pr, pg, dstar)) <
          1e-12);
  }
  CHECK(grad_wrt_discriminator(AlphaOrder(3.0), 0.4, 0.4, 0.5) ==
        doctest::Approx(0.0));
}

TEST_CASE("discriminator gradient magnitudes grow as alpha shrinks") {
  // frozen direct evaluations at pr=0.8, pg=0.2, d=0.4
  const double g01 = grad_wrt_discriminator(AlphaOrder(0.1), 0.8, 0.2, 0.4);
  const double g1 = grad_wrt_discriminator(AlphaOrder(1.0), 0.8, 0.2, 0.4);
  const double g10 = grad_wrt_discriminator(AlphaOrder(10.0), 0.8, 0.2, 0.4);
  CHECK(g01 == doctest::Approx(7596.3181878741561).epsilon(1e-12));
  CHECK(g1 == doctest::Approx(1.6666666666666665).epsilon(1e-12));
  CHECK(g10 == doctest::Approx(0.66628462527838872).epsilon(1e-12));
  CHECK(std::fabs(g01) > std::fabs(g1));
  CHECK(std::fabs(g1) > std::fabs(g10));
}

TEST_CASE("discriminator gradient rejects order zero") {
  CHECK_THROWS_AS(grad_wrt_discriminator(AlphaOrder(0.0), 0.5, 0.5, 0.5),
                  UnsupportedOrderError);
  CHECK_THROWS_AS(grad_wrt_generator(AlphaOrder(0.0), 0.5, 0.5, 0.5),
                  UnsupportedOrderError);
}

TEST_CASE("generator gradient vanishes at d = 1/2 and mirrors around it") {
  SeededRng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const double pr = rng.uniform(0.1, 1.0);
    const double pg = rng.uniform(0.1, 1.0);
    const double a = rng.uniform(0.2, 6.0);
    CHECK(grad_wrt_generator(AlphaOrder(a), pr, pg, 0.5) ==
          doctest::Approx(0.0));
    const double d = rng.uniform(0.05, 0.95);
    CHECK(grad_wrt_generator(AlphaOrder(a), pr, pg, d) ==
          doctest::Approx(-grad_wrt_generator(AlphaOrder(a), pr, pg, 1.0 - d))
              .epsilon(1e-12));
  }
}

TEST_CASE("generator gradient flips sign between d = 0.4 and d = 0.6") {
  for (double pr : {0.2, 0.3}) {
    for (double a : {0.3, 2.0, 5.0}) {
      const double low = grad_wrt_generator(AlphaOrder(a), pr, 0.2, 0.4);
      const double high = grad_wrt_generator(AlphaOrder(a), pr, 0.2, 0.6);
      CHECK(low > 0.0);
      CHECK(high < 0.0);
      CHECK(low == doctest::Approx(-high).epsilon(1e-12));
    }
  }
}

TEST_CASE("generator gradient magnitudes also grow toward alpha = 0") {
  // frozen direct evaluations at pr=0.5, pg=0.2, d=0.4
  const double g02 = grad_wrt_generator(AlphaOrder(0.2), 0.5, 0.2, 0.4);
  const double g2 = grad_wrt_generator(AlphaOrder(2.0), 0.5, 0.2, 0.4);
  CHECK(g02 == doctest::Approx(7.9965435248173344).epsilon(1e-12));
  CHECK(g2 == doctest::Approx(0.29008395348532157).epsilon(1e-12));
  CHECK(std::fabs(g02) > std::fabs(g2));
}

TEST_CASE("generator gradient is continuous through the near-one window") {
  const double limit = grad_wrt_generator(AlphaOrder(1.0), 0.4, 0.3, 0.35);
  const double expected =
      0.4 / (0.7 * 0.7) * (std::log(0.65) - std::log(0.35));
  CHECK(limit == doctest::Approx(expected).epsilon(1e-14));
  for (double a : {1.0 + 2e-6, 1.0 - 2e-6, 1.0 + 1e-7, 1.0 - 1e-7}) {
    CHECK(grad_wrt_generator(AlphaOrder(a), 0.4, 0.3, 0.35) ==
          doctest::Approx(limit).epsilon(1e-5));
  }
}

TEST_CASE("finite differences confirm the analytic gradient direction") {
  SeededRng rng(33);
  SUBCASE("zero vectors at the optimum compare equal") {
    const double pr = 0.6, pg = 0.3;
    const double a = 2.0;
    const double dstar = std::pow(pr, a) / (std::pow(pr, a) + std::pow(pg, a));
    const PairedSampleWeights w({pr}, {pg});
    CHECK(finite_difference_check(AlphaOrder(a), w, SoftDecision({dstar}),
                                  1e-5) == 0.0);
  }
  SUBCASE("random five-sample scenarios") {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> pr(5), pg(5), d(5);
      for (int i = 0; i < 5; ++i) {
        pr[i] = rng.uniform(0.05, 1.0);
        pg[i] = rng.uniform(0.05, 1.0);
        d[i] = rng.uniform(0.1, 0.9);
      }
      const PairedSampleWeights w(pr, pg);
      const SoftDecision sd(d);
      CHECK(finite_difference_check(AlphaOrder(2.0), w, sd, 1e-5) < 1e-6);
      CHECK(finite_difference_check(AlphaOrder(0.3), w, sd, 1e-5) < 1e-5);
      for (double a : {0.9, 1.0, 10.0}) {
        CHECK(finite_difference_check(AlphaOrder(a), w, sd, 1e-5) < 1e-5);
      }
    }
  }
  SUBCASE("step size outside the stated range is rejected") {
    const PairedSampleWeights w({0.5}, {0.5});
    CHECK_THROWS_AS(
        finite_difference_check(AlphaOrder(2.0), w, SoftDecision({0.5}), 1e-2),
        InvalidInstanceError);
  }
}

TEST_CASE("the gradient decays strictly along ascending alpha off the optimum") {
  SeededRng rng(34);
  const std::vector<double> grid = {0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
  for (int trial = 0; trial < 100; ++trial) {
    const GradScenario sc = wrong_side_scenario(rng);
    double prev = std::fabs(
        grad_wrt_discriminator(AlphaOrder(grid[0]), sc.pr, sc.pg, sc.d));
    for (std::size_t k = 1; k < grid.size(); ++k) {
      const double cur = std::fabs(
          grad_wrt_discriminator(AlphaOrder(grid[k]), sc.pr, sc.pg, sc.d));
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("log-gradient is concave in 1/alpha: secant slopes decrease") {
  SeededRng rng(35);
  const std::vector<double> inv_alpha = {0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
  for (int trial = 0; trial < 100; ++trial) {
    const GradScenario sc = wrong_side_scenario(rng);
    std::vector<double> log_g(inv_alpha.size());
    for (std::size_t k = 0; k < inv_alpha.size(); ++k) {
      log_g[k] = std::log(std::fabs(grad_wrt_discriminator(
          AlphaOrder(1.0 / inv_alpha[k]), sc.pr, sc.pg, sc.d)));
    }
    double prev_slope = (log_g[1] - log_g[0]) / (inv_alpha[1] - inv_alpha[0]);
    for (std::size_t k = 2; k < inv_alpha.size(); ++k) {
      const double slope =
          (log_g[k] - log_g[k - 1]) / (inv_alpha[k] - inv_alpha[k - 1]);
      CHECK(slope < prev_slope);
      prev_slope = slope;
    }
  }
}

TEST_CASE("the reference sweep reproduces the published endpoint structure") {
  const auto rows = sweep_alpha(reference_sweep_scenarios(),
                                default_sweep_alphas());
  REQUIRE(rows.size() == 800);

  auto generator_series = [&](double pg, double d) {
    std::vector<double> s;
    for (const GradientSweepRow& r : rows) {
      if (r.family == GradientFamily::Generator && r.scenario.pg == pg &&
          r.scenario.d == d) {
        s.push_back(r.grad);
      }
    }
    return s;
  };
  const auto ref = generator_series(0.2, 0.4);
  const auto mirrored = generator_series(0.2, 0.6);
  const auto scaled = generator_series(0.8, 0.4);
  REQUIRE(ref.size() == 100);

  // the reference scenario ends at exactly 1 at the largest alpha
  CHECK(ref.back() == 1.0);
  // the d = 0.6 series is the exact negation of the d = 0.4 series
  for (std::size_t k = 0; k < 100; ++k) {
    CHECK(mirrored[k] == doctest::Approx(-ref[k]).epsilon(1e-12));
  }
  // cross-series ratio at the endpoint matches the published 25/121
  CHECK(scaled.back() == doctest::Approx(25.0 / 121.0).epsilon(1e-12));
  // every generator series decays in magnitude along the grid
  for (std::size_t k = 1; k < 100; ++k) {
    CHECK(std::fabs(ref[k]) < std::fabs(ref[k - 1]));
  }
}

TEST_CASE("sweep discriminator rows match the gradient op directly") {
  const std::vector<GradScenario> scenarios = {{0.8, 0.2, 0.4}};
  std::vector<AlphaOrder> alphas;
  for (double a : {0.5, 1.0, 2.0}) alphas.push_back(AlphaOrder(a));
  const auto rows = sweep_alpha(scenarios, alphas, false);
  for (const GradientSweepRow& r : rows) {
    if (r.family != GradientFamily::Discriminator) continue;
    CHECK(r.grad == grad_wrt_discriminator(AlphaOrder(r.alpha), 0.8, 0.2, 0.4));
  }
}

TEST_CASE("sweep validates its grid") {
  const auto scenarios = reference_sweep_scenarios();
  CHECK_THROWS_AS(sweep_alpha(scenarios, {AlphaOrder(2.0), AlphaOrder(1.0)}),
                  Error);
  CHECK_THROWS_AS(sweep_alpha(scenarios, {AlphaOrder(101.0)}),
                  UnsupportedOrderError);
  CHECK_THROWS_AS(sweep_alpha({}, {AlphaOrder(1.0)}), DimensionError);
}

TEST_CASE("sweep CSV carries the documented header and row count") {
  const auto rows =
      sweep_alpha(reference_sweep_scenarios(), {AlphaOrder(1.0)}, false);
  const std::string csv = sweep_to_csv(rows);
  CHECK(csv.rfind("family,alpha,pr,pg,d,grad\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}
