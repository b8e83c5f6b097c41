#include <cmath>
#include <doctest.h>
#include <random>

#include "levylab/random.hpp"
#include "levylab/stats.hpp"

using namespace levylab;

namespace {
std::function<double(double)> exp_cdf(double r) {
  return [r](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-r * x); };
}
EmpiricalDistribution exp_sample(double rate, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  EmpiricalDistribution d;
  for (int i = 0; i < n; ++i) d.add(rng.exponential(rate));
  return d;
}
const LevyModel& bm() {
  static const LevyModel m = validate_model(brownian_law(-1.0, 1.0));
  return m;
}
}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("KS distance examples") {
    const EmpiricalDistribution a({1.0, 2.0, 3.0});
    CHECK(ks_distance(a, a) == 0.0);
    const EmpiricalDistribution b({0.0, 1.0});
    CHECK(ks_distance(b, [](double x) { return x >= 0.0 ? 1.0 : 0.0; }) == doctest::Approx(0.5));
    const EmpiricalDistribution c({1.5, 2.5});
    CHECK(ks_distance(a, c) == doctest::Approx(ks_distance(c, a)));
    CHECK(ks_distance(a, c) == doctest::Approx(1.0 / 3.0));
  }

  TEST_CASE("weighted KS matches the expanded unweighted sample") {
    const EmpiricalDistribution w({0.0, 1.0, 2.0}, {1.0, 2.0, 1.0});
    const EmpiricalDistribution u({0.0, 1.0, 1.0, 2.0});
    const EmpiricalDistribution v({0.5, 1.5, 3.0});
    CHECK(ks_distance(w, v) == doctest::Approx(ks_distance(u, v)));
    CHECK(wasserstein1(w, v) == doctest::Approx(wasserstein1(u, v)));
  }

  TEST_CASE("KS null level against the exponential CDF") {
    const auto d = exp_sample(2.0, 100000, 1);
    CHECK(ks_distance(d, exp_cdf(2.0)) <= 1.63 / std::sqrt(1e5));
    CHECK(ks_distance(d, exp_cdf(2.2)) > 0.02);
  }

  TEST_CASE("Wasserstein distance examples") {
    const EmpiricalDistribution a({1.0, 2.0, 3.0});
    CHECK(wasserstein1(a, a) == 0.0);
    CHECK(wasserstein1(EmpiricalDistribution({0.0}), EmpiricalDistribution({1.0})) == doctest::Approx(1.0));
    // a shift moves every quantile by the same amount
    CHECK(wasserstein1(a, EmpiricalDistribution({1.25, 2.25, 3.25})) == doctest::Approx(0.25));
    CHECK(wasserstein1(exp_sample(2.0, 100000, 2), exp_sample(2.0, 100000, 3)) <= 0.01);
  }

  TEST_CASE("effective sample size") {
    CHECK(EmpiricalDistribution({1.0, 2.0, 3.0, 4.0}).ess() == doctest::Approx(4.0));
    CHECK(EmpiricalDistribution({1.0, 2.0}, {1.0, 3.0}).ess() == doctest::Approx(16.0 / 10.0));
    CHECK(effective_sample_size(EmpiricalDistribution({1.0, 2.0}, {2.0, 2.0})) == doctest::Approx(2.0));
  }

  TEST_CASE("validation of samples") {
    CHECK_THROWS_AS(EmpiricalDistribution().validate(), StatsError);
    CHECK_THROWS_AS(EmpiricalDistribution({1.0, NAN}).validate(), StatsError);
    CHECK_THROWS_AS(EmpiricalDistribution({1.0}, {-1.0}).validate(), StatsError);
    CHECK(EmpiricalDistribution({2.0, 2.0}).degenerate());
  }

  TEST_CASE("Pareto tail slope") {
    RandomStream rng(4);
    std::vector<double> pareto, lexp;
    for (int i = 0; i < 100000; ++i) {
      pareto.push_back(std::pow(rng.uniform(), -0.5));
      lexp.push_back(std::exp(rng.exponential(0.5)));
    }
    const TailFit a = tail_exponent_fit(pareto, 1.0, 20.0);
    CHECK(a.slope == doctest::Approx(-2.0).epsilon(0.025));
    CHECK(a.se > 0.0);
    const TailFit b = tail_exponent_fit(lexp, 1.0, 20.0);
    CHECK(std::abs(b.slope + 0.5) <= 0.05);
    CHECK_THROWS_WITH_AS(tail_exponent_fit(std::vector<double>(5000, 1.0), 1.0), "insufficient exceedances",
                         StatsError);
  }

  TEST_CASE("normal helpers") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
    CHECK(normal_cdf(-10.0) == doctest::Approx(7.61985302416e-24).epsilon(1e-9));
    CHECK(normal_pdf(1.0) == doctest::Approx(0.241970724519143));
  }

  TEST_CASE("debt-time limit density") {
    // theta E~(xi_t^-) / t with xi_t ~ N(t, t) under the tilt
    const auto closed = [](double t) {
      const double s = std::sqrt(t);
      return 2.0 / t * (s * normal_pdf(s) - t * normal_cdf(-s));
    };
    CHECK(debt_time_density(bm(), 1.0) == doctest::Approx(0.166631).epsilon(3e-6));
    CHECK(debt_time_density(bm(), 4.0) == doctest::Approx(0.008491).epsilon(6e-5));
    for (double t : {0.1, 0.7, 3.0}) CHECK(debt_time_density(bm(), t) == doctest::Approx(closed(t)));
    CHECK(debt_time_total_mass(bm()) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(debt_time_cdf(bm(), 0.0) == 0.0);
    CHECK(debt_time_cdf(bm(), 1e6) == doctest::Approx(1.0).epsilon(1e-6));
    // CDF increments against the density
    const double h = 1e-4;
    CHECK((debt_time_cdf(bm(), 1.0 + h) - debt_time_cdf(bm(), 1.0 - h)) / (2 * h) ==
          doctest::Approx(closed(1.0)).epsilon(1e-5));
    double se = 0.0;
    const double mc = debt_time_density_mc(bm(), 1.0, 400000, 11, &se);
    CHECK(std::abs(mc - closed(1.0)) <= 4.0 * se);
  }

  TEST_CASE("debt time needs one-sided positive jumps") {
    const LevyModel neg = validate_model(jump_diffusion_law(-1.0, 1.0, {{1.0, 2.0, -1}}));
    CHECK_THROWS_AS(debt_time_density(neg, 1.0), ModelError);
    const LevyModel jd1 = validate_model(jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}}));
    CHECK(debt_time_density(jd1, 1.0) > 0.0);
    CHECK_THROWS_AS(debt_time_cdf(jd1, 1.0), ModelError);
  }

  TEST_CASE("quantiles and medians") {
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == doctest::Approx(2.0));
    CHECK(quantile({0.0, 10.0}, 0.99) == doctest::Approx(9.9));
    CHECK(null_threshold({0.0, 10.0}) == doctest::Approx(1.5 * 9.9));
    const MedianSummary m = median_summary({1.0, 2.0, 3.0, 4.0});
    CHECK(m.median == doctest::Approx(2.5));
    CHECK(m.se == doctest::Approx(1.2533 * std::sqrt(5.0 / 3.0) / 2.0).epsilon(1e-4));
  }
}
