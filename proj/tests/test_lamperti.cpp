#include <cmath>
#include <doctest.h>

#include "helpers.hpp"
#include "levylab/lamperti.hpp"
#include "levylab/path_stats.hpp"
#include "levylab/samplers.hpp"
#include "levylab/simulate.hpp"

using namespace levylab;
using levylab::testing::linear_path;
using levylab::testing::minus_t;

TEST_SUITE("lamperti") {
  TEST_CASE("clock of xi = -t") {
    const double h = 1e-4;
    const ClockTable c = lamperti_clock(minus_t(40.0, h));
    // left sums of exp(-t) overshoot the integral by a factor h / (1 - e^-h)
    CHECK(c.total == doctest::Approx(1.0).epsilon(1e-3));
    for (double t : {0.2, 0.5, 0.9}) CHECK(c.inverse(t) == doctest::Approx(-std::log(1.0 - t)).epsilon(1e-3));
  }

  TEST_CASE("clock of the zero path is the identity") {
    const ClockTable c = lamperti_clock(linear_path({{0.0, 0.0}, {0.5, 0.0}, {1.3, 0.0}, {2.0, 0.0}}));
    CHECK(c.total == doctest::Approx(2.0));
    for (double t : {0.1, 0.7, 1.9}) {
      CHECK(c.at(t) == doctest::Approx(t));
      CHECK(c.inverse(t) == doctest::Approx(t));
    }
  }

  TEST_CASE("round trip on a simulated path") {
    RandomStream rng(4);
    const SampledPath p = simulate_path(brownian_law(-1.0, 1.0), rng, HorizonPolicy::fixed(10.0, 0.02));
    const ClockTable c = lamperti_clock(p);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(c.inverse(c.at(p.times[i])) - p.times[i]) <= 0.02);
    const double fine = lamperti_clock(refine_path(p, rng)).total;
    CHECK(std::abs(c.total - fine) / fine <= 0.05);
  }

  TEST_CASE("tent excursion") {
    // two-sided tent: xi = t + 1 on [-1, 0), then 1 - t on [0, 1]
    TwoSidedPath tp;
    tp.backward = linear_path({{0.0, -1.0}, {1.0, 0.0}});
    tp.forward = linear_path({{0.0, 1.0}, {1.0, 0.0}});
    const Excursion e = excursion_from_two_sided(tp);
    // left-sum clock: exp(0) * 1 + exp(1) * 1
    CHECK(e.duration == doctest::Approx(1.0 + std::exp(1.0)));
    CHECK(e.clock_total == doctest::Approx(e.duration));
    CHECK(e.height == doctest::Approx(std::exp(1.0)));
    CHECK(e.argmax == doctest::Approx(1.0));
    CHECK(e.values.front() == doctest::Approx(1.0));
  }

  TEST_CASE("excursion from a two-sided sample") {
    const LevyModel m = validate_model(brownian_law(-0.25, 1.0));
    const ConditionedSamplers S(m);
    RandomStream rng(5);
    for (int i = 0; i < 50; ++i) {
      const TwoSidedPath tp = S.script_P(rng);
      const Excursion e = excursion_from_two_sided(tp);
      CHECK(std::log(e.height) == doctest::Approx(path_stats(tp.timeline()).sup));
      for (double v : e.values) CHECK(v > 0.0);
      CHECK(e.values.front() <= 2.0 * std::exp(-S.margin()));
      CHECK(e.values.back() <= 2.0 * std::exp(-S.margin()));
      CHECK(*std::max_element(e.values.begin(), e.values.end()) == doctest::Approx(e.height));
    }
  }

  TEST_CASE("Williams construction hits the requested height") {
    const LevyModel m = validate_model(brownian_law(-0.25, 1.0));
    const ConditionedSamplers S(m);
    RandomStream rng(6);
    const Excursion e = excursion_williams(S, 3.0, rng);
    CHECK(e.height == doctest::Approx(3.0));
    CHECK(e.argmax == doctest::Approx(3.0 * e.clock_up));
    CHECK(e.duration == doctest::Approx(3.0 * e.clock_total));
  }

  TEST_CASE("scaling") {
    const LevyModel m = validate_model(brownian_law(-0.25, 1.0));
    const ConditionedSamplers S(m);
    RandomStream rng(7);
    const Excursion e = excursion_from_two_sided(S.script_P(rng));
    const Excursion s = scale_excursion(e, 2.5);
    CHECK(s.height == doctest::Approx(2.5 * e.height));
    CHECK(s.duration == doctest::Approx(2.5 * e.duration));
    CHECK(s.argmax == doctest::Approx(2.5 * e.argmax));
  }
}
