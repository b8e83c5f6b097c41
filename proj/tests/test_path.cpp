#include <cmath>
#include <doctest.h>

#include "helpers.hpp"
#include "levylab/path_stats.hpp"
#include "levylab/random.hpp"
#include "levylab/simulate.hpp"

using namespace levylab;
using levylab::testing::linear_path;
using levylab::testing::minus_t;
using levylab::testing::tent;

TEST_SUITE("path_engine") {
  TEST_CASE("tent path functionals") {
    const SampledPath p = tent();
    p.validate();
    const PathStats st = path_stats(p, {0.5});
    CHECK(st.sup == doctest::Approx(1.0));
    CHECK(st.argmax == doctest::Approx(1.0));
    CHECK(st.tau == doctest::Approx(0.0));
    CHECK(st.first_neg == doctest::Approx(2.0));
    CHECK(st.occupation_pos == doctest::Approx(2.0));
    CHECK(st.last_pos == doctest::Approx(2.0));
    CHECK(first_passage_above(p, 0.5).time == doctest::Approx(0.5));
    CHECK(last_time_above(p, 0.5) == doctest::Approx(1.5));
    CHECK(occupation_above(p, 0.0) == doctest::Approx(2.0));
    CHECK(occupation_above(p, 0.5) == doctest::Approx(1.0));
    REQUIRE(st.levels.size() == 1);
    CHECK(st.levels[0].tau == doctest::Approx(0.5));
    CHECK(value_at(p, 2.5).value() == doctest::Approx(-0.5));
    CHECK(value_at(p, 5.0).is_dead());
  }

  TEST_CASE("xi = -t functionals") {
    const SampledPath p = minus_t(5.0, 0.5);
    const PathStats st = path_stats(p);
    CHECK(st.sup == doctest::Approx(0.0));
    CHECK(st.argmax == doctest::Approx(0.0));
    CHECK(st.occupation_pos == doctest::Approx(0.0));
    CHECK(st.last_pos == doctest::Approx(0.0));
    CHECK_FALSE(first_passage_above(p, 0.0).happened());
  }

  TEST_CASE("sup below zero has no passage") {
    const SampledPath p = linear_path({{0.0, -1.0}, {1.0, -0.5}, {2.0, -3.0}});
    const PathStats st = path_stats(p);
    CHECK(st.tau == kNever);
    CHECK(st.occupation_pos == 0.0);
  }

  TEST_CASE("jump crossing is detected with its overshoot") {
    SampledPath p = linear_path({{0.0, -1.0}, {1.0, -0.5}, {2.0, -0.8}});
    p.values[1] = 0.25;  // jump of +0.75 at t = 1
    p.jumps[1] = 0.75;
    p.bridge_max[1] = 0.25;
    p.validate();
    const Passage ps = first_passage_above(p, 0.0);
    CHECK(ps.by_jump);
    CHECK(ps.time == doctest::Approx(1.0));
    CHECK(ps.before == doctest::Approx(-0.5));
    CHECK(ps.after == doctest::Approx(0.25));
  }

  TEST_CASE("reversal of the tent at its maximum") {
    const SampledPath rp = reversed_pre_max(tent());
    // u -> sup - xi((1 - u)-) = u on [0, 1)
    for (double u : {0.0, 0.25, 0.5, 0.9}) CHECK(value_at(rp, u).value() == doctest::Approx(u));

    const TwoSidedPath r = reverse_path(tent(), 1.0);
    for (double u : {0.0, 0.3, 0.8}) CHECK(r.at(u).value() == doctest::Approx(1.0 - u));
  }

  TEST_CASE("reversing twice restores the stored samples") {
    RandomStream rng(5);
    const LevyLaw law = jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}});
    const SampledPath p = simulate_path(law, rng, HorizonPolicy::fixed(3.0, 0.1));
    const SampledPath back = time_reversed(time_reversed(p, p.life_end()), p.life_end());
    REQUIRE(back.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(back.times[i] == doctest::Approx(p.times[i]));
      CHECK(back.values[i] == doctest::Approx(p.values[i]));
      CHECK(back.jumps[i] == doctest::Approx(p.jumps[i]));
    }
  }

  TEST_CASE("shift and kill of the tent") {
    const TwoSidedPath at0 = shift_kill(tent(), 0.0);
    CHECK(at0.forward.size() == tent().size());
    CHECK(at0.at(2.0).value() == doctest::Approx(0.0));

    const TwoSidedPath atmax = shift_kill(tent(), 1.0);
    CHECK(atmax.forward.start_value() == doctest::Approx(1.0));
    CHECK(atmax.at(-0.5).value() == doctest::Approx(0.5));
    CHECK(atmax.at(1.0).value() == doctest::Approx(0.0));

    const TwoSidedPath killed = shift_kill(tent(), 1.0, 0.0);
    CHECK(killed.forward.intervals() == 0);
    CHECK(killed.at(0.5).is_dead());
  }

  TEST_CASE("timeline round trip") {
    const TwoSidedPath tp = shift_kill(tent(), 1.0);
    const TwoSidedPath again = TwoSidedPath::from_timeline(tp.timeline());
    for (double t : {-0.9, -0.2, 0.0, 0.7, 2.5}) CHECK(again.at(t).value() == doctest::Approx(tp.at(t).value()));
  }

  TEST_CASE("simulated path invariants") {
    RandomStream rng(11);
    const SampledPath p = simulate_path(brownian_law(-1.0, 1.0), rng, HorizonPolicy::fixed(10.0, 1e-3));
    p.validate();
    CHECK(p.size() >= 10001);
    CHECK(p.jump_count() == 0);
    CHECK(p.start_time() == 0.0);
    CHECK(p.life_end() == doctest::Approx(10.0));

    RandomStream r2(12);
    const LevyLaw jd1 = jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}});
    const SampledPath q = simulate_path(jd1, r2, HorizonPolicy::fixed(50.0, 0.05));
    q.validate();
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      CHECK(q.bridge_max[i] >= std::max(q.values[i], q.left_value(i + 1)));
      const double k = q.times[i + 1] / 0.05;
      if (std::abs(k - std::round(k)) > 1e-6 && i + 2 < q.size()) CHECK(q.jumps[i + 1] != 0.0);
    }
    CHECK(q.jump_count() > 20);
  }

  TEST_CASE("exponential martingale") {
    // E exp(theta xi_1) = 1 for JD1 with theta = 2
    const LevyLaw jd1 = jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}});
    RandomStream rng(99);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const SampledPath p = simulate_path(jd1, rng, HorizonPolicy::fixed(1.0, 0.5));
      const double e = std::exp(2.0 * p.values.back());
      s += e;
      s2 += e * e;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 4.0 * se);
  }

  TEST_CASE("mean jump count matches rate times stop time") {
    const LevyLaw jd1 = jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}});
    const double margin = stop_margin(2.0);
    RandomStream rng(3);
    const int n = 10000;
    double jumps = 0.0, time = 0.0, d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const SampledPath p = simulate_path(jd1, rng, HorizonPolicy::adaptive_max(margin, 0.02));
      const double j = static_cast<double>(p.jump_count());
      jumps += j;
      time += p.life_end();
      d2 += (j - p.life_end()) * (j - p.life_end());
    }
    const double diff = (jumps - time) / n;
    CHECK(std::abs(diff) < 4.0 * std::sqrt(d2 / n / n));
  }

  TEST_CASE("bridge maximum corrects the grid maximum") {
    RandomStream rng(21);
    const LevyLaw law = brownian_law(-1.0, 1.0);
    int strictly_above = 0;
    for (int i = 0; i < 200; ++i) {
      const SampledPath p = simulate_path(law, rng, HorizonPolicy::fixed(5.0, 0.05));
      const double grid = *std::max_element(p.values.begin(), p.values.end());
      const double sup = path_stats(p).sup;
      CHECK(sup >= grid);
      if (sup > grid) ++strictly_above;
    }
    CHECK(strictly_above == 200);
  }

  TEST_CASE("identical substreams give identical paths") {
    const LevyLaw law = jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}});
    RandomStream a = RandomStream::derive(7, 1, 42);
    RandomStream b = RandomStream::derive(7, 1, 42);
    const SampledPath p = simulate_path(law, a, HorizonPolicy::adaptive_max(6.9, 0.02));
    const SampledPath q = simulate_path(law, b, HorizonPolicy::adaptive_max(6.9, 0.02));
    CHECK(p.values == q.values);
    CHECK(p.times == q.times);
    CHECK(locate_max(p).time == locate_max(q).time);
  }
}
