#include "levylab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "levylab/bridge.hpp"

namespace levylab {

namespace {

SimState state_of(const SampledPath& path) {
  SimState s;
  s.t = path.life_end();
  s.value = path.values.back();
  s.running_max = path.values.front();
  s.running_min = path.values.front();
  s.argmax_time = s.argmin_time = path.start_time();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path.bridge_max[i] > s.running_max) {
      s.running_max = path.bridge_max[i];
      s.argmax_time = path.times[i];
    }
    if (path.bridge_min[i] < s.running_min) {
      s.running_min = path.bridge_min[i];
      s.argmin_time = path.times[i];
    }
  }
  s.running_max = std::max(s.running_max, s.value);
  s.running_min = std::min(s.running_min, s.value);
  return s;
}

struct JumpSampler {
  double total = 0.0;
  std::vector<double> cumulative;
  std::vector<const JumpSpec*> specs;

  explicit JumpSampler(const LevyLaw& law) {
    for (const auto& j : law.jumps) {
      if (j.rate <= 0.0) continue;
      total += j.rate;
      cumulative.push_back(total);
      specs.push_back(&j);
    }
  }

  double draw(RandomStream& rng) const {
    std::size_t k = 0;
    if (specs.size() > 1) {
      const double u = rng.uniform() * total;
      while (k + 1 < specs.size() && u > cumulative[k]) ++k;
    }
    return specs[k]->sign * rng.exponential(specs[k]->beta);
  }
};

bool near_level(const std::vector<double>& levels, double a, double b, double band);

void extend(SampledPath& path, const LevyLaw& law, RandomStream& rng, const HorizonPolicy& policy,
            SimState st) {
  const double step = policy.step;
  const double sigma = law.sigma;
  const double drift = law.drift;
  const JumpSampler jumps(law);
  const bool fixed = !policy.stop;
  const double t_max = policy.t_max;

  auto k = static_cast<long long>(std::floor(st.t / step + 1e-9)) + 1;
  double next_jump = jumps.total > 0.0 ? st.t + rng.exponential(jumps.total)
                                       : std::numeric_limits<double>::infinity();
  if (fixed) {
    const auto expected = static_cast<std::size_t>((t_max - st.t) / step * 1.05) + 8;
    path.times.reserve(path.size() + expected);
    path.values.reserve(path.size() + expected);
    path.jumps.reserve(path.size() + expected);
    path.bridge_max.reserve(path.size() + expected);
    path.bridge_min.reserve(path.size() + expected);
  }

  for (;;) {
    if (fixed && st.t >= t_max) return;
    double t_next = static_cast<double>(k) * step;
    bool is_jump = false;
    if (next_jump < t_next) {
      t_next = next_jump;
      is_jump = true;
    }
    if (fixed && t_next >= t_max) {
      t_next = t_max;
      is_jump = false;
    }
    if (!fixed && t_next > t_max)
      throw HorizonExhausted("adaptive stop rule unmet by t=" + std::to_string(t_max));
    const double dt = t_next - st.t;
    const double a = st.value;
    const double b = a + drift * dt + sigma * std::sqrt(dt) * rng.normal();
    double jump = 0.0;
    if (is_jump) {
      jump = jumps.draw(rng);
      next_jump = t_next + rng.exponential(jumps.total);
    } else {
      ++k;
    }

    const double band = 3.0 * sigma * std::sqrt(dt);
    const bool subdivide =
        policy.refine > 1 &&
        (near_level(policy.refine_levels, a, b, band) ||
         (policy.refine_near_max && std::max(a, b) > st.running_max - band) ||
         (policy.refine_near_min && std::min(a, b) < st.running_min + band));
    const int pieces = subdivide ? policy.refine : 1;
    double x = a;
    double t0 = st.t;
    for (int j = 1; j <= pieces; ++j) {
      const double t1 = j == pieces ? t_next : st.t + dt * j / pieces;
      double y = b;
      if (j < pieces) {
        const double rem = t_next - t0;
        const double h = t1 - t0;
        y = x + (b - x) * h / rem + sigma * std::sqrt(h * (rem - h) / rem) * rng.normal();
      }
      const double m = bridge::sample_max(x, y, sigma, t1 - t0, rng.uniform());
      const double n = bridge::sample_min(x, y, sigma, t1 - t0, rng.uniform());
      const bool last = j == pieces;
      path.bridge_max.push_back(m);
      path.bridge_min.push_back(n);
      path.times.push_back(t1);
      path.values.push_back(last ? b + jump : y);
      path.jumps.push_back(last ? jump : 0.0);
      if (m > st.running_max) {
        st.running_max = m;
        st.argmax_time = t0;
      }
      if (n < st.running_min) {
        st.running_min = n;
        st.argmin_time = t0;
      }
      x = y;
      t0 = t1;
    }
    st.t = t_next;
    st.value = b + jump;
    st.running_max = std::max(st.running_max, st.value);
    st.running_min = std::min(st.running_min, st.value);
    if (!fixed && policy.stop(st)) break;
  }
  // A jump at the very last point would leave no left limit to close the
  // life-interval with; close with one more diffusion interval instead.
  if (path.jumps.back() != 0.0) {
    const double dt = std::max(step * 1e-3, 1e-12);
    const double a = st.value;
    const double b = a + drift * dt + sigma * std::sqrt(dt) * rng.normal();
    path.bridge_max.push_back(bridge::sample_max(a, b, sigma, dt, rng.uniform()));
    path.bridge_min.push_back(bridge::sample_min(a, b, sigma, dt, rng.uniform()));
    path.times.push_back(st.t + dt);
    path.values.push_back(b);
    path.jumps.push_back(0.0);
  }
}

bool near_level(const std::vector<double>& levels, double a, double b, double band) {
  for (const double l : levels) {
    if ((a - l) * (b - l) <= 0.0) return true;
    if (std::min(std::abs(a - l), std::abs(b - l)) < band) return true;
  }
  return false;
}

HorizonPolicy make_policy(double step, double t_max, std::function<bool(const SimState&)> stop) {
  HorizonPolicy p;
  p.step = step;
  p.t_max = t_max;
  p.stop = std::move(stop);
  return p;
}

}  // namespace

HorizonPolicy HorizonPolicy::fixed(double t_max, double step) { return make_policy(step, t_max, {}); }

HorizonPolicy HorizonPolicy::adaptive_max(double margin, double step, double after_extreme,
                                          double cap) {
  return make_policy(step, cap, [margin, after_extreme](const SimState& s) {
    return s.running_max - s.value >= margin && s.t - s.argmax_time >= after_extreme;
  });
}

HorizonPolicy HorizonPolicy::adaptive_min(double margin, double step, double after_extreme,
                                          double cap) {
  return make_policy(step, cap, [margin, after_extreme](const SimState& s) {
    return s.value - s.running_min >= margin && s.t - s.argmin_time >= after_extreme;
  });
}

HorizonPolicy HorizonPolicy::until_above(double level, double step, double cap) {
  return make_policy(step, cap, [level](const SimState& s) { return s.running_max > level; });
}

HorizonPolicy HorizonPolicy::until(std::function<bool(const SimState&)> rule, double step,
                                   double cap) {
  return make_policy(step, cap, std::move(rule));
}

double stop_margin(double theta) noexcept { return 6.0 * std::numbers::ln10 / theta; }

SampledPath simulate_path(const LevyLaw& law, RandomStream& rng, const HorizonPolicy& policy,
                          double start_value) {
  if (!(policy.step > 0.0)) throw std::invalid_argument("simulation step must be > 0");
  SampledPath path;
  path.step = policy.step;
  path.sigma = law.sigma;
  path.key = rng();
  path.open = true;
  path.times.push_back(0.0);
  path.values.push_back(start_value);
  path.jumps.push_back(0.0);
  SimState st;
  st.value = st.running_max = st.running_min = start_value;
  extend(path, law, rng, policy, st);
  return path;
}

void continue_path(SampledPath& path, const LevyLaw& law, RandomStream& rng,
                   const HorizonPolicy& policy) {
  if (path.empty()) throw PathError("continue_path on an empty path");
  if (!policy.stop && path.life_end() >= policy.t_max) return;
  extend(path, law, rng, policy, state_of(path));
}

}  // namespace levylab
