#include "levylab/path_stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "levylab/bridge.hpp"
#include "levylab/keyed.hpp"

namespace levylab {

namespace {

std::uint64_t interval_counter(const SampledPath& path, std::size_t i, double level = 0.0) {
  return hash_combine(std::bit_cast<std::uint64_t>(path.times[i]),
                      std::bit_cast<std::uint64_t>(level));
}

// Shared implementation for the max (sign = +1) and the min (sign = -1):
// everything is expressed for s * xi.
Extreme locate_extreme(const SampledPath& path, int sign) {
  if (path.empty()) throw PathError("extreme of an empty path");
  const double s = sign;
  const auto& ext = sign > 0 ? path.bridge_max : path.bridge_min;
  Extreme e{0, path.times[0], path.values[0]};
  double best = s * path.values[0];
  std::optional<std::size_t> best_i;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (s * ext[i] > best) {
      best = s * ext[i];
      best_i = i;
    }
  }
  if (path.size() > 1 && s * path.values.back() > best) {
    return {path.size() - 1, path.life_end(), path.values.back()};
  }
  if (!best_i) return e;
  const std::size_t i = *best_i;
  const double a = s * path.values[i];
  const double b = s * path.left_value(i + 1);
  const double m = best;
  const double dt = path.dt(i);
  double frac = 0.0;
  if (path.sigma <= 0.0 || m <= a) {
    frac = (path.sigma <= 0.0 && b > a) ? 1.0 : 0.0;
  } else if (m <= b) {
    frac = 1.0;
  } else {
    const auto purpose = sign > 0 ? keyed::Purpose::argmax : keyed::Purpose::argmin;
    const double u = keyed_uniform(path.key, interval_counter(path, i), purpose);
    frac = bridge::sample_argmax_fraction(a, b, m, path.sigma, dt, u);
  }
  const double t = frac >= 1.0 ? path.times[i + 1] : path.times[i] + frac * dt;
  return {i, t, s * m};
}

Passage passage_impl(const SampledPath& path, double level, int sign) {
  Passage p;
  const double s = sign;
  const double y = s * level;
  const auto& ext = sign > 0 ? path.bridge_max : path.bridge_min;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (s * path.values[i] > y) {
      p.time = path.times[i];
      p.interval = i;
      p.after = path.values[i];
      p.before = i > 0 ? path.left_value(i) : path.values[i];
      p.by_jump = i > 0 && s * p.before <= y;
      return p;
    }
    if (i + 1 == path.size() || !(s * ext[i] > y)) continue;
    const double a = s * path.values[i];
    const double b = s * path.left_value(i + 1);
    const double dt = path.dt(i);
    double frac = 0.0;
    if (path.sigma <= 0.0) {
      frac = (y - a) / (b - a);
    } else {
      const double u =
          keyed_uniform(path.key, interval_counter(path, i, level), keyed::Purpose::first_passage);
      frac = bridge::sample_first_passage_fraction(a, b, y, path.sigma, dt, u);
    }
    p.time = path.times[i] + frac * dt;
    p.interval = i;
    p.before = p.after = level;
    p.by_jump = false;
    return p;
  }
  return p;
}

// sup{t : s * xi_t > s * level}.
double last_impl(const SampledPath& path, double level, int sign) {
  if (path.empty()) throw PathError("last passage on an empty path");
  const double s = sign;
  const double y = s * level;
  const auto& ext = sign > 0 ? path.bridge_max : path.bridge_min;
  const std::size_t n = path.size();
  if (n == 1) return path.times[0];
  if (s * path.values.back() > y) return path.life_end();
  for (std::size_t k = n - 1; k-- > 0;) {
    const double a = s * path.values[k];
    const double b = s * path.left_value(k + 1);
    if (b > y) return path.times[k + 1];
    if (!(s * ext[k] > y)) continue;
    const double dt = path.dt(k);
    double frac = 0.0;
    if (path.sigma <= 0.0) {
      frac = (a - y) / (a - b);
    } else {
      const double u =
          keyed_uniform(path.key, interval_counter(path, k, level), keyed::Purpose::last_passage);
      frac = bridge::sample_last_passage_fraction(a, b, y, path.sigma, dt, u);
    }
    return path.times[k] + frac * dt;
  }
  return path.start_time();
}

std::size_t index_or_insert(SampledPath& path, double t, double value, const SubExtremes& pin) {
  const auto it = std::lower_bound(path.times.begin(), path.times.end(), t);
  if (it != path.times.end() && *it == t) return static_cast<std::size_t>(it - path.times.begin());
  return insert_point(path, t, value, pin);
}

}  // namespace

Extreme locate_max(const SampledPath& path) { return locate_extreme(path, +1); }
Extreme locate_min(const SampledPath& path) { return locate_extreme(path, -1); }

Passage first_passage_above(const SampledPath& path, double level) {
  return passage_impl(path, level, +1);
}
Passage first_passage_below(const SampledPath& path, double level) {
  return passage_impl(path, level, -1);
}

double last_time_above(const SampledPath& path, double level) {
  return last_impl(path, level, +1);
}
double last_time_below(const SampledPath& path, double level) {
  return last_impl(path, level, -1);
}

double occupation_above(const SampledPath& path, double level, double t0, double t1) {
  double total = 0.0;
  const double s = path.sigma;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double lo_t = path.times[i];
    const double hi_t = path.times[i + 1];
    if (hi_t <= t0 || lo_t >= t1) continue;
    const double dt = hi_t - lo_t;
    const double r0 = std::max(0.0, (t0 - lo_t) / dt);
    const double r1 = std::min(1.0, (t1 - lo_t) / dt);
    const double window = (r1 - r0) * dt;
    if (!(window > 0.0)) continue;
    const double a = path.values[i];
    const double b = path.left_value(i + 1);
    double occ = 0.0;
    if (a <= level && b <= level) {
      if (path.bridge_max[i] > level) {
        const double p = bridge::prob_exceeds(a, b, level, s, dt);
        const double e = bridge::expected_time_above(a, b, level, s, dt, r0, r1);
        occ = p > 0.0 ? e / p : 0.0;
      }
    } else if (a > level && b > level) {
      occ = window;
      if (path.bridge_min[i] <= level) {
        const double p = bridge::prob_exceeds(-a, -b, -level, s, dt);
        const double below = window - bridge::expected_time_above(a, b, level, s, dt, r0, r1);
        occ = window - (p > 0.0 ? below / p : 0.0);
      }
    } else {
      occ = bridge::expected_time_above(a, b, level, s, dt, r0, r1);
    }
    total += std::clamp(occ, 0.0, window);
  }
  return total;
}

PathStats path_stats(const SampledPath& path, const std::vector<double>& levels) {
  PathStats st;
  if (path.empty()) return st;
  const Extreme mx = locate_max(path);
  const Extreme mn = locate_min(path);
  st.sup = mx.value;
  st.argmax = mx.time;
  st.inf = mn.value;
  st.argmin = mn.time;
  st.tau = first_passage_above(path, 0.0).time;
  st.first_neg = first_passage_below(path, 0.0).time;
  st.occupation_pos = occupation_above(path, 0.0);
  st.last_pos = last_time_above(path, 0.0);
  st.levels.reserve(levels.size());
  for (const double y : levels) {
    LevelStats ls;
    ls.level = y;
    ls.tau = first_passage_above(path, y).time;
    ls.last_above = last_time_above(path, y);
    ls.last_below = last_time_below(path, y);
    ls.occupation_above = occupation_above(path, y);
    st.levels.push_back(ls);
  }
  return st;
}

std::size_t split_at_max(SampledPath& path) {
  const Extreme e = locate_max(path);
  SubExtremes pin;
  pin.left_max = e.value;
  pin.right_max = e.value;
  return index_or_insert(path, e.time, e.value, pin);
}

std::size_t split_at_min(SampledPath& path) {
  const Extreme e = locate_min(path);
  SubExtremes pin;
  pin.left_min = e.value;
  pin.right_min = e.value;
  return index_or_insert(path, e.time, e.value, pin);
}

std::optional<std::size_t> split_at_first_passage(SampledPath& path, double level) {
  const Passage p = first_passage_above(path, level);
  if (!p.happened()) return std::nullopt;
  if (p.time == path.times[p.interval]) return p.interval;
  SubExtremes pin;
  pin.left_max = level;
  pin.right_max = path.bridge_max[p.interval];
  return index_or_insert(path, p.time, level, pin);
}

std::optional<std::size_t> split_at_last_below(SampledPath& path, double level) {
  const double t = last_time_below(path, level);
  SubExtremes pin;
  if (path.size() >= 2) {
    pin.left_min = path.bridge_min[interval_index(path, t)];
    pin.right_min = level;
  }
  return index_or_insert(path, t, level, pin);
}

std::optional<std::size_t> split_at_last_above(SampledPath& path, double level) {
  const double t = last_time_above(path, level);
  SubExtremes pin;
  if (path.size() >= 2) {
    pin.left_max = path.bridge_max[interval_index(path, t)];
    pin.right_max = level;
  }
  return index_or_insert(path, t, level, pin);
}

TwoSidedPath reverse_path(const SampledPath& path, double pivot) {
  if (path.empty() || pivot < path.start_time() || pivot > path.life_end())
    throw PathError("reverse_path: pivot outside the life-interval");
  return TwoSidedPath::from_timeline(time_reversed(path, pivot));
}

TwoSidedPath reverse_path(const TwoSidedPath& path, double pivot) {
  return reverse_path(path.timeline(), pivot);
}

TwoSidedPath shift_kill(const SampledPath& path, double shift_at, std::optional<double> kill_at) {
  if (path.empty() || shift_at < path.start_time() || shift_at > path.life_end())
    throw PathError("shift_kill: shift time outside the life-interval");
  TwoSidedPath out = TwoSidedPath::from_timeline(shifted(path, -shift_at));
  if (kill_at) {
    SampledPath& f = out.forward;
    if (*kill_at <= 0.0) {
      f.times.clear();
      f.values.clear();
      f.jumps.clear();
      f.bridge_max.clear();
      f.bridge_min.clear();
      f.open = false;
    } else if (f.size() >= 2 && *kill_at < f.life_end()) {
      const std::size_t k = index_or_insert(f, *kill_at, value_at(f, *kill_at).value(), {});
      f = slice(f, 0, k);
      f.open = false;
    }
  }
  return out;
}

TwoSidedPath shift_kill(const TwoSidedPath& path, double shift_at, std::optional<double> kill_at) {
  return shift_kill(path.timeline(), shift_at, kill_at);
}

SampledPath reversed_pre_max(const SampledPath& path) {
  SampledPath p = path;
  const std::size_t k = split_at_max(p);
  const double sup = p.values[k];
  const double sigma = p.times[k];
  SampledPath out = affine_values(time_reversed(slice(p, 0, k), sigma), -1, sup);
  out.open = false;
  return out;
}

SampledPath post_max(SampledPath path) {
  const std::size_t k = split_at_max(path);
  const double sup = path.values[k];
  const double t = path.times[k];
  return affine_values(shifted(slice(path, k, path.size() - 1), -t), +1, -sup);
}

SampledPath post_min(SampledPath path) {
  const std::size_t k = split_at_min(path);
  const double inf = path.values[k];
  const double t = path.times[k];
  return affine_values(shifted(slice(path, k, path.size() - 1), -t), +1, -inf);
}

}  // namespace levylab
