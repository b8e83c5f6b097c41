#include "levylab/path.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>

#include "levylab/bridge.hpp"
#include "levylab/keyed.hpp"
#include "levylab/random.hpp"

namespace levylab {

std::size_t SampledPath::jump_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(jumps.begin(), jumps.end(), [](double j) { return j != 0.0; }));
}

void SampledPath::push(double t, double value, double jump, double bmax, double bmin) {
  times.push_back(t);
  values.push_back(value);
  jumps.push_back(jump);
  bridge_max.push_back(bmax);
  bridge_min.push_back(bmin);
}

void SampledPath::validate() const {
  const std::size_t n = times.size();
  if (values.size() != n || jumps.size() != n)
    throw PathError("times, values and jumps differ in length");
  if (n == 0) {
    if (!bridge_max.empty() || !bridge_min.empty())
      throw PathError("empty path carries bridge extremes");
    return;
  }
  if (bridge_max.size() != n - 1 && bridge_max.size() != n)
    throw PathError("bridge_max must have one entry per interval");
  if (bridge_min.size() != bridge_max.size())
    throw PathError("bridge_min and bridge_max differ in length");
  if (jumps.front() != 0.0) throw PathError("first point carries a jump");
  if (n > 1 && jumps.back() != 0.0) throw PathError("last point carries a jump");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i]) || !std::isfinite(jumps[i]))
      throw PathError("non-finite entry at point " + std::to_string(i));
  }
  constexpr double kSlack = 1e-12;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(times[i + 1] > times[i]))
      throw PathError("times not strictly increasing at point " + std::to_string(i + 1));
    const double a = values[i];
    const double b = left_value(i + 1);
    const double tol = kSlack * (1.0 + std::abs(a) + std::abs(b));
    if (bridge_max[i] < std::max(a, b) - tol)
      throw PathError("bridge maximum below an endpoint in interval " + std::to_string(i));
    if (bridge_min[i] > std::min(a, b) + tol)
      throw PathError("bridge minimum above an endpoint in interval " + std::to_string(i));
  }
}

std::size_t interval_index(const SampledPath& path, double t) {
  if (path.size() < 2) return 0;
  const auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
  std::size_t i = it == path.times.begin() ? 0 : static_cast<std::size_t>(it - path.times.begin()) - 1;
  return std::min(i, path.size() - 2);
}

PathValue value_at(const SampledPath& path, double t) {
  if (path.empty() || t < path.start_time()) return PathValue::dead();
  const double end = path.life_end();
  if (t > end || (t == end && !path.open && path.size() > 1)) return PathValue::dead();
  if (path.size() == 1) return path.values[0];
  const std::size_t i = interval_index(path, t);
  if (t == path.times[i]) return path.values[i];
  if (t == end) return path.values.back();
  const double r = (t - path.times[i]) / path.dt(i);
  return path.values[i] + r * (path.left_value(i + 1) - path.values[i]);
}

std::size_t insert_point(SampledPath& path, double t, double value, const SubExtremes& pin) {
  if (path.size() < 2 || !(t > path.start_time()) || !(t < path.life_end()))
    throw PathError("insert_point: time " + std::to_string(t) + " not strictly inside the life-interval");
  std::size_t i = interval_index(path, t);
  if (t == path.times[i]) return i;
  const double t0 = path.times[i];
  const double t1 = path.times[i + 1];
  const double a = path.values[i];
  const double b = path.left_value(i + 1);
  const double hi = path.bridge_max[i];
  const double lo = path.bridge_min[i];
  const double s = path.sigma;
  const std::uint64_t counter = std::bit_cast<std::uint64_t>(t);

  const auto draw_max = [&](double x, double y, double dt, keyed::Purpose p) {
    if (s <= 0.0) return std::max(x, y);
    const double m = bridge::sample_max(x, y, s, dt, keyed_uniform(path.key, counter, p));
    return std::clamp(m, std::max(x, y), std::max(hi, std::max(x, y)));
  };
  const auto draw_min = [&](double x, double y, double dt, keyed::Purpose p) {
    if (s <= 0.0) return std::min(x, y);
    const double m = bridge::sample_min(x, y, s, dt, keyed_uniform(path.key, counter, p));
    return std::clamp(m, std::min(lo, std::min(x, y)), std::min(x, y));
  };

  const double lmax = pin.left_max.value_or(draw_max(a, value, t - t0, keyed::Purpose::insert_left_max));
  const double lmin = pin.left_min.value_or(draw_min(a, value, t - t0, keyed::Purpose::insert_left_min));
  const double rmax = pin.right_max.value_or(draw_max(value, b, t1 - t, keyed::Purpose::insert_right_max));
  const double rmin = pin.right_min.value_or(draw_min(value, b, t1 - t, keyed::Purpose::insert_right_min));

  const auto pos = static_cast<std::ptrdiff_t>(i + 1);
  path.times.insert(path.times.begin() + pos, t);
  path.values.insert(path.values.begin() + pos, value);
  path.jumps.insert(path.jumps.begin() + pos, 0.0);
  path.bridge_max[i] = lmax;
  path.bridge_min[i] = lmin;
  path.bridge_max.insert(path.bridge_max.begin() + pos, rmax);
  path.bridge_min.insert(path.bridge_min.begin() + pos, rmin);
  return i + 1;
}

SampledPath slice(const SampledPath& path, std::size_t i0, std::size_t i1) {
  if (i0 > i1 || i1 >= path.size()) throw PathError("slice: bad index range");
  SampledPath out;
  out.step = path.step;
  out.sigma = path.sigma;
  out.key = path.key;
  out.open = i1 + 1 == path.size() ? path.open : false;
  const auto b = static_cast<std::ptrdiff_t>(i0);
  const auto e = static_cast<std::ptrdiff_t>(i1) + 1;
  out.times.assign(path.times.begin() + b, path.times.begin() + e);
  out.values.assign(path.values.begin() + b, path.values.begin() + e);
  out.jumps.assign(path.jumps.begin() + b, path.jumps.begin() + e);
  out.bridge_max.assign(path.bridge_max.begin() + b, path.bridge_max.begin() + e - 1);
  out.bridge_min.assign(path.bridge_min.begin() + b, path.bridge_min.begin() + e - 1);
  out.jumps.front() = 0.0;
  if (out.size() > 1) {
    out.values.back() -= out.jumps.back();
    out.jumps.back() = 0.0;
  }
  return out;
}

SampledPath shifted(SampledPath path, double dt) {
  for (auto& t : path.times) t += dt;
  return path;
}

SampledPath affine_values(SampledPath path, int sign, double offset) {
  const double s = sign >= 0 ? 1.0 : -1.0;
  for (auto& v : path.values) v = s * v + offset;
  for (auto& j : path.jumps) j *= s;
  for (auto& m : path.bridge_max) m = s * m + offset;
  for (auto& m : path.bridge_min) m = s * m + offset;
  if (s < 0.0) std::swap(path.bridge_max, path.bridge_min);
  return path;
}

SampledPath time_reversed(const SampledPath& path, double pivot) {
  SampledPath out;
  out.step = path.step;
  out.sigma = path.sigma;
  out.key = mix64(path.key ^ UINT64_C(0x5245564552534544));
  out.open = path.open;
  const std::size_t n = path.size();
  if (n == 0) return out;
  out.times.resize(n);
  out.values.resize(n);
  out.jumps.assign(n, 0.0);
  out.bridge_max.resize(n - 1);
  out.bridge_min.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = n - 1 - k;
    out.times[k] = pivot - path.times[i];
    out.values[k] = path.left_value(i);
    if (k > 0 && k + 1 < n) out.jumps[k] = -path.jumps[i];
  }
  if (n > 1) out.values[n - 1] = path.values[0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out.bridge_max[k] = path.bridge_max[n - 2 - k];
    out.bridge_min[k] = path.bridge_min[n - 2 - k];
  }
  return out;
}

SampledPath concatenate(SampledPath head, const SampledPath& tail) {
  if (tail.empty()) return head;
  if (head.empty()) return tail;
  const double t0 = head.life_end();
  const double left = head.values.back();
  head.values.back() = tail.values.front();
  head.jumps.back() = tail.values.front() - left;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    head.times.push_back(t0 + tail.times[i]);
    head.values.push_back(tail.values[i]);
    head.jumps.push_back(tail.jumps[i]);
  }
  head.bridge_max.insert(head.bridge_max.end(), tail.bridge_max.begin(), tail.bridge_max.end());
  head.bridge_min.insert(head.bridge_min.end(), tail.bridge_min.begin(), tail.bridge_min.end());
  head.open = tail.open;
  return head;
}

SampledPath refine_path(const SampledPath& path, RandomStream& rng) {
  SampledPath out;
  out.step = 0.5 * path.step;
  out.sigma = path.sigma;
  out.key = rng();
  out.open = path.open;
  if (path.empty()) return out;
  out.times.reserve(2 * path.size());
  out.push(path.times[0], path.values[0], 0.0, 0.0, 0.0);
  out.bridge_max.pop_back();
  out.bridge_min.pop_back();
  const double s = path.sigma;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double a = path.values[i];
    const double b = path.left_value(i + 1);
    const double h = 0.5 * path.dt(i);
    const double mid = bridge::sample_point(a, b, 0.5, s, path.dt(i), rng.normal());
    const double m1 = s > 0.0 ? bridge::sample_max(a, mid, s, h, rng.uniform()) : std::max(a, mid);
    const double n1 = s > 0.0 ? bridge::sample_min(a, mid, s, h, rng.uniform()) : std::min(a, mid);
    const double m2 = s > 0.0 ? bridge::sample_max(mid, b, s, h, rng.uniform()) : std::max(mid, b);
    const double n2 = s > 0.0 ? bridge::sample_min(mid, b, s, h, rng.uniform()) : std::min(mid, b);
    out.bridge_max.push_back(m1);
    out.bridge_min.push_back(n1);
    out.times.push_back(path.times[i] + h);
    out.values.push_back(mid);
    out.jumps.push_back(0.0);
    out.bridge_max.push_back(m2);
    out.bridge_min.push_back(n2);
    out.times.push_back(path.times[i + 1]);
    out.values.push_back(path.values[i + 1]);
    out.jumps.push_back(path.jumps[i + 1]);
  }
  return out;
}

SampledPath truncate_at_grid(SampledPath path, double t_end) {
  if (path.size() < 2 || path.life_end() <= t_end) return path;
  const auto it = std::lower_bound(path.times.begin(), path.times.end(), t_end);
  const auto i = static_cast<std::size_t>(it - path.times.begin());
  path = slice(path, 0, std::max<std::size_t>(i, 1));
  path.open = true;
  return path;
}

void write_path_csv(std::ostream& os, const SampledPath& path) {
  os << "time,value,is_jump,bridge_max\n";
  const auto prec = os.precision(17);
  for (std::size_t i = 0; i < path.size(); ++i) {
    os << path.times[i] << ',' << path.values[i] << ',' << (path.jumps[i] != 0.0 ? 1 : 0) << ',';
    if (i + 1 < path.size()) os << path.bridge_max[i];
    os << '\n';
  }
  os.precision(prec);
}

SampledPath TwoSidedPath::timeline() const {
  if (backward.empty()) return forward;
  // Reversal turns the backward part's values into left limits of the line.
  SampledPath line = affine_values(time_reversed(backward, 0.0), -1, 0.0);
  line.open = forward.open;
  if (forward.empty()) return line;
  return concatenate(std::move(line), shifted(forward, -forward.start_time()));
}

TwoSidedPath TwoSidedPath::from_timeline(SampledPath line) {
  TwoSidedPath out;
  if (line.empty()) return out;
  if (line.start_time() > 0.0) throw PathError("from_timeline: life-interval starts after 0");
  if (line.life_end() < 0.0) throw PathError("from_timeline: life-interval ends before 0");
  std::size_t k0 = 0;
  const auto it = std::lower_bound(line.times.begin(), line.times.end(), 0.0);
  if (it != line.times.end() && *it == 0.0) {
    k0 = static_cast<std::size_t>(it - line.times.begin());
  } else {
    k0 = insert_point(line, 0.0, value_at(line, 0.0).value());
  }
  const bool killed_at_zero = k0 + 1 == line.size() && !line.open && line.size() > 1;
  if (!killed_at_zero) {
    out.forward = slice(line, k0, line.size() - 1);
    out.forward.values.front() = line.values[k0];
    out.forward.open = line.open;
    if (out.forward.size() == 1) out.forward.open = line.open;
  } else {
    out.forward.step = line.step;
    out.forward.sigma = line.sigma;
    out.forward.key = line.key;
    out.forward.open = false;
  }
  if (k0 > 0) {
    SampledPath pre = slice(line, 0, k0);
    out.backward = affine_values(time_reversed(pre, 0.0), -1, 0.0);
    out.backward.open = false;
  } else {
    out.backward.step = line.step;
    out.backward.sigma = line.sigma;
    out.backward.key = line.key;
    out.backward.open = false;
  }
  return out;
}

PathValue TwoSidedPath::at(double t) const {
  if (t >= 0.0) return value_at(forward, t);
  // xi_t = -backward((-t)-): the left limit is the stored value off the grid.
  const double s = -t;
  if (backward.empty() || s > backward.life_end()) return PathValue::dead();
  const std::size_t i = interval_index(backward, s);
  if (s == backward.times[i]) {
    if (i == 0) return -backward.values[0];
    return -backward.left_value(i);
  }
  if (s == backward.life_end()) return -backward.values.back();
  return -value_at(backward, s).value();
}

}  // namespace levylab
