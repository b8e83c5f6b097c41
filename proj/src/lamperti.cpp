#include "levylab/lamperti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levylab/path_stats.hpp"

namespace levylab {

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty()) throw PathError("interpolation on an empty table");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1];
  const double x1 = xs[i];
  if (x1 == x0) return ys[i - 1];
  return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - x0) / (x1 - x0);
}

}  // namespace

double ClockTable::at(double path_time) const { return interpolate(path_times, clock, path_time); }

double ClockTable::inverse(double t) const { return interpolate(clock, path_times, t); }

ClockTable lamperti_clock(const SampledPath& path, int sign) {
  ClockTable c;
  c.sign = sign >= 0 ? 1 : -1;
  c.path_times = path.times;
  c.clock.resize(path.size());
  if (path.empty()) return c;
  double acc = 0.0;
  c.clock[0] = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double f = std::exp(c.sign * path.values[i]);
    if (!std::isfinite(f))
      throw std::overflow_error("lamperti_clock: non-finite integrand at t=" +
                                std::to_string(path.times[i]));
    acc += f * path.dt(i);
    c.clock[i + 1] = acc;
  }
  c.total = acc;
  return c;
}

ClockTable lamperti_clock(const TwoSidedPath& path, int sign) {
  return lamperti_clock(path.timeline(), sign);
}

Excursion excursion_from_two_sided(const TwoSidedPath& sample) {
  SampledPath line = sample.timeline();
  if (line.size() < 2) throw PathError("excursion_from_two_sided: degenerate path");
  const std::size_t k = split_at_max(line);
  const ClockTable clock = lamperti_clock(line, +1);
  if (!(clock.total > 0.0)) throw PathError("excursion_from_two_sided: degenerate clock");
  Excursion e;
  e.times = clock.clock;
  e.values.resize(line.size());
  std::transform(line.values.begin(), line.values.end(), e.values.begin(),
                 [](double v) { return std::exp(v); });
  e.height = e.values[k];
  e.argmax = e.times[k];
  e.duration = clock.total;
  e.clock_total = clock.total;
  e.clock_up = e.argmax;
  e.clock_down = clock.total - e.argmax;
  return e;
}

Excursion excursion_williams(const ConditionedSamplers& samplers, double y, RandomStream& rng) {
  if (!(y > 0.0)) throw std::invalid_argument("excursion_williams needs y > 0");
  const SampledPath down = samplers.P_down(rng);
  const SampledPath up = samplers.Ptilde_up(rng);
  const ClockTable cd = lamperti_clock(down, +1);
  const ClockTable cu = lamperti_clock(up, -1);

  Excursion e;
  e.clock_down = cd.total;
  e.clock_up = cu.total;
  e.clock_total = cd.total + cu.total;
  e.times.reserve(down.size() + up.size());
  e.values.reserve(down.size() + up.size());
  // Before the maximum: Y at time -C~_j is exp(-(left limit of the ascent at s_j)).
  for (std::size_t j = up.size(); j-- > 1;) {
    e.times.push_back(y * (cu.total - cu.clock[j]));
    e.values.push_back(y * std::exp(-up.left_value(j)));
  }
  e.argmax = y * cu.total;
  for (std::size_t i = 0; i < down.size(); ++i) {
    e.times.push_back(y * (cu.total + cd.clock[i]));
    e.values.push_back(y * std::exp(down.values[i]));
  }
  e.height = *std::max_element(e.values.begin(), e.values.end());
  e.duration = y * e.clock_total;
  return e;
}

Excursion scale_excursion(const Excursion& e, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_excursion needs c > 0");
  Excursion s = e;
  for (auto& t : s.times) t *= c;
  for (auto& v : s.values) v *= c;
  s.height *= c;
  s.duration *= c;
  s.argmax *= c;
  s.clock_total *= c;
  s.clock_down *= c;
  s.clock_up *= c;
  return s;
}

}  // namespace levylab
