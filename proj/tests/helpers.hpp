#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "levylab/path.hpp"

namespace levylab::testing {

/// Deterministic piecewise-linear path through the given (time, value) knots.
inline SampledPath linear_path(const std::vector<std::pair<double, double>>& knots) {
  SampledPath p;
  p.sigma = 0.0;
  p.step = 1.0;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [t, v] = knots[i];
    p.times.push_back(t);
    p.values.push_back(v);
    p.jumps.push_back(0.0);
    if (i + 1 < knots.size()) {
      p.bridge_max.push_back(std::max(v, knots[i + 1].second));
      p.bridge_min.push_back(std::min(v, knots[i + 1].second));
    }
  }
  return p;
}

/// 0 -> 1 on [0, 1], then 1 -> -2 on [1, 4].
inline SampledPath tent() { return linear_path({{0.0, 0.0}, {1.0, 1.0}, {4.0, -2.0}}); }

/// xi_t = -t sampled every `step` up to `t_end`.
inline SampledPath minus_t(double t_end, double step) {
  std::vector<std::pair<double, double>> k;
  const auto n = static_cast<std::size_t>(std::llround(t_end / step));
  for (std::size_t i = 0; i <= n; ++i) k.emplace_back(i * step, -static_cast<double>(i) * step);
  return linear_path(k);
}

}  // namespace levylab::testing
