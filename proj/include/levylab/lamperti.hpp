#pragma once

#include <vector>

#include "levylab/path.hpp"
#include "levylab/random.hpp"
#include "levylab/samplers.hpp"

namespace levylab {

/// Additive functional t -> int exp(sign * xi_s) ds from the start of life,
/// tabulated on the path grid by left-endpoint sums.
struct ClockTable {
  std::vector<double> path_times;
  std::vector<double> clock;
  double total = 0.0;
  int sign = 1;

  /// Clock value at a path time (linear between grid points).
  double at(double path_time) const;
  /// Inverse clock gamma(t): the path time at which the clock reads t.
  double inverse(double t) const;
};

ClockTable lamperti_clock(const SampledPath& path, int sign = +1);
ClockTable lamperti_clock(const TwoSidedPath& path, int sign = +1);

/// Excursion of a positive self-similar Markov process on its own
/// (non-uniform) time grid, started at time 0 and ending at `duration`.
struct Excursion {
  std::vector<double> times;
  std::vector<double> values;
  double height = 0.0;
  double duration = 0.0;
  double argmax = 0.0;
  double clock_total = 0.0;
  /// Clock integrals on either side of the maximum (Williams construction).
  double clock_down = 0.0;
  double clock_up = 0.0;
};

/// X_t = exp(xi at the inverse clock) for a two-sided path, the clock running
/// over the whole life-interval; duration = total clock.
Excursion excursion_from_two_sided(const TwoSidedPath& sample);

/// Excursion with height exactly y, glued at its maximum from independent
/// descents under P-down (after) and P~-up (before), each with its own clock,
/// then scaled by (y, t/y).
Excursion excursion_williams(const ConditionedSamplers& samplers, double y, RandomStream& rng);

/// (c X_{t/c}): heights and durations scale by c.
Excursion scale_excursion(const Excursion& e, double c);

}  // namespace levylab
