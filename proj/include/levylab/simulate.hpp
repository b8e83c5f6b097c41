#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "levylab/levy_model.hpp"
#include "levylab/path.hpp"
#include "levylab/random.hpp"

namespace levylab {

/// Raised when an adaptive horizon hits its safety cap before the stop rule
/// fires.
class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Running summary handed to stop rules after each interval.
struct SimState {
  double t = 0.0;
  double value = 0.0;
  double running_max = 0.0;
  double running_min = 0.0;
  double argmax_time = 0.0;  // start of the interval holding the running max
  double argmin_time = 0.0;
};

struct HorizonPolicy {
  double step = 0.02;
  /// Fixed horizon when `stop` is empty; safety cap otherwise.
  double t_max = 1e6;
  std::function<bool(const SimState&)> stop;
  /// Intervals whose endpoints come within three bridge standard deviations
  /// of one of these levels are subdivided into `refine` pieces by exact
  /// bridge sampling before their extremes are drawn.
  std::vector<double> refine_levels;
  int refine = 1;
  /// Also subdivide intervals that come that close to the running maximum
  /// (or minimum), so the interval that will hold the overall extreme is
  /// resolved finely.
  bool refine_near_max = false;
  bool refine_near_min = false;

  HorizonPolicy& refined_near(std::vector<double> levels, int pieces) {
    refine_levels = std::move(levels);
    refine = pieces;
    return *this;
  }

  static HorizonPolicy fixed(double t_max, double step);
  /// Stops once the path sits `margin` below its running maximum and at
  /// least `after_extreme` time units past the interval holding it.
  static HorizonPolicy adaptive_max(double margin, double step, double after_extreme = 0.0,
                                    double cap = 1e6);
  /// Mirror image for upward-drifting laws: stops `margin` above the running
  /// minimum.
  static HorizonPolicy adaptive_min(double margin, double step, double after_extreme = 0.0,
                                    double cap = 1e6);
  /// Stops at the first interval whose bridge maximum exceeds `level`.
  static HorizonPolicy until_above(double level, double step, double cap = 1e6);
  static HorizonPolicy until(std::function<bool(const SimState&)> rule, double step,
                             double cap = 1e6);
};

/// Margin (6 ln 10) / theta: a Cramér process that has fallen this far below
/// its running maximum exceeds it again with probability at most 1e-6.
double stop_margin(double theta) noexcept;

/// Simulates x + xi on the hybrid grid (multiples of `step` plus exact
/// Poisson jump epochs) with exact bridge extremes per interval.
SampledPath simulate_path(const LevyLaw& law, RandomStream& rng, const HorizonPolicy& policy,
                          double start_value = 0.0);

inline SampledPath simulate_path(const LevyModel& model, RandomStream& rng,
                                 const HorizonPolicy& policy, double start_value = 0.0) {
  return simulate_path(model.law(), rng, policy, start_value);
}

/// Extends a simulated path in place under the same law until `policy` stops,
/// with the running state recomputed from the existing samples.
void continue_path(SampledPath& path, const LevyLaw& law, RandomStream& rng,
                   const HorizonPolicy& policy);

}  // namespace levylab
