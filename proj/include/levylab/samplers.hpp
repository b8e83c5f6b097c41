#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levylab/levy_model.hpp"
#include "levylab/path.hpp"
#include "levylab/random.hpp"
#include "levylab/simulate.hpp"

namespace levylab {

/// (undershoot, overshoot) at a first passage, with an importance weight.
struct OvershootPair {
  double undershoot = 0.0;
  double overshoot = 0.0;
  double weight = 1.0;
};

struct WeightedPath {
  TwoSidedPath path;
  double weight = 1.0;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplerOptions {
  double step = 0.02;
  /// Passage level for the stationary overshoot pair, in units of 1/theta.
  double rho_level_factor = 10.0;
  /// Attempts allowed per rejection draw.
  std::size_t rejection_budget = 200000;
  /// Safety cap on simulated time for any single path.
  double time_cap = 1e6;
  /// Local exact subdivision of intervals near these levels (see
  /// HorizonPolicy::refined_near); applied to every simulated path.
  std::vector<double> refine_levels;
  int refine = 1;
  /// Subdivide near the running extreme that the conditioned descents are
  /// cut at (maximum for P_down, minimum for Ptilde_up).
  bool refine_extremes = false;
};

/// Samplers of the conditioned and limiting laws attached to one model.
/// Every method is const and draws only from the stream it is handed.
class ConditionedSamplers {
 public:
  explicit ConditionedSamplers(const LevyModel& model, SamplerOptions options = {});

  const LevyModel& model() const noexcept { return model_; }
  const LevyLaw& tilted() const noexcept { return tilted_; }
  const SamplerOptions& options() const noexcept { return opt_; }
  double theta() const noexcept { return model_.theta(); }
  /// Adaptive stop margin (6 ln 10) / theta.
  double margin() const noexcept { return margin_; }

  /// Post-supremum process of a P-path minus the supremum; covers at least
  /// `horizon` time units (the whole simulated tail when horizon is infinite).
  SampledPath P_down(RandomStream& rng, double horizon = kOpen) const;

  /// Post-infimum process of a tilted path minus the infimum. The path is
  /// simulated until it sits margin + clear_level above its minimum, so last
  /// passages below levels up to clear_level are resolved.
  SampledPath Ptilde_up(RandomStream& rng, double horizon = kOpen, double clear_level = 0.0) const;

  /// Tilted path started at x > 0 conditioned on staying positive, by
  /// rejection. When the budget runs out (x extremely close to 0) the draw
  /// falls back to x + Ptilde_up, which is its weak limit; `fell_back` flags
  /// that case.
  SampledPath Ptilde_up_from(double x, RandomStream& rng, double horizon = kOpen,
                             bool* fell_back = nullptr) const;

  /// Undershoot and overshoot of the tilted path at its first passage above
  /// level_factor / theta, started from 0.
  OvershootPair rho_tilde(RandomStream& rng, double level_factor = 0.0) const;

  /// Rejection from rho_tilde with acceptance exp(-theta * overshoot).
  OvershootPair rho(RandomStream& rng, std::size_t* attempts = nullptr) const;

  /// Two-sided law obtained by exponential tilting of the stationary
  /// overshoot construction: backward part conditioned-positive tilted path
  /// from the undershoot, forward part a P-path from the overshoot.
  TwoSidedPath script_P(RandomStream& rng, double back_horizon = kOpen,
                        double fwd_horizon = kOpen, double after_max = 0.0) const;

  /// Two-sided law with an Exp(theta) peak at time 0.
  TwoSidedPath script_Q(RandomStream& rng, double back_horizon = kOpen,
                        double fwd_horizon = kOpen) const;

  /// IS draw for P_x( . | sup > 0): tilted path from x up to tau, weight
  /// exp(-theta xi_tau), then (when `continue_after`) an untilted
  /// continuation that covers the supremum, the last positive time and at
  /// least `after_max` time units past the argmax.
  struct ISDraw {
    SampledPath path;
    double tau = 0.0;
    double weight = 1.0;
    double undershoot = 0.0;
    double overshoot = 0.0;
  };
  ISDraw conditioned_IS(double x, RandomStream& rng, bool continue_after = true,
                        double after_max = 1.0) const;

  /// One rejection attempt for P_x( . | sup > 0). Returns the full path on
  /// acceptance; a rejected attempt stops as soon as the path is margin below 0
  /// without having crossed it.
  std::optional<SampledPath> conditioned_attempt(double x, RandomStream& rng,
                                                 double after_max = 1.0) const;
  /// Repeats attempts until one is accepted; throws BudgetExhausted.
  SampledPath conditioned_rejection(double x, RandomStream& rng, std::size_t budget,
                                    std::size_t* attempts = nullptr, double after_max = 1.0) const;

  /// Stop rule for an untilted path that must resolve its supremum, its last
  /// positive time and `after_max` time units after the argmax.
  HorizonPolicy forward_policy(double after_max) const;

  static constexpr double kOpen = std::numeric_limits<double>::infinity();

 private:
  HorizonPolicy decorate(HorizonPolicy p) const;

  LevyModel model_;
  LevyLaw tilted_;
  SamplerOptions opt_;
  double margin_;
};

/// The operations under their conventional names; each builds the sampler
/// set for the model with default options.
SampledPath sample_P_down(const LevyModel& model, RandomStream& rng, double horizon);
SampledPath sample_Ptilde_up(const LevyModel& model, RandomStream& rng, double horizon);
OvershootPair sample_rho_tilde(const LevyModel& model, RandomStream& rng);
OvershootPair sample_rho(const LevyModel& model, RandomStream& rng);
TwoSidedPath sample_script_P(const LevyModel& model, RandomStream& rng, double back_horizon,
                             double fwd_horizon);
TwoSidedPath sample_script_Q(const LevyModel& model, RandomStream& rng, double back_horizon,
                             double fwd_horizon);
/// Shifted at tau, weight exp(-theta xi_tau).
WeightedPath sample_conditioned_IS(const LevyModel& model, double x, RandomStream& rng);
/// Accepted path shifted at tau.
TwoSidedPath sample_conditioned_rejection(const LevyModel& model, double x, RandomStream& rng,
                                          std::size_t budget);

/// Default two-sided truncation horizon 20 / |mean|.
double default_horizon(const LevyModel& model) noexcept;

}  // namespace levylab
