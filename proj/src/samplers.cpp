#include "levylab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levylab/path_stats.hpp"

namespace levylab {

namespace {

double path_min(const SampledPath& p) {
  double m = p.values.back();
  for (const double b : p.bridge_min) m = std::min(m, b);
  return std::min(m, p.values.front());
}

double path_max(const SampledPath& p) {
  double m = p.values.back();
  for (const double b : p.bridge_max) m = std::max(m, b);
  return std::max(m, p.values.front());
}

SampledPath cut(SampledPath p, double horizon) {
  if (std::isfinite(horizon)) return truncate_at_grid(std::move(p), horizon);
  return p;
}

}  // namespace

ConditionedSamplers::ConditionedSamplers(const LevyModel& model, SamplerOptions options)
    : model_(model),
      tilted_(esscher_tilt(model)),
      opt_(options),
      margin_(stop_margin(model.theta())) {
  if (!(opt_.step > 0.0)) throw std::invalid_argument("sampler step must be > 0");
}

HorizonPolicy ConditionedSamplers::decorate(HorizonPolicy p) const {
  if (opt_.refine > 1) p.refined_near(opt_.refine_levels, opt_.refine);
  return p;
}

HorizonPolicy ConditionedSamplers::forward_policy(double after_max) const {
  const double k = margin_;
  return decorate(HorizonPolicy::until(
      [k, after_max](const SimState& s) {
        return s.value <= -k && s.running_max - s.value >= k && s.t - s.argmax_time >= after_max;
      },
      opt_.step, opt_.time_cap));
}

SampledPath ConditionedSamplers::P_down(RandomStream& rng, double horizon) const {
  const double after = std::isfinite(horizon) ? horizon + opt_.step : 0.0;
  auto policy = decorate(HorizonPolicy::adaptive_max(margin_, opt_.step, after, opt_.time_cap));
  if (opt_.refine > 1 && opt_.refine_extremes) policy.refine_near_max = true;
  return cut(post_max(simulate_path(model_.law(), rng, policy, 0.0)), horizon);
}

SampledPath ConditionedSamplers::Ptilde_up(RandomStream& rng, double horizon,
                                           double clear_level) const {
  const double after = std::isfinite(horizon) ? horizon + opt_.step : 0.0;
  auto policy = decorate(HorizonPolicy::adaptive_min(margin_ + std::max(clear_level, 0.0),
                                                     opt_.step, after, opt_.time_cap));
  if (opt_.refine > 1 && opt_.refine_extremes) policy.refine_near_min = true;
  return cut(post_min(simulate_path(tilted_, rng, policy, 0.0)), horizon);
}

SampledPath ConditionedSamplers::Ptilde_up_from(double x, RandomStream& rng, double horizon,
                                                bool* fell_back) const {
  if (fell_back) *fell_back = false;
  if (!(x > 0.0)) return Ptilde_up(rng, horizon);
  const double k = margin_;
  const double after = std::isfinite(horizon) ? horizon + opt_.step : 0.0;
  const auto policy = decorate(HorizonPolicy::until(
      [k, after](const SimState& s) {
        return s.running_min <= 0.0 || (s.value - s.running_min >= k && s.t - s.argmin_time >= after);
      },
      opt_.step, opt_.time_cap));
  for (std::size_t attempt = 0; attempt < opt_.rejection_budget; ++attempt) {
    SampledPath p = simulate_path(tilted_, rng, policy, x);
    if (path_min(p) > 0.0) return cut(std::move(p), horizon);
  }
  if (fell_back) *fell_back = true;
  return affine_values(Ptilde_up(rng, horizon), +1, x);
}

OvershootPair ConditionedSamplers::rho_tilde(RandomStream& rng, double level_factor) const {
  if (!tilted_.has_positive_jumps()) return {0.0, 0.0, 1.0};
  const double level = (level_factor > 0.0 ? level_factor : opt_.rho_level_factor) / theta();
  const auto policy = decorate(HorizonPolicy::until_above(level, opt_.step, opt_.time_cap));
  const SampledPath p = simulate_path(tilted_, rng, policy, 0.0);
  const Passage pass = first_passage_above(p, level);
  if (!pass.by_jump) return {0.0, 0.0, 1.0};
  return {level - pass.before, pass.after - level, 1.0};
}

OvershootPair ConditionedSamplers::rho(RandomStream& rng, std::size_t* attempts) const {
  for (std::size_t n = 1; n <= opt_.rejection_budget; ++n) {
    const OvershootPair pair = rho_tilde(rng);
    if (pair.overshoot == 0.0 || rng.uniform() < std::exp(-theta() * pair.overshoot)) {
      if (attempts) *attempts = n;
      return pair;
    }
  }
  throw BudgetExhausted("rho: no acceptance within " + std::to_string(opt_.rejection_budget) +
                        " attempts");
}

TwoSidedPath ConditionedSamplers::script_P(RandomStream& rng, double back_horizon,
                                           double fwd_horizon, double after_max) const {
  const OvershootPair pair = rho(rng);
  TwoSidedPath out;
  out.backward = Ptilde_up_from(pair.undershoot, rng, back_horizon);
  out.backward.open = false;
  out.forward =
      cut(simulate_path(model_.law(), rng, forward_policy(after_max), pair.overshoot), fwd_horizon);
  return out;
}

TwoSidedPath ConditionedSamplers::script_Q(RandomStream& rng, double back_horizon,
                                           double fwd_horizon) const {
  const double eps = rng.exponential(theta());
  TwoSidedPath out;
  out.forward = affine_values(P_down(rng, fwd_horizon), +1, eps);
  out.backward = affine_values(Ptilde_up(rng, back_horizon), +1, -eps);
  out.backward.open = false;
  return out;
}

ConditionedSamplers::ISDraw ConditionedSamplers::conditioned_IS(double x, RandomStream& rng,
                                                                bool continue_after,
                                                                double after_max) const {
  if (!(x < 0.0)) throw std::invalid_argument("conditioned_IS needs a negative start");
  SampledPath p =
      simulate_path(tilted_, rng, decorate(HorizonPolicy::until_above(0.0, opt_.step, opt_.time_cap)), x);
  const Passage pass = first_passage_above(p, 0.0);
  const std::size_t k = *split_at_first_passage(p, 0.0);
  ISDraw d;
  d.overshoot = pass.after;
  d.undershoot = -pass.before;
  d.weight = std::exp(-theta() * d.overshoot);
  SampledPath pre = slice(p, 0, k);
  d.tau = pre.life_end();
  if (continue_after) {
    const SampledPath post =
        simulate_path(model_.law(), rng, forward_policy(after_max), pass.after);
    d.path = concatenate(std::move(pre), post);
  } else {
    pre.open = false;
    d.path = std::move(pre);
  }
  return d;
}

std::optional<SampledPath> ConditionedSamplers::conditioned_attempt(double x, RandomStream& rng,
                                                                    double after_max) const {
  const double k = margin_;
  const auto policy = decorate(HorizonPolicy::until(
      [k, after_max](const SimState& s) {
        if (!(s.running_max > 0.0)) return s.value <= -k;
        return s.value <= -k && s.running_max - s.value >= k && s.t - s.argmax_time >= after_max;
      },
      opt_.step, opt_.time_cap));
  SampledPath p = simulate_path(model_.law(), rng, policy, x);
  if (path_max(p) > 0.0) return p;
  return std::nullopt;
}

SampledPath ConditionedSamplers::conditioned_rejection(double x, RandomStream& rng,
                                                       std::size_t budget, std::size_t* attempts,
                                                       double after_max) const {
  for (std::size_t n = 1; n <= budget; ++n) {
    if (auto p = conditioned_attempt(x, rng, after_max)) {
      if (attempts) *attempts = n;
      return std::move(*p);
    }
  }
  throw BudgetExhausted("conditioned rejection: no acceptance within " + std::to_string(budget) +
                        " attempts");
}

SampledPath sample_P_down(const LevyModel& model, RandomStream& rng, double horizon) {
  return ConditionedSamplers(model).P_down(rng, horizon);
}

SampledPath sample_Ptilde_up(const LevyModel& model, RandomStream& rng, double horizon) {
  return ConditionedSamplers(model).Ptilde_up(rng, horizon);
}

OvershootPair sample_rho_tilde(const LevyModel& model, RandomStream& rng) {
  return ConditionedSamplers(model).rho_tilde(rng);
}

OvershootPair sample_rho(const LevyModel& model, RandomStream& rng) {
  return ConditionedSamplers(model).rho(rng);
}

TwoSidedPath sample_script_P(const LevyModel& model, RandomStream& rng, double back_horizon,
                             double fwd_horizon) {
  return ConditionedSamplers(model).script_P(rng, back_horizon, fwd_horizon);
}

TwoSidedPath sample_script_Q(const LevyModel& model, RandomStream& rng, double back_horizon,
                             double fwd_horizon) {
  return ConditionedSamplers(model).script_Q(rng, back_horizon, fwd_horizon);
}

WeightedPath sample_conditioned_IS(const LevyModel& model, double x, RandomStream& rng) {
  const auto d = ConditionedSamplers(model).conditioned_IS(x, rng);
  return {shift_kill(d.path, d.tau), d.weight};
}

TwoSidedPath sample_conditioned_rejection(const LevyModel& model, double x, RandomStream& rng,
                                          std::size_t budget) {
  const SampledPath p = ConditionedSamplers(model).conditioned_rejection(x, rng, budget);
  return shift_kill(p, first_passage_above(p, 0.0).time);
}

double default_horizon(const LevyModel& model) noexcept { return 20.0 / std::abs(model.mean()); }

}  // namespace levylab
