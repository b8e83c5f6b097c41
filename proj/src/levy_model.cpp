#include "levylab/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace levylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootRelTol = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_jumps(const LevyLaw& law) {
  for (const auto& j : law.jumps) {
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate))
      throw ModelError(ModelErrorKind::invalid_jump,
                       "jump rate must be finite and >= 0, got " + fmt(j.rate));
    if (!(j.beta > 0.0) || !std::isfinite(j.beta))
      throw ModelError(ModelErrorKind::invalid_jump,
                       "jump magnitude rate beta must be > 0, got " + fmt(j.beta));
    if (j.sign != 1 && j.sign != -1)
      throw ModelError(ModelErrorKind::invalid_jump,
                       "jump sign must be +1 or -1, got " + std::to_string(j.sign));
  }
}

// Bisection for a sign change of f on [lo, hi] with f(lo) < 0 < f(hi), then a
// guarded Newton polish.
template <class F, class DF>
double bracketed_root(F f, DF df, double lo, double hi) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= kRootRelTol * std::max(std::abs(lo), std::abs(hi))) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = df(x);
    if (d == 0.0) break;
    const double next = x - f(x) / d;
    if (!(next > lo && next < hi)) break;
    x = next;
  }
  return x;
}

// Positive root of psi, or a ModelError explaining why there is none.
double positive_root(const LevyLaw& law) {
  const auto f = [&](double s) { return cumulant(law, s); };
  const auto df = [&](double s) { return cumulant_derivative(law, s); };
  const double upper = cumulant_domain(law).second;

  double hi = 0.0;
  if (std::isfinite(upper)) {
    bool found = false;
    for (int k = 1; k <= 200; ++k) {
      hi = upper * (1.0 - std::ldexp(1.0, -k));
      if (f(hi) > 0.0) {
        found = true;
        break;
      }
    }
    if (!found)
      throw ModelError(ModelErrorKind::pole_before_root,
                       "cumulant stays negative up to the pole at s=" + fmt(upper) +
                           "; no Cramér exponent exists");
  } else {
    hi = 1.0;
    while (!(f(hi) > 0.0)) {
      hi *= 2.0;
      if (hi > 1e12)
        throw ModelError(ModelErrorKind::no_root,
                         "cumulant has no positive root; Cramér's condition fails");
    }
  }
  double lo = hi;
  for (int k = 0; k < 2000 && !(f(lo) < 0.0); ++k) lo *= 0.5;
  if (!(f(lo) < 0.0))
    throw ModelError(ModelErrorKind::no_root,
                     "could not bracket the Cramér root below s=" + fmt(hi));
  return bracketed_root(f, df, lo, hi);
}

// Negative root, used only to explain failures for upward-drifting laws.
std::optional<double> negative_root(const LevyLaw& law) {
  LevyLaw mirrored = law;
  mirrored.drift = -law.drift;
  for (auto& j : mirrored.jumps) j.sign = -j.sign;
  try {
    return -positive_root(mirrored);
  } catch (const ModelError&) {
    return std::nullopt;
  }
}

}  // namespace

double LevyLaw::total_jump_rate() const noexcept {
  double r = 0.0;
  for (const auto& j : jumps) r += j.rate;
  return r;
}

bool LevyLaw::has_positive_jumps() const noexcept {
  return std::any_of(jumps.begin(), jumps.end(),
                     [](const JumpSpec& j) { return j.rate > 0.0 && j.sign > 0; });
}

bool LevyLaw::has_negative_jumps() const noexcept {
  return std::any_of(jumps.begin(), jumps.end(),
                     [](const JumpSpec& j) { return j.rate > 0.0 && j.sign < 0; });
}

std::pair<double, double> cumulant_domain(const LevyLaw& law) noexcept {
  double lower = -kInf;
  double upper = kInf;
  for (const auto& j : law.jumps) {
    if (j.rate <= 0.0) continue;
    if (j.sign > 0)
      upper = std::min(upper, j.beta);
    else
      lower = std::max(lower, -j.beta);
  }
  return {lower, upper};
}

double cumulant(const LevyLaw& law, double s) {
  double v = law.drift * s + 0.5 * law.sigma * law.sigma * s * s;
  for (const auto& j : law.jumps) {
    if (j.rate == 0.0) continue;
    const double denom = j.beta - j.sign * s;
    if (!(denom > 0.0))
      throw ModelError(ModelErrorKind::domain,
                       "cumulant evaluated at s=" + fmt(s) +
                           ", outside the jump transform domain (pole at " +
                           fmt(j.sign * j.beta) + ")");
    v += j.rate * (j.beta / denom - 1.0);
  }
  return v;
}

double cumulant_derivative(const LevyLaw& law, double s) {
  double v = law.drift + law.sigma * law.sigma * s;
  for (const auto& j : law.jumps) {
    if (j.rate == 0.0) continue;
    const double denom = j.beta - j.sign * s;
    if (!(denom > 0.0))
      throw ModelError(ModelErrorKind::domain,
                       "cumulant derivative evaluated at s=" + fmt(s) +
                           ", outside the jump transform domain");
    v += j.rate * j.sign * j.beta / (denom * denom);
  }
  return v;
}

double cramer_exponent(const LevyLaw& law) {
  check_jumps(law);
  if (cumulant_derivative(law, 0.0) >= 0.0)
    throw ModelError(ModelErrorKind::no_downward_drift,
                     "mean " + fmt(cumulant_derivative(law, 0.0)) +
                         " >= 0: the process does not drift to -inf");
  return positive_root(law);
}

LevyModel validate_model(const LevyLaw& law) {
  check_jumps(law);
  if (!(law.sigma > 0.0) || !std::isfinite(law.sigma))
    throw ModelError(ModelErrorKind::non_regular,
                     "sigma=" + fmt(law.sigma) +
                         " violates regularity of 0 for both half-lines (needs sigma > 0)");
  if (!std::isfinite(law.drift))
    throw ModelError(ModelErrorKind::invalid_jump, "drift must be finite");

  const double mean = cumulant_derivative(law, 0.0);
  if (mean >= 0.0) {
    std::string msg = "drifts to +inf (mean " + fmt(mean) + " >= 0)";
    if (const auto r = negative_root(law))
      msg += ", Cramér root at theta=" + fmt(*r) + "<0 invalid";
    else
      msg += ", no positive Cramér root";
    throw ModelError(ModelErrorKind::no_downward_drift, msg);
  }

  const double theta = positive_root(law);
  const double upper = cumulant_domain(law).second;
  if (!(theta > 0.0) || !(theta < upper))
    throw ModelError(ModelErrorKind::moment_condition,
                     "theta=" + fmt(theta) +
                         " is not strictly inside the positive-jump domain (beta_min=" +
                         fmt(upper) + "); tilted first moment would be infinite");

  LevyModel m;
  m.law_ = law;
  m.theta_ = theta;
  m.mean_ = mean;
  m.tilted_mean_ = cumulant_derivative(law, theta);
  return m;
}

LevyLaw esscher_tilt(const LevyModel& model) {
  const LevyLaw& law = model.law();
  const double theta = model.theta();
  LevyLaw t;
  t.drift = law.drift + law.sigma * law.sigma * theta;
  t.sigma = law.sigma;
  t.jumps.reserve(law.jumps.size());
  for (const auto& j : law.jumps) {
    const double beta = j.beta - j.sign * theta;
    t.jumps.push_back({j.rate * j.beta / beta, beta, j.sign});
  }
  return t;
}

LevyModel dual_model(const LevyModel& model) {
  LevyLaw d = esscher_tilt(model);
  d.drift = -d.drift;
  for (auto& j : d.jumps) j.sign = -j.sign;
  return validate_model(d);
}

double phi_exponent(const LevyModel& dual, double a) {
  if (dual.law().has_positive_jumps())
    throw ModelError(ModelErrorKind::spectral_condition,
                     "phi_exponent needs a spectrally negative law (no positive jumps)");
  if (!(a >= 0.0))
    throw ModelError(ModelErrorKind::domain, "phi_exponent needs a >= 0, got " + fmt(a));
  const double theta = dual.theta();
  if (a == 0.0) return theta;
  const LevyLaw& law = dual.law();
  const auto f = [&](double s) { return cumulant(law, s) - a; };
  const auto df = [&](double s) { return cumulant_derivative(law, s); };
  double hi = 2.0 * theta;
  while (!(f(hi) > 0.0)) hi *= 2.0;
  return bracketed_root(f, df, theta, hi);
}

LevyLaw law_from_json(const nlohmann::json& j) {
  LevyLaw law;
  law.drift = j.at("drift").get<double>();
  law.sigma = j.at("sigma").get<double>();
  if (j.contains("jumps")) {
    for (const auto& e : j.at("jumps")) {
      JumpSpec s;
      s.rate = e.at("rate").get<double>();
      s.beta = e.at("beta").get<double>();
      s.sign = e.at("sign").get<int>();
      law.jumps.push_back(s);
    }
  }
  return law;
}

nlohmann::json to_json(const LevyLaw& law) {
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& s : law.jumps)
    jumps.push_back({{"rate", s.rate}, {"beta", s.beta}, {"sign", s.sign}});
  return {{"drift", law.drift}, {"sigma", law.sigma}, {"jumps", jumps}};
}

LevyLaw brownian_law(double drift, double sigma) { return {drift, sigma, {}}; }

LevyLaw jump_diffusion_law(double drift, double sigma, std::vector<JumpSpec> jumps) {
  return {drift, sigma, std::move(jumps)};
}

}  // namespace levylab
