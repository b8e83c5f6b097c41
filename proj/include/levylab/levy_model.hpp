#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace levylab {

/// One compound-Poisson component with exponential magnitudes.
/// rate == 0 encodes "no jumps"; all jumps of a component share `sign`.
struct JumpSpec {
  double rate = 0.0;
  double beta = 1.0;
  int sign = 1;

  friend bool operator==(const JumpSpec&, const JumpSpec&) = default;
};

/// Drift + Brownian part + finitely many one-sided exponential jump
/// components. This is the raw law; it carries no Cramér data and may drift
/// either way (tilted laws drift upwards).
struct LevyLaw {
  double drift = 0.0;
  double sigma = 1.0;
  std::vector<JumpSpec> jumps;

  double total_jump_rate() const noexcept;
  bool has_positive_jumps() const noexcept;
  bool has_negative_jumps() const noexcept;

  friend bool operator==(const LevyLaw&, const LevyLaw&) = default;
};

enum class ModelErrorKind {
  invalid_jump,        // rate < 0, beta <= 0 or sign not +-1
  non_regular,         // sigma <= 0: 0 not regular for both half-lines
  no_downward_drift,   // mean >= 0: no positive Cramér root
  no_root,             // cumulant never becomes positive
  pole_before_root,    // transform domain ends before the root
  moment_condition,    // theta not strictly inside the positive-jump domain
  spectral_condition,  // operation needs one-sided jumps
  domain,              // cumulant evaluated at or beyond a pole
};

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ModelErrorKind kind() const noexcept { return kind_; }

 private:
  ModelErrorKind kind_;
};

/// A law satisfying the standing assumptions: sigma > 0, drift to -inf,
/// a Cramér exponent theta > 0 with psi(theta) = 0 and finite tilted mean.
/// Only constructible through validate_model().
class LevyModel {
 public:
  const LevyLaw& law() const noexcept { return law_; }
  double theta() const noexcept { return theta_; }
  /// Mean of xi_1 under the tilted measure, psi'(theta) > 0.
  double tilted_mean() const noexcept { return tilted_mean_; }
  /// psi'(0) < 0.
  double mean() const noexcept { return mean_; }

 private:
  friend LevyModel validate_model(const LevyLaw& law);
  LevyLaw law_;
  double theta_ = 0.0;
  double tilted_mean_ = 0.0;
  double mean_ = 0.0;
};

/// Derived constants attached to a model: c_theta normalises the converse
/// tilt of the stationary two-sided law, C is the Cramér constant.
struct CramerConstants {
  double c_theta = 0.0;
  double C = 0.0;
  double c_theta_se = 0.0;
  double C_se = 0.0;
};

/// psi(s) = log E exp(s xi_1). Throws ModelError(domain) at or past a pole.
double cumulant(const LevyLaw& law, double s);
/// psi'(s), analytic.
double cumulant_derivative(const LevyLaw& law, double s);
/// Open interval (lower, upper) on which psi is finite.
std::pair<double, double> cumulant_domain(const LevyLaw& law) noexcept;

/// Unique positive root of psi, relative tolerance 1e-12.
double cramer_exponent(const LevyLaw& law);

/// Checks every standing assumption and returns the derived model. Each
/// violation raises a ModelError naming the assumption.
LevyModel validate_model(const LevyLaw& law);

/// Law of xi under the Esscher-tilted measure dP~ = exp(theta xi_t) dP.
LevyLaw esscher_tilt(const LevyModel& model);

/// Law of -xi under the tilted measure; satisfies Cramér's condition with the
/// same theta, so the result is validated again.
LevyModel dual_model(const LevyModel& model);

/// Largest root of psi'(s) := cumulant(dual, s) = a, for a spectrally
/// negative dual. Phi(0) = theta, and E'(exp(-a sigma)) = theta / Phi(a).
double phi_exponent(const LevyModel& dual, double a);

LevyLaw law_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LevyLaw& law);

/// Convenience constructors for the models used throughout the tests.
LevyLaw brownian_law(double drift, double sigma);
LevyLaw jump_diffusion_law(double drift, double sigma, std::vector<JumpSpec> jumps);

}  // namespace levylab
