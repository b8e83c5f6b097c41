#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levylab/levy_model.hpp"

namespace levylab {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weighted sample. An empty `weights` vector means unit weights.
struct EmpiricalDistribution {
  std::vector<double> values;
  std::vector<double> weights;
  std::string source;
  std::string model;
  std::uint64_t seed = 0;

  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<double> v) : values(std::move(v)) {}
  EmpiricalDistribution(std::vector<double> v, std::vector<double> w)
      : values(std::move(v)), weights(std::move(w)) {}

  std::size_t size() const noexcept { return values.size(); }
  double weight(std::size_t i) const noexcept { return weights.empty() ? 1.0 : weights[i]; }
  double total_weight() const noexcept;
  /// (sum w)^2 / sum w^2.
  double ess() const noexcept;
  double mean() const;
  /// Standard error of the (self-normalised) mean.
  double mean_se() const;
  /// Throws StatsError unless values are finite, weights positive and the
  /// sample non-empty.
  void validate() const;
  /// True when every value is identical.
  bool degenerate() const noexcept;

  void add(double v, double w = 1.0);
};

struct DistanceReport {
  double statistic = 0.0;
  double ess_a = 0.0;
  double ess_b = 0.0;
  bool degenerate = false;
  bool low_ess = false;  // fewer than 100 effective samples on some side
};

/// Sup-distance between weighted ECDFs.
double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);
/// Sup-distance between a weighted ECDF and a CDF; atoms of the CDF are
/// handled through its left limits.
double ks_distance(const EmpiricalDistribution& a, const std::function<double(double)>& cdf);
DistanceReport ks_report(const EmpiricalDistribution& a, const EmpiricalDistribution& b);
DistanceReport ks_report(const EmpiricalDistribution& a, const std::function<double(double)>& cdf);

/// Area between the two weighted ECDFs.
double wasserstein1(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

double effective_sample_size(const EmpiricalDistribution& a) noexcept;

struct TailFit {
  double slope = 0.0;
  double se = 0.0;
  std::size_t exceedances = 0;
};

/// Least-squares slope of log survival against log z on a geometric grid of
/// `grid` points over [z_min, z_max]; bootstrap standard error from
/// `bootstrap` resamples with a deterministic stream.
TailFit tail_exponent_fit(const std::vector<double>& sample, double z_min, double z_max = 20.0,
                          std::size_t grid = 20, std::size_t bootstrap = 200,
                          std::uint64_t seed = 1);

double normal_cdf(double x) noexcept;
double normal_pdf(double x) noexcept;

/// Limit density theta * E~(xi_t^-) / t of the total time spent above 0 by a
/// spectrally positive model conditioned on a large maximum. Closed form for
/// Brownian laws, Monte Carlo with 1e6 draws of xi_t under the tilt otherwise.
double debt_time_density(const LevyModel& model, double t);
/// Monte Carlo evaluation for any spectrally positive model.
double debt_time_density_mc(const LevyModel& model, double t, std::size_t samples,
                            std::uint64_t seed, double* se = nullptr);
/// CDF of the limit law (Brownian laws only), by Gauss-Legendre quadrature in
/// u = sqrt(t).
double debt_time_cdf(const LevyModel& model, double t);
/// Integral of the density over (0, inf) by the same quadrature.
double debt_time_total_mass(const LevyModel& model);

/// Linear-interpolation quantile of an unsorted sample.
double quantile(std::vector<double> v, double q);
/// Pass threshold from null statistics: factor * quantile(null, q).
double null_threshold(const std::vector<double>& null_stats, double q = 0.99, double factor = 1.5);
/// Median and its seed-to-seed standard error (1.2533 * sd / sqrt(n)).
struct MedianSummary {
  double median = 0.0;
  double se = 0.0;
};
MedianSummary median_summary(const std::vector<double>& v);

}  // namespace levylab
