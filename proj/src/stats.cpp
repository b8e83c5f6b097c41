#include "levylab/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "levylab/random.hpp"

namespace levylab {

namespace {

struct Sorted {
  std::vector<double> x;
  std::vector<double> w;  // normalised to total 1
};

Sorted sorted(const EmpiricalDistribution& d) {
  d.validate();
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return d.values[i] < d.values[j]; });
  Sorted s;
  s.x.reserve(d.size());
  s.w.reserve(d.size());
  const double total = d.total_weight();
  for (const std::size_t i : idx) {
    s.x.push_back(d.values[i]);
    s.w.push_back(d.weight(i) / total);
  }
  return s;
}

// Steps through the merged support, calling f(x, Fa(x), Fb(x)) after each
// distinct value and returns nothing.
template <class F>
void merge_walk(const Sorted& a, const Sorted& b, F f) {
  std::size_t i = 0;
  std::size_t j = 0;
  double fa = 0.0;
  double fb = 0.0;
  while (i < a.x.size() || j < b.x.size()) {
    const double xa = i < a.x.size() ? a.x[i] : std::numeric_limits<double>::infinity();
    const double xb = j < b.x.size() ? b.x[j] : std::numeric_limits<double>::infinity();
    const double x = std::min(xa, xb);
    while (i < a.x.size() && a.x[i] == x) fa += a.w[i++];
    while (j < b.x.size() && b.x[j] == x) fb += b.w[j++];
    if (i == a.x.size()) fa = 1.0;
    if (j == b.x.size()) fb = 1.0;
    f(x, fa, fb);
  }
}

constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss_legendre(F f, double lo, double hi, int panels) {
  double acc = 0.0;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      const double d = 0.5 * h * kGlNodes[k];
      acc += kGlWeights[k] * (f(mid - d) + f(mid + d));
    }
  }
  return 0.5 * h * acc;
}

void require_spectrally_positive(const LevyModel& model) {
  if (model.law().has_negative_jumps())
    throw ModelError(ModelErrorKind::spectral_condition,
                     "debt-time density needs a model without negative jumps");
}

void require_brownian(const LevyModel& model) {
  if (model.law().total_jump_rate() > 0.0)
    throw ModelError(ModelErrorKind::spectral_condition,
                     "closed-form debt-time law is available for Brownian laws only");
}

// E(X^-) for X ~ N(m, v).
double normal_negative_part(double m, double v) {
  const double s = std::sqrt(v);
  return s * normal_pdf(m / s) - m * normal_cdf(-m / s);
}

double brownian_density(const LevyModel& model, double t) {
  const LevyLaw& law = model.law();
  const double m = (law.drift + law.sigma * law.sigma * model.theta()) * t;
  const double v = law.sigma * law.sigma * t;
  return model.theta() * normal_negative_part(m, v) / t;
}

// Upper end of the quadrature range: the density is below 1e-17 beyond it.
double brownian_cutoff(const LevyModel& model) {
  double hi = 1.0;
  while (brownian_density(model, hi) > 1e-17 && hi < 1e7) hi *= 2.0;
  return hi;
}

}  // namespace

double EmpiricalDistribution::total_weight() const noexcept {
  if (weights.empty()) return static_cast<double>(values.size());
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double EmpiricalDistribution::ess() const noexcept { return effective_sample_size(*this); }

double EmpiricalDistribution::mean() const {
  validate();
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += weight(i) * values[i];
  return acc / total_weight();
}

double EmpiricalDistribution::mean_se() const {
  const double mu = mean();
  const double total = total_weight();
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = weight(i) * (values[i] - mu);
    acc += d * d;
  }
  const double n = static_cast<double>(size());
  return std::sqrt(acc * n / std::max(n - 1.0, 1.0)) / total;
}

void EmpiricalDistribution::validate() const {
  if (values.empty()) throw StatsError("empirical distribution is empty");
  if (!weights.empty() && weights.size() != values.size())
    throw StatsError("weights and values differ in length");
  for (const double v : values)
    if (!std::isfinite(v)) throw StatsError("non-finite value in empirical distribution");
  for (const double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw StatsError("weights must be positive and finite");
}

bool EmpiricalDistribution::degenerate() const noexcept {
  return values.empty() ||
         std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

void EmpiricalDistribution::add(double v, double w) {
  if (w != 1.0 && weights.empty()) weights.assign(values.size(), 1.0);
  values.push_back(v);
  if (!weights.empty()) weights.push_back(w);
}

double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  double d = 0.0;
  merge_walk(sorted(a), sorted(b), [&](double, double fa, double fb) { d = std::max(d, std::abs(fa - fb)); });
  return d;
}

double ks_distance(const EmpiricalDistribution& a, const std::function<double(double)>& cdf) {
  const Sorted s = sorted(a);
  double d = 0.0;
  double prev = 0.0;
  std::size_t i = 0;
  while (i < s.x.size()) {
    const double x = s.x[i];
    double cur = prev;
    while (i < s.x.size() && s.x[i] == x) cur += s.w[i++];
    if (i == s.x.size()) cur = 1.0;
    const double left = cdf(std::nextafter(x, -std::numeric_limits<double>::infinity()));
    d = std::max({d, std::abs(cur - cdf(x)), std::abs(prev - left)});
    prev = cur;
  }
  return d;
}

DistanceReport ks_report(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  DistanceReport r;
  r.statistic = ks_distance(a, b);
  r.ess_a = a.ess();
  r.ess_b = b.ess();
  r.degenerate = a.degenerate() || b.degenerate();
  r.low_ess = r.ess_a < 100.0 || r.ess_b < 100.0;
  return r;
}

DistanceReport ks_report(const EmpiricalDistribution& a, const std::function<double(double)>& cdf) {
  DistanceReport r;
  r.statistic = ks_distance(a, cdf);
  r.ess_a = a.ess();
  r.ess_b = std::numeric_limits<double>::infinity();
  r.degenerate = a.degenerate();
  r.low_ess = r.ess_a < 100.0;
  return r;
}

double wasserstein1(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  double area = 0.0;
  bool started = false;
  double last_x = 0.0;
  double last_gap = 0.0;
  merge_walk(sorted(a), sorted(b), [&](double x, double fa, double fb) {
    if (started) area += last_gap * (x - last_x);
    started = true;
    last_x = x;
    last_gap = std::abs(fa - fb);
  });
  return area;
}

double effective_sample_size(const EmpiricalDistribution& a) noexcept {
  if (a.weights.empty()) return static_cast<double>(a.size());
  double s = 0.0;
  double s2 = 0.0;
  for (const double w : a.weights) {
    s += w;
    s2 += w * w;
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

TailFit tail_exponent_fit(const std::vector<double>& sample, double z_min, double z_max,
                          std::size_t grid, std::size_t bootstrap, std::uint64_t seed) {
  if (!(z_min > 0.0) || !(z_max > z_min) || grid < 3)
    throw StatsError("tail_exponent_fit: need 0 < z_min < z_max and at least 3 grid points");
  const auto exceed = static_cast<std::size_t>(
      std::count_if(sample.begin(), sample.end(), [&](double v) { return v > z_min; }));
  if (exceed < 1000) throw StatsError("insufficient exceedances");

  std::vector<double> log_z(grid);
  for (std::size_t k = 0; k < grid; ++k)
    log_z[k] = std::log(z_min) + (std::log(z_max) - std::log(z_min)) * static_cast<double>(k) /
                                     static_cast<double>(grid - 1);

  const auto slope_of = [&](std::vector<double> s) {
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    std::vector<double> xs;
    std::vector<double> ys;
    for (const double lz : log_z) {
      const double z = std::exp(lz);
      const auto above = static_cast<double>(s.end() - std::upper_bound(s.begin(), s.end(), z));
      if (above <= 0.0) continue;
      xs.push_back(lz);
      ys.push_back(std::log(above / n));
    }
    if (xs.size() < 2) throw StatsError("insufficient exceedances");
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    return sxy / sxx;
  };

  TailFit fit;
  fit.exceedances = exceed;
  fit.slope = slope_of(sample);
  if (bootstrap > 1) {
    RandomStream rng(seed);
    std::vector<double> slopes;
    slopes.reserve(bootstrap);
    std::vector<double> resample(sample.size());
    for (std::size_t b = 0; b < bootstrap; ++b) {
      for (auto& v : resample) v = sample[static_cast<std::size_t>(rng() % sample.size())];
      slopes.push_back(slope_of(resample));
    }
    const double m = std::accumulate(slopes.begin(), slopes.end(), 0.0) / static_cast<double>(bootstrap);
    double ss = 0.0;
    for (const double s : slopes) ss += (s - m) * (s - m);
    fit.se = std::sqrt(ss / static_cast<double>(bootstrap - 1));
  }
  return fit;
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double debt_time_density(const LevyModel& model, double t) {
  require_spectrally_positive(model);
  if (!(t > 0.0)) throw ModelError(ModelErrorKind::domain, "debt-time density needs t > 0");
  if (model.law().total_jump_rate() == 0.0) return brownian_density(model, t);
  return debt_time_density_mc(model, t, 1000000, UINT64_C(0x44454254));
}

double debt_time_density_mc(const LevyModel& model, double t, std::size_t samples,
                            std::uint64_t seed, double* se) {
  require_spectrally_positive(model);
  if (!(t > 0.0)) throw ModelError(ModelErrorKind::domain, "debt-time density needs t > 0");
  if (samples < 2) throw StatsError("debt_time_density_mc needs at least 2 samples");
  const LevyLaw tilted = esscher_tilt(model);
  RandomStream rng(seed);
  double s1 = 0.0;
  double s2 = 0.0;
  const double sd = tilted.sigma * std::sqrt(t);
  for (std::size_t n = 0; n < samples; ++n) {
    double x = tilted.drift * t + sd * rng.normal();
    for (const auto& j : tilted.jumps) {
      if (j.rate <= 0.0) continue;
      std::poisson_distribution<long> count(j.rate * t);
      const long k = count(rng);
      if (k > 0) {
        std::gamma_distribution<double> sum(static_cast<double>(k), 1.0 / j.beta);
        x += j.sign * sum(rng);
      }
    }
    const double neg = x < 0.0 ? -x : 0.0;
    s1 += neg;
    s2 += neg * neg;
  }
  const double n = static_cast<double>(samples);
  const double mean = s1 / n;
  const double scale = model.theta() / t;
  if (se) *se = scale * std::sqrt(std::max(s2 / n - mean * mean, 0.0) / (n - 1.0));
  return scale * mean;
}

double debt_time_cdf(const LevyModel& model, double t) {
  require_spectrally_positive(model);
  require_brownian(model);
  if (!(t > 0.0)) return 0.0;
  const double u_hi = std::sqrt(std::min(t, brownian_cutoff(model)));
  // t = u^2: f(t) dt = 2 u f(u^2) du, bounded near 0.
  const auto g = [&](double u) { return u > 0.0 ? 2.0 * u * brownian_density(model, u * u) : 0.0; };
  return std::min(1.0, gauss_legendre(g, 0.0, u_hi, 400));
}

double debt_time_total_mass(const LevyModel& model) {
  require_spectrally_positive(model);
  require_brownian(model);
  const double u_hi = std::sqrt(brownian_cutoff(model));
  const auto g = [&](double u) { return u > 0.0 ? 2.0 * u * brownian_density(model, u * u) : 0.0; };
  return gauss_legendre(g, 0.0, u_hi, 400);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw StatsError("quantile of an empty sample");
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double null_threshold(const std::vector<double>& null_stats, double q, double factor) {
  return factor * quantile(null_stats, q);
}

MedianSummary median_summary(const std::vector<double>& v) {
  MedianSummary m;
  m.median = quantile(v, 0.5);
  if (v.size() > 1) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    m.se = 1.2533 * sd / std::sqrt(static_cast<double>(v.size()));
  }
  return m;
}

}  // namespace levylab
