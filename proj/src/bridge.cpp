#include "levylab/bridge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace levylab::bridge {

namespace {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// 16-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

// Draws r = logistic(w) from the density proportional to
//   exp(c_r log r + c_q log(1 - r) - alpha e^{-w} - beta e^{w})
// in the logit coordinate w (Jacobian already folded into c_r, c_q), by
// tabulated inverse CDF. alpha, beta > 0 give super-exponential tails.
double sample_logit(double alpha, double beta, double c_r, double c_q, double u) {
  const auto cutoff = [](double x) { return std::log(100.0 + std::abs(std::log(x))); };
  double w_lo = alpha > 0.0 ? std::log(alpha) - cutoff(alpha) : -700.0;
  double w_hi = beta > 0.0 ? -std::log(beta) + cutoff(beta) : 700.0;
  // Without an exponential cutoff, the power terms decay like e^{-|w|/2};
  // about 250 units of w leave a negligible tail.
  if (alpha <= 0.0) w_lo = std::max(w_lo, std::min(w_hi, 0.0) - 250.0);
  if (beta <= 0.0) w_hi = std::min(w_hi, std::max(w_lo, 0.0) + 250.0);
  w_lo = std::max(w_lo, -700.0);
  w_hi = std::min(w_hi, 700.0);
  if (!(w_hi > w_lo)) return 1.0 / (1.0 + std::exp(-0.5 * (w_lo + w_hi)));

  const int n = std::clamp(static_cast<int>((w_hi - w_lo) / 0.08), 64, 8000);
  const double dw = (w_hi - w_lo) / n;
  thread_local std::vector<double> logd;
  logd.resize(static_cast<std::size_t>(n) + 1);
  double gmax = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double w = w_lo + dw * i;
    const double e = std::exp(-w);
    const double log_r = -std::log1p(e);
    const double log_q = log_r - w;
    const double g = c_r * log_r + c_q * log_q - alpha * e - beta / e;
    logd[static_cast<std::size_t>(i)] = g;
    gmax = std::max(gmax, g);
  }
  thread_local std::vector<double> cum;
  cum.assign(static_cast<std::size_t>(n) + 1, 0.0);
  double prev = std::exp(logd[0] - gmax);
  for (int i = 1; i <= n; ++i) {
    const double cur = std::exp(logd[static_cast<std::size_t>(i)] - gmax);
    cum[static_cast<std::size_t>(i)] = cum[static_cast<std::size_t>(i) - 1] + 0.5 * (prev + cur);
    prev = cur;
  }
  const double target = u * cum.back();
  const auto it = std::lower_bound(cum.begin() + 1, cum.end(), target);
  const auto i = static_cast<int>(std::distance(cum.begin(), it));
  const double c0 = cum[static_cast<std::size_t>(i) - 1];
  const double c1 = cum[static_cast<std::size_t>(i)];
  const double frac = c1 > c0 ? (target - c0) / (c1 - c0) : 0.5;
  const double w = w_lo + dw * (i - 1 + frac);
  return 1.0 / (1.0 + std::exp(-w));
}

}  // namespace

double sample_max(double a, double b, double sigma, double dt, double u) noexcept {
  const double d = b - a;
  return 0.5 * (a + b + std::sqrt(d * d - 2.0 * sigma * sigma * dt * std::log(u)));
}

double sample_min(double a, double b, double sigma, double dt, double u) noexcept {
  const double d = b - a;
  return 0.5 * (a + b - std::sqrt(d * d - 2.0 * sigma * sigma * dt * std::log(u)));
}

double prob_exceeds(double a, double b, double level, double sigma, double dt) noexcept {
  if (a > level || b > level) return 1.0;
  if (sigma <= 0.0) return 0.0;
  return std::exp(-2.0 * (level - a) * (level - b) / (sigma * sigma * dt));
}

double sample_point(double a, double b, double r, double sigma, double dt, double z) noexcept {
  return a + (b - a) * r + sigma * std::sqrt(dt * r * (1.0 - r)) * z;
}

double sample_argmax_fraction(double a, double b, double m, double sigma, double dt,
                              double u) {
  const double scale = 2.0 * sigma * sigma * dt;
  const double alpha = (m - a) * (m - a) / scale;
  const double beta = (m - b) * (m - b) / scale;
  if (!(alpha > 0.0)) return 0.0;
  if (!(beta > 0.0)) return 1.0;
  return sample_logit(alpha, beta, -0.5, -0.5, u);
}

double sample_first_passage_fraction(double a, double b, double level, double sigma,
                                     double dt, double u) {
  const double scale = 2.0 * sigma * sigma * dt;
  const double alpha = (level - a) * (level - a) / scale;
  const double beta = (b - level) * (b - level) / scale;
  if (!(alpha > 0.0)) return 0.0;
  return sample_logit(alpha, beta, -0.5, 0.5, u);
}

double sample_last_passage_fraction(double a, double b, double level, double sigma,
                                    double dt, double u) {
  return 1.0 - sample_first_passage_fraction(b, a, level, sigma, dt, u);
}

double expected_time_above(double a, double b, double level, double sigma, double dt,
                           double r0, double r1) {
  if (!(r1 > r0)) return 0.0;
  const double span = (r1 - r0) * dt;
  if (sigma <= 0.0) {
    // Linear interpolation; the set {r : a + (b-a) r > level} is an interval.
    const double at0 = a + (b - a) * r0 - level;
    const double at1 = a + (b - a) * r1 - level;
    if (at0 > 0.0 && at1 > 0.0) return span;
    if (at0 <= 0.0 && at1 <= 0.0) return 0.0;
    const double cross = at0 / (at0 - at1);
    return span * (at0 > 0.0 ? cross : 1.0 - cross);
  }
  const double band = 4.0 * sigma * std::sqrt(dt);
  if (std::min(a, b) - level > band) return span;
  if (level - std::max(a, b) > band) return 0.0;
  const double half = 0.5 * (r1 - r0);
  const double mid = 0.5 * (r1 + r0);
  double acc = 0.0;
  for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
    for (const double sgn : {-1.0, 1.0}) {
      const double r = mid + sgn * half * kGlNodes[k];
      const double mean = a + (b - a) * r - level;
      const double sd = sigma * std::sqrt(dt * r * (1.0 - r));
      const double p = sd > 0.0 ? normal_cdf(mean / sd) : (mean > 0.0 ? 1.0 : 0.0);
      acc += kGlWeights[k] * p;
    }
  }
  return acc * half * dt;
}

}  // namespace levylab::bridge
