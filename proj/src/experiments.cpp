#include "levylab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>

#include "levylab/ensemble.hpp"
#include "levylab/lamperti.hpp"
#include "levylab/path_stats.hpp"
#include "levylab/samplers.hpp"
#include "levylab/stats.hpp"

namespace levylab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kOpen = ConditionedSamplers::kOpen;

std::function<double(double)> exp_cdf(double rate) {
  return [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
}

std::string label(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

LevyLaw jd1() { return jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}}); }

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_se(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double ss = 0.0;
  for (const double x : v) ss += (x - m) * (x - m);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

struct Weighted {
  double value = 0.0;
  double weight = 1.0;
};

EmpiricalDistribution to_dist(const std::vector<double>& v) { return EmpiricalDistribution(v); }

EmpiricalDistribution to_dist(const std::vector<Weighted>& v) {
  EmpiricalDistribution d;
  d.values.reserve(v.size());
  d.weights.reserve(v.size());
  for (const auto& w : v) {
    d.values.push_back(w.value);
    d.weights.push_back(w.weight);
  }
  return d;
}

/// Pass threshold for a two-sample distance between sampler A and sampler B
/// from same-sampler null distances.
double calibrated_threshold(const std::vector<double>& null_a, const std::vector<double>& null_b) {
  const double qa = quantile(null_a, 0.99);
  const double qb = quantile(null_b, 0.99);
  return 1.5 * std::sqrt(0.5 * (qa * qa + qb * qb));
}

class Run {
 public:
  Run(const ExperimentConfig& cfg, const LevyLaw& default_model)
      : cfg_(cfg),
        law_(cfg.model.value_or(default_model)),
        model_(validate_model(law_)),
        workers_(cfg.workers ? cfg.workers : worker_count()) {}

  const LevyModel& model() const noexcept { return model_; }
  const LevyLaw& law() const noexcept { return law_; }
  double theta() const noexcept { return model_.theta(); }
  std::size_t n(std::size_t def) const { return cfg_.replicates ? cfg_.replicates : def; }
  double step(double def) const { return cfg_.step > 0.0 ? cfg_.step : def; }
  std::vector<double> ladder(std::vector<double> def) const {
    return cfg_.x_ladder.empty() ? def : cfg_.x_ladder;
  }
  std::vector<double> levels(std::vector<double> def) const {
    return cfg_.levels.empty() ? def : cfg_.levels;
  }

  template <class T>
  T param(const char* name, T def) const {
    if (!cfg_.params.contains(name)) return def;
    try {
      return cfg_.params.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(std::string("params.") + name + ": wrong type");
    }
  }

  SamplerOptions options(double step, int refine = 1, std::vector<double> levels = {},
                         bool extremes = false) const {
    SamplerOptions o;
    o.step = step;
    o.refine = refine;
    o.refine_levels = std::move(levels);
    o.refine_extremes = extremes;
    return o;
  }

  /// f(rng, i) for i < n, replicate i drawing from substream (seed, sub, label, i).
  template <class F>
  auto draw(std::string_view name, std::size_t count, F f, std::uint64_t sub = 0) const {
    using R = decltype(f(std::declval<RandomStream&>(), std::size_t{}));
    const std::uint64_t master = hash_combine(cfg_.seed, sub);
    const std::uint64_t tag = stream_tag(name);
    return parallel_map<R>(
        count,
        [&](std::size_t i) {
          RandomStream rng = RandomStream::derive(master, tag, i);
          return f(rng, i);
        },
        workers_);
  }

  void check(std::string id, double stat, double thr, bool pass, double ess = kNaN) {
    rows_.push_back({std::move(id), stat, thr, ess, pass && !std::isnan(stat)});
  }
  void le(std::string id, double stat, double thr, double ess = kNaN) {
    check(std::move(id), stat, thr, stat <= thr, ess);
  }
  void ge(std::string id, double stat, double thr, double ess = kNaN) {
    check(std::move(id), stat, thr, stat >= thr, ess);
  }

  void record(const std::string& name, const EmpiricalDistribution& d) {
    if (!cfg_.write_ensembles) return;
    for (std::size_t i = 0; i < d.size(); ++i) ens_.push_back({i, name, d.values[i], d.weight(i)});
  }

  ExperimentResult finish() {
    ExperimentResult r;
    r.experiment = cfg_.experiment;
    r.model = law_;
    r.seed = cfg_.seed;
    r.tests = std::move(rows_);
    r.ensembles = std::move(ens_);
    return r;
  }

 private:
  const ExperimentConfig& cfg_;
  LevyLaw law_;
  LevyModel model_;
  std::size_t workers_;
  std::vector<TestRow> rows_;
  std::vector<EnsembleRow> ens_;
};

// Trend over the x ladder: per consecutive pair, the increase of the median
// distance must stay within three combined seed-to-seed standard errors.
void trend_rows(Run& run, const std::string& prefix, const std::vector<double>& xs,
                const std::vector<std::vector<double>>& dist) {
  std::vector<MedianSummary> med;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    med.push_back(median_summary(dist[k]));
    run.check(prefix + label("_median_x=%g", xs[k]), med.back().median, kNaN, true);
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double inc = med[k + 1].median - med[k].median;
    const double tol = 3.0 * std::hypot(med[k].se, med[k + 1].se);
    run.le(prefix + label("_nonincreasing_x=%g", xs[k]) + label("_to_%g", xs[k + 1]), inc, tol);
  }
}

// ---------------------------------------------------------------------------

void exp_supremum(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(100000);
  const ConditionedSamplers S(m, run.options(step));
  struct Out {
    double sup, grid_max;
  };
  const auto out = run.draw("exp_supremum/paths", n, [&](RandomStream& rng, std::size_t) {
    const SampledPath p = simulate_path(m, rng, HorizonPolicy::adaptive_max(S.margin(), step));
    return Out{path_stats(p).sup, *std::max_element(p.values.begin(), p.values.end())};
  });
  EmpiricalDistribution sup;
  std::size_t below = 0;
  double gap = 0.0;
  for (const auto& o : out) {
    sup.add(o.sup);
    if (o.sup < o.grid_max) ++below;
    gap += o.sup - o.grid_max;
  }
  run.record("sup", sup);
  const double N = static_cast<double>(n);
  run.le("ks_sup_vs_exp_theta", ks_distance(sup, exp_cdf(run.theta())),
         run.param("ks_tolerance", 0.01), sup.ess());
  for (const double a : run.levels({0.5, 1.0, 2.0})) {
    const double p = std::exp(-run.theta() * a);
    const auto hits = std::count_if(sup.values.begin(), sup.values.end(), [a](double s) { return s > a; });
    run.le(label("survival_a=%g", a), std::abs(static_cast<double>(hits) / N - p),
           4.0 * std::sqrt(p * (1.0 - p) / N), N);
  }
  run.le("bridge_max_below_grid_max_count", static_cast<double>(below), 0.0, N);
  run.check("bridge_correction_mean_gap", gap / N, 0.0, gap > 0.0, N);
}

void cramer_constant(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(100000);
  const ConditionedSamplers S(m, run.options(step));
  const auto xs = run.ladder({-3.0, -6.0});

  std::vector<double> c_hat, c_se;
  std::vector<double> deepest;
  for (const double x : xs) {
    const auto w = run.draw(label("cramer/is/x=%g", x), n, [&](RandomStream& rng, std::size_t) {
      return S.conditioned_IS(x, rng, false).weight;
    });
    c_hat.push_back(sample_mean(w));
    c_se.push_back(sample_se(w));
    run.check(label("cramer_estimate_x=%g", x), c_hat.back(), kNaN, true, to_dist(w).ess());
    deepest = w;
    if (m.law().total_jump_rate() == 0.0)
      run.le(label("brownian_constant_is_one_x=%g", x), std::abs(c_hat.back() - 1.0), 0.01);
  }
  for (std::size_t k = 0; k + 1 < xs.size(); ++k)
    run.le(label("constancy_x=%g", xs[k]) + label("_vs_%g", xs[k + 1]),
           std::abs(c_hat[k] - c_hat[k + 1]), 3.0 * std::hypot(c_se[k], c_se[k + 1]));

  // 1/c(theta) is the stationary mean of exp(-theta * overshoot) under rho~.
  const auto tilt = run.draw("cramer/rho_tilde", n, [&](RandomStream& rng, std::size_t) {
    return std::exp(-run.theta() * S.rho_tilde(rng).overshoot);
  });
  const double inv_c = sample_mean(tilt);
  const double product = c_hat.back() / inv_c;
  RandomStream boot(hash_combine(stream_tag("cramer/bootstrap"), 17));
  std::vector<double> reps;
  const std::size_t B = run.param("bootstrap", std::size_t{200});
  for (std::size_t b = 0; b < B; ++b) {
    double sa = 0.0;
    double sb = 0.0;
    for (std::size_t i = 0; i < deepest.size(); ++i) sa += deepest[boot() % deepest.size()];
    for (std::size_t i = 0; i < tilt.size(); ++i) sb += tilt[boot() % tilt.size()];
    reps.push_back((sa / static_cast<double>(deepest.size())) / (sb / static_cast<double>(tilt.size())));
  }
  const double mean_rep = sample_mean(reps);
  double ss = 0.0;
  for (const double r : reps) ss += (r - mean_rep) * (r - mean_rep);
  const double boot_se = std::sqrt(ss / static_cast<double>(B - 1));
  run.check("inverse_c_theta", inv_c, kNaN, true);
  run.le("c_theta_times_C_equals_one", std::abs(product - 1.0), std::max(3.0 * boot_se, 1e-12));
  run.le("cramer_constant_at_most_one", c_hat.back(), 1.0 + 3.0 * c_se.back());
}

void quasi_stationarity(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(100000);
  const double y = run.param("resample_level", 1.0);
  const ConditionedSamplers S(m, run.options(step));
  struct Out {
    double sup, xi1, cond_sup, cond_xi1, xi0, xi0_left;
  };
  const auto out = run.draw("quasi_stationarity/P", n, [&](RandomStream& rng, std::size_t) {
    const TwoSidedPath tp = S.script_P(rng, kOpen, kOpen, 1.0);
    const SampledPath line = tp.timeline();
    Out o{};
    o.sup = path_stats(line).sup;
    o.xi1 = value_at(tp.forward, 1.0).value();
    o.xi0 = tp.forward.start_value();
    o.xi0_left = -tp.backward.start_value();
    o.cond_sup = o.cond_xi1 = kNaN;
    const Passage pass = first_passage_above(line, y);
    if (pass.happened()) {
      o.cond_sup = o.sup - y;
      o.cond_xi1 = value_at(line, pass.time + 1.0).value() - y;
    }
    return o;
  });
  EmpiricalDistribution sup, xi1, csup, cxi1;
  std::size_t bad_sign = 0;
  for (const auto& o : out) {
    sup.add(o.sup);
    xi1.add(o.xi1);
    if (o.xi0 < 0.0 || o.xi0_left > 0.0) ++bad_sign;
    if (!std::isnan(o.cond_sup)) {
      csup.add(o.cond_sup);
      cxi1.add(o.cond_xi1);
    }
  }
  run.record("sup", sup);
  const double N = static_cast<double>(n);
  for (const double a : run.levels({0.5, 1.0, 2.0})) {
    const double p = std::exp(-run.theta() * a);
    const auto hits = std::count_if(sup.values.begin(), sup.values.end(), [a](double s) { return s > a; });
    run.le(label("survival_y=%g", a), std::abs(static_cast<double>(hits) / N - p),
           4.0 * std::sqrt(p * (1.0 - p) / N), N);
  }
  run.le("origin_sign_violations", static_cast<double>(bad_sign), 0.0, N);
  const double tol = run.param("ks_tolerance", 0.02);
  if (csup.size() < 2) {
    run.check(label("resampled_sup_y=%g", y), kNaN, tol, false, 0.0);
    return;
  }
  run.le(label("ks_resampled_sup_y=%g", y), ks_distance(csup, sup), tol, csup.ess());
  run.le(label("ks_resampled_xi1_y=%g", y), ks_distance(cxi1, xi1), tol, cxi1.ess());
}

void theorem1_shift_at_tau(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(20000);
  const auto xs = run.ladder({-2.0, -4.0, -6.0});
  const auto seeds = run.param("seeds", std::size_t{10});
  const auto trend_n = run.param("trend_replicates", std::size_t{5000});
  const auto oracle_n = run.param("oracle_replicates", std::size_t{1000});
  const auto pairs = run.param("null_pairs", std::size_t{5});
  const double oracle_x = run.param("oracle_x", xs.front());
  const double tol = run.param("ks_tolerance", 0.03);
  const double min_ess = run.param("min_ess", 5000.0);
  const ConditionedSamplers S(m, run.options(step));

  const auto rho_over = [&](RandomStream& rng, std::size_t) { return S.rho(rng).overshoot; };
  const auto is_over = [&](double x) {
    return [&S, x](RandomStream& rng, std::size_t) {
      const auto d = S.conditioned_IS(x, rng, false);
      return Weighted{d.overshoot, d.weight};
    };
  };

  const double x_deep = xs.back();
  const auto rho = to_dist(run.draw("t1/rho", n, rho_over));
  const auto is = to_dist(run.draw("t1/is", n, is_over(x_deep)));
  run.record("rho_overshoot", rho);
  run.record(label("is_overshoot_x=%g", x_deep), is);
  run.le(label("ks_overshoot_x=%g_vs_rho", x_deep), ks_distance(is, rho), tol, is.ess());
  run.ge(label("ess_x=%g", x_deep), is.ess(), min_ess, is.ess());

  std::vector<std::vector<double>> dist(xs.size());
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto ref = to_dist(run.draw("t1/trend/rho", trend_n, rho_over, s + 1));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto sample = to_dist(run.draw(label("t1/trend/is/x=%g", xs[k]), trend_n, is_over(xs[k]), s + 1));
      dist[k].push_back(ks_distance(sample, ref));
    }
  }
  trend_rows(run, "ks_overshoot", xs, dist);

  // Rejection oracle at a moderate start.
  const std::size_t budget = run.param("rejection_budget", std::size_t{1000000});
  const auto rej_over = [&](RandomStream& rng, std::size_t) {
    const SampledPath p = S.conditioned_rejection(oracle_x, rng, budget, nullptr, 0.0);
    return first_passage_above(p, 0.0).after;
  };
  const auto is_o = is_over(oracle_x);
  std::vector<double> null_is, null_rej;
  for (std::size_t k = 0; k < pairs; ++k) {
    null_is.push_back(ks_distance(to_dist(run.draw("t1/oracle/is", oracle_n, is_o, 2 * k + 101)),
                                  to_dist(run.draw("t1/oracle/is", oracle_n, is_o, 2 * k + 102))));
    null_rej.push_back(ks_distance(to_dist(run.draw("t1/oracle/rej", oracle_n, rej_over, 2 * k + 101)),
                                   to_dist(run.draw("t1/oracle/rej", oracle_n, rej_over, 2 * k + 102))));
  }
  const auto obs_is = to_dist(run.draw("t1/oracle/is", oracle_n, is_o, 1));
  const auto obs_rej = to_dist(run.draw("t1/oracle/rej", oracle_n, rej_over, 1));
  run.le(label("ks_rejection_vs_is_overshoot_x=%g", oracle_x), ks_distance(obs_is, obs_rej),
         calibrated_threshold(null_is, null_rej), obs_is.ess());
}

void theorem2_shift_at_max(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(20000);
  const auto xs = run.ladder({-2.0, -4.0, -6.0});
  const auto seeds = run.param("seeds", std::size_t{10});
  const auto trend_n = run.param("trend_replicates", std::size_t{5000});
  const double w1_tol = run.param("w1_tolerance", 0.05);
  const double ks_tol = run.param("ks_tolerance", 0.03);
  const double lag = run.param("lag", 1.0);
  const ConditionedSamplers S(m, run.options(step));

  const auto p_down = [&](RandomStream& rng, std::size_t) {
    return value_at(S.P_down(rng, lag), lag).value();
  };
  struct Out {
    double post, sup, weight;
  };
  const auto conditioned = [&](double x) {
    return [&S, x, lag](RandomStream& rng, std::size_t) {
      const auto d = S.conditioned_IS(x, rng, true, lag);
      const Extreme mx = locate_max(d.path);
      return Out{value_at(d.path, mx.time + lag).value() - mx.value, mx.value, d.weight};
    };
  };

  const double x_deep = xs.back();
  const auto ref = to_dist(run.draw("t2/pdown", n, p_down));
  const auto out = run.draw("t2/is", n, conditioned(x_deep));
  EmpiricalDistribution post, sup;
  for (const auto& o : out) {
    post.add(o.post, o.weight);
    sup.add(o.sup, o.weight);
  }
  run.record("p_down_value", ref);
  run.record("conditioned_post_max_value", post);
  run.le(label("w1_post_max_x=%g_vs_p_down", x_deep), wasserstein1(post, ref), w1_tol, post.ess());
  run.le(label("ks_sup_x=%g_vs_exp_theta", x_deep), ks_distance(sup, exp_cdf(run.theta())), ks_tol,
         sup.ess());

  std::vector<std::vector<double>> dist(xs.size());
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto r = to_dist(run.draw("t2/trend/pdown", trend_n, p_down, s + 1));
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto o = run.draw(label("t2/trend/is/x=%g", xs[k]), trend_n, conditioned(xs[k]), s + 1);
      EmpiricalDistribution d;
      for (const auto& e : o) d.add(e.post, e.weight);
      dist[k].push_back(wasserstein1(d, r));
    }
  }
  trend_rows(run, "w1_post_max", xs, dist);
}

void premax_reversal(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(40000);
  const double t_probe = run.param("probe_time", 0.5);
  const double tol = run.param("ks_tolerance", 0.03);
  const ConditionedSamplers S(m, run.options(step, run.param("refine", 16), {}, true));
  struct Out {
    double time, probe;
  };
  const auto left = run.draw("premax/P", n, [&](RandomStream& rng, std::size_t) {
    const SampledPath p = simulate_path(m, rng, HorizonPolicy::adaptive_max(S.margin(), step));
    const Extreme mx = locate_max(p);
    Out o{mx.time, kNaN};
    if (mx.time > t_probe) o.probe = value_at(reversed_pre_max(p), t_probe).value();
    return o;
  });
  const auto right = run.draw("premax/last_passage", n, [&](RandomStream& rng, std::size_t) {
    const double eps = rng.exponential(run.theta());
    const SampledPath u = S.Ptilde_up(rng, kOpen, eps);
    const double ell = last_time_below(u, eps);
    Out o{ell, kNaN};
    if (ell > t_probe) o.probe = value_at(u, t_probe).value();
    return o;
  });
  EmpiricalDistribution a, b, pa, pb;
  for (const auto& o : left) {
    a.add(o.time);
    if (!std::isnan(o.probe)) pa.add(o.probe);
  }
  for (const auto& o : right) {
    b.add(o.time);
    if (!std::isnan(o.probe)) pb.add(o.probe);
  }
  run.record("argmax_time", a);
  run.record("last_passage_time", b);
  run.le("ks_argmax_time_vs_last_passage", ks_distance(a, b), tol, std::min(a.ess(), b.ess()));
  run.le(label("ks_value_at_%g_on_event", t_probe), ks_distance(pa, pb), tol,
         std::min(pa.ess(), pb.ess()));
}

void exp_divisor(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(100000);
  const ConditionedSamplers S(m, run.options(step));
  const auto A = run.draw("divisor/sup", n, [&](RandomStream& rng, std::size_t) {
    return path_stats(simulate_path(m, rng, HorizonPolicy::adaptive_max(S.margin(), step))).sup;
  });
  const auto B = run.draw("divisor/rho", n, [&](RandomStream& rng, std::size_t) {
    return S.rho(rng).overshoot;
  });
  EmpiricalDistribution sum;
  for (std::size_t i = 0; i < n; ++i) sum.add(A[i] + B[i]);
  run.record("sup_plus_overshoot", sum);
  run.le("ks_sum_vs_exp_theta", ks_distance(sum, exp_cdf(run.theta())), run.param("ks_tolerance", 0.015),
         sum.ess());
  const auto sup = to_dist(A);
  double excess = 0.0;  // largest amount by which the sup survival exceeds exp(-theta a)
  std::vector<double> sorted_sup = A;
  std::sort(sorted_sup.begin(), sorted_sup.end());
  for (std::size_t i = 0; i < sorted_sup.size(); ++i) {
    const double surv = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
    excess = std::max(excess, surv - std::exp(-run.theta() * sorted_sup[i]));
  }
  run.le("sup_stochastically_below_exp_theta", excess, 1.63 / std::sqrt(static_cast<double>(n)),
         sup.ess());
}

void last_passage_reversal(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(20000);
  const double probe = run.param("probe_time", 1.0);
  const double tol = run.param("ks_tolerance", 0.03);
  const ConditionedSamplers S(m, run.options(step));
  const ConditionedSamplers Sd(dual_model(m), run.options(step));
  const auto rev = run.draw("reversal/reversed", n, [&](RandomStream& rng, std::size_t) {
    const TwoSidedPath tp = S.script_P(rng, probe + 1.0, kOpen, 0.0);
    const SampledPath line = tp.timeline();
    const double ell = last_time_above(line, 0.0);
    const TwoSidedPath r = reverse_path(line, ell);
    return value_at(r.forward, probe).value();
  });
  const auto fresh = run.draw("reversal/dual", n, [&](RandomStream& rng, std::size_t) {
    return value_at(Sd.script_P(rng, kOpen, kOpen, probe).forward, probe).value();
  });
  const auto a = to_dist(rev);
  const auto b = to_dist(fresh);
  run.record("reversed_value", a);
  run.record("dual_value", b);
  run.le(label("ks_reversed_vs_dual_at_t=%g", probe), ks_distance(a, b), tol, std::min(a.ess(), b.ess()));
}

void sparre_andersen(Run& run) {
  const LevyModel& m = run.model();
  const LevyModel dual = dual_model(m);
  const double step = run.step(0.02);
  const std::size_t n = run.n(100000);
  const double a = run.param("laplace_argument", 1.0);
  const ConditionedSamplers S(dual, run.options(step, run.param("refine", 64), {0.0}));
  const auto policy = S.forward_policy(0.0);
  struct Out {
    double sigma, occupation;
  };
  const auto out = run.draw("sparre/paths", n, [&](RandomStream& rng, std::size_t) {
    const SampledPath p = simulate_path(dual, rng, policy, 0.0);
    return Out{locate_max(p).time, occupation_above(p, 0.0)};
  });
  EmpiricalDistribution sig, occ;
  double lap_s = 0.0;
  double lap_o = 0.0;
  for (const auto& o : out) {
    sig.add(o.sigma);
    occ.add(o.occupation);
    lap_s += std::exp(-a * o.sigma);
    lap_o += std::exp(-a * o.occupation);
  }
  run.record("argmax_time", sig);
  run.record("occupation_above_zero", occ);
  const double N = static_cast<double>(n);
  const double ref = dual.theta() / phi_exponent(dual, a);
  run.le("ks_argmax_time_vs_occupation", ks_distance(sig, occ), run.param("ks_tolerance", 0.02), N);
  run.check(label("laplace_reference_a=%g", a), ref, kNaN, true);
  run.le(label("laplace_argmax_time_rel_error_a=%g", a), std::abs(lap_s / N / ref - 1.0), 0.01, N);
  run.le(label("laplace_occupation_rel_error_a=%g", a), std::abs(lap_o / N / ref - 1.0), 0.01, N);
}

void debt_time(Run& run) {
  const LevyModel& m = run.model();
  if (m.law().has_negative_jumps())
    throw ModelError(ModelErrorKind::spectral_condition, "debt_time needs a model without negative jumps");
  const double step = run.step(0.02);
  const std::size_t n = run.n(10000);
  const double x = run.ladder({-6.0}).front();
  const double tol = run.param("ks_tolerance", 0.05);
  const ConditionedSamplers S(m, run.options(step, run.param("refine", 64), {0.0}));
  const auto out = run.draw("debt/is", n, [&](RandomStream& rng, std::size_t) {
    const auto d = S.conditioned_IS(x, rng, true, 0.0);
    return Weighted{occupation_above(d.path, 0.0), d.weight};
  });
  const auto D = to_dist(out);
  run.record("debt_time", D);
  run.ge(label("ess_x=%g", x), D.ess(), run.param("min_ess", 5000.0), D.ess());

  const bool brownian = m.law().total_jump_rate() == 0.0;
  if (brownian) {
    run.le(label("ks_debt_time_x=%g_vs_limit_law", x),
           ks_distance(D, [&](double t) { return debt_time_cdf(m, t); }), tol, D.ess());
    run.le("limit_density_total_mass", std::abs(debt_time_total_mass(m) - 1.0), 1e-3);
    if (m.law() == brownian_law(-1.0, 1.0)) {
      run.le("limit_density_t=1", std::abs(debt_time_density(m, 1.0) - 0.166631), 5e-7);
      run.le("limit_density_t=4", std::abs(debt_time_density(m, 4.0) - 0.008491), 5e-7);
    }
    for (const double t : {0.5, 1.0, 2.0, 4.0}) {
      double se = 0.0;
      const double mc = debt_time_density_mc(m, t, run.param("density_samples", std::size_t{200000}),
                                             hash_combine(stream_tag("debt/density"), 7), &se);
      run.le(label("density_mc_vs_closed_form_t=%g", t), std::abs(mc - debt_time_density(m, t)),
             3.0 * se);
    }
  } else {
    // The limit law is the argmax-time law of the dual model.
    const LevyModel dual = dual_model(m);
    const ConditionedSamplers Sd(dual, run.options(step));
    const auto ref = to_dist(run.draw("debt/dual_argmax", n, [&](RandomStream& rng, std::size_t) {
      return locate_max(simulate_path(dual, rng, Sd.forward_policy(0.0), 0.0)).time;
    }));
    run.le(label("ks_debt_time_x=%g_vs_dual_argmax_time", x), ks_distance(D, ref), tol, D.ess());
  }
}

void ssmp_height_tail(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.05);
  const std::size_t n = run.n(100000);
  const double z_max = run.param("z_max", 20.0);
  const double tol = run.param("slope_tolerance", 0.05);
  const ConditionedSamplers S(m, run.options(step));
  struct Out {
    double height, log_gap;
  };
  const auto out = run.draw("ssmp/excursions", n, [&](RandomStream& rng, std::size_t) {
    const TwoSidedPath tp = S.script_P(rng);
    const double sup = path_stats(tp.timeline()).sup;
    const Excursion e = excursion_from_two_sided(tp);
    return Out{e.height, std::abs(std::log(e.height) - sup)};
  });
  std::vector<double> h;
  double gap = 0.0;
  for (const auto& o : out) {
    gap = std::max(gap, o.log_gap);
    if (o.height > 1.0) h.push_back(o.height);
  }
  run.record("height", to_dist(h));
  run.le("height_is_exp_sup", gap, 1e-9);
  const TailFit fit = tail_exponent_fit(h, 1.0, z_max, 20, run.param("bootstrap", std::size_t{200}),
                                        hash_combine(stream_tag("ssmp/bootstrap"), 3));
  run.check("tail_slope", fit.slope, -run.theta(), true, static_cast<double>(fit.exceedances));
  run.check("tail_slope_bootstrap_se", fit.se, kNaN, true);
  run.le("tail_slope_abs_error", std::abs(fit.slope + run.theta()), tol,
         static_cast<double>(fit.exceedances));
}

void williams_excursion(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.01);
  const std::size_t n = run.n(10000);
  const double tol = run.param("ks_tolerance", 0.03);
  const ConditionedSamplers S(m, run.options(step));
  struct Out {
    double zeta, frac, height_err;
  };
  const auto lamperti = run.draw("williams/lamperti", n, [&](RandomStream& rng, std::size_t) {
    const Excursion e = excursion_from_two_sided(S.script_P(rng));
    if (!(e.height > 1.0)) return Out{kNaN, kNaN, 0.0};
    return Out{e.duration, e.argmax / e.duration, 0.0};
  });
  const auto glued = run.draw("williams/glued", n, [&](RandomStream& rng, std::size_t) {
    const double y = std::exp(rng.exponential(run.theta()));
    const Excursion e = excursion_williams(S, y, rng);
    return Out{e.duration, e.argmax / e.duration, std::abs(e.height - y) / y};
  });
  EmpiricalDistribution za, zb, fa, fb;
  double err = 0.0;
  for (const auto& o : lamperti) {
    if (std::isnan(o.zeta)) continue;
    za.add(o.zeta);
    fa.add(o.frac);
  }
  for (const auto& o : glued) {
    zb.add(o.zeta);
    fb.add(o.frac);
    err = std::max(err, o.height_err);
  }
  run.record("duration_lamperti", za);
  run.record("duration_williams", zb);
  run.le("ks_duration_williams_vs_lamperti", ks_distance(za, zb), tol, std::min(za.ess(), zb.ess()));
  run.le("ks_argmax_fraction_williams_vs_lamperti", ks_distance(fa, fb), tol,
         std::min(fa.ess(), fb.ess()));
  run.le("height_matches_level_max_rel_error", err, 1e-9);
}

void oracle_pairs(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.02);
  const std::size_t n = run.n(4000);
  const double start = run.param("oracle_start", 0.01);
  const double window = run.param("oracle_window", 10.0);
  const double probe = run.param("probe_time", 1.0);
  const std::size_t budget = run.param("rejection_budget", std::size_t{1000000});
  const ConditionedSamplers S(m, run.options(step));
  const LevyLaw tilted = esscher_tilt(m);

  // Conditioned descents against direct rejection on a finite window.
  const auto stay = [&](const LevyLaw& law, double x0, int side) {
    return [&, x0, side](RandomStream& rng, std::size_t) {
      const auto policy = HorizonPolicy::until(
          [side, window](const SimState& s) {
            const bool left = side < 0 ? s.running_max >= 0.0 : s.running_min <= 0.0;
            return left || s.t >= window;
          },
          step);
      for (std::size_t k = 0; k < budget; ++k) {
        const SampledPath p = simulate_path(law, rng, policy, x0);
        const PathStats st = path_stats(p);
        const bool ok = side < 0 ? st.sup < 0.0 : st.inf > 0.0;
        if (ok && p.life_end() >= window) return value_at(p, probe).value();
      }
      throw BudgetExhausted("conditioned-window oracle: budget exhausted");
    };
  };
  const auto limit_down = [&](RandomStream& rng, std::size_t) {
    return value_at(S.P_down(rng, probe), probe).value();
  };
  const auto limit_up = [&](RandomStream& rng, std::size_t) {
    return value_at(S.Ptilde_up(rng, probe), probe).value();
  };
  const auto mean_rows = [&](const std::string& id, const std::vector<double>& a,
                             const std::vector<double>& b) {
    run.le(id, std::abs(sample_mean(a) - sample_mean(b)),
           4.0 * std::hypot(sample_se(a), sample_se(b)), static_cast<double>(a.size()));
  };
  mean_rows(label("p_down_mean_at_t=%g_vs_rejection", probe), run.draw("oracle/pdown", n, limit_down),
            run.draw("oracle/pdown_rej", n, stay(m.law(), -start, -1)));
  mean_rows(label("ptilde_up_mean_at_t=%g_vs_rejection", probe), run.draw("oracle/pup", n, limit_up),
            run.draw("oracle/pup_rej", n, stay(tilted, start, +1)));

  // Acceptance frequencies against the importance-sampling estimate.
  const auto xs = run.ladder({-1.0, -2.0});
  const auto attempts = run.param("attempts", std::size_t{100000});
  std::vector<double> accepted_sup;
  for (const double x : xs) {
    const auto acc = run.draw(label("oracle/attempt/x=%g", x), attempts, [&](RandomStream& rng, std::size_t) {
      const auto p = S.conditioned_attempt(x, rng, 0.0);
      return p ? path_stats(*p).sup : kNaN;
    });
    const auto w = run.draw(label("oracle/is_weight/x=%g", x), attempts, [&](RandomStream& rng, std::size_t) {
      return S.conditioned_IS(x, rng, false).weight;
    });
    const double N = static_cast<double>(attempts);
    const auto hits = static_cast<double>(std::count_if(acc.begin(), acc.end(), [](double v) { return !std::isnan(v); }));
    const double freq = hits / N;
    const double scale = std::exp(run.theta() * x);
    const double est = scale * sample_mean(w);
    const double se = std::hypot(std::sqrt(freq * (1.0 - freq) / N), scale * sample_se(w));
    run.check(label("acceptance_frequency_x=%g", x), freq, kNaN, true, N);
    run.le(label("acceptance_vs_cramer_estimate_x=%g", x), std::abs(freq - est), 4.0 * se, N);
    if (x == xs.front())
      for (const double v : acc)
        if (!std::isnan(v)) accepted_sup.push_back(v);
  }
  if (m.law().total_jump_rate() == 0.0 && accepted_sup.size() > 1) {
    const auto d = to_dist(accepted_sup);
    run.le(label("ks_accepted_sup_x=%g_vs_exp_theta", xs.front()), ks_distance(d, exp_cdf(run.theta())),
           1.63 / std::sqrt(static_cast<double>(d.size())), d.ess());
  }

  // Calibrated rejection-versus-IS comparisons at the first ladder point.
  const double x = xs.front();
  const auto pairs = run.param("null_pairs", std::size_t{5});
  const auto pn = run.param("pair_replicates", std::size_t{2000});
  struct F {
    double overshoot, sup, later, weight;
  };
  const auto from_is = [&](RandomStream& rng, std::size_t) {
    const auto d = S.conditioned_IS(x, rng, true, probe);
    return F{d.overshoot, path_stats(d.path).sup, value_at(d.path, d.tau + probe).value(), d.weight};
  };
  const auto from_rej = [&](RandomStream& rng, std::size_t) {
    const SampledPath p = S.conditioned_rejection(x, rng, budget, nullptr, probe);
    const Passage pass = first_passage_above(p, 0.0);
    return F{pass.after, path_stats(p).sup, value_at(p, pass.time + probe).value(), 1.0};
  };
  using Sample = std::vector<F>;
  const auto dist_of = [](const Sample& s, double F::*field) {
    EmpiricalDistribution d;
    for (const auto& f : s) d.add(f.*field, f.weight);
    return d;
  };
  std::vector<Sample> is_null, rej_null;
  for (std::size_t k = 0; k < 2 * pairs; ++k) {
    is_null.push_back(run.draw("oracle/pair/is", pn, from_is, k + 101));
    rej_null.push_back(run.draw("oracle/pair/rej", pn, from_rej, k + 101));
  }
  const Sample obs_is = run.draw("oracle/pair/is", pn, from_is, 1);
  const Sample obs_rej = run.draw("oracle/pair/rej", pn, from_rej, 1);
  const std::vector<std::pair<std::string, double F::*>> fields = {
      {"overshoot", &F::overshoot}, {"sup", &F::sup}, {"value_after_tau", &F::later}};
  for (const auto& [name, field] : fields) {
    if (name == "overshoot" && !m.law().has_positive_jumps()) {
      const auto a = dist_of(obs_is, field);
      const auto b = dist_of(obs_rej, field);
      run.le(label("ks_is_vs_rejection_overshoot_x=%g", x), ks_distance(a, b), 0.0, a.ess());
      continue;
    }
    std::vector<double> na, nb;
    for (std::size_t k = 0; k < pairs; ++k) {
      na.push_back(ks_distance(dist_of(is_null[2 * k], field), dist_of(is_null[2 * k + 1], field)));
      nb.push_back(ks_distance(dist_of(rej_null[2 * k], field), dist_of(rej_null[2 * k + 1], field)));
    }
    const auto a = dist_of(obs_is, field);
    run.le(label(("ks_is_vs_rejection_" + name + "_x=%g").c_str(), x),
           ks_distance(a, dist_of(obs_rej, field)), calibrated_threshold(na, nb), a.ess());
  }
}

void lamperti_invariants(Run& run) {
  const LevyModel& m = run.model();
  const double step = run.step(0.0025);
  const std::size_t n = run.n(1000);
  const double horizon = run.param("horizon", 10.0);
  const double c = run.param("scale", 3.0);
  const ConditionedSamplers S(m, run.options(step));
  struct Out {
    double round_trip, refine_rel, endpoint, scale_err, height_err;
  };
  const double tiny = std::exp(-S.margin());
  const auto out = run.draw("lamperti/paths", n, [&](RandomStream& rng, std::size_t) {
    Out o{};
    const SampledPath p = simulate_path(m, rng, HorizonPolicy::fixed(horizon, step));
    const ClockTable clock = lamperti_clock(p);
    for (std::size_t i = 0; i < p.size(); ++i)
      o.round_trip = std::max(o.round_trip, std::abs(clock.inverse(clock.at(p.times[i])) - p.times[i]));
    const double fine = lamperti_clock(refine_path(p, rng)).total;
    o.refine_rel = std::abs(clock.total - fine) / fine;

    const Excursion e = excursion_from_two_sided(S.script_P(rng));
    o.endpoint = std::max(e.values.front(), e.values.back()) / tiny;
    const Excursion s = scale_excursion(e, c);
    o.scale_err = std::max({std::abs(s.height / c - e.height) / e.height,
                            std::abs(s.duration / c - e.duration) / e.duration,
                            std::abs(s.argmax / c - e.argmax) / std::max(e.argmax, 1e-300)});
    o.height_err = std::abs(*std::max_element(e.values.begin(), e.values.end()) - e.height);
    return o;
  });
  Out worst{};
  for (const auto& o : out) {
    worst.round_trip = std::max(worst.round_trip, o.round_trip);
    worst.refine_rel = std::max(worst.refine_rel, o.refine_rel);
    worst.endpoint = std::max(worst.endpoint, o.endpoint);
    worst.scale_err = std::max(worst.scale_err, o.scale_err);
    worst.height_err = std::max(worst.height_err, o.height_err);
  }
  const double N = static_cast<double>(n);
  run.le("clock_round_trip_max_error", worst.round_trip, step, N);
  run.le("clock_half_step_refinement_max_rel_diff", worst.refine_rel, 1e-2, N);
  run.le("excursion_endpoint_over_exp_minus_margin", worst.endpoint, 2.0, N);
  run.le("scaling_max_rel_error", worst.scale_err, 1e-12, N);
  run.le("height_is_max_value", worst.height_err, 0.0, N);
}

using Runner = void (*)(Run&);

struct Entry {
  CatalogEntry info;
  Runner run;
  LevyLaw (*default_model)();
};

LevyLaw bm1() { return brownian_law(-1.0, 1.0); }
LevyLaw bm_quarter() { return brownian_law(-0.25, 1.0); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{"exp_supremum",
        "supremum law of a Brownian Cramer model is Exp(theta) (Cramer estimate with constant 1)"},
       exp_supremum, bm1},
      {{"cramer_constant",
        "Cramer estimate: exp(-theta x) P_x(sup > 0) is constant in x, and c(theta) C = 1"},
       cramer_constant, jd1},
      {{"quasi_stationarity",
        "spatial quasi-stationarity of the two-sided law P: P(sup > y) = exp(-theta y), shift at tau_y"},
       quasi_stationarity, bm1},
      {{"theorem1_shift_at_tau",
        "limit theorem for the path shifted at its first entrance into (0,inf) given sup > 0"},
       theorem1_shift_at_tau, jd1},
      {{"theorem2_shift_at_max",
        "limit theorem for the path shifted at its maximum given sup > 0 (law Q)"},
       theorem2_shift_at_max, bm1},
      {{"premax_reversal",
        "reversed pre-maximum process equals the tilted process conditioned positive, killed at its last passage below an Exp(theta) level"},
       premax_reversal, bm1},
      {{"exp_divisor",
        "sup under P plus an independent stationary overshoot under rho is Exp(theta) (exponential divisor)"},
       exp_divisor, jd1},
      {{"last_passage_reversal",
        "P reversed at its last passage time above 0 is the two-sided law of the dual model"},
       last_passage_reversal, bm1},
      {{"sparre_andersen",
        "Sparre Andersen identity under the dual model: argmax time and occupation above 0 share the law with Laplace transform theta/Phi(a)"},
       sparre_andersen, bm1},
      {{"debt_time",
        "debt-time corollary: D given ruin converges to theta E~(xi_t^-) dt / t for spectrally positive models"},
       debt_time, bm1},
      {{"ssmp_height_tail",
        "Lamperti image of P is an excursion given H > 1 with height tail n(H > z) = c z^-theta"},
       ssmp_height_tail, bm_quarter},
      {{"williams_excursion",
        "excursion with prescribed height glued from independent conditioned descents (Williams decomposition) matches the Lamperti image of P"},
       williams_excursion, bm_quarter},
      {{"oracle_pairs",
        "rejection oracles against the conditioned-descent and importance samplers"},
       oracle_pairs, bm1},
      {{"lamperti_invariants",
        "Lamperti clock round trip, half-step refinement, excursion scaling and endpoints"},
       lamperti_invariants, bm1},
  };
  return e;
}

std::vector<double> double_list(const nlohmann::json& j, const char* field) {
  if (!j.is_array()) throw ConfigError(std::string(field) + ": expected an array of numbers");
  std::vector<double> v;
  for (const auto& e : j) {
    if (!e.is_number()) throw ConfigError(std::string(field) + ": expected an array of numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

bool ExperimentResult::passed() const noexcept {
  return !tests.empty() && std::all_of(tests.begin(), tests.end(), [](const TestRow& t) { return t.pass; });
}

const std::vector<CatalogEntry>& experiment_catalog() {
  static const std::vector<CatalogEntry> c = [] {
    std::vector<CatalogEntry> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return c;
}

std::string catalog_text() {
  std::ostringstream os;
  for (const auto& e : experiment_catalog()) os << e.name << "  --  " << e.claim << '\n';
  return os.str();
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig c;
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigError("experiment: required string field");
  c.experiment = j["experiment"].get<std::string>();
  const auto& cat = experiment_catalog();
  if (std::none_of(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.name == c.experiment; }))
    throw ConfigError("experiment: unknown name '" + c.experiment + "'; catalog:\n" + catalog_text());
  try {
    if (j.contains("model")) c.model = law_from_json(j["model"]);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  const auto number = [&](const char* field) -> const nlohmann::json& {
    const auto& v = j[field];
    if (!v.is_number()) throw ConfigError(std::string(field) + ": expected a number");
    return v;
  };
  if (j.contains("seed")) {
    const auto& v = number("seed");
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
      throw ConfigError("seed: expected a non-negative integer");
    c.seed = v.get<std::uint64_t>();
  }
  if (j.contains("replicates")) {
    const auto& v = number("replicates");
    if (!v.is_number_integer() || v.get<long long>() < 100)
      throw ConfigError("replicates: expected an integer >= 100");
    c.replicates = v.get<std::size_t>();
  }
  if (j.contains("step")) {
    c.step = number("step").get<double>();
    if (!(c.step > 0.0)) throw ConfigError("step: must be > 0");
  }
  if (j.contains("x_ladder")) {
    c.x_ladder = double_list(j["x_ladder"], "x_ladder");
    for (std::size_t i = 0; i < c.x_ladder.size(); ++i) {
      if (!(c.x_ladder[i] < 0.0)) throw ConfigError("x_ladder: entries must be negative");
      if (i > 0 && !(c.x_ladder[i] < c.x_ladder[i - 1]))
        throw ConfigError("x_ladder: must be strictly decreasing");
    }
  }
  if (j.contains("levels")) c.levels = double_list(j["levels"], "levels");
  if (j.contains("horizons")) c.horizons = double_list(j["horizons"], "horizons");
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output: expected a string");
    c.output = j["output"].get<std::string>();
  }
  if (j.contains("workers")) {
    const auto& v = number("workers");
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError("workers: expected an integer >= 0");
    c.workers = v.get<std::size_t>();
  }
  if (j.contains("write_ensembles")) {
    if (!j["write_ensembles"].is_boolean()) throw ConfigError("write_ensembles: expected a boolean");
    c.write_ensembles = j["write_ensembles"].get<bool>();
  }
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("params: expected an object");
    c.params = j["params"];
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("config: cannot open " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  return parse_config(j);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& e : entries()) {
    if (e.info.name != config.experiment) continue;
    Run run(config, e.default_model());
    e.run(run);
    ExperimentResult r = run.finish();
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw ConfigError("experiment: unknown name '" + config.experiment + "'; catalog:\n" + catalog_text());
}

std::string results_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "test_id,statistic,threshold,ess,pass\n";
  for (const auto& t : result.tests)
    os << t.test_id << ',' << num(t.statistic) << ',' << num(t.threshold) << ',' << num(t.ess) << ','
       << (t.pass ? "true" : "false") << '\n';
  return os.str();
}

nlohmann::json summary_json(const ExperimentResult& result) {
  nlohmann::json tests = nlohmann::json::array();
  const auto finite = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  for (const auto& t : result.tests)
    tests.push_back({{"test_id", t.test_id},
                     {"statistic", finite(t.statistic)},
                     {"threshold", finite(t.threshold)},
                     {"ess", finite(t.ess)},
                     {"pass", t.pass}});
  return {{"experiment", result.experiment},
          {"model", to_json(result.model)},
          {"seed", result.seed},
          {"pass", result.passed()},
          {"tests", tests},
          {"wall_time_s", result.wall_time_s}};
}

std::string ensemble_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "replicate,functional_name,value,weight\n";
  for (const auto& e : result.ensembles)
    os << e.replicate << ',' << e.functional << ',' << num(e.value) << ',' << num(e.weight) << '\n';
  return os.str();
}

void write_reports(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "results.csv") << results_csv(result);
  std::ofstream(dir / "summary.json") << summary_json(result).dump(2) << '\n';
  if (!result.ensembles.empty()) std::ofstream(dir / "ensemble.csv") << ensemble_csv(result);
}

}  // namespace levylab
