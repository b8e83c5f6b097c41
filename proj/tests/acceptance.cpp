// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Each criterion runs catalog experiments at their default sizes; tolerances
// live in the experiments themselves and are echoed in the row output.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "levylab/experiments.hpp"

using namespace levylab;

namespace {

LevyLaw bm(double drift) { return brownian_law(drift, 1.0); }
LevyLaw jd1() { return jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}}); }

ExperimentConfig config(const std::string& name, const LevyLaw& model, std::uint64_t seed = 20261014) {
  ExperimentConfig c;
  c.experiment = name;
  c.model = model;
  c.seed = seed;
  return c;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  double seconds = 0.0;
};

bool verbose_rows = true;

void absorb(Outcome& o, const ExperimentResult& r, const std::string& tag) {
  o.seconds += r.wall_time_s;
  std::size_t failed = 0;
  for (const auto& t : r.tests) {
    if (verbose_rows)
      std::printf("      %-5s %-14s %-52s stat=%.6g thr=%.6g\n", t.pass ? "ok" : "FAIL", tag.c_str(),
                  t.test_id.c_str(), t.statistic, t.threshold);
    if (!t.pass) ++failed;
  }
  if (failed || r.tests.empty()) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += tag + " " + std::to_string(r.tests.size() - failed) + "/" + std::to_string(r.tests.size());
}

Outcome run_all(const std::vector<std::pair<std::string, ExperimentConfig>>& runs) {
  Outcome o;
  for (const auto& [tag, cfg] : runs) {
    try {
      absorb(o, run_experiment(cfg), tag);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + tag + " error: " + e.what();
    }
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  ExperimentConfig c = config("quasi_stationarity", bm(-1.0), 7);
  c.replicates = 20000;
  std::string reference;
  for (const std::size_t workers : {1, 2, 4, 7}) {
    c.workers = workers;
    const ExperimentResult r = run_experiment(c);
    o.seconds += r.wall_time_s;
    const std::string csv = results_csv(r);
    if (reference.empty()) reference = csv;
    if (csv != reference) {
      o.pass = false;
      o.detail = "results.csv differs at workers=" + std::to_string(workers);
      return o;
    }
  }
  o.detail = "results.csv byte-identical for workers 1, 2, 4, 7";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exponential supremum of BM(-1,1)",
       [] { return run_all({{"BM", config("exp_supremum", bm(-1.0))}}); }},
      {2, "Cramer estimate constancy",
       [] {
         return run_all({{"JD1", config("cramer_constant", jd1())}, {"BM", config("cramer_constant", bm(-1.0))}});
       }},
      {3, "quasi-stationarity of the two-sided law",
       [] {
         return run_all({{"BM", config("quasi_stationarity", bm(-1.0))},
                         {"JD1", config("quasi_stationarity", jd1())}});
       }},
      {4, "shift at the first passage (overshoot limit)",
       [] { return run_all({{"JD1", config("theorem1_shift_at_tau", jd1())}}); }},
      {5, "shift at the maximum (post-maximum limit)",
       [] {
         return run_all({{"BM", config("theorem2_shift_at_max", bm(-1.0))},
                         {"JD1", config("theorem2_shift_at_max", jd1())}});
       }},
      {6, "pre-maximum reversal",
       [] { return run_all({{"BM", config("premax_reversal", bm(-1.0))}}); }},
      {7, "exponential divisor",
       [] { return run_all({{"JD1", config("exp_divisor", jd1())}}); }},
      {8, "time reversal at the last passage",
       [] { return run_all({{"BM", config("last_passage_reversal", bm(-1.0))}}); }},
      {9, "Sparre Andersen identity",
       [] { return run_all({{"BM", config("sparre_andersen", bm(-1.0))}}); }},
      {10, "debt time given ruin",
       [] { return run_all({{"BM", config("debt_time", bm(-1.0))}}); }},
      {11, "height tail of the self-similar excursion",
       [] {
         return run_all({{"theta=0.5", config("ssmp_height_tail", bm(-0.25))},
                         {"theta=0.8", config("ssmp_height_tail", bm(-0.4))}});
       }},
      {12, "Williams decomposition against the Lamperti image",
       [] { return run_all({{"BM(-0.25)", config("williams_excursion", bm(-0.25))}}); }},
      {13, "infrastructure: determinism, oracle pairs, Lamperti invariants",
       [] {
         Outcome o = determinism();
         const Outcome rest = run_all({{"oracle BM", config("oracle_pairs", bm(-1.0))},
                                       {"oracle JD1", config("oracle_pairs", jd1())},
                                       {"lamperti", config("lamperti_invariants", bm(-1.0))}});
         o.pass = o.pass && rest.pass;
         o.detail += "; " + rest.detail;
         o.seconds += rest.seconds;
         return o;
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::printf("criterion %d: %s\n", c.id, c.title);
    std::fflush(stdout);
    const Outcome o = c.run();
    std::printf("%s criterion %2d: %s [%s] (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), o.seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
