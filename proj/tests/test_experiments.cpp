#include <doctest.h>
#include <fstream>

#include "levylab/ensemble.hpp"
#include "levylab/experiments.hpp"

using namespace levylab;
using nlohmann::json;

namespace {
std::string config_error(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("catalog") {
    const auto& c = experiment_catalog();
    CHECK(c.size() >= 10);
    const std::string text = catalog_text();
    for (const char* name : {"debt_time", "theorem2_shift_at_max", "theorem1_shift_at_tau", "exp_divisor",
                             "sparre_andersen", "ssmp_height_tail", "williams_excursion"})
      CHECK(text.find(name) != std::string::npos);
  }

  TEST_CASE("config errors name the field") {
    CHECK(config_error(json::parse(R"({"seed": 1})")).find("experiment") != std::string::npos);
    const std::string unknown = config_error(json::parse(R"({"experiment": "nope"})"));
    CHECK(unknown.find("unknown") != std::string::npos);
    CHECK(unknown.find("debt_time") != std::string::npos);
    CHECK(config_error(json::parse(R"({"experiment": "debt_time", "replicates": 10})")).find("replicates") !=
          std::string::npos);
    CHECK(config_error(json::parse(R"({"experiment": "debt_time", "step": 0})")).find("step") !=
          std::string::npos);
    CHECK(config_error(json::parse(R"({"experiment": "debt_time", "x_ladder": [-2, -1]})")).find("x_ladder") !=
          std::string::npos);
    CHECK(config_error(json::parse(R"({"experiment": "debt_time", "model": {"drift": -1}})")).find("model") !=
          std::string::npos);
    CHECK(config_error(json::parse(R"({"experiment": "debt_time", "seed": "x"})")).find("seed") !=
          std::string::npos);
  }

  TEST_CASE("valid config") {
    const ExperimentConfig c = parse_config(json::parse(R"({
      "experiment": "theorem1_shift_at_tau", "seed": 9, "replicates": 500, "step": 0.05,
      "x_ladder": [-1, -2], "model": {"drift": -1, "sigma": 1}, "params": {"seeds": 3}})"));
    CHECK(c.seed == 9);
    CHECK(c.replicates == 500);
    CHECK(c.x_ladder == std::vector<double>{-1.0, -2.0});
    REQUIRE(c.model.has_value());
    CHECK(c.model->drift == -1.0);
    CHECK(c.params["seeds"] == 3);
  }

  TEST_CASE("unknown experiment at run time") {
    ExperimentConfig c;
    c.experiment = "nope";
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
  }

  TEST_CASE("identical outputs for identical configuration") {
    ExperimentConfig c = parse_config(json::parse(R"({"experiment": "quasi_stationarity", "seed": 7,
                                                      "replicates": 2000, "model": {"drift": -1, "sigma": 1}})"));
    c.workers = 1;
    const std::string one = results_csv(run_experiment(c));
    CHECK(one == results_csv(run_experiment(c)));
    c.workers = 3;
    CHECK(one == results_csv(run_experiment(c)));
    CHECK(one.rfind("test_id,statistic,threshold,ess,pass\n", 0) == 0);
  }

  TEST_CASE("reports") {
    ExperimentConfig c = parse_config(json::parse(R"({"experiment": "exp_supremum", "seed": 3,
                                                      "replicates": 1000, "write_ensembles": true})"));
    const ExperimentResult r = run_experiment(c);
    const json s = summary_json(r);
    for (const char* key : {"experiment", "model", "seed", "tests", "wall_time_s"}) CHECK(s.contains(key));
    CHECK(s["tests"].size() == r.tests.size());
    CHECK(ensemble_csv(r).rfind("replicate,functional_name,value,weight\n", 0) == 0);
    CHECK(r.ensembles.size() == 1000);

    const auto dir = std::filesystem::temp_directory_path() / "levylab_report_test";
    std::filesystem::remove_all(dir);
    write_reports(r, dir);
    CHECK(std::filesystem::exists(dir / "results.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "ensemble.csv"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("parallel map keeps index order and rethrows the first failure") {
    const auto v = parallel_map<int>(1000, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    try {
      parallel_map<int>(
          500,
          [](std::size_t i) -> int {
            if (i == 77 || i == 300) throw std::runtime_error(std::to_string(i));
            return 0;
          },
          4);
      FAIL("no exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "77");
    }
  }
}
