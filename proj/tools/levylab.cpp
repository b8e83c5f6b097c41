#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "levylab/experiments.hpp"
#include "levylab/levy_model.hpp"
#include "levylab/samplers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedTests = 1;
constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;
constexpr int kExitRuntime = 4;

int run_command(const std::string& config_path, const std::string& output_override) {
  using namespace levylab;
  ExperimentConfig cfg = load_config(config_path);
  if (!output_override.empty()) cfg.output = output_override;
  const ExperimentResult result = run_experiment(cfg);
  if (!cfg.output.empty()) {
    write_reports(result, cfg.output);
    std::cerr << "reports written to " << cfg.output << '\n';
  }
  std::cout << results_csv(result);
  std::fprintf(stderr, "%s: %s (%.1f s)\n", result.experiment.c_str(), result.passed() ? "PASS" : "FAIL",
               result.wall_time_s);
  return result.passed() ? kExitOk : kExitFailedTests;
}

int validate_command(const std::string& model_path) {
  using namespace levylab;
  std::ifstream in(model_path);
  if (!in) throw ConfigError("model: cannot open " + model_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("model: JSON parse error: ") + e.what());
  }
  if (j.contains("model") && j["model"].is_object()) j = j["model"];
  const LevyModel m = validate_model(law_from_json(j));
  nlohmann::json out = {{"model", to_json(m.law())},
                        {"theta", m.theta()},
                        {"mean", m.mean()},
                        {"tilted_mean", m.tilted_mean()},
                        {"stop_margin", ConditionedSamplers(m).margin()},
                        {"tilted", to_json(esscher_tilt(m))}};
  try {
    out["dual"] = to_json(dual_model(m).law());
  } catch (const ModelError& e) {
    out["dual"] = std::string("unavailable: ") + e.what();
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levylab: simulation experiments for Levy processes conditioned on a large maximum"};
  app.require_subcommand(1);

  std::string config_path, output;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON configuration");
  run->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output, "output directory (overrides the config)");

  auto* list = app.add_subcommand("list", "list the experiment catalog");

  std::string model_path;
  auto* validate = app.add_subcommand("validate", "check a model and print its Cramer root");
  validate->add_option("--model", model_path, "model JSON file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, output);
    if (*list) {
      std::cout << levylab::catalog_text();
      return kExitOk;
    }
    if (*validate) return validate_command(model_path);
  } catch (const levylab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const levylab::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
