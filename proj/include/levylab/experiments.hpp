#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "levylab/levy_model.hpp"

namespace levylab {

/// Raised for malformed configurations; the message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string experiment;
  /// Model description; each experiment has a default when absent.
  std::optional<LevyLaw> model;
  std::uint64_t seed = 1;
  /// Main sample size; 0 selects the experiment default.
  std::size_t replicates = 0;
  /// Grid spacing; 0 selects the experiment default.
  double step = 0.0;
  std::vector<double> x_ladder;
  std::vector<double> levels;
  std::vector<double> horizons;
  std::string output;
  /// Worker threads; 0 defers to LEVYLAB_WORKERS / hardware concurrency.
  std::size_t workers = 0;
  bool write_ensembles = false;
  /// Experiment-specific settings (see README).
  nlohmann::json params = nlohmann::json::object();
};

struct TestRow {
  std::string test_id;
  double statistic = 0.0;
  double threshold = 0.0;
  double ess = 0.0;  // NaN when not applicable
  bool pass = false;
};

struct EnsembleRow {
  std::size_t replicate = 0;
  std::string functional;
  double value = 0.0;
  double weight = 1.0;
};

struct ExperimentResult {
  std::string experiment;
  LevyLaw model;
  std::uint64_t seed = 0;
  std::vector<TestRow> tests;
  std::vector<EnsembleRow> ensembles;
  double wall_time_s = 0.0;

  bool passed() const noexcept;
};

struct CatalogEntry {
  std::string name;
  std::string claim;
};

const std::vector<CatalogEntry>& experiment_catalog();
std::string catalog_text();

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& file);

/// Runs one catalog experiment. Outputs depend only on the configuration:
/// every replicate draws from a substream derived from (seed, label, index).
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string results_csv(const ExperimentResult& result);
nlohmann::json summary_json(const ExperimentResult& result);
std::string ensemble_csv(const ExperimentResult& result);
/// Writes results.csv, summary.json and (when present) ensemble.csv.
void write_reports(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace levylab
