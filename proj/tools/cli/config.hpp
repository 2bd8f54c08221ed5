#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace greyvar::cli {

enum class Command { Sample, Variation, Estimate, Discriminate, Validate };

Command parse_command(const std::string& name);
std::string to_string(Command command);

struct ParamPair {
  double alpha = 1.0;
  double beta = 1.0;
  friend bool operator==(const ParamPair&, const ParamPair&) = default;
};

/// Flat experiment description. Every field has an explicit value after
/// parsing, so the echoed config is complete and parses back identically.
struct ExperimentConfig {
  Command command = Command::Sample;
  std::optional<std::uint64_t> master_seed;
  std::string format = "json";  // csv | json | bin (sample only)
  std::string out;              // empty: stdout

  // Path source: simulate, or read a run bundle.
  std::string input;
  std::string process = "ggbm";     // ggbm | fbm
  std::string method = "circulant"; // circulant | cholesky
  double alpha = 1.0;
  double beta = 1.0;
  std::string grid = "dyadic";  // dyadic | uniform
  int level = 10;
  std::uint64_t steps = 1024;   // uniform grids
  std::uint64_t n_paths = 1;

  // variation
  std::vector<double> p_list{2.0};
  int level_lo = 1;
  int level_hi = 0;  // 0: path level
  bool renormalized = false;

  // estimate
  double p = 1.0;
  std::string region = "low";  // low | high
  std::optional<double> beta_alpha;  // alpha used to invert beta; default: the estimate

  // discriminate
  std::vector<ParamPair> candidates;
  double threshold = 0.5;
  bool records = false;

  // validate
  std::vector<std::string> checks{"special", "cf", "moments", "mixing"};
  std::vector<ParamPair> validate_params{{1.0, 1.0}};
  std::vector<double> thetas{0.0, 0.5, 1.0, 2.0};
  double s = 0.5;
  double t = 1.0;
  int cf_level = 4;
  std::vector<int> moment_orders{2, 4};
  std::vector<int> lags{2, 8, 64};

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and range-checks a config; throws Error(Usage) naming the field.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

/// Range checks that must hold before any sampling starts.
void validate_config(const ExperimentConfig& config);

}  // namespace greyvar::cli
