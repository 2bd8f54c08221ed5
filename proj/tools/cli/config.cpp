#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "greyvar/error.hpp"
#include "greyvar/params.hpp"

namespace greyvar::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  fail(ErrorKind::Usage, "config field '" + field + "': " + why);
}

template <typename T>
void read(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_field(key, e.what());
  }
}

template <typename T>
void read(const json& j, const char* key, std::optional<T>& target) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_field(key, e.what());
  }
}

std::vector<ParamPair> read_pairs(const json& j, const char* key, std::vector<ParamPair> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<ParamPair> out;
  try {
    for (const auto& item : j.at(key)) {
      if (item.is_array() && item.size() == 2) {
        out.push_back({item[0].get<double>(), item[1].get<double>()});
      } else {
        out.push_back({item.at("alpha").get<double>(), item.at("beta").get<double>()});
      }
    }
  } catch (const json::exception& e) {
    bad_field(key, std::string("expected [[alpha, beta], ...]: ") + e.what());
  }
  return out;
}

json pairs_json(const std::vector<ParamPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back({p.alpha, p.beta});
  return out;
}

void check_params(const std::string& field, double alpha, double beta) {
  try {
    GreyParams(alpha, beta);
  } catch (const Error& e) {
    bad_field(field, e.what());
  }
}

bool one_of(const std::string& value, std::initializer_list<const char*> options) {
  return std::any_of(options.begin(), options.end(), [&](const char* o) { return value == o; });
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "sample") return Command::Sample;
  if (name == "variation") return Command::Variation;
  if (name == "estimate") return Command::Estimate;
  if (name == "discriminate") return Command::Discriminate;
  if (name == "validate") return Command::Validate;
  fail(ErrorKind::Usage, "unknown command '" + name + "'");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Sample: return "sample";
    case Command::Variation: return "variation";
    case Command::Estimate: return "estimate";
    case Command::Discriminate: return "discriminate";
    case Command::Validate: return "validate";
  }
  return "sample";
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Usage, "config must be a JSON object");
  static const std::set<std::string, std::less<>> known{
      "command", "master_seed", "format", "out", "input", "process", "method", "alpha", "beta",
      "hurst", "grid", "level", "steps", "n_paths", "p_list", "level_lo", "level_hi",
      "renormalized", "p", "region", "beta_alpha", "candidates", "threshold", "records", "checks",
      "validate_params", "thetas", "s", "t", "cf_level", "moment_orders", "lags"};
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) bad_field(item.key(), "unknown config key");
  }
  ExperimentConfig c;
  if (j.contains("command")) {
    std::string name;
    read(j, "command", name);
    c.command = parse_command(name);
  }
  read(j, "master_seed", c.master_seed);
  read(j, "format", c.format);
  read(j, "out", c.out);
  read(j, "input", c.input);
  read(j, "process", c.process);
  read(j, "method", c.method);
  read(j, "alpha", c.alpha);
  read(j, "beta", c.beta);
  if (j.contains("hurst")) {
    double hurst = 0.0;
    read(j, "hurst", hurst);
    c.alpha = 2.0 * hurst;
    c.beta = 1.0;
  }
  read(j, "grid", c.grid);
  read(j, "level", c.level);
  read(j, "steps", c.steps);
  read(j, "n_paths", c.n_paths);
  read(j, "p_list", c.p_list);
  read(j, "level_lo", c.level_lo);
  read(j, "level_hi", c.level_hi);
  read(j, "renormalized", c.renormalized);
  read(j, "p", c.p);
  read(j, "region", c.region);
  read(j, "beta_alpha", c.beta_alpha);
  c.candidates = read_pairs(j, "candidates", c.candidates);
  read(j, "threshold", c.threshold);
  read(j, "records", c.records);
  read(j, "checks", c.checks);
  c.validate_params = read_pairs(j, "validate_params", c.validate_params);
  read(j, "thetas", c.thetas);
  read(j, "s", c.s);
  read(j, "t", c.t);
  read(j, "cf_level", c.cf_level);
  read(j, "moment_orders", c.moment_orders);
  read(j, "lags", c.lags);
  return c;
}

json to_json(const ExperimentConfig& c) {
  // Every field, so that parse_config(to_json(c)) == c for any command.
  json j;
  j["command"] = to_string(c.command);
  j["master_seed"] = c.master_seed ? json(*c.master_seed) : json(nullptr);
  j["format"] = c.format;
  j["out"] = c.out;
  j["input"] = c.input;
  j["process"] = c.process;
  j["method"] = c.method;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["grid"] = c.grid;
  j["level"] = c.level;
  j["steps"] = c.steps;
  j["n_paths"] = c.n_paths;
  j["p_list"] = c.p_list;
  j["level_lo"] = c.level_lo;
  j["level_hi"] = c.level_hi;
  j["renormalized"] = c.renormalized;
  j["p"] = c.p;
  j["region"] = c.region;
  j["beta_alpha"] = c.beta_alpha ? json(*c.beta_alpha) : json(nullptr);
  j["candidates"] = pairs_json(c.candidates);
  j["threshold"] = c.threshold;
  j["records"] = c.records;
  j["checks"] = c.checks;
  j["validate_params"] = pairs_json(c.validate_params);
  j["thetas"] = c.thetas;
  j["s"] = c.s;
  j["t"] = c.t;
  j["cf_level"] = c.cf_level;
  j["moment_orders"] = c.moment_orders;
  j["lags"] = c.lags;
  return j;
}

void validate_config(const ExperimentConfig& c) {
  const bool sample = c.command == Command::Sample;
  if (!(one_of(c.format, {"csv", "json"}) || (sample && c.format == "bin"))) {
    bad_field("format", "expected csv or json" + std::string(sample ? " or bin" : ""));
  }
  if (c.command == Command::Validate && c.format != "json") {
    bad_field("format", "validate reports are JSON only");
  }
  if (c.format == "bin" && c.out.empty()) bad_field("out", "binary bundles need an output file");
  const bool simulates = c.command != Command::Validate && c.input.empty();
  if ((simulates || c.command == Command::Validate) && !c.master_seed) {
    bad_field("master_seed", "a seed is mandatory for recorded runs (use --seed)");
  }
  if (c.command != Command::Validate && c.input.empty()) {
    if (!one_of(c.process, {"ggbm", "fbm"})) bad_field("process", "expected ggbm or fbm");
    if (!one_of(c.method, {"circulant", "cholesky"})) {
      bad_field("method", "expected circulant or cholesky");
    }
    if (c.process == "ggbm" && c.method == "cholesky" && c.beta != 1.0) {
      bad_field("method", "the Cholesky sampler produces fBm only (beta = 1)");
    }
    if (c.process == "fbm" && c.beta != 1.0) bad_field("beta", "fbm requires beta = 1");
    check_params("alpha/beta", c.alpha, c.beta);
    if (!one_of(c.grid, {"dyadic", "uniform"})) bad_field("grid", "expected dyadic or uniform");
    if (c.grid == "dyadic" && (c.level < 0 || c.level > 24)) bad_field("level", "expected 0..24");
    if (c.grid == "uniform" && (c.steps < 1 || c.steps > (1u << 24))) {
      bad_field("steps", "expected 1..2^24");
    }
    if (c.n_paths < 1) bad_field("n_paths", "must be at least 1");
  }
  switch (c.command) {
    case Command::Sample:
      break;
    case Command::Variation:
      if (c.p_list.empty()) bad_field("p_list", "needs at least one exponent");
      for (double p : c.p_list) {
        if (!(p > 0.0)) bad_field("p_list", "exponents must be positive");
      }
      if (c.level_lo < 1) bad_field("level_lo", "must be at least 1");
      if (c.level_hi != 0 && c.level_hi < c.level_lo) bad_field("level_hi", "below level_lo");
      if (c.input.empty() && c.grid == "dyadic" && c.level_hi > c.level) {
        bad_field("level_hi", "exceeds the simulated level");
      }
      break;
    case Command::Estimate:
      if (!(c.p > 0.0)) bad_field("p", "must be positive");
      if (!one_of(c.region, {"low", "high"})) bad_field("region", "expected low or high");
      if (c.beta_alpha && !(*c.beta_alpha > 0.0 && *c.beta_alpha < 2.0)) {
        bad_field("beta_alpha", "must lie in (0, 2)");
      }
      break;
    case Command::Discriminate:
      if (c.candidates.size() < 2) bad_field("candidates", "needs at least two candidates");
      for (const auto& p : c.candidates) check_params("candidates", p.alpha, p.beta);
      if (!(c.threshold > 0.0)) bad_field("threshold", "must be positive");
      if (c.input.empty() && (c.grid != "dyadic" || c.level < 8)) {
        bad_field("level", "discrimination needs dyadic paths of level >= 8");
      }
      break;
    case Command::Validate:
      for (const auto& check : c.checks) {
        if (!one_of(check, {"special", "cf", "moments", "mixing"})) {
          bad_field("checks", "unknown check '" + check + "'");
        }
      }
      for (const auto& p : c.validate_params) check_params("validate_params", p.alpha, p.beta);
      if (c.n_paths < 10000) bad_field("n_paths", "validation needs at least 10^4 paths");
      for (int order : c.moment_orders) {
        if (order != 2 && order != 4) bad_field("moment_orders", "orders are limited to 2 and 4");
      }
      for (int lag : c.lags) {
        if (lag < 1 || lag > 128) bad_field("lags", "lags must lie in [1, 128]");
      }
      if (c.cf_level < 0 || c.cf_level > 16) bad_field("cf_level", "expected 0..16");
      break;
  }
}

}  // namespace greyvar::cli
