#include <fstream>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "greyvar/error.hpp"
#include "greyvar/io.hpp"

namespace greyvar::cli {
namespace {

using nlohmann::json;

json load_preset(const std::string& name) {
  std::ifstream in(std::string(GREYVAR_PRESET_DIR) + "/" + name + ".json");
  return json::parse(in);
}

std::string usage_message(const json& j) {
  try {
    validate_config(parse_config(j));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Usage);
    return e.what();
  }
  ADD_FAILURE() << "config accepted: " << j.dump();
  return "";
}

TEST(Config, EchoRoundTripForEveryPreset) {
  for (const char* name : {"prop7-trichotomy", "thm10-grid", "fbm-singularity", "validate-all"}) {
    json j = load_preset(name);
    for (const char* cmd : {"sample", "variation", "estimate", "discriminate", "validate"}) {
      j["command"] = cmd;
      const auto config = parse_config(j);
      EXPECT_EQ(parse_config(to_json(config)), config) << name << " " << cmd;
    }
  }
}

TEST(Config, EchoRoundTripNonDefaultFields) {
  ExperimentConfig c;
  c.command = Command::Estimate;
  c.master_seed = 18446744073709551615ull;
  c.alpha = 0.3;
  c.beta = 0.1;
  c.beta_alpha = 1.25;
  c.p_list = {0.1, 1.0 / 3.0};
  c.candidates = {{0.5, 0.5}, {1.5, 0.25}};
  c.validate_params = {{1.9, 1.0}};
  c.lags = {1, 128};
  EXPECT_EQ(parse_config(to_json(c)), c);
  EXPECT_EQ(parse_config(json::parse(to_json(c).dump())), c);
}

TEST(Config, HurstAlias) {
  const auto c = parse_config(json{{"hurst", 0.3}});
  EXPECT_DOUBLE_EQ(c.alpha, 0.6);
  EXPECT_EQ(c.beta, 1.0);
}

TEST(Config, UsageErrorsNameTheField) {
  const json base{{"command", "variation"}, {"master_seed", 1}};
  auto with = [&](const char* key, json value) {
    json j = base;
    j[key] = std::move(value);
    return j;
  };
  EXPECT_NE(usage_message(with("alpha", 2.0)).find("alpha"), std::string::npos);
  EXPECT_NE(usage_message(with("beta", 0.0)).find("beta"), std::string::npos);
  EXPECT_NE(usage_message(with("level", 25)).find("level"), std::string::npos);
  EXPECT_NE(usage_message(with("p_list", json::array({1.0, -1.0}))).find("p_list"), std::string::npos);
  EXPECT_NE(usage_message(with("format", "xml")).find("format"), std::string::npos);
  EXPECT_NE(usage_message(with("alhpa", 1.0)).find("alhpa"), std::string::npos);
  EXPECT_NE(usage_message(with("level", "ten")).find("level"), std::string::npos);
  EXPECT_NE(usage_message(json{{"command", "sample"}}).find("master_seed"), std::string::npos);
  EXPECT_NE(usage_message(json{{"command", "fly"}}).find("fly"), std::string::npos);
  EXPECT_NE(usage_message(json{{"command", "discriminate"}, {"master_seed", 1}, {"level", 12},
                               {"candidates", json::array({json::array({1.0, 1.0})})}})
                .find("candidates"),
            std::string::npos);
}

TEST(Config, CholeskyIsFbmOnly) {
  EXPECT_NE(usage_message(json{{"command", "sample"}, {"master_seed", 1}, {"method", "cholesky"},
                               {"beta", 0.5}})
                .find("method"),
            std::string::npos);
}

TEST(Commands, RerunIsByteIdentical) {
  json j = load_preset("fbm-singularity");
  j["command"] = "discriminate";
  j["level"] = 10;
  j["n_paths"] = 8;
  const auto config = parse_config(j);
  const auto a = run_command(config, 1);
  const auto b = run_command(config, 3);
  EXPECT_EQ(a.results.dump(), b.results.dump());
  EXPECT_EQ(a.csv, b.csv);
}

TEST(Commands, SampleBundleFeedsVariation) {
  const auto dir = std::filesystem::temp_directory_path() / "greyvar_cli_test";
  std::filesystem::create_directories(dir);
  const auto bundle = dir / "paths.gvpb";
  ExperimentConfig sample;
  sample.command = Command::Sample;
  sample.master_seed = 5;
  sample.format = "bin";
  sample.out = bundle.string();
  sample.alpha = 1.2;
  sample.beta = 0.7;
  sample.level = 9;
  sample.n_paths = 3;
  write_file_atomic(bundle, run_command(sample, 2).binary);

  ExperimentConfig from_file;
  from_file.command = Command::Variation;
  from_file.input = bundle.string();
  from_file.p_list = {2.0};
  ExperimentConfig simulated = sample;
  simulated.command = Command::Variation;
  simulated.format = "json";
  simulated.out.clear();
  simulated.p_list = {2.0};
  const auto r1 = run_command(from_file, 1).results;
  const auto r2 = run_command(simulated, 1).results;
  EXPECT_EQ(r1["rows"][0]["levels"].dump(), r2["rows"][0]["levels"].dump());
  std::filesystem::remove_all(dir);
}

TEST(Commands, ReportHasAllSections) {
  ExperimentConfig c;
  c.command = Command::Sample;
  c.master_seed = 1;
  c.level = 3;
  const auto report = make_report(c, run_command(c, 1), 0.5);
  for (const char* key : {"command", "config", "results", "version", "wall_time_s"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
  EXPECT_EQ(parse_config(report["config"]), c);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code_for(Error(ErrorKind::Usage, "")), 2);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::Parameter, "")), 2);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::Numerical, "")), 3);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::Accuracy, "")), 3);
  EXPECT_EQ(exit_code_for(Error(ErrorKind::Io, "")), 4);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 3);
}

}  // namespace
}  // namespace greyvar::cli
