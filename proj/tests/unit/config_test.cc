#include "qtraj/config.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "qtraj/errors.hpp"

namespace qtraj {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch_file(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "qtraj_config_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

TEST(ConfigTest, EmptyConfigGivesDefaults) {
  const ExperimentConfig c = parse_config(std::nullopt);
  EXPECT_EQ(c.params.omega, 1.0);
  EXPECT_EQ(c.params.gamma, 1.0);
  EXPECT_EQ(c.params.coupling, 0.0);
  EXPECT_EQ(c.params.beta, 1.0);
  EXPECT_EQ(c.params.dt, 0.01);
  EXPECT_EQ(c.params.steps, 100000);
  EXPECT_EQ(c.params.n_traj, 200);
  EXPECT_EQ(c.params.seed, 1u);
  EXPECT_EQ(c.params.sample_stride, 10);
  EXPECT_EQ(c.analysis.transient_fraction, 0.2);
  EXPECT_EQ(c.analysis.max_lag, 200);
  EXPECT_EQ(c.model, ModelSelection::kBoth);
  EXPECT_EQ(c.analysis.convention, EmissionConvention::kAnyFlip);
}

TEST(ConfigTest, FlagsOverrideFile) {
  const fs::path f = scratch_file("cfg.json", R"({"coupling": 0, "omega": 2.0})");
  const ExperimentConfig c = parse_config(f, json{{"coupling", 3}});
  EXPECT_EQ(c.params.coupling, 3.0);
  EXPECT_EQ(c.params.omega, 2.0);
}

TEST(ConfigTest, GammaDtGuard) {
  EXPECT_THROW(parse_config(std::nullopt, json{{"dt", 0.1}, {"gamma", 1.0}}), NumericalGuardError);
  EXPECT_NO_THROW(parse_config(std::nullopt, json{{"dt", 0.05}, {"gamma", 1.0}}));
}

TEST(ConfigTest, UnknownKeyIsNamed) {
  try {
    parse_config(std::nullopt, json{{"omgea", 1.0}});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("omgea"), std::string::npos);
  }
}

TEST(ConfigTest, InvariantViolationNamesFieldAndBound) {
  try {
    parse_config(std::nullopt, json{{"transient", 1.0}});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("transient"), std::string::npos);
    EXPECT_NE(msg.find("< 1"), std::string::npos);
  }
  EXPECT_THROW(parse_config(std::nullopt, json{{"n_traj", 0}}), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, json{{"ratios", json::array()}}), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, json{{"model", "hybrid"}}), ConfigError);
  EXPECT_THROW(parse_config(std::nullopt, json{{"steps", "many"}}), ConfigError);
}

TEST(ConfigTest, RoundTripsThroughOutputHeader) {
  ExperimentConfig c = parse_config(std::nullopt, json{{"coupling", 0.5}, {"seed", 99}, {"mi_mode", "ensemble"}});
  const fs::path f = scratch_file("out.csv", "# qtraj 0.1.0\n# config: " + c.to_json().dump() + "\n# seed: 99\na,b\n1,2\n");
  const ExperimentConfig back = parse_config(f);
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.params.seed, 99u);
  EXPECT_EQ(back.analysis.mi_mode, MiMode::kEnsemble);
}

TEST(ConfigTest, MissingOrMalformedFile) {
  EXPECT_THROW(parse_config(fs::path("/nonexistent/qtraj.json")), ConfigError);
  EXPECT_THROW(parse_config(scratch_file("bad.json", "{not json")), ConfigError);
}

}  // namespace
}  // namespace qtraj
