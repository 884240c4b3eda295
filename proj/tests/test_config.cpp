#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "gscm/config.hpp"

namespace gscm {
namespace {

ExperimentConfig parse(const std::string& text) { return parse_experiment_config(KeyValueFile::parse_string(text)); }

std::string config_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(KeyValueFile, ParsesCommentsAndWhitespace) {
  const auto kv = KeyValueFile::parse_string("# header\n  a_m = 1.5  # trailing\n\nb = x y\n");
  EXPECT_EQ(kv.get_double("a_m", 0), 1.5);
  EXPECT_EQ(kv.get_string("b", ""), "x y");
  EXPECT_EQ(kv.get_double("missing", 7), 7.0);
  EXPECT_NE(kv.where("a_m").find(":2"), std::string::npos);
}

TEST(KeyValueFile, RejectsMalformedLines) {
  EXPECT_THROW(KeyValueFile::parse_string("just words\n"), ConfigError);
  EXPECT_THROW(KeyValueFile::parse_string("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(KeyValueFile::parse_string("b = x\n").get_double("b", 0), ConfigError);
  EXPECT_THROW(KeyValueFile::parse_string("n = 2.5\n").get_int("n", 0), ConfigError);
}

TEST(KeyValueFile, Lists) {
  const auto kv = KeyValueFile::parse_string("d = 0, 5,15 ,50\ns = 1,2,3\n");
  EXPECT_EQ(kv.get_doubles("d", {}), (std::vector<double>{0, 5, 15, 50}));
  EXPECT_EQ(kv.get_uints("s", {}), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_THROW(KeyValueFile::parse_string("s = 1,-2\n").get_uints("s", {}), ConfigError);
  EXPECT_THROW(KeyValueFile::parse_string("d = 1,,2\n").get_doubles("d", {}), ConfigError);
}

TEST(ExperimentConfig, DefaultsMirrorTheReferenceSetup) {
  const ExperimentConfig c = parse("");
  EXPECT_EQ(c.carrier_frequency, 2e9);
  EXPECT_EQ(c.bandwidth, 18e6);
  EXPECT_EQ(c.subcarriers, 100u);
  EXPECT_EQ(c.clusters, 5);
  EXPECT_EQ(c.bs_array().size(), 64u);
  EXPECT_EQ(c.user_array().size(), 1u);
  EXPECT_EQ(c.track().count, 201u);
  EXPECT_EQ(c.decorr_distances, (std::vector<double>{0, 5, 15, 50}));
  EXPECT_NEAR(c.wavelength(), 0.149896229, 1e-9);
  EXPECT_EQ(c.scenario().clusters, 5);
}

TEST(ExperimentConfig, ParsesValuesWithUnits) {
  const ExperimentConfig c = parse(
      "carrier_frequency_hz = 3.5e9\nbandwidth_hz = 20e6\nsubcarriers = 64\nbs_orientation_deg = 45\n"
      "track_step_m = 0.5\nuser2_x_m = 10\nseeds = 4,5\ndecorr_distances_m = 15\nepsilon_cmd = 0.9\n");
  EXPECT_EQ(c.carrier_frequency, 3.5e9);
  EXPECT_EQ(c.subcarriers, 64u);
  EXPECT_NEAR(c.bs_orientation, std::numbers::pi / 4, 1e-15);
  EXPECT_EQ(c.track().count, 21u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{4, 5}));
  EXPECT_EQ(c.epsilon_cmd, 0.9);
}

TEST(ExperimentConfig, UnknownKeyNamed) {
  const std::string msg = config_error("colour = blue\n");
  EXPECT_NE(msg.find("unknown key"), std::string::npos) << msg;
  EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
}

TEST(ExperimentConfig, BadUnitNamesExpectedKey) {
  const std::string msg = config_error("bandwidth_mhz = 18\n");
  EXPECT_NE(msg.find("bad unit"), std::string::npos) << msg;
  EXPECT_NE(msg.find("bandwidth_hz"), std::string::npos) << msg;
}

TEST(ExperimentConfig, NonPositiveStepRejected) {
  EXPECT_NE(config_error("track_step_m = 0\n").find("track_step_m"), std::string::npos);
  EXPECT_NE(config_error("track_step_m = -0.1\n").find("track_step_m"), std::string::npos);
}

TEST(ExperimentConfig, OtherInvalidValuesRejected) {
  EXPECT_FALSE(config_error("subcarriers = 0\n").empty());
  EXPECT_FALSE(config_error("clusters = -1\n").empty());
  EXPECT_FALSE(config_error("decorr_distances_m = 5,-1\n").empty());
  EXPECT_FALSE(config_error("epsilon_cmd = 1.5\n").empty());
  EXPECT_FALSE(config_error("user2_x_m = 0\n").empty());  // co-located with user 1
  EXPECT_FALSE(config_error("carrier_frequency_hz = abc\n").empty());
}

TEST(ExperimentConfig, ScenarioPathResolvedRelativeToConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "gscm_test_config";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "s.params") << "lgds_mu = -7\n";
    std::ofstream(dir / "c.cfg") << "scenario_file = s.params\n";
  }
  const ExperimentConfig c = load_experiment_config((dir / "c.cfg").string());
  EXPECT_EQ(c.scenario()[Lsp::ds].mean, -7.0);
  std::filesystem::remove_all(dir);
}

TEST(ExperimentConfig, MissingFileIsConfigError) {
  EXPECT_THROW(load_experiment_config("/nonexistent/dir/x.cfg"), ConfigError);
}

TEST(ExperimentConfig, BundledDefaultConfigLoads) {
  const ExperimentConfig c = load_experiment_config(std::string(GSCM_SOURCE_DIR) + "/configs/default.cfg");
  EXPECT_NO_THROW(c.validate());
  EXPECT_NO_THROW(c.scenario());
  EXPECT_EQ(c.track().count, 201u);
}

}  // namespace
}  // namespace gscm
