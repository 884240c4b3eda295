#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "gscm/antenna.hpp"
#include "gscm/error.hpp"
#include "gscm/geometry.hpp"
#include "gscm/kvfile.hpp"
#include "gscm/scenario.hpp"
#include "gscm/sosfield.hpp"

namespace gscm {

/// Two-user drift experiment. User 1 stays put; user 2 starts at
/// `user2_start` and walks in `track_step` increments straight to user 1.
/// Defaults: 2 GHz carrier, 18 MHz sampled at 100 points, five clusters,
/// 8x8 UPA of 65 degree sector elements at the BS, one isotropic antenna
/// per user, 20 m initial separation.
struct ExperimentConfig {
  double carrier_frequency = 2.0e9;  ///< Hz
  double bandwidth = 18.0e6;         ///< Hz
  std::size_t subcarriers = 100;
  int clusters = 5;
  std::size_t sinusoids = kDefaultSinusoids;

  Vec3 bs_position{10.0, -100.0, 25.0};
  double bs_orientation = std::numbers::pi / 2.0;  ///< broadside azimuth, radians
  int bs_rows = 8;
  int bs_cols = 8;
  double bs_spacing = 0.5;  ///< wavelengths
  double bs_hpbw_az_deg = 65.0;
  double bs_hpbw_el_deg = 65.0;
  double bs_max_attenuation_db = 30.0;

  Vec3 user1{0.0, 0.0, 1.5};
  Vec3 user2_start{20.0, 0.0, 1.5};
  double track_step = 0.1;  ///< meters

  std::vector<double> decorr_distances{0.0, 5.0, 15.0, 50.0};
  std::vector<std::uint64_t> seeds{1};
  std::string scenario_file;  ///< empty: built-in UMa NLoS table
  std::string output_csv = "sweep.csv";
  double epsilon_chordal = 0.0;
  double epsilon_cmd = 0.95;
  unsigned threads = 0;  ///< 0: hardware concurrency

  double wavelength() const { return 299'792'458.0 / carrier_frequency; }

  Track track() const {
    const double sep = distance(user1, user2_start);
    Track t;
    t.start = user2_start;
    t.direction = unit_vector(user1 - user2_start);
    t.step = track_step;
    t.count = static_cast<std::size_t>(std::floor(sep / track_step + 1e-9)) + 1;
    return t;
  }

  Array bs_array() const {
    return build_upa(bs_rows, bs_cols, bs_spacing,
                     Pattern::sector(bs_hpbw_az_deg, bs_hpbw_el_deg, bs_max_attenuation_db), bs_orientation);
  }

  Array user_array() const { return single_element(Pattern::isotropic()); }

  ScenarioTable scenario() const {
    ScenarioTable t = scenario_file.empty() ? uma_nlos_table() : load_scenario(scenario_file);
    t.clusters = clusters;
    t.validate();
    return t;
  }

  void validate() const {
    auto positive = [](double v, const char* what) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be positive");
    };
    positive(carrier_frequency, "carrier_frequency_hz");
    if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth)) throw ConfigError("bandwidth_hz must be >= 0");
    positive(track_step, "track_step_m");
    positive(bs_spacing, "bs_spacing_wavelengths");
    positive(bs_hpbw_az_deg, "bs_hpbw_az_deg");
    positive(bs_hpbw_el_deg, "bs_hpbw_el_deg");
    if (!(bs_max_attenuation_db >= 0.0)) throw ConfigError("bs_max_attenuation_db must be >= 0");
    if (subcarriers < 1) throw ConfigError("subcarriers must be >= 1");
    if (clusters < 1) throw ConfigError("clusters must be >= 1");
    if (sinusoids < 1) throw ConfigError("sinusoids must be >= 1");
    if (bs_rows < 1 || bs_cols < 1) throw ConfigError("bs_rows and bs_cols must be >= 1");
    if (!bs_position.finite() || !user1.finite() || !user2_start.finite())
      throw ConfigError("positions must be finite");
    if (user1 == user2_start) throw ConfigError("user2 start must differ from user1");
    if (bs_position == user1 || bs_position == user2_start) throw ConfigError("BS must not coincide with a user");
    if (decorr_distances.empty()) throw ConfigError("decorr_distances_m must not be empty");
    for (double d : decorr_distances)
      if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigError("decorr_distances_m entries must be >= 0");
    if (seeds.empty()) throw ConfigError("seeds must not be empty");
    if (!(epsilon_cmd >= 0.0 && epsilon_cmd <= 1.0)) throw ConfigError("epsilon_cmd must lie in [0, 1]");
    if (!(epsilon_chordal >= 0.0)) throw ConfigError("epsilon_chordal must be >= 0");
  }
};

inline const std::set<std::string>& experiment_config_keys() {
  static const std::set<std::string> keys = {
      "carrier_frequency_hz", "bandwidth_hz",     "subcarriers",        "clusters",
      "sinusoids",            "bs_x_m",           "bs_y_m",             "bs_z_m",
      "bs_orientation_deg",   "bs_rows",          "bs_cols",            "bs_spacing_wavelengths",
      "bs_hpbw_az_deg",       "bs_hpbw_el_deg",   "bs_max_attenuation_db", "user1_x_m",
      "user1_y_m",            "user1_z_m",        "user2_x_m",          "user2_y_m",
      "user2_z_m",            "track_step_m",     "decorr_distances_m", "seeds",
      "scenario_file",        "output_csv",       "epsilon_chordal",    "epsilon_cmd",
      "threads"};
  return keys;
}

inline ExperimentConfig parse_experiment_config(const KeyValueFile& kv) {
  kv.check_keys(experiment_config_keys());
  ExperimentConfig c;
  auto count = [&](const std::string& key, long long fallback) {
    const long long v = kv.get_int(key, fallback);
    if (v < 0) throw ConfigError(kv.where(key) + ": '" + key + "' must be non-negative");
    return v;
  };
  c.carrier_frequency = kv.get_double("carrier_frequency_hz", c.carrier_frequency);
  c.bandwidth = kv.get_double("bandwidth_hz", c.bandwidth);
  c.subcarriers = static_cast<std::size_t>(count("subcarriers", static_cast<long long>(c.subcarriers)));
  c.clusters = static_cast<int>(count("clusters", c.clusters));
  c.sinusoids = static_cast<std::size_t>(count("sinusoids", static_cast<long long>(c.sinusoids)));
  c.bs_position = {kv.get_double("bs_x_m", c.bs_position.x), kv.get_double("bs_y_m", c.bs_position.y),
                   kv.get_double("bs_z_m", c.bs_position.z)};
  c.bs_orientation = kv.get_double("bs_orientation_deg", c.bs_orientation * 180.0 / std::numbers::pi) *
                     std::numbers::pi / 180.0;
  c.bs_rows = static_cast<int>(count("bs_rows", c.bs_rows));
  c.bs_cols = static_cast<int>(count("bs_cols", c.bs_cols));
  c.bs_spacing = kv.get_double("bs_spacing_wavelengths", c.bs_spacing);
  c.bs_hpbw_az_deg = kv.get_double("bs_hpbw_az_deg", c.bs_hpbw_az_deg);
  c.bs_hpbw_el_deg = kv.get_double("bs_hpbw_el_deg", c.bs_hpbw_el_deg);
  c.bs_max_attenuation_db = kv.get_double("bs_max_attenuation_db", c.bs_max_attenuation_db);
  c.user1 = {kv.get_double("user1_x_m", c.user1.x), kv.get_double("user1_y_m", c.user1.y),
             kv.get_double("user1_z_m", c.user1.z)};
  c.user2_start = {kv.get_double("user2_x_m", c.user2_start.x), kv.get_double("user2_y_m", c.user2_start.y),
                   kv.get_double("user2_z_m", c.user2_start.z)};
  c.track_step = kv.get_double("track_step_m", c.track_step);
  c.decorr_distances = kv.get_doubles("decorr_distances_m", c.decorr_distances);
  c.seeds = kv.get_uints("seeds", c.seeds);
  c.scenario_file = kv.get_string("scenario_file", c.scenario_file);
  c.output_csv = kv.get_string("output_csv", c.output_csv);
  c.epsilon_chordal = kv.get_double("epsilon_chordal", c.epsilon_chordal);
  c.epsilon_cmd = kv.get_double("epsilon_cmd", c.epsilon_cmd);
  c.threads = static_cast<unsigned>(count("threads", c.threads));
  c.validate();
  return c;
}

/// Relative `scenario_file` paths are resolved against the config's directory.
inline ExperimentConfig load_experiment_config(const std::string& path) {
  ExperimentConfig c = parse_experiment_config(KeyValueFile::load(path));
  if (!c.scenario_file.empty() && std::filesystem::path(c.scenario_file).is_relative())
    c.scenario_file = (std::filesystem::path(path).parent_path() / c.scenario_file).string();
  return c;
}

}  // namespace gscm
