#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <set>
#include <string>

#include "gscm/error.hpp"
#include "gscm/kvfile.hpp"
#include "gscm/sosfield.hpp"

namespace gscm {

/// Large-scale parameters in the order their correlated fields are built.
enum class Lsp : std::size_t { ds = 0, asd, asa, esd, esa, sf, kf };
inline constexpr std::size_t kLspCount = 7;
inline constexpr std::array<const char*, kLspCount> kLspNames = {"ds", "asd", "asa", "esd", "esa", "sf", "kf"};

/// Distribution of one LSP. `log10_domain` LSPs are 10^(mean + std*X)
/// (DS in s, spreads in degrees); the rest are mean + std*X (dB).
struct LspDistribution {
  double mean = 0.0;
  double stddev = 0.0;
  double decorr_distance = 0.0;  ///< meters
  bool log10_domain = true;
};

struct ScenarioTable {
  std::array<LspDistribution, kLspCount> lsp{};
  double xpr_mean_db = 7.0;
  double xpr_std_db = 3.0;
  double delay_scaling = 2.3;         ///< r_tau
  double cluster_shadowing_db = 3.0;  ///< zeta
  int clusters = 5;
  double max_azimuth_spread_deg = 104.0;
  double max_elevation_spread_deg = 52.0;

  const LspDistribution& operator[](Lsp which) const { return lsp[static_cast<std::size_t>(which)]; }
  LspDistribution& operator[](Lsp which) { return lsp[static_cast<std::size_t>(which)]; }

  void validate() const {
    for (std::size_t i = 0; i < kLspCount; ++i) {
      const auto& d = lsp[i];
      if (!(d.stddev >= 0.0) || !std::isfinite(d.mean) || !std::isfinite(d.stddev))
        throw ConfigError(std::string("scenario: invalid distribution for ") + kLspNames[i]);
      if (!(d.decorr_distance >= 0.0) || !std::isfinite(d.decorr_distance))
        throw ConfigError(std::string("scenario: invalid decorrelation distance for ") + kLspNames[i]);
    }
    if (!(xpr_std_db >= 0.0) || !(cluster_shadowing_db >= 0.0))
      throw ConfigError("scenario: XPR and cluster shadowing stds must be >= 0");
    if (!(delay_scaling > 1.0)) throw ConfigError("scenario: delay_scaling must be > 1");
    if (clusters < 1) throw ConfigError("scenario: clusters must be >= 1");
    if (!(max_azimuth_spread_deg > 0.0 && max_azimuth_spread_deg < 180.0) ||
        !(max_elevation_spread_deg > 0.0 && max_elevation_spread_deg < 180.0))
      throw ConfigError("scenario: spread caps must lie in (0, 180) degrees");
  }
};

/// Urban macro NLoS below 6 GHz (frequency-dependent terms evaluated at
/// 6 GHz), 100 m BS distance and 1.5 m terminal height for the ESD mean.
/// The cluster count is fixed to five.
inline ScenarioTable uma_nlos_table() {
  ScenarioTable t;
  const double lf = std::log10(6.0);
  t[Lsp::ds] = {-6.28 - 0.204 * lf, 0.39, 40.0, true};
  t[Lsp::asd] = {1.5 - 0.1144 * lf, 0.28, 50.0, true};
  t[Lsp::asa] = {2.08 - 0.27 * lf, 0.11, 50.0, true};
  t[Lsp::esd] = {std::max(-0.5, -2.1 * 0.1 + 0.9), 0.49, 50.0, true};
  t[Lsp::esa] = {1.512 - 0.3236 * lf, 0.16, 50.0, true};
  t[Lsp::sf] = {0.0, 6.0, 50.0, false};
  t[Lsp::kf] = {9.0, 3.5, 12.0, false};  // NLoS has no LoS ray; kept for completeness
  t.xpr_mean_db = 7.0;
  t.xpr_std_db = 3.0;
  t.delay_scaling = 2.3;
  t.cluster_shadowing_db = 3.0;
  t.clusters = 5;
  return t;
}

/// Reads a scenario parameter file. Missing keys keep the UMa NLoS default.
///
/// Keys per LSP name `x` in {ds, asd, asa, esd, esa}: `lg<x>_mu`,
/// `lg<x>_sigma`, `<x>_decorr_m`. For sf and kf: `<x>_mu_db`,
/// `<x>_sigma_db`, `<x>_decorr_m`. Scalars: `xpr_mu_db`, `xpr_sigma_db`,
/// `delay_scaling`, `cluster_shadowing_db`, `clusters`,
/// `max_azimuth_spread_deg`, `max_elevation_spread_deg`.
inline ScenarioTable parse_scenario(const KeyValueFile& kv) {
  std::set<std::string> known = {"xpr_mu_db",           "xpr_sigma_db",          "delay_scaling",
                                 "cluster_shadowing_db", "clusters",              "max_azimuth_spread_deg",
                                 "max_elevation_spread_deg"};
  ScenarioTable t = uma_nlos_table();
  for (std::size_t i = 0; i < kLspCount; ++i) {
    const std::string name = kLspNames[i];
    auto& d = t.lsp[i];
    const std::string mu = d.log10_domain ? "lg" + name + "_mu" : name + "_mu_db";
    const std::string sigma = d.log10_domain ? "lg" + name + "_sigma" : name + "_sigma_db";
    const std::string decorr = name + "_decorr_m";
    known.insert({mu, sigma, decorr});
    d.mean = kv.get_double(mu, d.mean);
    d.stddev = kv.get_double(sigma, d.stddev);
    d.decorr_distance = kv.get_double(decorr, d.decorr_distance);
  }
  kv.check_keys(known);
  t.xpr_mean_db = kv.get_double("xpr_mu_db", t.xpr_mean_db);
  t.xpr_std_db = kv.get_double("xpr_sigma_db", t.xpr_std_db);
  t.delay_scaling = kv.get_double("delay_scaling", t.delay_scaling);
  t.cluster_shadowing_db = kv.get_double("cluster_shadowing_db", t.cluster_shadowing_db);
  t.clusters = static_cast<int>(kv.get_int("clusters", t.clusters));
  t.max_azimuth_spread_deg = kv.get_double("max_azimuth_spread_deg", t.max_azimuth_spread_deg);
  t.max_elevation_spread_deg = kv.get_double("max_elevation_spread_deg", t.max_elevation_spread_deg);
  t.validate();
  return t;
}

inline ScenarioTable load_scenario(const std::string& path) { return parse_scenario(KeyValueFile::load(path)); }

struct Lsps {
  double ds = 0.0;   ///< seconds
  double asd = 0.0;  ///< rms spreads, radians
  double asa = 0.0;
  double esd = 0.0;
  double esa = 0.0;
  double sf = 0.0;  ///< dB
  double kf = 0.0;  ///< dB
};

/// One standard-Normal field per LSP, each with its own decorrelation distance.
using LspFields = std::array<SosField, kLspCount>;

inline LspFields build_lsp_fields(const ScenarioTable& table, std::uint64_t seed,
                                  std::size_t sinusoids = kDefaultSinusoids) {
  LspFields fields;
  for (std::size_t i = 0; i < kLspCount; ++i)
    fields[i] = make_field({table.lsp[i].decorr_distance, 0.0, 1.0}, sinusoids, derive_seed(seed, 0x15B0 + i));
  return fields;
}

inline Lsps lsps_at(const LspFields& fields, const ScenarioTable& table, const Vec3& p) {
  if (!p.finite()) throw Error("lsps_at: non-finite position");
  std::array<double, kLspCount> v{};
  for (std::size_t i = 0; i < kLspCount; ++i) {
    const auto& d = table.lsp[i];
    const double x = d.mean + d.stddev * fields[i].evaluate(p);
    v[i] = d.log10_domain ? std::pow(10.0, x) : x;
  }
  constexpr double deg2rad = std::numbers::pi / 180.0;
  auto az = [&](double deg) { return std::min(deg, table.max_azimuth_spread_deg) * deg2rad; };
  auto el = [&](double deg) { return std::min(deg, table.max_elevation_spread_deg) * deg2rad; };
  return {
      .ds = v[0],
      .asd = az(v[1]),
      .asa = az(v[2]),
      .esd = el(v[3]),
      .esa = el(v[4]),
      .sf = v[5],
      .kf = v[6],
  };
}

}  // namespace gscm
