#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "gscm/error.hpp"
#include "gscm/geometry.hpp"
#include "gscm/scenario.hpp"
#include "gscm/sosfield.hpp"

namespace gscm {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Scale applied to sqrt(-ln(P_l / P_max)) when placing cluster angles,
/// in units of the rms angular spread. Calibrated once by Monte-Carlo over
/// independent five-cluster sets with the default UMa NLoS delay/power
/// parameters and a 20 degree spread: the power-weighted rms spread of the
/// generated angles then averages to the requested spread (ratio 1.00 at
/// 1.6; 0.66 at 1.0). Guarded by the calibration test in test_smallscale.cpp.
inline constexpr double kClusterSpreadScale = 1.6;

/// One multipath component (single ray per cluster).
struct Path {
  double delay = 0.0;  ///< seconds, relative to the earliest path
  double power = 0.0;  ///< linear, normalized over the set
  SphericalAngle aoa;
  SphericalAngle aod;
  double xpr = 1.0;                   ///< linear
  std::array<double, 4> pol_phases{};  ///< arguments of Z_tt, Z_tp, Z_pt, Z_pp
  double length = 0.0;                ///< meters
};

/// L paths for one terminal position. Index l is the same cluster for every
/// position generated from the same bank.
struct PathSet {
  std::vector<Path> paths;
  Vec3 user_pos;

  std::size_t size() const noexcept { return paths.size(); }
  const Path& operator[](std::size_t l) const { return paths[l]; }
};

/// Per-cluster random inputs, each drawn from its own spatially correlated field.
enum class SsfVariable : std::size_t {
  delay = 0,
  power,
  sign,
  aoa_az,
  aoa_el,
  aod_az,
  aod_el,
  xpr,
  pol_tt,
  pol_tp,
  pol_pt,
  pol_pp,
};
inline constexpr std::size_t kSsfVariables = 12;

class SsfFieldBank {
 public:
  SsfFieldBank() = default;
  SsfFieldBank(std::vector<SosField> fields, int clusters, double decorr_distance)
      : fields_(std::move(fields)), clusters_(clusters), decorr_distance_(decorr_distance) {}

  int clusters() const noexcept { return clusters_; }
  double decorr_distance() const noexcept { return decorr_distance_; }
  std::size_t size() const noexcept { return fields_.size(); }
  const std::vector<SosField>& fields() const noexcept { return fields_; }

  const SosField& field(std::size_t cluster, SsfVariable v) const {
    return fields_[cluster * kSsfVariables + static_cast<std::size_t>(v)];
  }

  double value(std::size_t cluster, SsfVariable v, const Vec3& p) const { return field(cluster, v).evaluate(p); }

 private:
  std::vector<SosField> fields_;
  int clusters_ = 0;
  double decorr_distance_ = 0.0;
};

/// All fields are standard Normal with decorrelation distance
/// `decorr_distance`. One frequency set is fitted and every field is a
/// phase-reseeded copy of it.
inline SsfFieldBank build_ssf_bank(int clusters, double decorr_distance, std::uint64_t seed,
                                   std::size_t sinusoids = kDefaultSinusoids) {
  if (clusters < 1) throw Error("build_ssf_bank: need at least one cluster");
  const AcfSpec spec{decorr_distance, 0.0, 1.0};
  spec.validate();
  const std::size_t count = static_cast<std::size_t>(clusters) * kSsfVariables;
  std::vector<SosField> fields;
  fields.reserve(count);
  const SosField base = make_field(spec, sinusoids, derive_seed(seed, 0x55F0));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, 0x55F1 + i);
    fields.push_back(base.uncorrelated() ? make_field(spec, sinusoids, s) : reseed_phases(base, s));
  }
  return {std::move(fields), clusters, decorr_distance};
}

/// Power-weighted rms deviation of `angles` around their power-weighted mean.
/// Deviations are wrapped relative to the strongest path.
inline double rms_angular_spread(const std::vector<double>& angles, const std::vector<double>& powers) {
  if (angles.size() != powers.size() || angles.empty()) throw Error("rms_angular_spread: size mismatch");
  const auto strongest = static_cast<std::size_t>(std::max_element(powers.begin(), powers.end()) - powers.begin());
  double sum_p = 0.0;
  double mean = 0.0;
  std::vector<double> dev(angles.size());
  for (std::size_t l = 0; l < angles.size(); ++l) {
    dev[l] = wrap_angle(angles[l] - angles[strongest]);
    sum_p += powers[l];
    mean += powers[l] * dev[l];
  }
  mean /= sum_p;
  double var = 0.0;
  for (std::size_t l = 0; l < angles.size(); ++l) var += powers[l] * (dev[l] - mean) * (dev[l] - mean);
  return std::sqrt(var / sum_p);
}

/// Small-scale parameters for the link tx -> rx. Every random input is read
/// from the bank at the receiver position, so nearby receivers see
/// correlated clusters and a repeated position reproduces the same set.
inline PathSet generate_paths(const SsfFieldBank& bank, const Lsps& lsps, const ScenarioTable& table,
                              const Vec3& tx, const Vec3& rx) {
  if (bank.clusters() < 1) throw Error("generate_paths: empty field bank");
  if (!(lsps.ds > 0.0)) throw Error("generate_paths: delay spread must be positive");
  const std::size_t L = static_cast<std::size_t>(bank.clusters());
  const SphericalAngle to_tx = bearing(rx, tx);  // throws on tx == rx
  const SphericalAngle to_rx = bearing(tx, rx);
  const AcfSpec standard{0.0, 0.0, 1.0};
  const double r_tau = table.delay_scaling;
  constexpr double u_floor = std::numeric_limits<double>::epsilon();

  PathSet set;
  set.user_pos = rx;
  set.paths.resize(L);

  // Delays: exponential law without sorting, so index l keeps its identity.
  double min_delay = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < L; ++l) {
    const double u = std::max(map_to_uniform(bank.value(l, SsfVariable::delay, rx), standard), u_floor);
    set.paths[l].delay = -r_tau * lsps.ds * std::log(u);
    min_delay = std::min(min_delay, set.paths[l].delay);
  }
  double total = 0.0;
  for (std::size_t l = 0; l < L; ++l) {
    Path& p = set.paths[l];
    p.delay -= min_delay;
    const double shadow_db = table.cluster_shadowing_db * bank.value(l, SsfVariable::power, rx);
    p.power = std::exp(-p.delay * (r_tau - 1.0) / (r_tau * lsps.ds)) * std::pow(10.0, -shadow_db / 10.0);
    total += p.power;
  }
  double max_power = 0.0;
  for (auto& p : set.paths) {
    p.power /= total;
    max_power = std::max(max_power, p.power);
  }

  constexpr double half_pi = std::numbers::pi / 2.0;
  auto clamp_el = [half_pi](double v) { return std::clamp(v, -half_pi, half_pi); };
  const double d_los = distance(tx, rx);
  for (std::size_t l = 0; l < L; ++l) {
    Path& p = set.paths[l];
    const double g = std::sqrt(-std::log(p.power / max_power));
    const double s = bank.value(l, SsfVariable::sign, rx) < 0.0 ? -1.0 : 1.0;
    auto offset = [&](double spread, SsfVariable v) {
      return s * kClusterSpreadScale * spread * g + spread / 7.0 * bank.value(l, v, rx);
    };
    p.aoa = SphericalAngle(to_tx.azimuth() + offset(lsps.asa, SsfVariable::aoa_az),
                           clamp_el(to_tx.elevation() + offset(lsps.esa, SsfVariable::aoa_el)));
    p.aod = SphericalAngle(to_rx.azimuth() + offset(lsps.asd, SsfVariable::aod_az),
                           clamp_el(to_rx.elevation() + offset(lsps.esd, SsfVariable::aod_el)));

    const double xpr_db = table.xpr_mean_db + table.xpr_std_db * bank.value(l, SsfVariable::xpr, rx);
    p.xpr = std::pow(10.0, xpr_db / 10.0);
    constexpr std::array pol = {SsfVariable::pol_tt, SsfVariable::pol_tp, SsfVariable::pol_pt, SsfVariable::pol_pp};
    for (std::size_t k = 0; k < pol.size(); ++k)
      p.pol_phases[k] = std::numbers::pi * (2.0 * map_to_uniform(bank.value(l, pol[k], rx), standard) - 1.0);
    p.length = d_los + kSpeedOfLight * p.delay;
  }
  return set;
}

}  // namespace gscm
