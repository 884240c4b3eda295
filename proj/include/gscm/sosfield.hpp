#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <vector>

#include "gscm/error.hpp"
#include "gscm/geometry.hpp"
#include "gscm/rng.hpp"

namespace gscm {

/// Target statistics of a spatially correlated Normal field with
/// exponential autocorrelation exp(-d / decorr_distance).
struct AcfSpec {
  double decorr_distance = 0.0;  ///< meters; 0 means spatially uncorrelated
  double mean = 0.0;
  double stddev = 1.0;

  void validate() const {
    if (!(decorr_distance >= 0.0) || !std::isfinite(decorr_distance))
      throw Error("AcfSpec: decorrelation distance must be finite and >= 0");
    if (!(stddev >= 0.0) || !std::isfinite(stddev) || !std::isfinite(mean))
      throw Error("AcfSpec: stddev must be finite and >= 0");
  }
};

inline constexpr std::size_t kDefaultSinusoids = 500;

/// Upper end of the sampled radial spectrum in units of the dimensionless
/// wavenumber u = 2*pi*|f|*d_lambda. The exponential ACF has a heavy
/// spectral tail (density ~ 1/u^2); cutting it at u = 20 keeps 93.7% of the
/// spectral mass (the sampled density is renormalized, so the variance is
/// unchanged), holds the ACF within the acceptance tolerance of
/// exp(-d/d_lambda), and removes the sub-decimeter roughness that otherwise
/// makes cluster parameters jitter along a track.
inline constexpr double kSosMaxWavenumber = 20.0;

/// Exponential ACF. For a zero decorrelation distance this degenerates to
/// the indicator of d == 0.
inline double target_acf(const AcfSpec& spec, double d) {
  if (!(d >= 0.0)) throw Error("target_acf: negative distance");
  if (spec.decorr_distance == 0.0) return d == 0.0 ? 1.0 : 0.0;
  return std::exp(-d / spec.decorr_distance);
}

namespace detail {

inline constexpr std::uint64_t kFrequencyStream = 0xF4E0;
inline constexpr std::uint64_t kPhaseStream = 0x9A5E;
inline constexpr std::uint64_t kWhiteStream = 0x3417;

/// CDF of the dimensionless radial wavenumber u = 2*pi*|f|*d_lambda for the
/// isotropic 3D spectrum of exp(-d/d_lambda). The radial density is
/// proportional to u^2 / (1 + u^2)^2.
inline double radial_cdf(double u) {
  return (2.0 / std::numbers::pi) * (std::atan(u) - u / (1.0 + u * u));
}

/// Inverse of radial_cdf by bracketed bisection.
inline double radial_quantile(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw Error("radial_quantile: probability outside [0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (radial_cdf(hi) < p) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (radial_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::vector<double> draw_phases(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kPhaseStream));
  std::vector<double> out(n);
  for (auto& ph : out) ph = rng.phase();
  return out;
}

}  // namespace detail

/// Spatially correlated Normal random field over 3D space built from a sum
/// of N cosines with equal amplitudes sigma*sqrt(2/N).
///
/// A field with zero decorrelation distance carries no sinusoids; its value
/// at each position (quantized to 1 mm) is an independent Normal draw
/// derived by hashing the position with the field seed.
class SosField {
 public:
  /// Angular-frequency vectors are stored as 2*pi*f (rad/m).
  using FrequencyList = std::vector<Vec3>;

  SosField() = default;

  const AcfSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return frequencies_ ? frequencies_->size() : 0; }
  bool uncorrelated() const noexcept { return spec_.decorr_distance == 0.0; }
  double amplitude() const noexcept { return amplitude_; }
  const std::vector<double>& phases() const noexcept { return phases_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Frequencies in cycles per meter.
  Vec3 frequency(std::size_t n) const { return (*frequencies_)[n] * (0.5 / std::numbers::pi); }
  const std::shared_ptr<const FrequencyList>& frequency_list() const noexcept { return frequencies_; }

  double evaluate(const Vec3& p) const {
    if (uncorrelated()) return spec_.mean + spec_.stddev * white_value(p);
    const FrequencyList& w = *frequencies_;
    double acc = 0.0;
    for (std::size_t n = 0; n < w.size(); ++n) acc += std::cos(dot(w[n], p) + phases_[n]);
    return spec_.mean + amplitude_ * acc;
  }

  friend SosField fit_frequencies(const AcfSpec& spec, std::size_t n, std::uint64_t seed);
  friend SosField make_field(const AcfSpec& spec, std::size_t n, std::uint64_t seed);
  friend SosField reseed_phases(const SosField& field, std::uint64_t seed);

 private:
  double white_value(const Vec3& p) const {
    auto q = [](double v) {
      return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(v * 1000.0)));
    };
    std::uint64_t h = derive_seed(seed_, detail::kWhiteStream);
    h = mix64(h ^ q(p.x));
    h = mix64(h ^ q(p.y));
    h = mix64(h ^ q(p.z));
    const double u1 = bits_to_open_unit(h);
    const double u2 = bits_to_open_unit(mix64(h));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  AcfSpec spec_;
  double amplitude_ = 0.0;
  std::shared_ptr<const FrequencyList> frequencies_ = std::make_shared<const FrequencyList>();
  std::vector<double> phases_;
  std::uint64_t seed_ = 0;
};

/// Draws N frequency vectors from the spectral density of the exponential
/// ACF restricted to u <= kSosMaxWavenumber: radial magnitude by inverse
/// CDF of the truncated density, direction uniform on the sphere.
inline SosField fit_frequencies(const AcfSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw Error("fit_frequencies: need at least one sinusoid");
  if (spec.decorr_distance == 0.0)
    throw Error("fit_frequencies: zero decorrelation distance has no spectrum (use make_field)");

  Rng rng(derive_seed(seed, detail::kFrequencyStream));
  const double band_mass = detail::radial_cdf(kSosMaxWavenumber);
  SosField::FrequencyList w(n);
  for (auto& wn : w) {
    const double u = detail::radial_quantile(rng.uniform() * band_mass);
    const double cos_polar = 2.0 * rng.uniform() - 1.0;
    const double sin_polar = std::sqrt(std::max(0.0, 1.0 - cos_polar * cos_polar));
    const double az = 2.0 * std::numbers::pi * rng.uniform();
    const double k = u / spec.decorr_distance;  // 2*pi*|f|
    wn = Vec3{sin_polar * std::cos(az), sin_polar * std::sin(az), cos_polar} * k;
  }

  SosField f;
  f.spec_ = spec;
  f.amplitude_ = spec.stddev * std::sqrt(2.0 / static_cast<double>(n));
  f.frequencies_ = std::make_shared<const SosField::FrequencyList>(std::move(w));
  f.phases_ = detail::draw_phases(n, seed);
  f.seed_ = seed;
  return f;
}

/// Like fit_frequencies, but a zero decorrelation distance yields the
/// uncorrelated (per-position white) field instead of an error.
inline SosField make_field(const AcfSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (spec.decorr_distance > 0.0) return fit_frequencies(spec, n, seed);
  SosField f;
  f.spec_ = spec;
  f.seed_ = seed;
  return f;
}

/// New realization with the same amplitudes and frequencies. The frequency
/// list is shared, not copied.
inline SosField reseed_phases(const SosField& field, std::uint64_t seed) {
  SosField f = field;
  f.phases_ = detail::draw_phases(field.size(), seed);
  f.seed_ = seed;
  return f;
}

/// Standard Normal CDF of the standardized value, kept strictly inside (0, 1).
inline double map_to_uniform(double value, const AcfSpec& spec) {
  if (!(spec.stddev > 0.0)) throw Error("map_to_uniform: stddev must be positive");
  const double z = (value - spec.mean) / spec.stddev;
  const double u = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  return std::clamp(u, lo, hi);
}

/// Debug export of the sinusoid table, one row per sinusoid.
inline void write_field_csv(const SosField& field, std::ostream& os) {
  const auto old_prec = os.precision(17);
  os << "n,amplitude,fx_per_m,fy_per_m,fz_per_m,phase_rad\n";
  for (std::size_t n = 0; n < field.size(); ++n) {
    const Vec3 f = field.frequency(n);
    os << n << ',' << field.amplitude() << ',' << f.x << ',' << f.y << ',' << f.z << ','
       << field.phases()[n] << '\n';
  }
  os.precision(old_prec);
}

}  // namespace gscm
