#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gscm/error.hpp"
#include "gscm/geometry.hpp"

namespace gscm {

using cdouble = std::complex<double>;

enum class PatternKind { isotropic, sector };

/// Single-polarized (vertical) element pattern.
struct Pattern {
  PatternKind kind = PatternKind::isotropic;
  double hpbw_az_deg = 65.0;
  double hpbw_el_deg = 65.0;
  double max_attenuation_db = 30.0;

  static Pattern isotropic() { return {}; }
  static Pattern sector(double hpbw_az_deg, double hpbw_el_deg, double max_attenuation_db = 30.0) {
    if (!(hpbw_az_deg > 0.0) || !(hpbw_el_deg > 0.0) || !(max_attenuation_db >= 0.0))
      throw Error("Pattern: beamwidths must be positive and attenuation cap non-negative");
    return {PatternKind::sector, hpbw_az_deg, hpbw_el_deg, max_attenuation_db};
  }
};

/// Far-field components along e_theta and e_phi.
struct PolarimetricResponse {
  cdouble f_theta{1.0, 0.0};
  cdouble f_phi{0.0, 0.0};
};

/// Pattern attenuation in dB (>= 0) at an angle in the element's local frame.
inline double pattern_attenuation_db(const Pattern& pattern, const SphericalAngle& angle) {
  if (pattern.kind == PatternKind::isotropic) return 0.0;
  constexpr double rad2deg = 180.0 / std::numbers::pi;
  const double az = angle.azimuth() * rad2deg / pattern.hpbw_az_deg;
  const double el = angle.elevation() * rad2deg / pattern.hpbw_el_deg;
  const double cap = pattern.max_attenuation_db;
  const double a_h = std::min(12.0 * az * az, cap);
  const double a_v = std::min(12.0 * el * el, cap);
  return std::min(a_h + a_v, cap);
}

inline PolarimetricResponse element_response(const Pattern& pattern, const SphericalAngle& angle) {
  const double att = pattern_attenuation_db(pattern, angle);
  return {cdouble{std::pow(10.0, -att / 20.0), 0.0}, cdouble{0.0, 0.0}};
}

/// Plane-wave phase of an element at `element_pos` (in wavelengths) for a
/// path leaving or arriving along `angle`.
inline cdouble array_phase(const Vec3& element_pos, const SphericalAngle& angle) {
  const double proj = dot(element_pos, spherical_basis(angle).e_r);
  return std::polar(1.0, 2.0 * std::numbers::pi * proj);
}

struct ArrayElement {
  Vec3 position;  ///< wavelengths, relative to the phase center
  Pattern pattern;
};

/// Antenna array. Local frame: broadside along +x, panel in the y-z plane.
/// `orientation_az` rotates the whole array about z.
class Array {
 public:
  Array() = default;
  Array(std::vector<ArrayElement> elements, double orientation_az = 0.0)
      : elements_(std::move(elements)), orientation_az_(wrap_angle(orientation_az)) {
    if (elements_.empty()) throw Error("Array: no elements");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<ArrayElement>& elements() const noexcept { return elements_; }
  double orientation_az() const noexcept { return orientation_az_; }

  /// Global angle expressed in the array frame.
  SphericalAngle to_local(const SphericalAngle& global) const {
    return {global.azimuth() - orientation_az_, global.elevation()};
  }

  /// Field response of element i toward a global direction, including its
  /// plane-wave phase term.
  PolarimetricResponse response(std::size_t i, const SphericalAngle& global) const {
    const SphericalAngle local = to_local(global);
    const ArrayElement& e = elements_[i];
    PolarimetricResponse r = element_response(e.pattern, local);
    const cdouble ph = array_phase(e.position, local);
    r.f_theta *= ph;
    r.f_phi *= ph;
    return r;
  }

 private:
  std::vector<ArrayElement> elements_;
  double orientation_az_ = 0.0;
};

inline Array single_element(const Pattern& pattern = Pattern::isotropic(), double orientation_az = 0.0) {
  return Array({ArrayElement{{}, pattern}}, orientation_az);
}

/// Uniform planar array: `rows` along z, `cols` along y, centered on the
/// phase center. Element order is row-major (row 0 is the lowest z).
inline Array build_upa(int rows, int cols, double spacing, const Pattern& pattern, double orientation_az = 0.0) {
  if (rows < 1 || cols < 1) throw Error("build_upa: rows and cols must be >= 1");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw Error("build_upa: spacing must be positive");
  std::vector<ArrayElement> elems;
  elems.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  const double z0 = 0.5 * (rows - 1) * spacing;
  const double y0 = 0.5 * (cols - 1) * spacing;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      elems.push_back({Vec3{0.0, c * spacing - y0, r * spacing - z0}, pattern});
  return Array(std::move(elems), orientation_az);
}

}  // namespace gscm
