#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "gscm/error.hpp"

namespace gscm {

/// 3D Cartesian vector. Positions are in meters; directions are unitless.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

  bool finite() const noexcept {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }

inline double distance(const Vec3& a, const Vec3& b) noexcept { return norm(a - b); }

inline Vec3 unit_vector(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error("unit_vector: zero or non-finite vector");
  return a * (1.0 / n);
}

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double rad) noexcept {
  double w = std::remainder(rad, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

/// Direction in geographic convention: azimuth counterclockwise from +x,
/// elevation up from the horizontal plane.
class SphericalAngle {
 public:
  SphericalAngle() = default;

  /// Azimuth is wrapped into (-pi, pi]; elevation outside [-pi/2, pi/2] throws.
  SphericalAngle(double azimuth, double elevation) : azimuth_(wrap_angle(azimuth)), elevation_(elevation) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!std::isfinite(azimuth) || !(elevation >= -half_pi && elevation <= half_pi))
      throw Error("SphericalAngle: elevation outside [-pi/2, pi/2] or non-finite angle");
  }

  double azimuth() const noexcept { return azimuth_; }
  double elevation() const noexcept { return elevation_; }

 private:
  double azimuth_ = 0.0;
  double elevation_ = 0.0;
};

/// Direction from `from` toward `to`.
inline SphericalAngle bearing(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double horizontal = std::hypot(d.x, d.y);
  if (horizontal == 0.0 && d.z == 0.0) throw Error("degenerate bearing");
  return {std::atan2(d.y, d.x), std::atan2(d.z, horizontal)};
}

struct SphericalBasis {
  Vec3 e_theta;
  Vec3 e_phi;
  Vec3 e_r;
};

/// Local unit vectors at `angle`. e_r points along the direction, e_phi
/// along increasing azimuth, e_theta along increasing polar angle (i.e.
/// decreasing elevation), so that e_theta x e_phi = e_r.
inline SphericalBasis spherical_basis(const SphericalAngle& angle) noexcept {
  const double cp = std::cos(angle.azimuth());
  const double sp = std::sin(angle.azimuth());
  const double ce = std::cos(angle.elevation());
  const double se = std::sin(angle.elevation());
  return {
      .e_theta = {se * cp, se * sp, -ce},
      .e_phi = {-sp, cp, 0.0},
      .e_r = {ce * cp, ce * sp, se},
  };
}

/// Straight-line sampled trajectory.
struct Track {
  Vec3 start;
  Vec3 direction{1.0, 0.0, 0.0};
  double step = 1.0;
  std::size_t count = 1;

  void validate() const {
    if (!start.finite() || !direction.finite()) throw Error("Track: non-finite start or direction");
    if (std::abs(norm(direction) - 1.0) > 1e-9) throw Error("Track: direction must be a unit vector");
    if (!(step > 0.0) || !std::isfinite(step)) throw Error("Track: step must be positive");
    if (count == 0) throw Error("Track: count must be positive");
  }
};

inline std::vector<Vec3> track_positions(const Track& track) {
  track.validate();
  std::vector<Vec3> out;
  out.reserve(track.count);
  for (std::size_t i = 0; i < track.count; ++i)
    out.push_back(track.start + (static_cast<double>(i) * track.step) * track.direction);
  return out;
}

}  // namespace gscm
