#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "gscm/coeff.hpp"
#include "gscm/error.hpp"
#include "gscm/smallscale.hpp"

namespace gscm {

/// Hermitian positive semidefinite n_t x n_t transmit covariance.
struct Covariance {
  Eigen::MatrixXcd r;

  Eigen::Index dim() const noexcept { return r.rows(); }
};

/// Circular azimuth difference in [0, pi].
inline double azimuth_distance(double phi_i, double phi_j) noexcept {
  const double d = std::abs(phi_i - phi_j);
  return d < std::numbers::pi ? d : 2.0 * std::numbers::pi - d;
}

inline double elevation_distance(double theta_i, double theta_j) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(std::abs(theta_i) <= half_pi) || !(std::abs(theta_j) <= half_pi))
    throw Error("elevation_distance: elevation outside [-pi/2, pi/2]");
  return std::abs(theta_i - theta_j);
}

struct AngularDistanceReport {
  std::vector<double> azimuth;    ///< per path, radians
  std::vector<double> elevation;  ///< per path, radians
  double mean_azimuth = 0.0;
  double mean_elevation = 0.0;
};

/// Per-path and mean arrival-angle distances between two index-aligned path sets.
inline AngularDistanceReport average_angular_distance(const PathSet& a, const PathSet& b) {
  if (a.size() != b.size()) throw Error("average_angular_distance: path counts differ");
  if (a.size() == 0) throw Error("average_angular_distance: empty path sets");
  AngularDistanceReport rep;
  rep.azimuth.reserve(a.size());
  rep.elevation.reserve(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) {
    rep.azimuth.push_back(azimuth_distance(a[l].aoa.azimuth(), b[l].aoa.azimuth()));
    rep.elevation.push_back(elevation_distance(a[l].aoa.elevation(), b[l].aoa.elevation()));
    rep.mean_azimuth += rep.azimuth.back();
    rep.mean_elevation += rep.elevation.back();
  }
  rep.mean_azimuth /= static_cast<double>(a.size());
  rep.mean_elevation /= static_cast<double>(a.size());
  return rep;
}

/// Sample mean of H_n^H H_n over the frequency grid.
inline Covariance covariance(const ChannelMatrix& h) {
  if (h.h.empty()) throw Error("covariance: channel has no frequency samples");
  const Eigen::Index nt = h.h.front().cols();
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(nt, nt);
  for (const auto& hn : h.h) r.noalias() += hn.adjoint() * hn;
  r /= static_cast<double>(h.h.size());
  return {r};
}

/// Squared Frobenius norm of R1 R1^H - R2 R2^H.
inline double chordal_distance(const Covariance& a, const Covariance& b) {
  if (a.r.rows() != b.r.rows() || a.r.cols() != b.r.cols())
    throw Error("chordal_distance: dimension mismatch");
  const Eigen::MatrixXcd diff = a.r * a.r.adjoint() - b.r * b.r.adjoint();
  return diff.squaredNorm();
}

/// Real part of the normalized trace inner product
/// Tr(R1^H R2) / (|R1|_F |R2|_F). For Hermitian inputs the trace is real.
/// Throws if either matrix is zero.
inline double cmd_similarity(const Covariance& a, const Covariance& b) {
  if (a.r.rows() != b.r.rows() || a.r.cols() != b.r.cols()) throw Error("cmd_similarity: dimension mismatch");
  const double na = a.r.norm();
  const double nb = b.r.norm();
  if (!(na > 0.0) || !(nb > 0.0)) throw Error("undefined similarity");
  // Tr(A^H B) = sum_ij conj(A_ij) B_ij
  const std::complex<double> tr = (a.r.conjugate().cwiseProduct(b.r)).sum();
  return tr.real() / (na * nb);
}

}  // namespace gscm
