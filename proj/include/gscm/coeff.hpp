#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gscm/antenna.hpp"
#include "gscm/error.hpp"
#include "gscm/smallscale.hpp"

namespace gscm {

using PolarizationMatrix = Eigen::Matrix2cd;

/// Per-path MIMO coefficients G_l (n_r x n_t) and the path delay.
struct CoefficientMatrix {
  Eigen::MatrixXcd g;
  double delay = 0.0;
};

/// Frequency response, one n_r x n_t matrix per sample frequency.
struct ChannelMatrix {
  std::vector<Eigen::MatrixXcd> h;
  std::vector<double> frequencies;  ///< Hz, relative to the band start

  std::size_t subcarriers() const noexcept { return h.size(); }
};

/// `count` equally spaced samples from 0 to `bandwidth` inclusive.
inline std::vector<double> frequency_grid(double bandwidth, std::size_t count) {
  if (count == 0) throw Error("frequency_grid: need at least one sample");
  if (!(bandwidth >= 0.0)) throw Error("frequency_grid: negative bandwidth");
  std::vector<double> f(count, 0.0);
  if (count > 1)
    for (std::size_t n = 0; n < count; ++n)
      f[n] = static_cast<double>(n) * bandwidth / static_cast<double>(count - 1);
  return f;
}

/// Random-phase coupling matrix with cross-polar terms scaled by sqrt(1/XPR).
/// The phases come from the path so that the matrix is spatially consistent.
inline PolarizationMatrix polarization_matrix(const Path& path) {
  if (!(path.xpr > 0.0)) throw Error("polarization_matrix: XPR must be positive");
  const double cross = std::sqrt(1.0 / path.xpr);
  PolarizationMatrix m;
  m << std::polar(1.0, path.pol_phases[0]), std::polar(cross, path.pol_phases[1]),
      std::polar(cross, path.pol_phases[2]), std::polar(1.0, path.pol_phases[3]);
  return m;
}

inline CoefficientMatrix path_coefficient(const Path& path, const Array& tx_array, const Array& rx_array,
                                          double wavelength) {
  if (!(wavelength > 0.0)) throw Error("path_coefficient: wavelength must be positive");
  const PolarizationMatrix m = polarization_matrix(path);
  const cdouble common =
      std::sqrt(path.power) * std::polar(1.0, -2.0 * std::numbers::pi * std::fmod(path.length / wavelength, 1.0));

  // M * F_t for every transmit element.
  std::vector<Eigen::Vector2cd> mft(tx_array.size());
  for (std::size_t t = 0; t < tx_array.size(); ++t) {
    const PolarimetricResponse ft = tx_array.response(t, path.aod);
    mft[t] = m * Eigen::Vector2cd(ft.f_theta, ft.f_phi);
  }
  CoefficientMatrix out{Eigen::MatrixXcd(rx_array.size(), tx_array.size()), path.delay};
  for (std::size_t r = 0; r < rx_array.size(); ++r) {
    const PolarimetricResponse fr = rx_array.response(r, path.aoa);
    for (std::size_t t = 0; t < tx_array.size(); ++t)
      out.g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) =
          common * (fr.f_theta * mft[t](0) + fr.f_phi * mft[t](1));
  }
  return out;
}

inline ChannelMatrix assemble_frequency_response(std::span<const CoefficientMatrix> coeffs,
                                                 std::span<const double> f_grid) {
  if (coeffs.empty()) throw Error("assemble_frequency_response: empty path list");
  ChannelMatrix out;
  out.frequencies.assign(f_grid.begin(), f_grid.end());
  out.h.reserve(f_grid.size());
  for (const double f : f_grid) {
    Eigen::MatrixXcd hn = Eigen::MatrixXcd::Zero(coeffs.front().g.rows(), coeffs.front().g.cols());
    for (const auto& c : coeffs) {
      if (c.g.rows() != hn.rows() || c.g.cols() != hn.cols())
        throw Error("assemble_frequency_response: inconsistent coefficient shapes");
      hn += c.g * std::polar(1.0, -2.0 * std::numbers::pi * f * c.delay);
    }
    out.h.push_back(std::move(hn));
  }
  return out;
}

/// Coefficients for every path of `paths`, then the frequency response.
inline ChannelMatrix synthesize_channel(const PathSet& paths, const Array& tx_array, const Array& rx_array,
                                        double wavelength, std::span<const double> f_grid) {
  std::vector<CoefficientMatrix> coeffs;
  coeffs.reserve(paths.size());
  for (const auto& p : paths.paths) coeffs.push_back(path_coefficient(p, tx_array, rx_array, wavelength));
  return assemble_frequency_response(coeffs, f_grid);
}

}  // namespace gscm
