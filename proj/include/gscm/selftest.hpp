#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gscm/rng.hpp"
#include "gscm/sosfield.hpp"
#include "gscm/stats.hpp"

namespace gscm {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Statistical checks of the SOS generator: ACF fidelity, Normal marginal
/// and independence of a phase-reseeded copy. Samples are spread over a
/// cube 200 decorrelation distances wide.
inline std::vector<CheckResult> sos_selftest(std::size_t sinusoids = kDefaultSinusoids, std::uint64_t seed = 1,
                                             const std::vector<double>& decorr_distances = {5.0, 15.0, 50.0}) {
  std::vector<CheckResult> out;
  auto fmt = [](double d) {
    std::string s = std::to_string(d);
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
    return s;
  };
  for (std::size_t k = 0; k < decorr_distances.size(); ++k) {
    const double dl = decorr_distances[k];
    const std::uint64_t s = derive_seed(seed, k);
    const SosField field = fit_frequencies({dl, 0.0, 1.0}, sinusoids, s);
    const double region = 100.0 * dl;

    const auto acf = stats::empirical_acf(field, 3.0 * dl, 30, 100'000, derive_seed(s, 1), region);
    const double rmse = stats::acf_rmse(acf, dl);
    out.push_back({"acf_rmse d_lambda=" + fmt(dl) + "m", rmse, 0.05, rmse <= 0.05});

    Rng rng(derive_seed(s, 2));
    std::vector<double> a, b;
    const SosField other = reseed_phases(field, derive_seed(s, 3));
    for (int i = 0; i < 10'000; ++i) {
      const Vec3 p = stats::random_point(rng, region);
      a.push_back(field.evaluate(p));
      b.push_back(other.evaluate(p));
    }
    const double ks = stats::ks_statistic(a, stats::normal_cdf);
    out.push_back({"normal_ks d_lambda=" + fmt(dl) + "m", ks, 0.02, ks <= 0.02});
    const double rho = std::abs(stats::pearson(a, b));
    out.push_back({"reseed_xcorr d_lambda=" + fmt(dl) + "m", rho, 0.05, rho <= 0.05});
  }
  return out;
}

}  // namespace gscm
