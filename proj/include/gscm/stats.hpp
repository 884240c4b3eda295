#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

#include "gscm/error.hpp"
#include "gscm/geometry.hpp"
#include "gscm/rng.hpp"
#include "gscm/sosfield.hpp"

// Statistical estimators used to validate correlated fields. They only
// observe field values at query positions, never the sinusoid tables.

namespace gscm::stats {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Kolmogorov-Smirnov statistic sup |F_n - F|.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw Error("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw Error("mean: no samples");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(const std::vector<double>& x) {
  const double m = mean(x);
  double acc = 0.0;
  for (double v : x) acc += (v - m) * (v - m);
  return acc / static_cast<double>(x.size() - 1);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error("pearson: need two equal-length samples");
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Average ranks (ties share the mean rank).
inline std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(ranks(x), ranks(y));
}

inline Vec3 random_direction(Rng& rng) {
  const double cz = 2.0 * rng.uniform() - 1.0;
  const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
  const double az = 2.0 * std::numbers::pi * rng.uniform();
  return {sz * std::cos(az), sz * std::sin(az), cz};
}

inline Vec3 random_point(Rng& rng, double half_width) {
  return {rng.uniform(-half_width, half_width), rng.uniform(-half_width, half_width),
          rng.uniform(-half_width, half_width)};
}

struct AcfEstimate {
  std::vector<double> lag;          ///< bin centers, m
  std::vector<double> correlation;  ///< estimate per bin
  std::vector<std::size_t> pairs;   ///< pairs per bin
};

/// Empirical ACF of `field` from `pairs` random position pairs. First points
/// are uniform in a cube of half-width `region`, offsets have uniform random
/// direction and uniform length in [0, max_lag]. Correlation is estimated
/// against the field's nominal mean and stddev.
inline AcfEstimate empirical_acf(const SosField& field, double max_lag, std::size_t bins, std::size_t pairs,
                                 std::uint64_t seed, double region, const Vec3& origin = {},
                                 const Vec3* fixed_direction = nullptr) {
  if (bins == 0 || !(max_lag > 0.0)) throw Error("empirical_acf: need bins and a positive max lag");
  Rng rng(seed);
  const double mu = field.spec().mean;
  const double var = field.spec().stddev * field.spec().stddev;
  std::vector<double> acc(bins, 0.0);
  AcfEstimate est;
  est.pairs.assign(bins, 0);
  const double width = max_lag / static_cast<double>(bins);
  for (std::size_t k = 0; k < pairs; ++k) {
    const Vec3 p = origin + random_point(rng, region);
    const Vec3 dir = fixed_direction ? *fixed_direction : random_direction(rng);
    const double lag = rng.uniform(0.0, max_lag);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(lag / width));
    acc[b] += (field.evaluate(p) - mu) * (field.evaluate(p + lag * dir) - mu);
    ++est.pairs[b];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    est.lag.push_back((static_cast<double>(b) + 0.5) * width);
    est.correlation.push_back(est.pairs[b] ? acc[b] / (static_cast<double>(est.pairs[b]) * var) : 0.0);
  }
  return est;
}

/// Root-mean-square error of an ACF estimate against exp(-d / decorr_distance).
inline double acf_rmse(const AcfEstimate& est, double decorr_distance) {
  double acc = 0.0;
  for (std::size_t b = 0; b < est.lag.size(); ++b) {
    const double e = est.correlation[b] - std::exp(-est.lag[b] / decorr_distance);
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(est.lag.size()));
}

}  // namespace gscm::stats
