#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gscm/metrics.hpp"
#include "gscm/smallscale.hpp"
#include "gscm/stats.hpp"

namespace gscm {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
const Vec3 kTx{10, -100, 25};

Lsps typical_lsps(double spread_deg = 20.0) {
  Lsps l;
  l.ds = 363e-9;
  l.asa = l.asd = spread_deg * kDeg;
  l.esa = l.esd = 0.5 * spread_deg * kDeg;
  return l;
}

double mean_aoa_distance(const PathSet& a, const PathSet& b) { return average_angular_distance(a, b).mean_azimuth; }

TEST(SsfBank, CountsAndWiring) {
  const SsfFieldBank b = build_ssf_bank(5, 15.0, 1);
  EXPECT_EQ(b.size(), 5u * kSsfVariables);
  EXPECT_EQ(b.clusters(), 5);
  const auto& list = b.fields().front().frequency_list();
  for (const auto& f : b.fields()) {
    EXPECT_EQ(f.spec().decorr_distance, 15.0);
    EXPECT_EQ(f.frequency_list().get(), list.get());  // one fit, reseeded phases
  }
  EXPECT_THROW(build_ssf_bank(0, 15.0, 1), Error);
  EXPECT_THROW(build_ssf_bank(5, -1.0, 1), Error);
}

TEST(SsfBank, ZeroDecorrelationIsUncorrelatedEverywhere) {
  const SsfFieldBank b = build_ssf_bank(5, 0.0, 1);
  for (const auto& f : b.fields()) EXPECT_TRUE(f.uncorrelated());
}

TEST(SsfBank, SameSeedSameBank) {
  const SsfFieldBank a = build_ssf_bank(3, 5.0, 9), b = build_ssf_bank(3, 5.0, 9);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.fields()[i].phases(), b.fields()[i].phases());
}

TEST(SsfBank, FieldsPairwiseUncorrelated) {
  const SsfFieldBank b = build_ssf_bank(5, 5.0, 3);
  Rng rng(1);
  std::vector<std::vector<double>> v(b.size());
  for (int k = 0; k < 4000; ++k) {
    const Vec3 p = stats::random_point(rng, 500.0);
    for (std::size_t i = 0; i < b.size(); ++i) v[i].push_back(b.fields()[i].evaluate(p));
  }
  // Fields sharing one frequency list have a realization cross-correlation of
  // (1/N) sum cos(dpsi_n), std sqrt(1/(2N)) = 0.032 for N = 500, on top of the
  // 1/sqrt(4000) sampling noise. Check the typical pair and the tail.
  double worst = 0.0, sq = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double rho = stats::pearson(v[i], v[j]);
      worst = std::max(worst, std::abs(rho));
      sq += rho * rho;
      ++pairs;
    }
  EXPECT_LE(std::sqrt(sq / pairs), 0.05);
  EXPECT_LT(worst, 0.2);
}

TEST(SsfBank, FieldCorrelationAtSeparationFollowsAcf) {
  const double dl = 15.0;
  const double sep = 10.0;
  std::vector<double> a, b;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const SsfFieldBank bank = build_ssf_bank(1, dl, s);
    for (const auto& f : bank.fields()) {
      a.push_back(f.evaluate({0, 0, 1.5}));
      b.push_back(f.evaluate({sep, 0, 1.5}));
    }
  }
  EXPECT_NEAR(stats::pearson(a, b), std::exp(-sep / dl), 0.05);
}

TEST(GeneratePaths, PowersNormalizedAndDelaysValid) {
  const ScenarioTable t = uma_nlos_table();
  for (double dl : {0.0, 5.0, 50.0}) {
    const SsfFieldBank bank = build_ssf_bank(5, dl, 4);
    for (int k = 0; k < 50; ++k) {
      const Vec3 rx{0.37 * k, 0, 1.5};
      const PathSet ps = generate_paths(bank, typical_lsps(), t, kTx, rx);
      ASSERT_EQ(ps.size(), 5u);
      double sum = 0.0, min_delay = 1.0;
      for (const Path& p : ps.paths) {
        sum += p.power;
        min_delay = std::min(min_delay, p.delay);
        EXPECT_GE(p.delay, 0.0);
        EXPECT_GE(p.power, 0.0);
        EXPECT_LE(p.power, 1.0);
        EXPECT_GT(p.xpr, 0.0);
        EXPECT_NEAR(p.length, distance(kTx, rx) + kSpeedOfLight * p.delay, 1e-9 * p.length);
        for (double ph : p.pol_phases) {
          EXPECT_GT(ph, -std::numbers::pi);
          EXPECT_LE(ph, std::numbers::pi);
        }
        EXPECT_LE(std::abs(p.aoa.elevation()), std::numbers::pi / 2);
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_EQ(min_delay, 0.0);
    }
  }
}

TEST(GeneratePaths, DeterministicPerPosition) {
  const ScenarioTable t = uma_nlos_table();
  const SsfFieldBank bank = build_ssf_bank(5, 5.0, 5);
  const Vec3 rx{3.3, 1.1, 1.5};
  const PathSet a = generate_paths(bank, typical_lsps(), t, kTx, rx);
  const PathSet b = generate_paths(bank, typical_lsps(), t, kTx, rx);
  for (std::size_t l = 0; l < a.size(); ++l) {
    EXPECT_EQ(a[l].delay, b[l].delay);
    EXPECT_EQ(a[l].power, b[l].power);
    EXPECT_EQ(a[l].aoa.azimuth(), b[l].aoa.azimuth());
    EXPECT_EQ(a[l].aod.elevation(), b[l].aod.elevation());
    EXPECT_EQ(a[l].pol_phases, b[l].pol_phases);
  }
}

TEST(GeneratePaths, RejectsCoincidentTerminals) {
  const SsfFieldBank bank = build_ssf_bank(5, 5.0, 5);
  EXPECT_THROW(generate_paths(bank, typical_lsps(), uma_nlos_table(), kTx, kTx), Error);
}

TEST(GeneratePaths, StrongestClusterPointsAlongTheLink) {
  // g = 0 for the strongest path, so only the ASA/7 perturbation remains.
  const ScenarioTable t = uma_nlos_table();
  const Lsps l = typical_lsps();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SsfFieldBank bank = build_ssf_bank(5, 0.0, s);
    const Vec3 rx{1, 2, 1.5};
    const PathSet ps = generate_paths(bank, l, t, kTx, rx);
    std::size_t best = 0;
    for (std::size_t k = 1; k < ps.size(); ++k)
      if (ps[k].power > ps[best].power) best = k;
    const double expect = bearing(rx, kTx).azimuth() + l.asa / 7.0 * bank.value(best, SsfVariable::aoa_az, rx);
    EXPECT_NEAR(azimuth_distance(ps[best].aoa.azimuth(), wrap_angle(expect)), 0.0, 1e-12);
  }
}

// Continuity: the mean AoA change shrinks with separation and is tiny at 1 mm.
TEST(GeneratePaths, ContinuousInPosition) {
  const ScenarioTable t = uma_nlos_table();
  const Lsps l = typical_lsps();
  std::vector<double> by_sep, median_by_sep;
  for (double sep : {0.001, 0.01, 0.1, 1.0}) {
    std::vector<double> d;
    for (std::uint64_t s = 0; s < 40; ++s) {
      const SsfFieldBank bank = build_ssf_bank(5, 5.0, s);
      const Vec3 rx{2, 0, 1.5};
      d.push_back(
          mean_aoa_distance(generate_paths(bank, l, t, kTx, rx), generate_paths(bank, l, t, kTx, rx + Vec3{sep, 0, 0})));
    }
    by_sep.push_back(stats::mean(d));
    std::nth_element(d.begin(), d.begin() + 20, d.end());
    median_by_sep.push_back(d[20]);
  }
  // The hard sign of the offset fields flips a cluster to the mirrored side
  // when its field crosses zero, so rare jumps survive at any separation; the
  // typical realization moves smoothly.
  EXPECT_LT(median_by_sep[0], 1e-3);
  for (std::size_t k = 1; k < by_sep.size(); ++k) EXPECT_LT(by_sep[k - 1], by_sep[k]);
}

TEST(GeneratePaths, UncorrelatedClustersAreFlatInSeparation) {
  const ScenarioTable t = uma_nlos_table();
  const Lsps l = typical_lsps();
  auto mean_at = [&](double sep) {
    double acc = 0.0;
    for (std::uint64_t s = 0; s < 300; ++s) {
      const SsfFieldBank bank = build_ssf_bank(5, 0.0, s);
      const Vec3 rx{0, 0, 1.5};
      acc += mean_aoa_distance(generate_paths(bank, l, t, kTx, rx), generate_paths(bank, l, t, kTx, rx + Vec3{sep, 0, 0}));
    }
    return acc / 300.0;
  };
  const double near = mean_at(0.1), far = mean_at(20.0);
  EXPECT_GT(near, 0.2);
  EXPECT_LT(std::abs(near - far) / far, 0.15);
}

// Calibration guard for kClusterSpreadScale: with independent cluster draws
// the power-weighted rms azimuth spread averages to the requested spread.
TEST(GeneratePaths, SpreadCalibration) {
  const ScenarioTable t = uma_nlos_table();
  const Lsps l = typical_lsps(20.0);
  double acc = 0.0;
  const int n = 3000;
  for (int s = 0; s < n; ++s) {
    const SsfFieldBank bank = build_ssf_bank(5, 0.0, static_cast<std::uint64_t>(s));
    const PathSet ps = generate_paths(bank, l, t, {0, -100, 25}, {0, 0, 1.5});
    std::vector<double> az, pw;
    for (const Path& p : ps.paths) {
      az.push_back(p.aoa.azimuth());
      pw.push_back(p.power);
    }
    acc += rms_angular_spread(az, pw) / l.asa;
  }
  EXPECT_NEAR(acc / n, 1.0, 0.15);
}

TEST(GeneratePaths, ElevationSpreadBelowAzimuthSpread) {
  const ScenarioTable t = uma_nlos_table();
  Lsps l = typical_lsps(30.0);
  l.esa = 10.0 * kDeg;
  double az_acc = 0.0, el_acc = 0.0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const PathSet ps = generate_paths(build_ssf_bank(5, 0.0, s), l, t, kTx, {0, 0, 1.5});
    std::vector<double> az, el, pw;
    for (const Path& p : ps.paths) {
      az.push_back(p.aoa.azimuth());
      el.push_back(p.aoa.elevation());
      pw.push_back(p.power);
    }
    az_acc += rms_angular_spread(az, pw);
    el_acc += rms_angular_spread(el, pw);
  }
  EXPECT_LT(el_acc, az_acc);
}

TEST(RmsAngularSpread, Basics) {
  EXPECT_EQ(rms_angular_spread({0.3}, {1.0}), 0.0);
  EXPECT_NEAR(rms_angular_spread({-0.1, 0.1}, {0.5, 0.5}), 0.1, 1e-15);
  // Wrapping: two paths straddling +-pi are close, not 2*pi apart.
  EXPECT_NEAR(rms_angular_spread({3.1, -3.1}, {0.5, 0.5}), (2 * std::numbers::pi - 6.2) / 2, 1e-9);
  EXPECT_THROW(rms_angular_spread({0.1}, {}), Error);
}

}  // namespace
}  // namespace gscm
