#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "gscm/coeff.hpp"
#include "gscm/config.hpp"
#include "gscm/error.hpp"
#include "gscm/metrics.hpp"
#include "gscm/scenario.hpp"
#include "gscm/smallscale.hpp"

namespace gscm {

struct SweepRecord {
  double decorr_distance = 0.0;  ///< m
  double separation = 0.0;       ///< m
  double delta_aaoa = 0.0;       ///< rad
  double delta_eaoa = 0.0;       ///< rad
  double chordal = 0.0;
  double cmd = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

namespace detail {

inline constexpr std::uint64_t kLspStream = 0x1A7E;
inline constexpr std::uint64_t kSsfStream = 0x55F;

struct UserChannel {
  PathSet paths;
  Covariance cov;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to per-index slots so that the outcome is order independent.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Two-user drift sweep. Per seed the LSP fields are built once and shared
/// by every decorrelation distance; per (seed, d_lambda) one SSF bank is
/// built and queried at both user positions. Records are ordered by
/// (d_lambda, separation, seed position in the config).
inline std::vector<SweepRecord> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const ScenarioTable table = config.scenario();
  const Array bs = config.bs_array();
  const Array ue = config.user_array();
  const double lambda = config.wavelength();
  const std::vector<double> f_grid = frequency_grid(config.bandwidth, config.subcarriers);
  const std::vector<Vec3> track = track_positions(config.track());

  auto user_channel = [&](const SsfFieldBank& bank, const LspFields& lsp_fields, const Vec3& pos) {
    const Lsps lsps = lsps_at(lsp_fields, table, pos);
    detail::UserChannel uc{generate_paths(bank, lsps, table, config.bs_position, pos), {}};
    uc.cov = covariance(synthesize_channel(uc.paths, bs, ue, lambda, f_grid));
    return uc;
  };

  std::vector<double> dls = config.decorr_distances;
  std::sort(dls.begin(), dls.end());
  dls.erase(std::unique(dls.begin(), dls.end()), dls.end());

  // cells[d][s] holds the track records for d_lambda index d and seed index s.
  std::vector<std::vector<std::vector<SweepRecord>>> cells(dls.size(),
                                                           std::vector<std::vector<SweepRecord>>(config.seeds.size()));
  for (std::size_t s = 0; s < config.seeds.size(); ++s) {
    const std::uint64_t seed = config.seeds[s];
    const LspFields lsp_fields =
        build_lsp_fields(table, derive_seed(seed, detail::kLspStream), config.sinusoids);
    for (std::size_t d = 0; d < dls.size(); ++d) {
      const SsfFieldBank bank =
          build_ssf_bank(config.clusters, dls[d], derive_seed(seed, detail::kSsfStream), config.sinusoids);
      const detail::UserChannel u1 = user_channel(bank, lsp_fields, config.user1);
      auto& out = cells[d][s];
      out.resize(track.size());
      detail::parallel_for(track.size(), config.threads, [&](std::size_t i) {
        const detail::UserChannel u2 = user_channel(bank, lsp_fields, track[i]);
        const AngularDistanceReport ang = average_angular_distance(u1.paths, u2.paths);
        out[i] = SweepRecord{dls[d],
                             distance(config.user1, track[i]),
                             ang.mean_azimuth,
                             ang.mean_elevation,
                             chordal_distance(u1.cov, u2.cov),
                             cmd_similarity(u1.cov, u2.cov),
                             seed};
      });
    }
  }

  std::vector<SweepRecord> records;
  records.reserve(dls.size() * config.seeds.size() * track.size());
  for (std::size_t d = 0; d < dls.size(); ++d) {
    // Track walks toward user 1, so reverse for ascending separation.
    for (std::size_t i = track.size(); i-- > 0;)
      for (std::size_t s = 0; s < config.seeds.size(); ++s) records.push_back(cells[d][s][i]);
  }
  return records;
}

inline constexpr const char* kCsvHeader = "d_lambda,separation_m,delta_aaoa_rad,delta_eaoa_rad,chordal,cmd,seed";

/// Shortest general-format representation with 12 significant digits,
/// independent of the C and C++ locales.
inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc()) throw Error("format_number: conversion failed");
  return {buf, ptr};
}

inline void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& r : records)
    os << format_number(r.decorr_distance) << ',' << format_number(r.separation) << ','
       << format_number(r.delta_aaoa) << ',' << format_number(r.delta_eaoa) << ',' << format_number(r.chordal)
       << ',' << format_number(r.cmd) << ',' << r.seed << '\n';
}

inline void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("write_csv: cannot open '" + path + "' for writing");
  write_csv(records, os);
  os.flush();
  if (!os) throw Error("write_csv: write failed for '" + path + "'");
}

inline std::vector<SweepRecord> read_csv(std::istream& in, const std::string& origin = "<csv>") {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error(origin + ": missing or unexpected CSV header");
  std::vector<SweepRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    for (auto c = rest.find(','); c != std::string_view::npos; c = rest.find(',')) {
      cols.push_back(rest.substr(0, c));
      rest = rest.substr(c + 1);
    }
    cols.push_back(rest);
    if (cols.size() != 7) throw Error(origin + ":" + std::to_string(line_no) + ": expected 7 columns");
    auto num = [&](std::string_view s) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw Error(origin + ":" + std::to_string(line_no) + ": bad number '" + std::string(s) + "'");
      return v;
    };
    SweepRecord r{num(cols[0]), num(cols[1]), num(cols[2]), num(cols[3]), num(cols[4]), num(cols[5]), 0};
    auto [p, ec] = std::from_chars(cols[6].data(), cols[6].data() + cols[6].size(), r.seed);
    if (ec != std::errc() || p != cols[6].data() + cols[6].size())
      throw Error(origin + ":" + std::to_string(line_no) + ": bad seed");
    out.push_back(r);
  }
  return out;
}

/// Seed-averaged metrics at one (d_lambda, separation) point.
struct SweepMean {
  double decorr_distance = 0.0;
  double separation = 0.0;
  double delta_aaoa = 0.0;
  double delta_eaoa = 0.0;
  double chordal = 0.0;
  double cmd = 0.0;
  std::size_t samples = 0;
};

/// Groups records by (d_lambda, separation rounded to 1 um) and averages
/// over seeds. Output is ordered by d_lambda, then separation.
inline std::vector<SweepMean> average_over_seeds(const std::vector<SweepRecord>& records) {
  std::map<std::pair<double, long long>, SweepMean> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.decorr_distance, std::llround(r.separation * 1e6)}];
    g.decorr_distance = r.decorr_distance;
    g.separation += r.separation;
    g.delta_aaoa += r.delta_aaoa;
    g.delta_eaoa += r.delta_eaoa;
    g.chordal += r.chordal;
    g.cmd += r.cmd;
    ++g.samples;
  }
  std::vector<SweepMean> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) {
    const double n = static_cast<double>(g.samples);
    g.separation /= n;
    g.delta_aaoa /= n;
    g.delta_eaoa /= n;
    g.chordal /= n;
    g.cmd /= n;
    out.push_back(g);
  }
  return out;
}

/// Largest separation up to which the seed-averaged similarity stays at or
/// above `epsilon_cmd` when walking outward from co-location (0 if even the
/// smallest separation falls below). One entry per d_lambda.
inline std::map<double, double> cmd_correlated_distance(const std::vector<SweepMean>& means, double epsilon_cmd) {
  std::map<double, double> out;
  std::map<double, bool> broken;
  for (const auto& m : means) {  // ascending separation within each d_lambda
    auto [it, fresh] = out.try_emplace(m.decorr_distance, 0.0);
    if (broken[m.decorr_distance]) continue;
    if (m.cmd >= epsilon_cmd)
      it->second = m.separation;
    else
      broken[m.decorr_distance] = true;
  }
  return out;
}

}  // namespace gscm
