// Command-line front end for the two-user spatial consistency sweep.
//
//   gscm run <config> [--out sweep.csv] [--seed-list 1,2,3]
//   gscm validate-config <config>
//   gscm sos-selftest [--sinusoids 500] [--seed 1]
//   gscm sos-export --decorr-m 5 [--sinusoids 500] [--seed 1] --out field.csv
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or numerical error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gscm/gscm.hpp"
#include "gscm/selftest.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  return gscm::KeyValueFile::parse_string("seeds = " + text, "--seed-list").get_uints("seeds", {});
}

void print_summary(const gscm::ExperimentConfig& config, const std::vector<gscm::SweepRecord>& records) {
  const auto means = gscm::average_over_seeds(records);
  const auto reach = gscm::cmd_correlated_distance(means, config.epsilon_cmd);
  for (const auto& [dl, sep] : reach)
    std::cout << "d_lambda=" << gscm::format_number(dl) << " m: seed-averaged cmd >= "
              << gscm::format_number(config.epsilon_cmd) << " up to " << gscm::format_number(sep) << " m\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatially consistent GSCM two-user drift simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string seed_list;
  auto* run = app.add_subcommand("run", "Run the two-user sweep and write the CSV");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--out", out_path, "Output CSV (overrides output_csv)");
  run->add_option("--seed-list", seed_list, "Comma-separated seeds (overrides seeds)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "Parse and check a config file");
  validate->add_option("config", validate_path, "Experiment config file")->required();

  std::size_t sinusoids = gscm::kDefaultSinusoids;
  std::uint64_t seed = 1;
  auto* selftest = app.add_subcommand("sos-selftest", "Run the SOS field ACF, normality and reseed checks");
  selftest->add_option("--sinusoids", sinusoids, "Sinusoids per field")->check(CLI::PositiveNumber);
  selftest->add_option("--seed", seed, "Seed");

  double decorr = 5.0;
  std::string export_path;
  auto* sos_export = app.add_subcommand("sos-export", "Write one field's sinusoid table as CSV");
  sos_export->add_option("--decorr-m", decorr, "Decorrelation distance in meters")->check(CLI::PositiveNumber);
  sos_export->add_option("--sinusoids", sinusoids, "Sinusoids per field")->check(CLI::PositiveNumber);
  sos_export->add_option("--seed", seed, "Seed");
  sos_export->add_option("--out", export_path, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate) {
      const auto config = gscm::load_experiment_config(validate_path);
      (void)config.scenario();
      std::cout << validate_path << ": ok\n";
      return 0;
    }
    if (*run) {
      gscm::ExperimentConfig config;
      try {
        config = gscm::load_experiment_config(config_path);
        if (!seed_list.empty()) config.seeds = parse_seed_list(seed_list);
        if (!out_path.empty()) config.output_csv = out_path;
        config.validate();
        (void)config.scenario();
      } catch (const gscm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
      }
      const auto records = gscm::run_sweep(config);
      gscm::write_csv(records, config.output_csv);
      std::cout << "wrote " << records.size() << " records to " << config.output_csv << '\n';
      print_summary(config, records);
      return 0;
    }
    if (*selftest) {
      bool all = true;
      for (const auto& r : gscm::sos_selftest(sinusoids, seed)) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " value=" << r.value << " limit=" << r.threshold
                  << '\n';
        all = all && r.pass;
      }
      return all ? 0 : kExitRuntime;
    }
    if (*sos_export) {
      const auto field = gscm::fit_frequencies({decorr, 0.0, 1.0}, sinusoids, seed);
      std::ofstream os(export_path, std::ios::binary | std::ios::trunc);
      if (!os) throw gscm::Error("cannot open '" + export_path + "' for writing");
      gscm::write_field_csv(field, os);
      return 0;
    }
  } catch (const gscm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
