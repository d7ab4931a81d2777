// swipt-frontier: Monte-Carlo rate–energy frontiers for the K-user MIMO
// interference channel with energy-harvesting receivers.
//
//   swipt-frontier --config exp.json --scheme MEB,MLB,SLER --out frontier.csv
//   swipt-frontier --audit
//   swipt-frontier --dump-channels h.txt --dump-trial 3
//   swipt-frontier --channels h.txt --scheme SLER

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "swipt/audit.hpp"
#include "swipt/channel_io.hpp"
#include "swipt/config_io.hpp"
#include "swipt/csv.hpp"
#include "swipt/errors.hpp"
#include "swipt/sweep.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kInvalid = 2, kAuditFailed = 3 };

std::vector<swipt::Scheme> split_schemes(const std::vector<std::string>& items) {
  std::vector<swipt::Scheme> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (!token.empty()) out.push_back(swipt::parse_scheme(token));
    }
  }
  return out;
}

int print_audits(const std::vector<swipt::AuditReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << std::left << std::setw(16) << r.name << " instances=" << r.instances
              << " max_violation=" << r.max_violation << " tolerance=" << r.tolerance << ' '
              << (r.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && r.pass;
  }
  return ok ? kOk : kAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-energy frontiers for MIMO interference channels with energy harvesting"};
  std::string config_path, out_path, dump_path, channels_path, variant, grid_reference;
  std::vector<std::string> schemes;
  std::optional<int> trials, grid, parallelism;
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_watts;
  std::uint64_t dump_trial = 0;
  bool select = false, audit = false, no_time_sharing = false;

  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--scheme", schemes, "MEB, MLB, SLER, SLER_TILT (repeat or comma-separate)");
  app.add_option("--trials", trials, "Monte-Carlo trials");
  app.add_option("--seed", seed, "RNG seed");
  app.add_flag("--select", select, "choose the EH set by SLER sums");
  app.add_flag("--audit", audit, "run the numeric audits only");
  app.add_option("--out", out_path, "CSV output path (stdout when omitted)");
  app.add_option("--grid", grid, "number of normalized energy grid points");
  app.add_option("--parallelism", parallelism, "worker threads");
  app.add_option("--variant", variant, "P1 or UP");
  app.add_option("--grid-reference", grid_reference,
                 "scale every scheme's grid by this scheme's maximum energy");
  auto* watts_opt = app.add_option("--grid-watts", grid_watts,
                                   "shared absolute grid from 0 to this many delivered watts");
  watts_opt->excludes(app.get_option("--grid-reference"));
  app.add_flag("--no-time-sharing", no_time_sharing, "skip the TS_ baseline rows");
  app.add_option("--dump-channels", dump_path, "write the channels of --dump-trial and exit");
  app.add_option("--dump-trial", dump_trial, "trial index for --dump-channels");
  app.add_option("--channels", channels_path, "sweep a saved realization")->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  try {
    swipt::SystemConfig config;
    if (!config_path.empty()) config = swipt::load_config(config_path);
    if (!schemes.empty()) config.schemes = split_schemes(schemes);
    if (trials) config.trials = *trials;
    if (seed) config.seed = *seed;
    if (grid) config.ebar_grid_size = *grid;
    if (parallelism) config.parallelism = *parallelism;
    if (!variant.empty()) config.variant = swipt::parse_variant(variant);
    if (select) config.select_eh = true;

    swipt::SweepOptions options;
    options.time_sharing = !no_time_sharing;
    if (!grid_reference.empty()) options.grid_reference = swipt::parse_scheme(grid_reference);
    if (grid_watts) options.grid_watts = *grid_watts;

    if (!channels_path.empty()) {
      swipt::ChannelFile file = swipt::load_channels(channels_path);
      config.k = file.channels.k();
      config.m = file.channels.m();
      config.k1 = file.k1;
      config.trials = 1;
      if (config.alpha.size() != 0 && config.alpha.rows() != config.k) config.alpha = {};
      options.channels = std::move(file.channels);
    }
    config.validate();

    if (!dump_path.empty()) {
      swipt::save_channels(dump_path, swipt::generate_channels(config, dump_trial), config.k1);
      return kOk;
    }
    if (audit) return print_audits(swipt::run_audits(config));

    const swipt::SweepResult result = swipt::run_sweep(config, options);
    if (out_path.empty()) {
      swipt::write_csv(std::cout, result.curves);
    } else {
      swipt::emit_csv(result.curves, out_path);
    }
    const auto& d = result.diagnostics;
    std::cerr << "fingerprint=" << std::hex << swipt::config_fingerprint(config) << std::dec
              << " points=" << d.points << " infeasible=" << d.infeasible_points
              << " unconverged=" << d.unconverged_points
              << " monotone_violations=" << d.monotone_violations
              << " feasibility_violations=" << d.feasibility_violations << '\n';
    return kOk;
  } catch (const swipt::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalid;
  } catch (const swipt::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kInvalid;
  } catch (const swipt::InvalidPartition& e) {
    std::cerr << "invalid partition: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
