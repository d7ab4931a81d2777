#pragma once

// Monte-Carlo frontier sweeps: per trial, draw channels, pick the EH set,
// trace the boundary on a normalized energy grid for every scheme plus its
// time-sharing baseline, then average pointwise in trial order.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/config.hpp"

namespace swipt {

struct CurvePoint {
  double ebar_normalized = 0.0;
  double ebar_watts = 0.0;    // mean over contributing trials
  double rate_bits = 0.0;     // mean
  double energy_watts = 0.0;  // mean delivered energy
  std::vector<double> powers;  // mean power per EH slot
  int trials = 0;              // trials that could meet this target
};

struct RECurve {
  std::string scheme;  // "SLER", "TS_SLER", ...
  std::vector<CurvePoint> points;
  int trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t fingerprint = 0;
};

struct TrialPoint {
  double ebar = 0.0;
  bool feasible = false;
  double rate_nats = 0.0;
  double energy = 0.0;
  std::vector<double> powers;
  bool converged = true;
  bool power_monotone = true;
  bool surplus_branch = false;
  int tilt_exponent = 0;
  double kkt_residual = 0.0;
  bool from_higher_target = false;  // operating point taken from a larger Ē
  std::vector<std::vector<double>> power_trace;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::vector<int> eh;
  std::vector<int> id;
  std::vector<double> grid_scale;  // per curve: watts at normalized Ē = 1
  std::vector<double> scheme_e_max;  // per curve: the scheme's own ceiling, watts
  std::vector<std::vector<TrialPoint>> curves;
};

struct SweepDiagnostics {
  int points = 0;
  int infeasible_points = 0;
  int unconverged_points = 0;
  int monotone_violations = 0;
  int feasibility_violations = 0;
  double max_kkt_residual = 0.0;
};

struct SweepOptions {
  /// When set, every scheme of a trial shares one absolute grid scaled by this
  /// scheme's maximum energy; targets above a scheme's own ceiling are
  /// reported infeasible and left out of that point's average.
  std::optional<Scheme> grid_reference;
  /// Shared absolute grid 0 … grid_watts (delivered watts) for every trial and
  /// scheme. Cannot be combined with grid_reference.
  std::optional<double> grid_watts;
  bool time_sharing = true;
  bool keep_trials = false;
  /// Per trial, replace a point by the operating point of a larger target on
  /// the grid when that one has a higher rate (the region is closed under
  /// lowering the energy requirement).
  bool envelope = true;
  /// Sweep this realization instead of drawing channels (one trial).
  std::optional<ChannelSet> channels;
};

struct SweepResult {
  std::vector<RECurve> curves;
  std::vector<TrialRecord> trials;  // filled when keep_trials is set
  SweepDiagnostics diagnostics;
};

SweepResult run_sweep(const SystemConfig& config, const SweepOptions& options = {});

/// Normalized grid 0, 1/(n−1), …, 1.
std::vector<double> normalized_grid(int size);

/// Runs `task(i)` for i in [0, count) on `workers` threads. Exceptions are
/// rethrown for the lowest failing index.
void parallel_for(int count, int workers, const std::function<void(int)>& task);

}  // namespace swipt
