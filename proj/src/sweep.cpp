#include "swipt/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "swipt/channel.hpp"
#include "swipt/config_io.hpp"
#include "swipt/errors.hpp"
#include "swipt/optimizer.hpp"
#include "swipt/selection.hpp"

namespace swipt {

std::vector<double> normalized_grid(int size) {
  if (size < 1) throw InvalidArgument("normalized_grid: size must be positive");
  if (size == 1) return {1.0};
  std::vector<double> out(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) out[static_cast<std::size_t>(i)] = double(i) / (size - 1);
  return out;
}

void parallel_for(int count, int workers, const std::function<void(int)>& task) {
  if (count <= 0) return;
  workers = std::clamp(workers, 1, count);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto run = [&](int i) {
    try {
      task(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (workers == 1) {
    for (int i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

struct CurveSpec {
  Scheme scheme;
  bool time_sharing;
  std::string name;
};

std::vector<CurveSpec> curve_specs(const SystemConfig& config, const SweepOptions& options) {
  std::vector<CurveSpec> out;
  for (Scheme s : config.schemes) {
    out.push_back({s, false, std::string(to_string(s))});
    if (options.time_sharing) out.push_back({s, true, "TS_" + std::string(to_string(s))});
  }
  return out;
}

TrialPoint from_re_point(const REPoint& p) {
  TrialPoint t;
  t.ebar = p.ebar;
  t.feasible = true;
  t.rate_nats = p.rate;
  t.energy = p.energy;
  t.powers = p.powers;
  t.converged = p.converged;
  t.power_monotone = p.power_monotone;
  t.surplus_branch = p.surplus_branch;
  t.tilt_exponent = p.tilt_exponent;
  t.kkt_residual = p.kkt_residual;
  t.power_trace = p.power_trace;
  return t;
}

TrialPoint infeasible_point(double ebar, std::size_t n_eh) {
  TrialPoint t;
  t.ebar = ebar;
  t.powers.assign(n_eh, 0.0);
  return t;
}

TrialRecord run_trial(const SystemConfig& config, const SweepOptions& options,
                      const std::vector<CurveSpec>& specs, const std::vector<double>& grid,
                      std::uint64_t trial) {
  TrialRecord rec;
  rec.trial = trial;
  const ChannelSet channels =
      options.channels ? *options.channels : generate_channels(config, trial);
  auto partition = default_partition(config.k, config.k1);
  const bool selecting = config.select_eh && config.k1 >= 1;
  if (selecting) {
    const SelectionResult sel =
        select_eh_set(channels, config, default_selection_target(channels, config));
    partition = {sel.eh_set, sel.id_set};
  }
  rec.eh = partition.first;
  rec.id = partition.second;
  const FrontierProblem problem =
      FrontierProblem::from_config(config, channels, partition.first, partition.second);

  std::optional<double> common_scale;
  if (options.grid_reference) common_scale = scheme_e_max(problem, *options.grid_reference);
  if (options.grid_watts) common_scale = *options.grid_watts;

  for (const CurveSpec& spec : specs) {
    const double own = scheme_e_max(problem, spec.scheme);
    const double scale = common_scale.value_or(own);
    rec.grid_scale.push_back(scale);
    rec.scheme_e_max.push_back(own);
    std::vector<TrialPoint> points;
    points.reserve(grid.size());

    if (spec.time_sharing) {
      const auto ends = time_sharing_curve(problem, spec.scheme, {0.0, 1.0}, config.eh_phase_rate);
      std::vector<double> taus;
      std::vector<std::size_t> slots;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const double ebar = std::min(grid[g] * scale, scale);
        if (ebar > own * (1.0 + 1e-12)) {
          points.push_back(infeasible_point(ebar, problem.n_eh()));
          continue;
        }
        const double span = ends[1].energy - ends[0].energy;
        double tau = span > 0.0 ? (ebar - ends[0].energy) / span : 0.0;
        tau = std::clamp(tau, 0.0, 1.0);
        taus.push_back(tau);
        slots.push_back(points.size());
        TrialPoint t;
        t.ebar = ebar;
        t.feasible = true;
        points.push_back(t);
      }
      const auto shared = time_sharing_curve(problem, spec.scheme, taus, config.eh_phase_rate);
      for (std::size_t i = 0; i < shared.size(); ++i) {
        TrialPoint& t = points[slots[i]];
        t.rate_nats = shared[i].rate;
        t.energy = shared[i].energy;
        t.powers = shared[i].powers;
      }
    } else {
      for (double g : grid) {
        const double ebar = std::min(g * scale, scale);
        if (ebar > own * (1.0 + 1e-12)) {
          points.push_back(infeasible_point(ebar, problem.n_eh()));
          continue;
        }
        if (selecting && config.reselect_per_point) {
          const SelectionResult sel = select_eh_set(channels, config, ebar);
          const FrontierProblem local =
              FrontierProblem::from_config(config, channels, sel.eh_set, sel.id_set);
          if (ebar > scheme_e_max(local, spec.scheme) * (1.0 + 1e-12)) {
            points.push_back(infeasible_point(ebar, problem.n_eh()));
            continue;
          }
          points.push_back(from_re_point(boundary_point(local, spec.scheme, std::min(ebar, own))));
        } else {
          points.push_back(from_re_point(boundary_point(problem, spec.scheme, std::min(ebar, own))));
        }
      }
    }
    if (options.envelope && !spec.time_sharing) {
      for (std::size_t g = points.size(); g-- > 1;) {
        const TrialPoint& above = points[g];
        TrialPoint& here = points[g - 1];
        if (!above.feasible || !here.feasible || above.rate_nats <= here.rate_nats) continue;
        const double ebar = here.ebar;
        here = above;
        here.ebar = ebar;
        here.from_higher_target = true;
      }
    }
    rec.curves.push_back(std::move(points));
  }
  return rec;
}

}  // namespace

SweepResult run_sweep(const SystemConfig& config, const SweepOptions& options) {
  config.validate();
  if (options.channels) {
    if (options.channels->k() != config.k || options.channels->m() != config.m) {
      throw InvalidArgument("run_sweep: channel file dimensions do not match the config");
    }
    if (config.trials != 1) throw InvalidArgument("run_sweep: a fixed realization needs trials = 1");
  }
  if (options.grid_reference && options.grid_watts) {
    throw InvalidArgument("run_sweep: grid_reference and grid_watts are exclusive");
  }
  if (options.grid_watts && !(*options.grid_watts > 0.0 && std::isfinite(*options.grid_watts))) {
    throw InvalidArgument("run_sweep: grid_watts must be positive");
  }
  const std::vector<CurveSpec> specs = curve_specs(config, options);
  const std::vector<double> grid = normalized_grid(config.ebar_grid_size);
  std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
  parallel_for(config.trials, config.parallelism, [&](int i) {
    records[static_cast<std::size_t>(i)] =
        run_trial(config, options, specs, grid, static_cast<std::uint64_t>(i));
  });

  SweepResult out;
  const std::uint64_t fingerprint = config_fingerprint(config);
  const std::size_t n_eh = static_cast<std::size_t>(config.k1);
  for (std::size_t c = 0; c < specs.size(); ++c) {
    RECurve curve;
    curve.scheme = specs[c].name;
    curve.trials = config.trials;
    curve.seed = config.seed;
    curve.fingerprint = fingerprint;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      CurvePoint p;
      p.ebar_normalized = grid[g];
      p.powers.assign(n_eh, 0.0);
      for (const TrialRecord& rec : records) {
        const TrialPoint& t = rec.curves[c][g];
        auto& d = out.diagnostics;
        ++d.points;
        if (!t.feasible) {
          ++d.infeasible_points;
          continue;
        }
        if (!t.converged) ++d.unconverged_points;
        if (!t.power_monotone) ++d.monotone_violations;
        const double slack = config.solver.feasibility_tolerance * std::max(t.ebar, 1e-300);
        if (t.energy < t.ebar - slack) ++d.feasibility_violations;
        d.max_kkt_residual = std::max(d.max_kkt_residual, t.kkt_residual);
        ++p.trials;
        p.ebar_watts += t.ebar;
        p.rate_bits += nats_to_bits(t.rate_nats);
        p.energy_watts += t.energy;
        for (std::size_t k = 0; k < n_eh && k < t.powers.size(); ++k) p.powers[k] += t.powers[k];
      }
      const double n = p.trials > 0 ? p.trials : std::numeric_limits<double>::quiet_NaN();
      p.ebar_watts /= n;
      p.rate_bits /= n;
      p.energy_watts /= n;
      for (double& w : p.powers) w /= n;
      curve.points.push_back(std::move(p));
    }
    out.curves.push_back(std::move(curve));
  }
  if (options.keep_trials) out.trials = std::move(records);
  return out;
}

}  // namespace swipt
