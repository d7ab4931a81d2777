#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/numerics.hpp"

namespace swipt {

/// Rank-one energy beam design used by every energy transmitter.
enum class Scheme { MEB, MLB, SLER, SLER_TILT };

/// Which interference the information receivers see inside the optimizer.
/// `UP` drops cross interference between information links (upper-bound
/// problem); `P1` keeps it and solves by iterative waterfilling.
enum class Variant { UP, P1 };

/// How the inner dual problem is minimized.
enum class DualMethod { Bisection, Subgradient };

std::string_view to_string(Scheme s);
std::string_view to_string(Variant v);
std::string_view to_string(DualMethod d);
Scheme parse_scheme(std::string_view text);
Variant parse_variant(std::string_view text);
DualMethod parse_dual_method(std::string_view text);

struct SolverSettings {
  // Outer steepest-descent power control.
  int outer_max_iterations = 50;
  double outer_tolerance = 1e-6;  // on ‖ΔP‖, relative to p_max
  double step_fraction = 1.0;     // Δ = step_fraction · Δ_max
  // Inner dual problem.
  DualMethod dual_method = DualMethod::Bisection;
  int dual_max_iterations = 500;
  double subgradient_step = 1.0;  // c in c/√t, normalized units
  double kkt_tolerance = 1e-9;
  double pd_margin = 1e-12;  // ε_pd, relative to λ·σ₁²
  // Iterative waterfilling (variant P1).
  int waterfill_max_sweeps = 200;
  double waterfill_tolerance = 1e-10;
  // Feasibility slack on delivered energy, relative to the target.
  double feasibility_tolerance = 1e-9;
  // Beam tilting: maximum exponent n of the decay factor.
  int tilt_max_exponent = 100;
};

struct SystemConfig {
  int k = 2;   // transceiver pairs
  int k1 = 1;  // energy-harvesting pairs
  int m = 4;   // antennas per node
  double p_max = 0.05;        // W
  double noise_power = 1e-6;  // W
  double path_loss = 1e-3;
  RMatrix alpha;  // K×K link weights; empty means defaults (1 direct, 0.6 cross)
  double zeta = 1.0;
  std::vector<Scheme> schemes{Scheme::SLER};
  double tilt_decay = 0.9;
  int ebar_grid_size = 21;
  int trials = 100;
  std::uint64_t seed = 1;
  Variant variant = Variant::P1;
  SolverSettings solver;
  bool select_eh = false;
  bool reselect_per_point = false;
  bool noise_in_energy = false;
  bool eh_phase_rate = true;  // count the rate of the energy phase in time sharing
  int parallelism = 1;

  /// Link-weight matrix with defaults filled in.
  RMatrix link_weights() const;

  /// Fills `alpha` with 1 on the diagonal and `cross` elsewhere.
  void set_uniform_cross(double cross);

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Defaults of the reference experiment: P = 50 mW, σ² = 1 µW, path loss
/// 1e-3, M = 4, α_ii = 1, α_ij = 0.6.
SystemConfig reference_config(int k, int k1);

}  // namespace swipt
