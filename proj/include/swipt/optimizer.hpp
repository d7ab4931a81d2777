#pragma once

// Two-level optimization of one rate–energy boundary point.
//
// Outer level: steepest-descent power control of the energy transmitters
// with the step capped so the energy constraint is met exactly.
// Inner level: information covariances for fixed energy powers, through the
// dual of the energy-constrained rate maximization (weighted waterfilling,
// and iterative waterfilling when information links interfere).
//
// Energies inside the optimizer are "raw": Σ tr(H Q Hᴴ) with ζ = 1 and no
// noise term. `FrontierProblem::delivered` converts to harvested watts.

#include <optional>
#include <vector>

#include "swipt/beamforming.hpp"
#include "swipt/channel.hpp"
#include "swipt/config.hpp"

namespace swipt {

/// Eigen-decomposition of H̃12_jᴴH̃12_j for one information transmitter.
struct EnergyForm {
  RVector values;  // descending
  CMatrix vectors;
  double top() const { return values(0); }
};

/// One channel realization with a fixed receiver-mode split.
class FrontierProblem {
 public:
  FrontierProblem(ChannelSet channels, std::vector<int> eh, std::vector<int> id,
                  LinkBudget budget, SolverSettings solver = {}, Variant variant = Variant::P1,
                  double tilt_decay = 0.9);

  static FrontierProblem from_config(const SystemConfig& config, ChannelSet channels,
                                     std::vector<int> eh, std::vector<int> id);

  const ChannelSet& channels() const { return channels_; }
  const EffectiveChannels& effective() const { return effective_; }
  const LinkBudget& budget() const { return budget_; }
  const SolverSettings& solver() const { return solver_; }
  Variant variant() const { return variant_; }
  double tilt_decay() const { return tilt_decay_; }
  const std::vector<EnergyForm>& energy_forms() const { return forms_; }
  int m() const { return channels_.m(); }
  std::size_t n_eh() const { return effective_.eh.size(); }
  std::size_t n_id() const { return effective_.id.size(); }

  /// Harvested watts for a raw energy.
  double delivered(double raw) const;
  /// Raw energy needed to harvest `ebar` watts (never negative).
  double raw_target(double ebar) const;
  /// Largest raw energy the information transmitters alone can deliver.
  double info_energy_max() const;

  void set_variant(Variant v) { variant_ = v; }
  SolverSettings& solver() { return solver_; }

 private:
  ChannelSet channels_;
  EffectiveChannels effective_;
  LinkBudget budget_;
  SolverSettings solver_;
  Variant variant_;
  double tilt_decay_;
  std::vector<EnergyForm> forms_;
};

struct DualState {
  double lambda = 0.0;     // energy-constraint multiplier
  std::vector<double> mu;  // per information transmitter
};

/// Transmit covariances of every transmitter.
struct Strategy {
  BeamPlan beams;
  std::vector<int> info_transmitters;
  std::vector<CMatrix> info_covariances;

  /// One M×M covariance per transmitter index 0..K−1.
  std::vector<CMatrix> covariances(int k, int m) const;
};

struct REPoint {
  double ebar = 0.0;    // required energy, W
  double rate = 0.0;    // nats per channel use
  double energy = 0.0;  // delivered energy, W
  double info_energy = 0.0;  // raw energy contributed by information transmitters
  std::vector<double> powers;  // per energy transmitter, W
  int outer_iterations = 0;
  bool converged = false;
  bool power_monotone = true;
  bool surplus_branch = false;
  int tilt_exponent = 0;
  double kkt_residual = 0.0;
  DualState duals;
  Strategy strategy;
  std::vector<std::vector<double>> power_trace;  // P at every outer iteration
};

struct InnerResult {
  std::vector<CMatrix> info_covariances;
  DualState duals;
  double info_energy = 0.0;  // raw
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Closed-form maximizer of log det(I + H̄QH̄ᴴ) + λ·tr(BQ) − µ·tr(Q) with
/// µ = λ·s₁(B) + margin, i.e. Q = A^{-1/2} V̄ Λ̄ V̄ᴴ A^{-1/2} with
/// p̄_j = (1 − 1/σ_j²)⁺ from the SVD of H̄ A^{-1/2}.
CMatrix weighted_waterfill_closed_form(const CMatrix& hbar, const EnergyForm& form,
                                       double lambda, double margin);

struct UserSolution {
  CMatrix q;
  double mu = 0.0;
};

/// Single-link solution with the power constraint tight: searches the margin
/// µ − λ·s₁ so that tr(Q) = p_max. With λ = 0 this is classical waterfilling.
UserSolution weighted_waterfill(const CMatrix& hbar, const EnergyForm& form, double lambda,
                                double p_max);

/// Energy-only interference seen by information receiver slot `id_slot`:
/// σ²I + Σ_k P_k Ω_ik.
CMatrix energy_interference(const FrontierProblem& problem, const BeamStatistics& stats,
                            const std::vector<double>& powers, std::size_t id_slot);

/// Interference used by the variant: energy-only for UP, plus the other
/// information links for P1.
CMatrix variant_interference(const FrontierProblem& problem, const BeamStatistics& stats,
                             const std::vector<double>& powers,
                             const std::vector<CMatrix>& info_covariances, std::size_t id_slot,
                             Variant variant);

/// Sum rate J (nats) of the variant for fixed powers and covariances.
double objective(const FrontierProblem& problem, const BeamStatistics& stats,
                 const std::vector<double>& powers, const std::vector<CMatrix>& info_covariances,
                 Variant variant);

/// Raw energy Σ_j tr(H̃12_j Q_j H̃12_jᴴ).
double info_energy(const FrontierProblem& problem, const std::vector<CMatrix>& info_covariances);

/// ∂J/∂P_k = Σ_i tr[((H_ii Q_i H_iiᴴ + R_i)⁻¹ − R_i⁻¹) Ω_ik]; every component
/// is non-positive.
RVector power_gradient(const FrontierProblem& problem, const BeamStatistics& stats,
                       const std::vector<double>& powers,
                       const std::vector<CMatrix>& info_covariances, Variant variant);

/// Step length that brings ωᵀP down to the residual raw target exactly:
/// (target − E_info − ωᵀP) / (ωᵀ∇). Returns 0 when ωᵀ∇ = 0.
double max_step(const BeamStatistics& stats, const std::vector<double>& powers,
                double info_energy_raw, double raw_target, const RVector& gradient);

/// Information covariances for fixed energy powers meeting
/// info energy ≥ `raw_required`.
InnerResult inner_solve(const FrontierProblem& problem, const BeamStatistics& stats,
                        const std::vector<double>& powers, double raw_required,
                        const InnerResult* warm = nullptr);

/// P·(Σ ω_j + Σ_j σ₁²(H̃12_j)), raw units.
double e_max(const BeamStatistics& stats, const EffectiveChannels& effective, double p_max);

/// Delivered-energy ceiling of a scheme (watts). For SLER-type schemes the
/// beam depends on the target, so this is the largest Ē the scheme can meet
/// with its own Ē-dependent beams.
double scheme_e_max(const FrontierProblem& problem, Scheme scheme);

/// Full-power energy beams and information transmitters beamed on the
/// dominant right singular vector of H̃12_j.
Strategy max_energy_strategy(const FrontierProblem& problem, Scheme scheme, double ebar);

/// One point on the achievable boundary for the required energy `ebar`.
REPoint boundary_point(const FrontierProblem& problem, Scheme scheme, double ebar);

struct TimeSharingPoint {
  double tau = 0.0;
  double rate = 0.0;    // nats
  double energy = 0.0;  // W
  std::vector<double> powers;
};

/// Time sharing between silent energy transmitters with waterfilling and the
/// scheme's maximum-energy strategy.
std::vector<TimeSharingPoint> time_sharing_curve(const FrontierProblem& problem, Scheme scheme,
                                                 const std::vector<double>& taus,
                                                 bool count_energy_phase_rate = true);

}  // namespace swipt
