#pragma once

// Rank-one energy beams and the per-unit-power statistics the optimizer
// consumes.

#include <vector>

#include "swipt/channel.hpp"
#include "swipt/config.hpp"

namespace swipt {

/// One rank-one beam per energy transmitter: Q_k = P_k·v_k v_kᴴ.
struct BeamPlan {
  Scheme scheme = Scheme::SLER;
  std::vector<int> transmitters;    // EH transmitter indices, ascending
  std::vector<CVector> directions;  // unit norm
  std::vector<double> powers;       // [0, p_max]
  int tilt_exponent = 0;

  CMatrix covariance(std::size_t slot) const;
};

/// ω_j = ‖H̃11_j v_j‖² and Ω_ij = (H_ij v_j)(H_ij v_j)ᴴ.
struct BeamStatistics {
  std::vector<double> omega;                // per EH slot
  std::vector<std::vector<CMatrix>> shape;  // shape[id slot][eh slot]
};

/// Dominant right singular vector of H̃11.
CVector meb_direction(const CMatrix& h11);

/// Right singular vector of the smallest singular value of H̃21.
CVector mlb_direction(const CMatrix& h21);

struct SlerBeam {
  CVector direction;
  double ratio = 0.0;  // attained signal-to-leakage-and-harvested-energy ratio
};

/// Energy regularizer of the SLER denominator, before tilting:
/// max(Ē/(K1·P) − σ₁²(H̃11), 0).
double sler_regularizer(const CMatrix& h11, double ebar, double p_max, int k1);

/// Dominant generalized eigenvector of
/// (H̃11ᴴH̃11, H̃21ᴴH̃21 + decay^n·regularizer·I).
SlerBeam sler_beam(const CMatrix& h11, const CMatrix& h21, double ebar, double p_max, int k1,
                   double tilt_decay = 0.9, int tilt_exponent = 0);

CVector sler_direction(const CMatrix& h11, const CMatrix& h21, double ebar, double p_max, int k1,
                       double tilt_decay = 0.9, int tilt_exponent = 0);

/// Minimizer of vᴴ H̃21ᴴ U (σ²I + Σ)⁻¹ Uᴴ H̃21 v for C = UΣUᴴ. With the
/// normalized noise σ² = 1 this is the whitened minimum-leakage direction.
CVector whitened_mlb_direction(const CMatrix& h21, const CMatrix& c, double noise_power = 1.0);

BeamStatistics beam_statistics(const EffectiveChannels& effective, const ChannelSet& channels,
                               const std::vector<CVector>& directions);

/// Directions for every energy transmitter under `scheme`. SLER and its tilted
/// form depend on the energy target `ebar`.
std::vector<CVector> scheme_directions(const EffectiveChannels& effective, Scheme scheme,
                                       double ebar, double p_max, double tilt_decay = 0.9,
                                       int tilt_exponent = 0);

}  // namespace swipt
