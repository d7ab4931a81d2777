#pragma once

// Channel realizations, effective two-user channel assembly and the rate and
// energy metrics. Transceiver indices are zero-based throughout the library.

#include <cstdint>
#include <span>
#include <vector>

#include "swipt/config.hpp"
#include "swipt/numerics.hpp"

namespace swipt {

/// K×K grid of M×M channels; `link(rx, tx)` is transmitter tx → receiver rx.
class ChannelSet {
 public:
  ChannelSet() = default;
  ChannelSet(int k, int m);

  int k() const { return k_; }
  int m() const { return m_; }
  const CMatrix& link(int rx, int tx) const { return links_[index(rx, tx)]; }
  CMatrix& link(int rx, int tx) { return links_[index(rx, tx)]; }

  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

 private:
  std::size_t index(int rx, int tx) const;

  int k_ = 0;
  int m_ = 0;
  std::vector<CMatrix> links_;
};

/// Per-energy-transmitter stacks and the shared information-side blocks.
struct EffectiveChannels {
  std::vector<int> eh;  // ascending
  std::vector<int> id;  // ascending
  std::vector<CMatrix> h11;         // per EH tx: (K1·M)×M stack of H[i][k], i ∈ eh
  std::vector<CMatrix> h21;         // per EH tx: ((K−K1)·M)×M stack of H[i][k], i ∈ id
  CMatrix h12;                      // (K1·M)×((K−K1)·M) grid of H[i][j], i ∈ eh, j ∈ id
  std::vector<CMatrix> h12_blocks;  // per ID tx: column block j of h12
  CMatrix h22;                      // blockdiag of H[i][i], i ∈ id
};

/// Noise, harvesting efficiency and power budget shared by the metrics.
struct LinkBudget {
  double p_max = 0.05;
  double noise_power = 1e-6;
  double zeta = 1.0;
  bool noise_in_energy = false;
};

LinkBudget link_budget(const SystemConfig& config);

/// Draws i.i.d. complex Gaussian links rescaled so ‖H_ij‖_F² = path_loss·α_ij·M.
/// Each link uses its own substream keyed by (seed, trial, i, j), so the result
/// does not depend on generation order.
ChannelSet generate_channels(const SystemConfig& config, std::uint64_t trial_index);

/// Default receiver-mode split: pairs 0..K1−1 harvest, the rest decode.
std::pair<std::vector<int>, std::vector<int>> default_partition(int k, int k1);

EffectiveChannels assemble_effective(const ChannelSet& channels,
                                     std::span<const int> eh_set,
                                     std::span<const int> id_set);

/// R_{-i} = σ²I + Σ_{j≠i} H_ij Q_j H_ijᴴ. `covariances` holds one M×M
/// matrix per transmitter.
CMatrix interference_covariance(const ChannelSet& channels,
                                std::span<const CMatrix> covariances, int receiver,
                                double noise_power);

/// log det(I + H_iiᴴ R_{-i}⁻¹ H_ii Q_i) in nats.
double achievable_rate(const ChannelSet& channels, std::span<const CMatrix> covariances,
                       int receiver, double noise_power);

/// ζ·Σ_j tr(H_ij Q_j H_ijᴴ), plus ζ·M·σ² when the budget asks for the
/// noise term.
double harvested_energy(const ChannelSet& channels, std::span<const CMatrix> covariances,
                        int receiver, const LinkBudget& budget);

/// Throws InvalidArgument unless `q` is Hermitian PSD (min eigenvalue ≥ −1e-10
/// relative to its trace).
void require_psd(const CMatrix& q, const char* what);

inline double nats_to_bits(double nats) { return nats / 0.69314718055994530942; }

}  // namespace swipt
