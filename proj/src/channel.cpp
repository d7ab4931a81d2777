#include "swipt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "swipt/errors.hpp"

namespace swipt {

// ---------------------------------------------------------------------------
// Configuration

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::MEB: return "MEB";
    case Scheme::MLB: return "MLB";
    case Scheme::SLER: return "SLER";
    case Scheme::SLER_TILT: return "SLER_TILT";
  }
  return "?";
}

std::string_view to_string(Variant v) { return v == Variant::UP ? "UP" : "P1"; }

std::string_view to_string(DualMethod d) {
  return d == DualMethod::Bisection ? "bisection" : "subgradient";
}

Scheme parse_scheme(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "MEB") return Scheme::MEB;
  if (t == "MLB") return Scheme::MLB;
  if (t == "SLER") return Scheme::SLER;
  if (t == "SLER_TILT" || t == "SLER-TILT") return Scheme::SLER_TILT;
  throw ConfigError("scheme", "unknown scheme '" + std::string(text) + "'");
}

Variant parse_variant(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "UP") return Variant::UP;
  if (t == "P1") return Variant::P1;
  throw ConfigError("variant", "unknown variant '" + std::string(text) + "'");
}

DualMethod parse_dual_method(std::string_view text) {
  if (text == "bisection") return DualMethod::Bisection;
  if (text == "subgradient") return DualMethod::Subgradient;
  throw ConfigError("dual_method", "unknown dual method '" + std::string(text) + "'");
}

RMatrix SystemConfig::link_weights() const {
  if (alpha.size() != 0) return alpha;
  RMatrix w = RMatrix::Constant(k, k, 0.6);
  w.diagonal().setOnes();
  return w;
}

void SystemConfig::set_uniform_cross(double cross) {
  alpha = RMatrix::Constant(k, k, cross);
  alpha.diagonal().setOnes();
}

void SystemConfig::validate() const {
  if (k < 1) throw ConfigError("k", "must be at least 1");
  if (k1 < 0 || k1 >= k) throw ConfigError("k1", "must satisfy 0 <= k1 < k");
  if (m < 1) throw ConfigError("m", "must be at least 1");
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw ConfigError("p_max", "must be positive");
  if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
    throw ConfigError("noise_power", "must be positive");
  }
  if (!(path_loss > 0.0) || !std::isfinite(path_loss)) {
    throw ConfigError("path_loss", "must be positive");
  }
  if (alpha.size() != 0) {
    if (alpha.rows() != k || alpha.cols() != k) throw ConfigError("alpha", "must be k x k");
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
      const double a = alpha.data()[i];
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha", "entries must lie in [0, 1]");
    }
  }
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw ConfigError("zeta", "must be positive");
  if (schemes.empty()) throw ConfigError("scheme", "at least one scheme is required");
  if (!(tilt_decay > 0.0 && tilt_decay < 1.0)) {
    throw ConfigError("tilt_decay", "must lie in (0, 1)");
  }
  if (ebar_grid_size < 1) throw ConfigError("ebar_grid_size", "must be at least 1");
  if (trials < 1) throw ConfigError("trials", "must be at least 1");
  if (parallelism < 1) throw ConfigError("parallelism", "must be at least 1");
  if (solver.outer_max_iterations < 1) {
    throw ConfigError("outer_max_iterations", "must be at least 1");
  }
  if (!(solver.step_fraction > 0.0 && solver.step_fraction <= 1.0)) {
    throw ConfigError("step_fraction", "must lie in (0, 1]");
  }
  if (solver.dual_max_iterations < 1) {
    throw ConfigError("dual_max_iterations", "must be at least 1");
  }
  if (solver.waterfill_max_sweeps < 1) {
    throw ConfigError("waterfill_max_sweeps", "must be at least 1");
  }
  if (solver.tilt_max_exponent < 0) {
    throw ConfigError("tilt_max_exponent", "must be non-negative");
  }
  if (select_eh && k1 < 1) throw ConfigError("select", "selection needs k1 >= 1");
}

SystemConfig reference_config(int k, int k1) {
  SystemConfig c;
  c.k = k;
  c.k1 = k1;
  c.set_uniform_cross(0.6);
  return c;
}

LinkBudget link_budget(const SystemConfig& config) {
  return LinkBudget{config.p_max, config.noise_power, config.zeta, config.noise_in_energy};
}

// ---------------------------------------------------------------------------
// Channels

ChannelSet::ChannelSet(int k, int m)
    : k_(k), m_(m), links_(static_cast<std::size_t>(k) * k, CMatrix::Zero(m, m)) {}

std::size_t ChannelSet::index(int rx, int tx) const {
  if (rx < 0 || rx >= k_ || tx < 0 || tx >= k_) {
    throw InvalidArgument("ChannelSet: link index out of range");
  }
  return static_cast<std::size_t>(rx) * k_ + tx;
}

namespace {

// Substream keyed by the full tuple; std::seed_seq and mt19937_64 are both
// specified bit-exactly by the standard.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t trial, int rx, int tx,
                          std::uint32_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(rx),   static_cast<std::uint32_t>(tx),
                    attempt, 0x53574950u};
  return std::mt19937_64(seq);
}

double unit_open(std::mt19937_64& gen) {
  // (0, 1): 53 random bits, offset by half an ulp so log() never sees 0.
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Standard complex Gaussian entry (unit variance) by Box–Muller.
Complex complex_gaussian(std::mt19937_64& gen) {
  const double u1 = unit_open(gen);
  const double u2 = unit_open(gen);
  const double r = std::sqrt(-std::log(u1));  // variance 1/2 per component
  const double phi = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace

ChannelSet generate_channels(const SystemConfig& config, std::uint64_t trial_index) {
  config.validate();
  const RMatrix weights = config.link_weights();
  ChannelSet out(config.k, config.m);
  out.seed = config.seed;
  out.trial = trial_index;
  for (int rx = 0; rx < config.k; ++rx) {
    for (int tx = 0; tx < config.k; ++tx) {
      const double a = weights(rx, tx);
      if (a == 0.0) continue;
      for (std::uint32_t attempt = 0;; ++attempt) {
        auto gen = substream(config.seed, trial_index, rx, tx, attempt);
        CMatrix raw(config.m, config.m);
        for (Eigen::Index c = 0; c < raw.cols(); ++c) {
          for (Eigen::Index r = 0; r < raw.rows(); ++r) raw(r, c) = complex_gaussian(gen);
        }
        const double fro = raw.norm();
        if (fro > 0.0) {
          out.link(rx, tx) = (std::sqrt(config.path_loss * a * config.m) / fro) * raw;
          break;
        }
      }
    }
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> default_partition(int k, int k1) {
  std::vector<int> eh, id;
  for (int i = 0; i < k; ++i) (i < k1 ? eh : id).push_back(i);
  return {eh, id};
}

EffectiveChannels assemble_effective(const ChannelSet& channels, std::span<const int> eh_set,
                                     std::span<const int> id_set) {
  const int k = channels.k();
  const int m = channels.m();
  std::vector<int> seen(k, 0);
  for (int i : eh_set) {
    if (i < 0 || i >= k) throw InvalidPartition("EH index out of range");
    ++seen[i];
  }
  for (int i : id_set) {
    if (i < 0 || i >= k) throw InvalidPartition("ID index out of range");
    ++seen[i];
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidPartition("EH and ID sets must partition the transceiver pairs");
  }

  EffectiveChannels eff;
  eff.eh.assign(eh_set.begin(), eh_set.end());
  eff.id.assign(id_set.begin(), id_set.end());
  std::sort(eff.eh.begin(), eff.eh.end());
  std::sort(eff.id.begin(), eff.id.end());
  const auto n_eh = static_cast<Eigen::Index>(eff.eh.size());
  const auto n_id = static_cast<Eigen::Index>(eff.id.size());

  for (int tx : eff.eh) {
    CMatrix h11(n_eh * m, m);
    CMatrix h21(n_id * m, m);
    for (Eigen::Index r = 0; r < n_eh; ++r) h11.middleRows(r * m, m) = channels.link(eff.eh[r], tx);
    for (Eigen::Index r = 0; r < n_id; ++r) h21.middleRows(r * m, m) = channels.link(eff.id[r], tx);
    eff.h11.push_back(std::move(h11));
    eff.h21.push_back(std::move(h21));
  }
  eff.h12 = CMatrix::Zero(n_eh * m, n_id * m);
  for (Eigen::Index r = 0; r < n_eh; ++r) {
    for (Eigen::Index c = 0; c < n_id; ++c) {
      eff.h12.block(r * m, c * m, m, m) = channels.link(eff.eh[r], eff.id[c]);
    }
  }
  for (Eigen::Index c = 0; c < n_id; ++c) eff.h12_blocks.push_back(eff.h12.middleCols(c * m, m));
  eff.h22 = CMatrix::Zero(n_id * m, n_id * m);
  for (Eigen::Index d = 0; d < n_id; ++d) {
    eff.h22.block(d * m, d * m, m, m) = channels.link(eff.id[d], eff.id[d]);
  }
  return eff;
}

// ---------------------------------------------------------------------------
// Metrics

void require_psd(const CMatrix& q, const char* what) {
  require_hermitian(q, what);
  const double scale = std::max(std::abs(q.trace().real()), 1e-300);
  if (min_eigenvalue(q) < -1e-10 * scale) {
    throw InvalidArgument(std::string(what) + ": covariance is not positive semidefinite");
  }
}

namespace {

void check_covariances(const ChannelSet& channels, std::span<const CMatrix> covariances) {
  if (static_cast<int>(covariances.size()) != channels.k()) {
    throw InvalidArgument("expected one covariance per transmitter");
  }
  for (const auto& q : covariances) {
    if (q.rows() != channels.m() || q.cols() != channels.m()) {
      throw InvalidArgument("covariance has wrong dimension");
    }
    require_psd(q, "covariance");
  }
}

}  // namespace

CMatrix interference_covariance(const ChannelSet& channels, std::span<const CMatrix> covariances,
                                int receiver, double noise_power) {
  check_covariances(channels, covariances);
  CMatrix r = noise_power * CMatrix::Identity(channels.m(), channels.m());
  for (int j = 0; j < channels.k(); ++j) {
    if (j == receiver) continue;
    const CMatrix& h = channels.link(receiver, j);
    r.noalias() += h * covariances[j] * h.adjoint();
  }
  return hermitian_part(r);
}

double achievable_rate(const ChannelSet& channels, std::span<const CMatrix> covariances,
                       int receiver, double noise_power) {
  check_covariances(channels, covariances);
  const CMatrix r = interference_covariance(channels, covariances, receiver, noise_power);
  const CMatrix& h = channels.link(receiver, receiver);
  const CMatrix total = r + h * covariances[receiver] * h.adjoint();
  // log det(I + Hᴴ R⁻¹ H Q) = log det(R + H Q Hᴴ) − log det(R)
  return std::max(0.0, log_det_hpd(total) - log_det_hpd(r));
}

double harvested_energy(const ChannelSet& channels, std::span<const CMatrix> covariances,
                        int receiver, const LinkBudget& budget) {
  check_covariances(channels, covariances);
  double sum = 0.0;
  for (int j = 0; j < channels.k(); ++j) {
    const CMatrix& h = channels.link(receiver, j);
    sum += (h * covariances[j] * h.adjoint()).trace().real();
  }
  if (budget.noise_in_energy) sum += channels.m() * budget.noise_power;
  return budget.zeta * sum;
}

}  // namespace swipt
