#pragma once

// Numeric checks of the analytic claims the optimizer relies on. Failures are
// reported in the returned records, never thrown.

#include <cstdint>
#include <string>
#include <vector>

#include "swipt/config.hpp"

namespace swipt {

struct AuditReport {
  std::string name;
  int instances = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct AuditOptions {
  int rank_draws = 50;
  int rank_candidates = 10000;
  int ordering_draws = 1000;
  int gradient_instances = 100;
  int waterfill_instances = 100;
  int monotone_trials = 100;
};

/// rank-2 covariances at matched energy vs the best rank-one beam
/// (M = 2, K = 2, relative rate advantage).
AuditReport audit_rank_one(const SystemConfig& config, int draws, int candidates);

/// f(X) = log det(I + S(I+X)⁻¹) against det(I+X) for X₂ = X₁ + rank one.
AuditReport audit_determinant_ordering(std::uint64_t seed, int draws);

/// Analytic power gradient vs central finite differences (relative ∞-norm).
AuditReport audit_gradient(const SystemConfig& config, int instances);

/// Single-link energy-constrained waterfilling vs a projected-gradient solve
/// of the same convex program (absolute objective gap, nats).
AuditReport audit_waterfilling(std::uint64_t seed, int instances);

/// Energy powers never increase across outer iterations.
AuditReport audit_power_monotone(const SystemConfig& config, int trials);

std::vector<AuditReport> run_audits(const SystemConfig& config, const AuditOptions& options = {});

}  // namespace swipt
