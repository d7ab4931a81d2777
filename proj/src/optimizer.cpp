#include "swipt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr int kBracketSteps = 400;
constexpr double kBracketFactor = 4.0;

// Root of a monotone scalar function in log-space between two bracketing
// points. `f(lo)` and `f(hi)` must have opposite signs (or one of them be 0).
template <class F>
std::pair<double, double> log_root(F&& f, double lo, double hi, double flo, double fhi) {
  if (flo == 0.0) return {lo, lo};
  if (fhi == 0.0) return {hi, hi};
  auto g = [&](double u) { return f(std::exp(u)); };
  boost::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, std::log(lo), std::log(hi), flo, fhi, boost::math::tools::eps_tolerance<double>(50),
      iterations);
  return {std::exp(bracket.first), std::exp(bracket.second)};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

CMatrix scaled_to_trace(CMatrix q, double p_max) {
  const double tr = q.trace().real();
  if (tr > 0.0) q *= p_max / tr;
  return hermitian_part(q);
}

UserSolution classic_waterfill(const CMatrix& hbar, double p_max) {
  Eigen::JacobiSVD<CMatrix> svd(hbar, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const Eigen::Index m = hbar.cols();
  RVector gain = RVector::Zero(m);
  for (Eigen::Index j = 0; j < s.size(); ++j) gain(j) = s(j) * s(j);
  UserSolution out;
  out.q = CMatrix::Zero(m, m);
  if (!(gain(0) > 0.0)) return out;
  // Largest active set whose water level clears every included floor.
  double level = 0.0;
  Eigen::Index active = 0;
  for (Eigen::Index n = m; n >= 1; --n) {
    if (!(gain(n - 1) > 0.0)) continue;
    double inv_sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) inv_sum += 1.0 / gain(j);
    const double candidate = (p_max + inv_sum) / static_cast<double>(n);
    if (candidate > 1.0 / gain(n - 1)) {
      level = candidate;
      active = n;
      break;
    }
  }
  RVector q = RVector::Zero(m);
  for (Eigen::Index j = 0; j < active; ++j) q(j) = std::max(level - 1.0 / gain(j), 0.0);
  const CMatrix& v = svd.matrixV();
  out.q = scaled_to_trace(v * q.asDiagonal() * v.adjoint(), p_max);
  out.mu = 1.0 / level;
  return out;
}

// Context shared by the inner solvers for one call of inner_solve.
struct InnerContext {
  const FrontierProblem& problem;
  const BeamStatistics& stats;
  const std::vector<double>& powers;
  std::vector<CMatrix> energy_r;  // σ²I + Σ P_k Ω_ik per ID slot
};

CMatrix whitened_channel(const InnerContext& ctx, const std::vector<CMatrix>& q, std::size_t slot,
                         Variant variant) {
  const auto& eff = ctx.problem.effective();
  CMatrix r = ctx.energy_r[slot];
  if (variant == Variant::P1) {
    const int rx = eff.id[slot];
    for (std::size_t j = 0; j < eff.id.size(); ++j) {
      if (j == slot) continue;
      const CMatrix& h = ctx.problem.channels().link(rx, eff.id[j]);
      r.noalias() += h * q[j] * h.adjoint();
    }
  }
  return inv_sqrt_psd(hermitian_part(r)) * ctx.problem.channels().link(eff.id[slot], eff.id[slot]);
}

double form_energy(const EnergyForm& form, const CMatrix& q) {
  const CMatrix b = form.vectors * form.values.asDiagonal() * form.vectors.adjoint();
  return (b * q).trace().real();
}

// Beam every information transmitter at full power on its strongest
// cross-link direction; the λ → ∞ limit of the dual problem.
std::vector<CMatrix> energy_beams(const FrontierProblem& problem) {
  std::vector<CMatrix> q;
  const double p = problem.budget().p_max;
  for (const auto& form : problem.energy_forms()) {
    const CVector v = form.vectors.col(0);
    q.push_back(p * (v * v.adjoint()));
  }
  return q;
}

// Gauss–Seidel sweeps over information links at a fixed λ until the
// covariances stop moving. UP needs exactly one sweep.
int waterfill_sweeps(const InnerContext& ctx, double lambda, std::vector<CMatrix>& q,
                     std::vector<double>& mu, Variant variant, bool& converged) {
  const auto& problem = ctx.problem;
  const double p = problem.budget().p_max;
  const int cap = variant == Variant::UP || problem.n_id() == 1
                      ? 1
                      : problem.solver().waterfill_max_sweeps;
  converged = true;
  for (int sweep = 1; sweep <= cap; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < problem.n_id(); ++i) {
      const CMatrix hbar = whitened_channel(ctx, q, i, variant);
      UserSolution sol = weighted_waterfill(hbar, problem.energy_forms()[i], lambda, p);
      change = std::max(change, (sol.q - q[i]).norm() / p);
      q[i] = std::move(sol.q);
      mu[i] = sol.mu;
    }
    if (cap == 1) return 1;
    if (change <= problem.solver().waterfill_tolerance) return sweep;
  }
  converged = false;
  return cap;
}

double kkt_residual(const FrontierProblem& problem, const std::vector<CMatrix>& q, double lambda,
                    double energy, double required) {
  const double p = problem.budget().p_max;
  double res = 0.0;
  for (const auto& qi : q) res = std::max(res, std::abs(p - qi.trace().real()) / p);
  if (lambda > 0.0 && std::isfinite(lambda) && required > 0.0) {
    res = std::max(res, std::abs(energy - required) / required);
  }
  return res;
}

InnerResult solve_by_bisection(const InnerContext& ctx, double required, const InnerResult* warm) {
  const auto& problem = ctx.problem;
  const Variant variant = problem.variant();
  const std::size_t n = problem.n_id();
  InnerResult out;
  // Every λ evaluation starts the sweeps from silence.
  const std::vector<CMatrix> silent(n, CMatrix::Zero(problem.m(), problem.m()));
  std::vector<CMatrix> q = silent;
  std::vector<double> mu(n, 0.0);
  bool all_converged = true;
  int evaluations = 0;

  auto energy_at = [&](double lambda) {
    bool conv = true;
    q = silent;
    evaluations += waterfill_sweeps(ctx, lambda, q, mu, variant, conv);
    all_converged = conv;
    return info_energy(problem, q);
  };

  auto finish = [&](double lambda, double energy) {
    out.info_covariances = q;
    out.duals.lambda = lambda;
    out.duals.mu = mu;
    out.info_energy = energy;
    out.iterations = evaluations;
    out.converged = all_converged;
    out.kkt_residual = kkt_residual(problem, q, lambda, energy, required);
    return out;
  };

  const double e0 = energy_at(0.0);
  if (e0 >= required) return finish(0.0, e0);

  const double e_cap = problem.info_energy_max();
  if (required >= e_cap * (1.0 - 1e-12)) {
    q = energy_beams(problem);
    for (std::size_t i = 0; i < n; ++i) mu[i] = std::numeric_limits<double>::infinity();
    const double e = info_energy(problem, q);
    out = finish(std::numeric_limits<double>::infinity(), e);
    out.converged = required <= e_cap * (1.0 + 1e-12);
    out.kkt_residual = 0.0;
    return out;
  }

  // Bracket λ in log-space starting from the warm multiplier or from the ratio
  // of the power price to the strongest energy gain.
  double mu_scale = 0.0;
  for (double v : mu) mu_scale = std::max(mu_scale, v);
  double s_top = 0.0;
  for (const auto& f : problem.energy_forms()) s_top = std::max(s_top, f.top());
  double hi = warm && warm->duals.lambda > 0.0 && std::isfinite(warm->duals.lambda)
                  ? warm->duals.lambda
                  : (mu_scale > 0.0 ? mu_scale : 1.0 / problem.budget().p_max) /
                        std::max(s_top, 1e-300);
  double fhi = energy_at(hi) - required;
  double lo = hi, flo = fhi;
  for (int step = 0; fhi < 0.0 && step < kBracketSteps; ++step) {
    lo = hi;
    flo = fhi;
    hi *= kBracketFactor;
    fhi = energy_at(hi) - required;
  }
  if (fhi < 0.0) {
    q = energy_beams(problem);
    const double e = info_energy(problem, q);
    out = finish(std::numeric_limits<double>::infinity(), e);
    out.converged = false;
    return out;
  }
  if (lo == hi) {
    for (int step = 0; flo >= 0.0 && step < kBracketSteps; ++step) {
      hi = lo;
      fhi = flo;
      lo /= kBracketFactor;
      flo = energy_at(lo) - required;
    }
    if (flo >= 0.0) return finish(lo, flo + required);
  }
  const auto root = log_root([&](double l) { return energy_at(l) - required; }, lo, hi, flo, fhi);
  double lambda = root.second;
  double energy = energy_at(lambda);
  // Iterative waterfilling is not guaranteed monotone in λ; walk up until the
  // equilibrium meets the requirement.
  for (int step = 0; energy < required && step < 200; ++step) {
    lambda *= 1.0 + 1e-6 * (1 << std::min(step, 20));
    energy = energy_at(lambda);
  }
  if (energy < required) {
    q = energy_beams(problem);
    energy = info_energy(problem, q);
    lambda = std::numeric_limits<double>::infinity();
  }
  return finish(lambda, energy);
}

InnerResult solve_by_subgradient(const InnerContext& ctx, double required,
                                 const InnerResult* warm) {
  const auto& problem = ctx.problem;
  const auto& settings = problem.solver();
  const Variant variant = problem.variant();
  const std::size_t n = problem.n_id();
  const std::vector<CMatrix> silent(n, CMatrix::Zero(problem.m(), problem.m()));

  // Power prices µ are solved exactly at every λ (trace budget met with
  // equality); only the energy price follows the subgradient c/√t.
  std::vector<CMatrix> q = silent;
  std::vector<double> mu(n, 0.0);
  bool conv = true;
  int evaluations = waterfill_sweeps(ctx, 0.0, q, mu, variant, conv);
  const double e0 = info_energy(problem, q);
  InnerResult out;
  if (e0 >= required) {
    out.info_covariances = q;
    out.duals = DualState{0.0, mu};
    out.info_energy = e0;
    out.kkt_residual = kkt_residual(problem, q, 0.0, e0, required);
    out.converged = conv;
    out.iterations = evaluations;
    return out;
  }
  if (required >= problem.info_energy_max() * (1.0 - 1e-12)) {
    out.info_covariances = energy_beams(problem);
    out.info_energy = info_energy(problem, out.info_covariances);
    out.duals = DualState{std::numeric_limits<double>::infinity(),
                          std::vector<double>(n, std::numeric_limits<double>::infinity())};
    out.converged = required <= problem.info_energy_max() * (1.0 + 1e-12);
    out.iterations = evaluations;
    return out;
  }

  double s_top = 0.0;
  for (const auto& f : problem.energy_forms()) s_top = std::max(s_top, f.top());
  const double mu_ref = std::max(*std::max_element(mu.begin(), mu.end()), 1e-300);
  const double lambda_scale = mu_ref / std::max(s_top, 1e-300);
  double lambda = warm && warm->duals.lambda > 0.0 && std::isfinite(warm->duals.lambda)
                      ? warm->duals.lambda
                      : lambda_scale;

  bool have_best = false;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int t = 1; t <= settings.dual_max_iterations; ++t) {
    q = silent;
    evaluations += waterfill_sweeps(ctx, lambda, q, mu, variant, conv);
    const double energy = info_energy(problem, q);
    if (energy >= required * (1.0 - settings.feasibility_tolerance)) {
      const double value = objective(problem, ctx.stats, ctx.powers, q, variant);
      if (value > best_value) {
        best_value = value;
        have_best = true;
        out.info_covariances = q;
        out.duals = DualState{lambda, mu};
        out.info_energy = energy;
        out.converged = conv;
      }
    }
    const double gap = (energy - required) / required;
    if (std::abs(gap) <= settings.kkt_tolerance && have_best) break;
    const double step = settings.subgradient_step / std::sqrt(static_cast<double>(t));
    lambda = std::max(0.0, lambda - step * lambda_scale * gap);
  }
  out.iterations = evaluations;
  if (!have_best) {
    out.info_covariances = energy_beams(problem);
    out.info_energy = info_energy(problem, out.info_covariances);
    out.duals = DualState{std::numeric_limits<double>::infinity(), mu};
    out.converged = false;
  }
  out.kkt_residual =
      kkt_residual(problem, out.info_covariances, out.duals.lambda, out.info_energy, required);
  if (out.kkt_residual > settings.kkt_tolerance) out.converged = false;
  return out;
}

std::vector<double> full_power(const FrontierProblem& problem) {
  return std::vector<double>(problem.n_eh(), problem.budget().p_max);
}

BeamStatistics statistics_for(const FrontierProblem& problem, Scheme scheme, double ebar,
                              int tilt_exponent) {
  const auto dirs = scheme_directions(problem.effective(), scheme, problem.raw_target(ebar),
                                      problem.budget().p_max,
                                      problem.tilt_decay(), tilt_exponent);
  return beam_statistics(problem.effective(), problem.channels(), dirs);
}

double ceiling_gap(const FrontierProblem& problem, Scheme scheme, double ebar) {
  return problem.delivered(e_max(statistics_for(problem, scheme, ebar, 0), problem.effective(),
                                 problem.budget().p_max)) -
         ebar;
}

// Target at which the SLER beam is designed: Ē itself, or the nearest larger
// target whose full-power beam delivers it.
double beam_target(const FrontierProblem& problem, Scheme scheme, double ebar, double ceiling) {
  if (scheme == Scheme::MEB || scheme == Scheme::MLB || problem.n_id() == 0) return ebar;
  if (ceiling_gap(problem, scheme, ebar) >= 0.0 || ebar >= ceiling) return ebar;
  double lo = ebar, hi = ceiling;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ceiling_gap(problem, scheme, mid) >= 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

// ---------------------------------------------------------------------------

FrontierProblem::FrontierProblem(ChannelSet channels, std::vector<int> eh, std::vector<int> id,
                                 LinkBudget budget, SolverSettings solver, Variant variant,
                                 double tilt_decay)
    : channels_(std::move(channels)),
      effective_(assemble_effective(channels_, eh, id)),
      budget_(budget),
      solver_(solver),
      variant_(variant),
      tilt_decay_(tilt_decay) {
  for (const auto& block : effective_.h12_blocks) {
    const HermitianEig eig = hermitian_eig(hermitian_part(block.adjoint() * block));
    EnergyForm form{eig.values.cwiseMax(0.0), eig.vectors};
    forms_.push_back(std::move(form));
  }
}

FrontierProblem FrontierProblem::from_config(const SystemConfig& config, ChannelSet channels,
                                             std::vector<int> eh, std::vector<int> id) {
  return FrontierProblem(std::move(channels), std::move(eh), std::move(id), link_budget(config),
                         config.solver, config.variant, config.tilt_decay);
}

double FrontierProblem::delivered(double raw) const {
  double e = budget_.zeta * raw;
  if (budget_.noise_in_energy) {
    e += budget_.zeta * static_cast<double>(n_eh()) * m() * budget_.noise_power;
  }
  return e;
}

double FrontierProblem::raw_target(double ebar) const {
  double noise = 0.0;
  if (budget_.noise_in_energy) {
    noise = budget_.zeta * static_cast<double>(n_eh()) * m() * budget_.noise_power;
  }
  return std::max((ebar - noise) / budget_.zeta, 0.0);
}

double FrontierProblem::info_energy_max() const {
  double sum = 0.0;
  for (const auto& f : forms_) sum += budget_.p_max * f.top();
  return sum;
}

std::vector<CMatrix> Strategy::covariances(int k, int m) const {
  std::vector<CMatrix> out(k, CMatrix::Zero(m, m));
  for (std::size_t s = 0; s < beams.transmitters.size(); ++s) {
    out.at(beams.transmitters[s]) = beams.covariance(s);
  }
  for (std::size_t s = 0; s < info_transmitters.size(); ++s) {
    out.at(info_transmitters[s]) = info_covariances.at(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

CMatrix weighted_waterfill_closed_form(const CMatrix& hbar, const EnergyForm& form, double lambda,
                                       double margin) {
  if (!(margin > 0.0)) throw IllConditioned("weighted waterfilling: A is not positive definite");
  const Eigen::Index m = hbar.cols();
  RVector scale(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double a = lambda * std::max(form.values(0) - form.values(k), 0.0) + margin;
    scale(k) = 1.0 / std::sqrt(a);
  }
  const CMatrix a_inv_half = form.vectors * scale.asDiagonal() * form.vectors.adjoint();
  const CMatrix g = hbar * a_inv_half;
  Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  RVector p = RVector::Zero(m);
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) > 0.0) p(j) = std::max(1.0 - 1.0 / (s(j) * s(j)), 0.0);
  }
  const CMatrix& v = svd.matrixV();
  return hermitian_part(a_inv_half * v * p.asDiagonal() * v.adjoint() * a_inv_half);
}

UserSolution weighted_waterfill(const CMatrix& hbar, const EnergyForm& form, double lambda,
                                double p_max) {
  if (lambda < 0.0) throw InvalidArgument("weighted_waterfill: negative multiplier");
  UserSolution base = classic_waterfill(hbar, p_max);
  if (lambda == 0.0) return base;

  const double s1 = form.values(0);
  auto trace_at = [&](double margin) {
    return weighted_waterfill_closed_form(hbar, form, lambda, margin).trace().real();
  };
  double hi = base.mu > 0.0 ? base.mu : 1.0 / p_max;
  double fhi = trace_at(hi) - p_max;
  double lo = hi, flo = fhi;
  if (fhi > 0.0) {
    for (int step = 0; fhi > 0.0 && step < kBracketSteps; ++step) {
      lo = hi;
      flo = fhi;
      hi *= kBracketFactor;
      fhi = trace_at(hi) - p_max;
    }
  } else {
    for (int step = 0; flo < 0.0 && step < kBracketSteps && lo > 1e-300; ++step) {
      hi = lo;
      fhi = flo;
      lo /= kBracketFactor;
      flo = trace_at(lo) - p_max;
    }
    if (flo < 0.0) {
      // Power left over even as A turns singular: the strongest energy
      // direction is free in the Lagrangian, so park the remainder there.
      CMatrix q = weighted_waterfill_closed_form(hbar, form, lambda, lo);
      const CVector w = form.vectors.col(0);
      q += (p_max - q.trace().real()) * (w * w.adjoint());
      return UserSolution{hermitian_part(q), lambda * s1 + lo};
    }
  }
  // trace(margin) decreases in margin; search on trace − p.
  const auto root = log_root([&](double t) { return trace_at(t) - p_max; }, lo, hi, flo, fhi);
  const double margin = root.second;
  return UserSolution{scaled_to_trace(weighted_waterfill_closed_form(hbar, form, lambda, margin),
                                      p_max),
                      lambda * s1 + margin};
}

// ---------------------------------------------------------------------------

CMatrix energy_interference(const FrontierProblem& problem, const BeamStatistics& stats,
                            const std::vector<double>& powers, std::size_t id_slot) {
  const int m = problem.m();
  CMatrix r = problem.budget().noise_power * CMatrix::Identity(m, m);
  for (std::size_t k = 0; k < powers.size(); ++k) r += powers[k] * stats.shape[id_slot][k];
  return hermitian_part(r);
}

CMatrix variant_interference(const FrontierProblem& problem, const BeamStatistics& stats,
                             const std::vector<double>& powers,
                             const std::vector<CMatrix>& info_covariances, std::size_t id_slot,
                             Variant variant) {
  CMatrix r = energy_interference(problem, stats, powers, id_slot);
  if (variant == Variant::P1) {
    const auto& eff = problem.effective();
    const int rx = eff.id[id_slot];
    for (std::size_t j = 0; j < eff.id.size(); ++j) {
      if (j == id_slot) continue;
      const CMatrix& h = problem.channels().link(rx, eff.id[j]);
      r.noalias() += h * info_covariances[j] * h.adjoint();
    }
  }
  return hermitian_part(r);
}

double objective(const FrontierProblem& problem, const BeamStatistics& stats,
                 const std::vector<double>& powers, const std::vector<CMatrix>& info_covariances,
                 Variant variant) {
  const auto& eff = problem.effective();
  double sum = 0.0;
  for (std::size_t i = 0; i < eff.id.size(); ++i) {
    const CMatrix r = variant_interference(problem, stats, powers, info_covariances, i, variant);
    const CMatrix& h = problem.channels().link(eff.id[i], eff.id[i]);
    const CMatrix total = r + h * info_covariances[i] * h.adjoint();
    sum += log_det_hpd(total) - log_det_hpd(r);
  }
  return sum;
}

double info_energy(const FrontierProblem& problem, const std::vector<CMatrix>& info_covariances) {
  double sum = 0.0;
  for (std::size_t j = 0; j < info_covariances.size(); ++j) {
    sum += form_energy(problem.energy_forms()[j], info_covariances[j]);
  }
  return sum;
}

RVector power_gradient(const FrontierProblem& problem, const BeamStatistics& stats,
                       const std::vector<double>& powers,
                       const std::vector<CMatrix>& info_covariances, Variant variant) {
  const auto& eff = problem.effective();
  RVector grad = RVector::Zero(static_cast<Eigen::Index>(powers.size()));
  for (std::size_t i = 0; i < eff.id.size(); ++i) {
    const CMatrix r = variant_interference(problem, stats, powers, info_covariances, i, variant);
    const CMatrix& h = problem.channels().link(eff.id[i], eff.id[i]);
    const CMatrix total = hermitian_part(r + h * info_covariances[i] * h.adjoint());
    const CMatrix diff = total.llt().solve(CMatrix::Identity(r.rows(), r.cols())) -
                         r.llt().solve(CMatrix::Identity(r.rows(), r.cols()));
    for (std::size_t k = 0; k < powers.size(); ++k) {
      grad(static_cast<Eigen::Index>(k)) += (diff * stats.shape[i][k]).trace().real();
    }
  }
  // Each term is tr(N Ω) with N negative semidefinite and Ω PSD.
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    double scale = 0.0;
    for (std::size_t i = 0; i < eff.id.size(); ++i) {
      scale += stats.shape[i][static_cast<std::size_t>(k)].trace().real() /
               problem.budget().noise_power;
    }
    if (grad(k) > 1e-9 * std::max(scale, 1e-300)) {
      throw std::logic_error("power_gradient: positive component");
    }
    grad(k) = std::min(grad(k), 0.0);
  }
  return grad;
}

double max_step(const BeamStatistics& stats, const std::vector<double>& powers,
                double info_energy_raw, double raw_target, const RVector& gradient) {
  double slope = 0.0;
  for (std::size_t k = 0; k < powers.size(); ++k) {
    slope += stats.omega[k] * gradient(static_cast<Eigen::Index>(k));
  }
  if (slope == 0.0) return 0.0;
  const double numerator = raw_target - info_energy_raw - dot(stats.omega, powers);
  return std::max(numerator / slope, 0.0);
}

InnerResult inner_solve(const FrontierProblem& problem, const BeamStatistics& stats,
                        const std::vector<double>& powers, double raw_required,
                        const InnerResult* warm) {
  if (powers.size() != problem.n_eh()) throw InvalidArgument("inner_solve: power vector size");
  InnerContext ctx{problem, stats, powers, {}};
  for (std::size_t i = 0; i < problem.n_id(); ++i) {
    ctx.energy_r.push_back(energy_interference(problem, stats, powers, i));
  }
  if (problem.n_id() == 0) {
    InnerResult empty;
    empty.converged = raw_required <= 0.0;
    return empty;
  }
  const double required = std::max(raw_required, 0.0);
  return problem.solver().dual_method == DualMethod::Bisection
             ? solve_by_bisection(ctx, required, warm)
             : solve_by_subgradient(ctx, required, warm);
}

double e_max(const BeamStatistics& stats, const EffectiveChannels& effective, double p_max) {
  double sum = std::accumulate(stats.omega.begin(), stats.omega.end(), 0.0);
  for (const auto& block : effective.h12_blocks) {
    const double s1 = spectral_norm(block);
    sum += s1 * s1;
  }
  return p_max * sum;
}

double scheme_e_max(const FrontierProblem& problem, Scheme scheme) {
  const double p = problem.budget().p_max;
  const auto& eff = problem.effective();
  if (scheme == Scheme::MEB || scheme == Scheme::MLB || problem.n_id() == 0) {
    return problem.delivered(e_max(statistics_for(problem, scheme, 0.0, 0), eff, p));
  }
  // Largest Ē with Ē ≤ e_max(beams(Ē)): bisection on [0, e_max(MEB)].
  auto gap = [&](double ebar) { return ceiling_gap(problem, scheme, ebar); };
  double lo = 0.0;
  double hi = problem.delivered(e_max(statistics_for(problem, Scheme::MEB, 0.0, 0), eff, p));
  if (gap(hi) >= 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

Strategy max_energy_strategy(const FrontierProblem& problem, Scheme scheme, double ebar) {
  Strategy s;
  const auto& eff = problem.effective();
  s.beams.scheme = scheme;
  s.beams.transmitters = eff.eh;
  s.beams.directions = scheme_directions(eff, scheme, problem.raw_target(ebar),
                                         problem.budget().p_max,
                                         problem.tilt_decay(), 0);
  s.beams.powers = full_power(problem);
  s.info_transmitters = eff.id;
  s.info_covariances = energy_beams(problem);
  return s;
}

REPoint boundary_point(const FrontierProblem& problem, Scheme scheme, double ebar) {
  const auto& settings = problem.solver();
  const auto& eff = problem.effective();
  const double p = problem.budget().p_max;
  if (!(ebar >= 0.0)) throw InvalidArgument("boundary_point: negative energy target");
  const double ceiling = scheme_e_max(problem, scheme);
  if (ebar > ceiling * (1.0 + 1e-9)) {
    throw InfeasibleTarget("boundary_point: required energy exceeds the scheme maximum");
  }
  const double target = problem.raw_target(ebar);
  const double design = beam_target(problem, scheme, ebar, ceiling);
  const bool tilting = scheme == Scheme::SLER_TILT;
  int exponent = 0;
  BeamStatistics stats = statistics_for(problem, scheme, design, exponent);

  std::vector<double> powers = full_power(problem);
  REPoint point;
  point.ebar = ebar;
  InnerResult inner;
  bool have_inner = false;
  double last_change = std::numeric_limits<double>::infinity();
  const double slack = settings.feasibility_tolerance * std::max(target, 1e-300);

  for (int n = 0;; ++n) {
    point.power_trace.push_back(powers);
    const double beam_energy = dot(stats.omega, powers);
    inner = inner_solve(problem, stats, powers, target - beam_energy, have_inner ? &inner : nullptr);
    have_inner = true;
    point.outer_iterations = n + 1;
    const double total = inner.info_energy + beam_energy;
    if (total <= target + slack) {
      point.converged = inner.converged;
      break;
    }
    point.surplus_branch = true;
    if (last_change <= settings.outer_tolerance * p) {
      point.converged = inner.converged;
      break;
    }
    if (n >= settings.outer_max_iterations) {
      point.converged = false;
      break;
    }

    if (tilting && exponent < settings.tilt_max_exponent && !eff.id.empty()) {
      // Rotate the beams toward lower leakage before cutting power, as long
      // as the current delivery still covers the target and the rate does
      // not drop.
      double current = objective(problem, stats, powers, inner.info_covariances, problem.variant());
      bool tilted = false;
      while (exponent < settings.tilt_max_exponent) {
        BeamStatistics candidate = statistics_for(problem, scheme, design, exponent + 1);
        if (inner.info_energy + dot(candidate.omega, powers) < target) break;
        const double value =
            objective(problem, candidate, powers, inner.info_covariances, problem.variant());
        if (value < current) break;
        stats = std::move(candidate);
        current = value;
        ++exponent;
        tilted = true;
      }
      if (tilted) {
        last_change = std::numeric_limits<double>::infinity();
        continue;
      }
    }

    const RVector grad =
        power_gradient(problem, stats, powers, inner.info_covariances, problem.variant());
    const double step =
        settings.step_fraction * max_step(stats, powers, inner.info_energy, target, grad);
    if (step <= 0.0) {
      point.converged = inner.converged;
      break;
    }
    std::vector<double> next(powers.size());
    double change = 0.0;
    for (std::size_t k = 0; k < powers.size(); ++k) {
      next[k] = std::max(powers[k] + step * grad(static_cast<Eigen::Index>(k)), 0.0);
      if (next[k] > powers[k]) point.power_monotone = false;
      change += (next[k] - powers[k]) * (next[k] - powers[k]);
    }
    last_change = std::sqrt(change);
    powers = std::move(next);
  }

  point.powers = powers;
  point.info_energy = inner.info_energy;
  point.rate = objective(problem, stats, powers, inner.info_covariances, problem.variant());
  point.energy = problem.delivered(inner.info_energy + dot(stats.omega, powers));
  point.duals = inner.duals;
  point.kkt_residual = inner.kkt_residual;
  point.tilt_exponent = exponent;

  point.strategy.beams.scheme = scheme;
  point.strategy.beams.transmitters = eff.eh;
  point.strategy.beams.directions = scheme_directions(eff, scheme, problem.raw_target(design), p,
                                                      problem.tilt_decay(), exponent);
  point.strategy.beams.powers = powers;
  point.strategy.beams.tilt_exponent = exponent;
  point.strategy.info_transmitters = eff.id;
  point.strategy.info_covariances = inner.info_covariances;
  return point;
}

std::vector<TimeSharingPoint> time_sharing_curve(const FrontierProblem& problem, Scheme scheme,
                                                 const std::vector<double>& taus,
                                                 bool count_energy_phase_rate) {
  const double p = problem.budget().p_max;
  const Variant variant = problem.variant();

  // Information phase: energy transmitters silent, waterfilling on H_ii.
  const std::vector<double> silent(problem.n_eh(), 0.0);
  const BeamStatistics idle = statistics_for(problem, scheme, 0.0, 0);
  const InnerResult wf = inner_solve(problem, idle, silent, 0.0);
  const double rate_wf = objective(problem, idle, silent, wf.info_covariances, variant);
  const double energy_wf = problem.delivered(wf.info_energy);

  // Energy phase: the scheme's maximum-energy strategy.
  const double ceiling = scheme_e_max(problem, scheme);
  const BeamStatistics full = statistics_for(problem, scheme, ceiling, 0);
  const std::vector<double> powers = full_power(problem);
  const std::vector<CMatrix> beams = energy_beams(problem);
  const double rate_eh =
      count_energy_phase_rate ? objective(problem, full, powers, beams, variant) : 0.0;
  const double energy_eh = problem.delivered(info_energy(problem, beams) + dot(full.omega, powers));

  std::vector<TimeSharingPoint> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("time sharing fraction outside [0, 1]");
    TimeSharingPoint pt;
    pt.tau = tau;
    pt.rate = (1.0 - tau) * rate_wf + tau * rate_eh;
    pt.energy = (1.0 - tau) * energy_wf + tau * energy_eh;
    pt.powers.assign(problem.n_eh(), tau * p);
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace swipt
