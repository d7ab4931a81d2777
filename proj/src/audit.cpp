#include "swipt/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/tools/toms748_solve.hpp>

#include "swipt/beamforming.hpp"
#include "swipt/channel.hpp"
#include "swipt/optimizer.hpp"
#include "swipt/sweep.hpp"

namespace swipt {

namespace {

std::mt19937_64 audit_stream(std::uint64_t seed, std::uint32_t tag, std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                    index};
  return std::mt19937_64(seq);
}

CMatrix gaussian_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  CMatrix a(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) a(r, c) = Complex(n(gen), n(gen));
  }
  return a;
}

CMatrix random_unitary(std::mt19937_64& gen, Eigen::Index m) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(gen, m, m));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

AuditReport finish(std::string name, int instances, double violation, double tolerance) {
  return AuditReport{std::move(name), instances, violation, tolerance, violation <= tolerance};
}

// Rate at ID receiver 1 of a two-pair link with information covariance fixed.
struct RankInstance {
  CMatrix h11, h21, h22;
  CMatrix signal;  // H22 Q2 H22ᴴ
  double noise = 0.0;
  double p_max = 0.0;
  double target = 0.0;

  double rate(const CMatrix& q1) const {
    const Eigen::Index m = h21.rows();
    const CMatrix r = noise * CMatrix::Identity(m, m) + h21 * q1 * h21.adjoint();
    return log_det_hpd(hermitian_part(r + signal)) - log_det_hpd(hermitian_part(r));
  }

  // Rank-one beam along (cos θ, sin θ·e^{iφ}) scaled to the target energy;
  // −∞ if that needs more than the power budget.
  double beam_rate(double theta, double phi) const {
    CVector v(2);
    v << std::cos(theta), std::polar(std::sin(theta), phi);
    const double gain = (h11 * v).squaredNorm();
    const double p = target / gain;
    if (!(p <= p_max)) return -std::numeric_limits<double>::infinity();
    return rate(p * (v * v.adjoint()));
  }
};

double best_beam_rate(const RankInstance& inst) {
  constexpr int kTheta = 90;
  constexpr int kPhi = 180;
  double best = -std::numeric_limits<double>::infinity();
  double bt = 0.0, bp = 0.0;
  for (int i = 0; i <= kTheta; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / kTheta;
    for (int j = 0; j < kPhi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / kPhi;
      const double r = inst.beam_rate(theta, phi);
      if (r > best) {
        best = r;
        bt = theta;
        bp = phi;
      }
    }
  }
  // Pattern search around the best grid node.
  double dt = 0.5 * std::numbers::pi / kTheta;
  double dp = 2.0 * std::numbers::pi / kPhi;
  for (int it = 0; it < 200 && dt > 1e-12; ++it) {
    bool moved = false;
    const double cand[4][2] = {{bt + dt, bp}, {bt - dt, bp}, {bt, bp + dp}, {bt, bp - dp}};
    for (const auto& c : cand) {
      const double theta = std::clamp(c[0], 0.0, 0.5 * std::numbers::pi);
      const double r = inst.beam_rate(theta, c[1]);
      if (r > best) {
        best = r;
        bt = theta;
        bp = c[1];
        moved = true;
      }
    }
    if (!moved) {
      dt *= 0.5;
      dp *= 0.5;
    }
  }
  return best;
}

// Projection onto {Q ⪰ 0, tr Q ≤ p, tr(BQ) ≥ e}.
class FeasibleSetProjection {
 public:
  FeasibleSetProjection(CMatrix b, double p, double e) : b_(std::move(b)), p_(p), e_(e) {}

  CMatrix operator()(const CMatrix& y) const {
    CMatrix q = capped_psd(y);
    if (energy(q) >= e_) return q;
    auto residual = [&](double eta) { return energy(capped_psd(y + eta * b_)) - e_; };
    double hi = 1.0;
    double fhi = residual(hi);
    while (fhi < 0.0 && hi < 1e30) {
      hi *= 4.0;
      fhi = residual(hi);
    }
    boost::uintmax_t iterations = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        residual, 0.0, hi, energy(q) - e_, fhi, boost::math::tools::eps_tolerance<double>(52),
        iterations);
    return capped_psd(y + bracket.second * b_);
  }

  double energy(const CMatrix& q) const { return (b_ * q).trace().real(); }

 private:
  CMatrix capped_psd(const CMatrix& z) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(z));
    RVector d = eig.eigenvalues();
    double total = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) total += std::max(d(i), 0.0);
    double shift = 0.0;
    if (total > p_) {
      std::vector<double> sorted(d.data(), d.data() + d.size());
      std::sort(sorted.rbegin(), sorted.rend());
      double cumulative = 0.0;
      for (std::size_t n = 0; n < sorted.size(); ++n) {
        cumulative += sorted[n];
        const double candidate = (cumulative - p_) / static_cast<double>(n + 1);
        if (n + 1 == sorted.size() || sorted[n + 1] <= candidate) {
          shift = candidate;
          break;
        }
      }
    }
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::max(d(i) - shift, 0.0);
    return hermitian_part(eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().adjoint());
  }

  CMatrix b_;
  double p_;
  double e_;
};

double link_objective(const CMatrix& g, const CMatrix& q) {
  const Eigen::Index n = g.rows();
  return log_det_hpd(hermitian_part(CMatrix::Identity(n, n) + g * q * g.adjoint()));
}

// Accelerated projected gradient with adaptive restart.
double projected_gradient_optimum(const CMatrix& g, const FeasibleSetProjection& project,
                                  Eigen::Index m, double p) {
  const double s = spectral_norm(g);
  const double step = 1.0 / (s * s * s * s);
  const Eigen::Index n = g.rows();
  CMatrix x = project((p / static_cast<double>(m)) * CMatrix::Identity(m, m));
  CMatrix y = x;
  double t = 1.0;
  double value = link_objective(g, x);
  for (int it = 0; it < 20000; ++it) {
    const CMatrix inner = (CMatrix::Identity(n, n) + g * y * g.adjoint()).llt().solve(g);
    const CMatrix grad = hermitian_part(g.adjoint() * inner);
    const CMatrix next = project(y + step * grad);
    const double next_value = link_objective(g, next);
    if (next_value < value) {
      y = x;
      t = 1.0;
      continue;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = next + ((t - 1.0) / t_next) * (next - x);
    const double moved = (next - x).norm();
    x = next;
    t = t_next;
    value = next_value;
    if (moved <= 1e-13 * p) break;
  }
  return value;
}

}  // namespace

AuditReport audit_rank_one(const SystemConfig& config, int draws, int candidates) {
  SystemConfig c = config;
  c.k = 2;
  c.k1 = 1;
  c.m = 2;
  c.alpha = RMatrix();
  if (config.alpha.rows() == 2) c.alpha = config.alpha;
  double worst = -std::numeric_limits<double>::infinity();
  for (int d = 0; d < draws; ++d) {
    const ChannelSet ch = generate_channels(c, static_cast<std::uint64_t>(d));
    const FrontierProblem problem = FrontierProblem::from_config(c, ch, {0}, {1});
    RankInstance inst;
    inst.h11 = ch.link(0, 0);
    inst.h21 = ch.link(1, 0);
    inst.h22 = ch.link(1, 1);
    inst.noise = c.noise_power;
    inst.p_max = c.p_max;
    const CMatrix hbar = ch.link(1, 1) / std::sqrt(c.noise_power);
    const CMatrix q2 = weighted_waterfill(hbar, problem.energy_forms()[0], 0.0, c.p_max).q;
    inst.signal = inst.h22 * q2 * inst.h22.adjoint();
    auto gen = audit_stream(c.seed, 0x52414e4bu, static_cast<std::uint32_t>(d));
    const double s1 = spectral_norm(inst.h11);
    inst.target = std::uniform_real_distribution<double>(0.1, 0.9)(gen) * c.p_max * s1 * s1;

    const double best = best_beam_rate(inst);
    std::uniform_real_distribution<double> split(0.0, 1.0);
    for (int n = 0; n < candidates; ++n) {
      const CMatrix u = random_unitary(gen, 2);
      const double a = split(gen);
      RVector diag(2);
      diag << a, 1.0 - a;
      CMatrix q = u * diag.asDiagonal() * u.adjoint();
      const double gain = (inst.h11 * q * inst.h11.adjoint()).trace().real();
      q *= inst.target / gain;
      if (q.trace().real() > c.p_max) continue;
      worst = std::max(worst, (inst.rate(hermitian_part(q)) - best) / best);
    }
  }
  return finish("rank_one", draws, std::max(worst, 0.0), 0.01);
}

AuditReport audit_determinant_ordering(std::uint64_t seed, int draws) {
  int violations = 0;
  for (int d = 0; d < draws; ++d) {
    auto gen = audit_stream(seed, 0x4c454d31u, static_cast<std::uint32_t>(d));
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(gen() % 3);
    const CMatrix gs = gaussian_matrix(gen, m, m);
    const CMatrix gx = gaussian_matrix(gen, m, 1 + static_cast<Eigen::Index>(gen() % m));
    const CVector w = gaussian_matrix(gen, m, 1).col(0);
    const CMatrix s = hermitian_part(gs * gs.adjoint());
    const CMatrix x1 = hermitian_part(gx * gx.adjoint());
    const CMatrix x2 = hermitian_part(x1 + w * w.adjoint());
    const CMatrix id = CMatrix::Identity(m, m);
    auto f = [&](const CMatrix& x) {
      return log_det_hpd(hermitian_part(id + x + s)) - log_det_hpd(hermitian_part(id + x));
    };
    const bool rate_order = f(x1) > f(x2);
    const bool det_order = log_det_hpd(id + x1) < log_det_hpd(id + x2);
    if (rate_order != det_order) ++violations;
  }
  return finish("determinant_ordering", draws, violations, 0.0);
}

AuditReport audit_gradient(const SystemConfig& config, int instances) {
  double worst = 0.0;
  for (int n = 0; n < instances; ++n) {
    SystemConfig c = config;
    c.k = 3;
    c.k1 = 1 + n % 2;
    c.alpha = RMatrix();
    const ChannelSet ch = generate_channels(c, static_cast<std::uint64_t>(n));
    const auto [eh, id] = default_partition(c.k, c.k1);
    FrontierProblem problem = FrontierProblem::from_config(c, ch, eh, id);
    const Variant variant = n % 4 < 2 ? Variant::P1 : Variant::UP;
    auto gen = audit_stream(c.seed, 0x47524144u, static_cast<std::uint32_t>(n));
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const double ebar = u(gen) * scheme_e_max(problem, Scheme::MEB);
    const auto dirs = scheme_directions(problem.effective(), Scheme::SLER, ebar, c.p_max);
    const BeamStatistics stats = beam_statistics(problem.effective(), ch, dirs);
    std::vector<double> powers;
    for (std::size_t k = 0; k < problem.n_eh(); ++k) powers.push_back(u(gen) * c.p_max);
    std::vector<CMatrix> q;
    for (std::size_t j = 0; j < problem.n_id(); ++j) {
      const CMatrix g = gaussian_matrix(gen, c.m, c.m);
      CMatrix qj = hermitian_part(g * g.adjoint());
      q.push_back(qj * (c.p_max / qj.trace().real()));
    }
    const RVector grad = power_gradient(problem, stats, powers, q, variant);
    const double h = 1e-6 * c.p_max;
    RVector fd(grad.size());
    for (Eigen::Index k = 0; k < grad.size(); ++k) {
      auto plus = powers, minus = powers;
      plus[static_cast<std::size_t>(k)] += h;
      minus[static_cast<std::size_t>(k)] -= h;
      fd(k) = (objective(problem, stats, plus, q, variant) -
               objective(problem, stats, minus, q, variant)) /
              (2.0 * h);
    }
    const double scale = grad.cwiseAbs().maxCoeff();
    if (scale > 0.0) worst = std::max(worst, (fd - grad).cwiseAbs().maxCoeff() / scale);
  }
  return finish("gradient", instances, worst, 1e-5);
}

AuditReport audit_waterfilling(std::uint64_t seed, int instances) {
  double worst = 0.0;
  for (int n = 0; n < instances; ++n) {
    auto gen = audit_stream(seed, 0x57464f52u, static_cast<std::uint32_t>(n));
    const int m = 2 + static_cast<int>(gen() % 3);
    ChannelSet ch(2, m);
    const double snr = std::pow(10.0, std::uniform_real_distribution<double>(0.0, 1.5)(gen));
    ch.link(0, 0) = gaussian_matrix(gen, m, m);
    ch.link(1, 0) = gaussian_matrix(gen, m, m);
    ch.link(1, 1) = std::sqrt(snr / m) * gaussian_matrix(gen, m, m);
    ch.link(0, 1) = gaussian_matrix(gen, m, m);
    LinkBudget budget{1.0, 1.0, 1.0, false};
    SolverSettings settings;
    const FrontierProblem problem(ch, {0}, {1}, budget, settings, Variant::UP);
    const std::vector<double> silent{0.0};
    const BeamStatistics stats =
        beam_statistics(problem.effective(), ch, {meb_direction(problem.effective().h11[0])});
    const InnerResult free = inner_solve(problem, stats, silent, 0.0);
    const double top = problem.info_energy_max();
    const double frac = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
    const double required = free.info_energy + frac * (top - free.info_energy);
    const InnerResult solved = inner_solve(problem, stats, silent, required);
    const double ours = link_objective(ch.link(1, 1), solved.info_covariances[0]);

    const CMatrix& h12 = ch.link(0, 1);
    const FeasibleSetProjection project(hermitian_part(h12.adjoint() * h12), 1.0, required);
    const double oracle = projected_gradient_optimum(ch.link(1, 1), project, m, 1.0);
    const double energy_short = std::max(required - solved.info_energy, 0.0) / required;
    worst = std::max({worst, std::abs(oracle - ours), solved.kkt_residual, energy_short});
  }
  return finish("waterfilling", instances, worst, 1e-6);
}

AuditReport audit_power_monotone(const SystemConfig& config, int trials) {
  SystemConfig c = config;
  c.trials = trials;
  SweepOptions options;
  options.time_sharing = false;
  const SweepResult result = run_sweep(c, options);
  return finish("power_monotone", trials, result.diagnostics.monotone_violations, 0.0);
}

std::vector<AuditReport> run_audits(const SystemConfig& config, const AuditOptions& options) {
  std::vector<AuditReport> out;
  out.push_back(audit_rank_one(config, options.rank_draws, options.rank_candidates));
  out.push_back(audit_determinant_ordering(config.seed, options.ordering_draws));
  out.push_back(audit_gradient(config, options.gradient_instances));
  out.push_back(audit_waterfilling(config.seed, options.waterfill_instances));
  out.push_back(audit_power_monotone(config, options.monotone_trials));
  return out;
}

}  // namespace swipt
