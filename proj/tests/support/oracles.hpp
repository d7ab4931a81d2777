#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// solvers: every value is recomputed from raw channel matrices with plain
// Eigen decompositions, bisection, brute force or finite differences.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline CMatrix herm(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

inline CMatrix gaussian(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols,
                        double scale = 1.0) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5) * scale);
  CMatrix a(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) a(r, c) = Complex(n(gen), n(gen));
  return a;
}

inline CMatrix random_psd(std::mt19937_64& gen, Eigen::Index m, double trace) {
  const CMatrix g = gaussian(gen, m, m);
  CMatrix q = herm(g * g.adjoint());
  return q * (trace / q.trace().real());
}

/// log |det A| through LU, no Hermitian structure assumed.
inline double log_abs_det(const CMatrix& a) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  const CMatrix& f = lu.matrixLU();
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) s += std::log(std::abs(f(i, i)));
  return s;
}

/// log det(I + Hᴴ R⁻¹ H Q) in nats.
inline double rate(const CMatrix& h, const CMatrix& q, const CMatrix& r) {
  const Eigen::Index m = q.rows();
  return log_abs_det(CMatrix::Identity(m, m) + h.adjoint() * r.inverse() * h * q);
}

/// Stack of blocks vertically.
inline CMatrix vstack(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  CMatrix out(rows, blocks.front().cols());
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

/// Largest eigenvalue of B⁻¹A by a general (non-Hermitian) eigensolver.
inline double generalized_top(const CMatrix& a, const CMatrix& b) {
  Eigen::ComplexEigenSolver<CMatrix> es(b.inverse() * a);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    best = std::max(best, es.eigenvalues()(i).real());
  return best;
}

/// Sum over members k of `eh` of max vᴴ(H11ᴴH11)v / vᴴ(H21ᴴH21 + reg·I)v with
/// stacks built from `link(rx, tx)` and reg = max(ebar/(|eh|·p) − σ₁²(H11), 0).
template <class Links>
double sler_sum(const Links& link, int k, int m, const std::vector<int>& eh, double ebar,
                double p) {
  std::vector<int> id;
  for (int i = 0; i < k; ++i)
    if (std::find(eh.begin(), eh.end(), i) == eh.end()) id.push_back(i);
  double sum = 0.0;
  for (int tx : eh) {
    std::vector<CMatrix> a, b;
    for (int i : eh) a.push_back(link(i, tx));
    for (int i : id) b.push_back(link(i, tx));
    const CMatrix h11 = vstack(a), h21 = vstack(b);
    const double s1 = Eigen::JacobiSVD<CMatrix>(h11).singularValues()(0);
    const double reg = std::max(ebar / (static_cast<double>(eh.size()) * p) - s1 * s1, 0.0);
    sum += generalized_top(h11.adjoint() * h11,
                           h21.adjoint() * h21 + reg * CMatrix::Identity(m, m));
  }
  return sum;
}

/// Classical waterfilling by bisection on the water level. Returns per-mode
/// powers for gains g (any order).
inline std::vector<double> waterfill_powers(const std::vector<double>& gains, double p) {
  double lo = 0.0, hi = p;
  for (double g : gains)
    if (g > 0.0) hi = std::max(hi, p + 1.0 / g);
  auto used = [&](double level) {
    double s = 0.0;
    for (double g : gains)
      if (g > 0.0) s += std::max(level - 1.0 / g, 0.0);
    return s;
  };
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    (used(mid) > p ? hi : lo) = mid;
  }
  std::vector<double> out;
  for (double g : gains) out.push_back(g > 0.0 ? std::max(lo - 1.0 / g, 0.0) : 0.0);
  return out;
}

/// max log det(I + G Q Gᴴ) s.t. Q ⪰ 0, tr Q ≤ p, tr(BQ) ≥ e, by accelerated
/// projected gradient. The projection solves its two multipliers by nested
/// bisection.
class ProjectedGradient {
 public:
  ProjectedGradient(CMatrix g, CMatrix b, double p, double e)
      : g_(std::move(g)), b_(herm(b)), p_(p), e_(e) {}

  double objective(const CMatrix& q) const {
    const Eigen::Index n = g_.rows();
    return log_abs_det(CMatrix::Identity(n, n) + g_ * q * g_.adjoint());
  }

  CMatrix project(const CMatrix& y) const {
    CMatrix q = cap(y);
    if ((b_ * q).trace().real() >= e_) return q;
    double lo = 0.0, hi = 1.0;
    while ((b_ * cap(y + hi * b_)).trace().real() < e_ && hi < 1e40) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((b_ * cap(y + mid * b_)).trace().real() < e_ ? lo : hi) = mid;
      if (hi - lo <= 1e-16 * hi) break;
    }
    return cap(y + hi * b_);
  }

  CMatrix solve(int max_iterations = 50000) const {
    const Eigen::Index m = g_.cols();
    const Eigen::Index n = g_.rows();
    Eigen::JacobiSVD<CMatrix> svd(g_);
    const double s = svd.singularValues()(0);
    const double step = 1.0 / (s * s * s * s);
    CMatrix x = project((p_ / m) * CMatrix::Identity(m, m));
    CMatrix y = x;
    double t = 1.0, fx = objective(x);
    for (int it = 0; it < max_iterations; ++it) {
      const CMatrix grad =
          herm(g_.adjoint() * (CMatrix::Identity(n, n) + g_ * y * g_.adjoint()).inverse() * g_);
      const CMatrix next = project(y + step * grad);
      const double fn = objective(next);
      if (fn < fx) {  // restart momentum
        if (t == 1.0) break;
        y = x;
        t = 1.0;
        continue;
      }
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = next + ((t - 1.0) / tn) * (next - x);
      const double step_norm = (next - x).norm();
      x = next;
      fx = fn;
      t = tn;
      if (step_norm < 1e-14 * p_) break;
    }
    return x;
  }

 private:
  CMatrix cap(const CMatrix& z) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(herm(z));
    RVector d = es.eigenvalues();
    auto mass = [&](double nu) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < d.size(); ++i) s += std::max(d(i) - nu, 0.0);
      return s;
    };
    double nu = 0.0;
    if (mass(0.0) > p_) {
      std::vector<double> v(d.data(), d.data() + d.size());
      std::sort(v.rbegin(), v.rend());
      double sum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        sum += v[i];
        const double level = (sum - p_) / static_cast<double>(i + 1);
        if (i + 1 == v.size() || v[i + 1] <= level) {
          nu = level;
          break;
        }
      }
    }
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::max(d(i) - nu, 0.0);
    return herm(es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint());
  }

  CMatrix g_, b_;
  double p_, e_;
};

}  // namespace oracle
