#include "swipt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

void require_finite(const CMatrix& a, const char* what) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw InvalidArgument(std::string(what) + ": empty matrix");
  }
  if (!all_finite(a)) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

// Eigen's self-adjoint solver returns ascending order; flip to descending and
// fix the phase of every column.
HermitianEig descending(const Eigen::SelfAdjointEigenSolver<CMatrix>& solver) {
  const Eigen::Index n = solver.eigenvalues().size();
  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    CVector v = solver.eigenvectors().col(n - 1 - k);
    normalize_phase(v);
    out.vectors.col(k) = v;
  }
  return out;
}

}  // namespace

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_hermitian(const CMatrix& a, const char* what) {
  require_finite(a, what);
  if (a.rows() != a.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(a.norm(), 1e-300);
  if ((a - a.adjoint()).norm() > 1e-9 * scale) {
    throw InvalidArgument(std::string(what) + ": matrix is not Hermitian");
  }
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

void normalize_phase(CVector& v) {
  const double norm = v.norm();
  if (norm == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-10 * norm) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      return;
    }
  }
}

SvdResult svd(const CMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.singular_values = solver.singularValues();
  out.left_vectors = solver.matrixU();
  out.right_vectors = solver.matrixV();
  // Fix the phase on V and carry the same rotation onto U so U Σ Vᴴ is kept.
  const Eigen::Index rank = out.singular_values.size();
  for (Eigen::Index k = 0; k < out.right_vectors.cols(); ++k) {
    CVector v = out.right_vectors.col(k);
    const CVector before = v;
    normalize_phase(v);
    out.right_vectors.col(k) = v;
    if (k < rank) {
      // v = before·e^{iθ}; find e^{iθ} from the largest entry.
      Eigen::Index idx = 0;
      before.cwiseAbs().maxCoeff(&idx);
      const Complex rot = v(idx) / before(idx);
      out.left_vectors.col(k) *= rot;
    }
  }
  for (Eigen::Index k = rank; k < out.left_vectors.cols(); ++k) {
    CVector u = out.left_vectors.col(k);
    normalize_phase(u);
    out.left_vectors.col(k) = u;
  }
  return out;
}

HermitianEig hermitian_eig(const CMatrix& a) {
  require_hermitian(a, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
  return descending(solver);
}

CVector dominant_right_vector(const CMatrix& a) {
  require_finite(a, "dominant_right_vector");
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullV);
  CVector v = solver.matrixV().col(0);
  normalize_phase(v);
  return v;
}

CVector weakest_right_vector(const CMatrix& a) {
  require_finite(a, "weakest_right_vector");
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullV);
  // With fewer rows than columns the trailing right vectors span the null
  // space; the last column is always a minimizer of ‖A v‖.
  CVector v = solver.matrixV().col(a.cols() - 1);
  normalize_phase(v);
  return v;
}

double spectral_norm(const CMatrix& a) {
  require_finite(a, "spectral_norm");
  Eigen::JacobiSVD<CMatrix> solver(a);
  return solver.singularValues()(0);
}

EigPair generalized_eigmax(const CMatrix& a, const CMatrix& b) {
  require_hermitian(a, "generalized_eigmax (A)");
  require_hermitian(b, "generalized_eigmax (B)");
  if (a.rows() != b.rows()) {
    throw InvalidArgument("generalized_eigmax: dimension mismatch");
  }
  const CMatrix bh = hermitian_part(b);
  Eigen::SelfAdjointEigenSolver<CMatrix> bsolver(bh, Eigen::EigenvaluesOnly);
  const double bmax = bsolver.eigenvalues().maxCoeff();
  const double bmin = bsolver.eigenvalues().minCoeff();
  if (!(bmax > 0.0) || bmin <= kPdThreshold * bmax) {
    throw IllConditioned("generalized_eigmax: B is singular or indefinite");
  }
  Eigen::LLT<CMatrix> llt(bh);
  if (llt.info() != Eigen::Success) {
    throw IllConditioned("generalized_eigmax: Cholesky of B failed");
  }
  const CMatrix l = llt.matrixL();
  // C = L⁻¹ A L⁻ᴴ
  const CMatrix linv_a = l.triangularView<Eigen::Lower>().solve(hermitian_part(a));
  const CMatrix c = l.triangularView<Eigen::Lower>().solve(linv_a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> csolver(hermitian_part(c));
  const Eigen::Index top = c.rows() - 1;
  const CVector y = csolver.eigenvectors().col(top);
  CVector v = l.adjoint().triangularView<Eigen::Upper>().solve(y);
  v.normalize();
  normalize_phase(v);
  EigPair out;
  out.vector = v;
  out.value = csolver.eigenvalues()(top);
  return out;
}

CMatrix inv_sqrt_psd(const CMatrix& a) {
  require_hermitian(a, "inv_sqrt_psd");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
  const RVector& ev = solver.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= kPdThreshold * top) {
    throw IllConditioned("inv_sqrt_psd: matrix is not safely positive definite");
  }
  const CMatrix& u = solver.eigenvectors();
  const RVector scale = ev.cwiseSqrt().cwiseInverse();
  return hermitian_part(u * scale.asDiagonal() * u.adjoint());
}

double log_det_hpd(const CMatrix& a) {
  Eigen::LLT<CMatrix> llt(hermitian_part(a));
  if (llt.info() != Eigen::Success) {
    throw IllConditioned("log_det_hpd: matrix is not positive definite");
  }
  double sum = 0.0;
  const CMatrix& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < l.rows(); ++i) sum += std::log(l(i, i).real());
  return 2.0 * sum;
}

double min_eigenvalue(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace swipt
