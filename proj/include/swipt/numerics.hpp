#pragma once

// Dense complex linear-algebra kernels shared by every other module.
//
// All routines are pure and deterministic for identical input bits. Returned
// vectors follow one phase convention: the first component whose magnitude is
// non-negligible is made real and positive.

#include <complex>

#include <Eigen/Dense>

namespace swipt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Relative eigenvalue floor below which a Hermitian matrix is not trusted to
/// be positive definite.
inline constexpr double kPdThreshold = 1e-12;

struct SvdResult {
  CMatrix left_vectors;
  RVector singular_values;  // descending
  CMatrix right_vectors;
};

struct EigPair {
  CVector vector;  // unit norm
  double value = 0.0;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct HermitianEig {
  RVector values;
  CMatrix vectors;
};

bool all_finite(const CMatrix& a);

/// Throws InvalidArgument if `a` is not square or not Hermitian within a
/// relative tolerance of 1e-9.
void require_hermitian(const CMatrix& a, const char* what);

/// (A + Aᴴ) / 2.
CMatrix hermitian_part(const CMatrix& a);

/// Rotates `v` so its first non-negligible entry is real-positive.
void normalize_phase(CVector& v);

/// Full SVD; singular values sorted descending, unitary factors.
SvdResult svd(const CMatrix& a);

HermitianEig hermitian_eig(const CMatrix& a);

/// Dominant right singular vector (σ₁ direction).
CVector dominant_right_vector(const CMatrix& a);

/// Right singular vector of the smallest singular value among the first
/// `cols` (i.e. the weakest input direction).
CVector weakest_right_vector(const CMatrix& a);

/// Largest singular value.
double spectral_norm(const CMatrix& a);

/// Maximizes vᴴAv / vᴴBv over unit v for A Hermitian PSD and B Hermitian PD.
/// B is whitened through its Cholesky factor; the top eigenpair of
/// L⁻¹AL⁻ᴴ is mapped back. Throws IllConditioned when B is not safely PD.
EigPair generalized_eigmax(const CMatrix& a, const CMatrix& b);

/// Hermitian PD inverse square root S with S·A·S = I.
CMatrix inv_sqrt_psd(const CMatrix& a);

/// log det of a Hermitian positive-definite matrix via Cholesky.
double log_det_hpd(const CMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& a);

}  // namespace swipt
