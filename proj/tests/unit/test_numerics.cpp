#include <doctest.h>

#include "swipt/errors.hpp"
#include "swipt/numerics.hpp"
#include "../support/oracles.hpp"

using namespace swipt;

TEST_CASE("svd reconstructs and orders singular values") {
  std::mt19937_64 gen(7);
  for (int rows : {2, 4, 8}) {
    const CMatrix a = oracle::gaussian(gen, rows, 4);
    const SvdResult s = svd(a);
    const Eigen::Index r = s.singular_values.size();
    CMatrix rebuilt = s.left_vectors.leftCols(r) * s.singular_values.asDiagonal() *
                      s.right_vectors.leftCols(r).adjoint();
    CHECK((rebuilt - a).norm() < 1e-12 * a.norm());
    for (Eigen::Index i = 1; i < r; ++i) CHECK(s.singular_values(i) <= s.singular_values(i - 1));
    CHECK((s.right_vectors.adjoint() * s.right_vectors - CMatrix::Identity(4, 4)).norm() < 1e-12);
  }
}

TEST_CASE("phase convention makes the first significant entry real-positive") {
  std::mt19937_64 gen(3);
  const CMatrix a = oracle::gaussian(gen, 4, 4);
  const CVector v = dominant_right_vector(a);
  CHECK(v(0).real() > 0.0);
  CHECK(std::abs(v(0).imag()) == 0.0);
  const CVector rotated_input = dominant_right_vector(a * std::polar(1.0, 0.7));
  CHECK((rotated_input - v).norm() < 1e-10);

  CVector w(3);
  w << Complex(0, 0), Complex(0, -2), Complex(1, 1);
  normalize_phase(w);
  CHECK(w(1).real() == doctest::Approx(2.0));
  CHECK(w(1).imag() == 0.0);
}

TEST_CASE("dominant and weakest right vectors bound the Rayleigh quotient") {
  std::mt19937_64 gen(11);
  const CMatrix a = oracle::gaussian(gen, 8, 4);
  const CVector top = dominant_right_vector(a);
  const CVector low = weakest_right_vector(a);
  const double s1 = spectral_norm(a);
  CHECK((a * top).squaredNorm() == doctest::Approx(s1 * s1).epsilon(1e-12));
  for (int n = 0; n < 2000; ++n) {
    CVector v = oracle::gaussian(gen, 4, 1).col(0);
    v.normalize();
    CHECK((a * v).squaredNorm() <= (a * top).squaredNorm() * (1 + 1e-12));
    CHECK((a * v).squaredNorm() >= (a * low).squaredNorm() * (1 - 1e-12));
  }
}

TEST_CASE("generalized eigmax matches a general eigensolver on B^-1 A") {
  std::mt19937_64 gen(5);
  for (int n = 0; n < 50; ++n) {
    const CMatrix ga = oracle::gaussian(gen, 6, 4);
    const CMatrix gb = oracle::gaussian(gen, 6, 4);
    const CMatrix a = oracle::herm(ga.adjoint() * ga);
    const CMatrix b = oracle::herm(gb.adjoint() * gb);
    const EigPair p = generalized_eigmax(a, b);
    const double ref = oracle::generalized_top(a, b);
    CHECK(p.value == doctest::Approx(ref).epsilon(1e-9));
    CHECK(p.vector.norm() == doctest::Approx(1.0));
    const double ratio = (p.vector.adjoint() * a * p.vector)(0).real() /
                         (p.vector.adjoint() * b * p.vector)(0).real();
    CHECK(ratio == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("generalized eigmax rejects a singular denominator") {
  CMatrix a = CMatrix::Identity(2, 2);
  CMatrix b = CMatrix::Zero(2, 2);
  b(0, 0) = 1.0;
  CHECK_THROWS_AS(generalized_eigmax(a, b), IllConditioned);
}

TEST_CASE("inverse square root and log det") {
  std::mt19937_64 gen(9);
  const CMatrix g = oracle::gaussian(gen, 4, 4);
  const CMatrix a = oracle::herm(g * g.adjoint() + 0.1 * CMatrix::Identity(4, 4));
  const CMatrix s = inv_sqrt_psd(a);
  CHECK((s * a * s - CMatrix::Identity(4, 4)).norm() < 1e-10);
  CHECK(log_det_hpd(a) == doctest::Approx(oracle::log_abs_det(a)).epsilon(1e-12));
  CHECK(min_eigenvalue(a) > 0.0);
  CHECK_THROWS_AS(log_det_hpd(-a), IllConditioned);
}

TEST_CASE("hermitian eig is descending and rejects non-Hermitian input") {
  std::mt19937_64 gen(1);
  const CMatrix g = oracle::gaussian(gen, 4, 4);
  const HermitianEig e = hermitian_eig(oracle::herm(g + g.adjoint()));
  for (Eigen::Index i = 1; i < 4; ++i) CHECK(e.values(i) <= e.values(i - 1));
  CHECK_THROWS_AS(require_hermitian(g, "g"), InvalidArgument);
  CHECK(all_finite(g));
  CMatrix bad = g;
  bad(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_FALSE(all_finite(bad));
}

TEST_CASE("identical input bits give identical outputs") {
  std::mt19937_64 gen(2);
  const CMatrix a = oracle::gaussian(gen, 8, 4);
  const SvdResult s1 = svd(a);
  const SvdResult s2 = svd(a);
  CHECK(s1.right_vectors == s2.right_vectors);
  CHECK(s1.singular_values == s2.singular_values);
}
