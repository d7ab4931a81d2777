#include <doctest.h>

#include "swipt/beamforming.hpp"
#include "swipt/errors.hpp"
#include "../support/oracles.hpp"

using namespace swipt;

namespace {

CVector random_unit(std::mt19937_64& gen, int m) {
  CVector v = oracle::gaussian(gen, m, 1).col(0);
  return v / v.norm();
}

}  // namespace

TEST_CASE("meb maximizes and mlb minimizes their quadratic forms over sampled vectors") {
  std::mt19937_64 gen(21);
  for (int n = 0; n < 20; ++n) {
    const CMatrix h11 = oracle::gaussian(gen, 8, 4);
    const CMatrix h21 = oracle::gaussian(gen, 4, 4);
    const CVector meb = meb_direction(h11);
    const CVector mlb = mlb_direction(h21);
    const double top = (h11 * meb).squaredNorm();
    const double low = (h21 * mlb).squaredNorm();
    for (int s = 0; s < 500; ++s) {
      const CVector v = random_unit(gen, 4);
      CHECK((h11 * v).squaredNorm() <= top);
      CHECK((h21 * v).squaredNorm() >= low);
    }
  }
}

TEST_CASE("zero channels have no direction") {
  CHECK_THROWS_AS(meb_direction(CMatrix::Zero(4, 4)), UndefinedDirection);
  CHECK_THROWS_AS(mlb_direction(CMatrix::Zero(4, 4)), UndefinedDirection);
  CHECK_THROWS_AS(sler_beam(CMatrix::Zero(4, 4), CMatrix::Zero(4, 4), 1.0, 1.0, 1), UndefinedDirection);
}

TEST_CASE("sler ratio equals the generalized eigenvalue and beats sampled vectors") {
  std::mt19937_64 gen(4);
  for (int n = 0; n < 20; ++n) {
    const CMatrix h11 = oracle::gaussian(gen, 4, 4);
    const CMatrix h21 = oracle::gaussian(gen, 8, 4);
    const double s1 = Eigen::JacobiSVD<CMatrix>(h11).singularValues()(0);
    const double ebar = 1.5 * s1 * s1;  // regularizer 0.5·σ₁²
    const double reg = sler_regularizer(h11, ebar, 1.0, 1);
    CHECK(reg == doctest::Approx(0.5 * s1 * s1));
    const SlerBeam b = sler_beam(h11, h21, ebar, 1.0, 1);
    const CMatrix denom = h21.adjoint() * h21 + reg * CMatrix::Identity(4, 4);
    const double ref = oracle::generalized_top(h11.adjoint() * h11, denom);
    CHECK(b.ratio == doctest::Approx(ref).epsilon(1e-9));
    auto ratio = [&](const CVector& v) {
      return (h11 * v).squaredNorm() / ((h21 * v).squaredNorm() + reg);
    };
    for (int s = 0; s < 300; ++s) CHECK(ratio(random_unit(gen, 4)) <= b.ratio * (1 + 1e-12));
  }
}

TEST_CASE("sler tends to meb for a dominant regularizer") {
  std::mt19937_64 gen(6);
  const CMatrix h11 = oracle::gaussian(gen, 4, 4);
  const CMatrix h21 = oracle::gaussian(gen, 4, 4);
  const CVector v = sler_direction(h11, h21, 1e9, 1.0, 1);
  CHECK(std::abs(v.dot(meb_direction(h11))) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sler_regularizer(h11, 0.0, 1.0, 1) == 0.0);
}

TEST_CASE("tilting shrinks the regularizer geometrically") {
  std::mt19937_64 gen(10);
  const CMatrix h11 = oracle::gaussian(gen, 4, 4);
  const CMatrix h21 = oracle::gaussian(gen, 4, 4);
  const double s1 = Eigen::JacobiSVD<CMatrix>(h11).singularValues()(0);
  const double ebar = 3.0 * s1 * s1;
  const double reg = sler_regularizer(h11, ebar, 1.0, 1);
  const SlerBeam tilted = sler_beam(h11, h21, ebar, 1.0, 1, 0.9, 5);
  const CMatrix denom = h21.adjoint() * h21 + std::pow(0.9, 5) * reg * CMatrix::Identity(4, 4);
  CHECK(tilted.ratio == doctest::Approx(oracle::generalized_top(h11.adjoint() * h11, denom)).epsilon(1e-9));
}

TEST_CASE("whitened minimum leakage with no interference is plain minimum leakage") {
  std::mt19937_64 gen(12);
  const CMatrix h21 = oracle::gaussian(gen, 4, 4);
  const CVector a = whitened_mlb_direction(h21, CMatrix::Zero(4, 4));
  CHECK(std::abs(a.dot(mlb_direction(h21))) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("whitened minimum leakage minimizes the whitened form") {
  std::mt19937_64 gen(13);
  const CMatrix h21 = oracle::gaussian(gen, 4, 4);
  const CMatrix g = oracle::gaussian(gen, 4, 4);
  const CMatrix c = oracle::herm(g * g.adjoint());
  const CVector v = whitened_mlb_direction(h21, c, 0.5);
  const CMatrix w = (0.5 * CMatrix::Identity(4, 4) + c).inverse();
  auto form = [&](const CVector& x) { return (x.adjoint() * h21.adjoint() * w * h21 * x)(0).real(); };
  for (int s = 0; s < 500; ++s) CHECK(form(random_unit(gen, 4)) >= form(v) * (1 - 1e-12));
  CHECK_THROWS_AS(whitened_mlb_direction(h21, CMatrix::Zero(2, 2)), InvalidArgument);
}

TEST_CASE("beam statistics") {
  const ChannelSet ch = generate_channels(reference_config(4, 2), 2);
  const EffectiveChannels e = assemble_effective(ch, std::vector<int>{0, 1}, std::vector<int>{2, 3});
  const auto dirs = scheme_directions(e, Scheme::MEB, 0.0, 0.05);
  const BeamStatistics s = beam_statistics(e, ch, dirs);
  REQUIRE(s.omega.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    const int tx = e.eh[j];
    double omega = 0.0;
    for (int rx : e.eh) omega += (ch.link(rx, tx) * dirs[j]).squaredNorm();
    CHECK(s.omega[j] == doctest::Approx(omega).epsilon(1e-12));
    for (std::size_t i = 0; i < 2; ++i) {
      const CVector u = ch.link(e.id[i], tx) * dirs[j];
      CHECK((s.shape[i][j] - u * u.adjoint()).norm() < 1e-18);
    }
  }
  auto bad = dirs;
  bad[0] *= 2.0;
  CHECK_THROWS_AS(beam_statistics(e, ch, bad), InvalidArgument);
}

TEST_CASE("scheme directions pick the matching design") {
  const ChannelSet ch = generate_channels(reference_config(3, 1), 5);
  const EffectiveChannels e = assemble_effective(ch, std::vector<int>{0}, std::vector<int>{1, 2});
  CHECK(scheme_directions(e, Scheme::MEB, 0.0, 0.05)[0] == meb_direction(e.h11[0]));
  CHECK(scheme_directions(e, Scheme::MLB, 0.0, 0.05)[0] == mlb_direction(e.h21[0]));
  CHECK(scheme_directions(e, Scheme::SLER, 1e-4, 0.05)[0] ==
        sler_direction(e.h11[0], e.h21[0], 1e-4, 0.05, 1));
}
