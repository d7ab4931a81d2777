#include "swipt/beamforming.hpp"

#include <cmath>

#include "swipt/errors.hpp"

namespace swipt {

CMatrix BeamPlan::covariance(std::size_t slot) const {
  const CVector& v = directions.at(slot);
  return powers.at(slot) * (v * v.adjoint());
}

CVector meb_direction(const CMatrix& h11) {
  if (h11.norm() == 0.0) throw UndefinedDirection("meb_direction: zero channel");
  return dominant_right_vector(h11);
}

CVector mlb_direction(const CMatrix& h21) {
  if (h21.norm() == 0.0) throw UndefinedDirection("mlb_direction: zero channel");
  return weakest_right_vector(h21);
}

double sler_regularizer(const CMatrix& h11, double ebar, double p_max, int k1) {
  const double s1 = spectral_norm(h11);
  return std::max(ebar / (k1 * p_max) - s1 * s1, 0.0);
}

SlerBeam sler_beam(const CMatrix& h11, const CMatrix& h21, double ebar, double p_max, int k1,
                   double tilt_decay, int tilt_exponent) {
  if (k1 < 1 || !(p_max > 0.0)) throw InvalidArgument("sler_beam: need k1 >= 1 and p_max > 0");
  const CMatrix gram11 = h11.adjoint() * h11;
  const CMatrix gram21 = h21.adjoint() * h21;
  if (gram11.norm() == 0.0 && gram21.norm() == 0.0) {
    throw UndefinedDirection("sler_beam: both channels are zero");
  }
  const double reg = std::pow(tilt_decay, tilt_exponent) * sler_regularizer(h11, ebar, p_max, k1);
  const Eigen::Index m = h11.cols();
  const CMatrix denom = gram21 + reg * CMatrix::Identity(m, m);
  try {
    const EigPair pair = generalized_eigmax(hermitian_part(gram11), hermitian_part(denom));
    return SlerBeam{pair.vector, pair.value};
  } catch (const IllConditioned&) {
    // Leakage-free directions exist: a small ridge picks the one with the most
    // harvested energy among them.
    const double ridge = 1e-9 * std::max(gram11.norm(), gram21.norm());
    const EigPair pair = generalized_eigmax(
        hermitian_part(gram11), hermitian_part(denom + ridge * CMatrix::Identity(m, m)));
    const double leak = (h21 * pair.vector).squaredNorm() + reg;
    const double gain = (h11 * pair.vector).squaredNorm();
    return SlerBeam{pair.vector, leak > 0.0 ? gain / leak : pair.value};
  }
}

CVector sler_direction(const CMatrix& h11, const CMatrix& h21, double ebar, double p_max, int k1,
                       double tilt_decay, int tilt_exponent) {
  return sler_beam(h11, h21, ebar, p_max, k1, tilt_decay, tilt_exponent).direction;
}

CVector whitened_mlb_direction(const CMatrix& h21, const CMatrix& c, double noise_power) {
  if (c.rows() != h21.rows() || c.cols() != h21.rows()) {
    throw InvalidArgument("whitened_mlb_direction: covariance dimension mismatch");
  }
  require_psd(c, "whitened_mlb_direction");
  if (!(noise_power > 0.0)) throw InvalidArgument("whitened_mlb_direction: noise must be > 0");
  const HermitianEig eig = hermitian_eig(c);
  RVector weight(eig.values.size());
  for (Eigen::Index i = 0; i < weight.size(); ++i) {
    weight(i) = 1.0 / (noise_power + std::max(eig.values(i), 0.0));
  }
  const CMatrix projected = eig.vectors.adjoint() * h21;
  const CMatrix form = projected.adjoint() * weight.asDiagonal() * projected;
  const HermitianEig form_eig = hermitian_eig(hermitian_part(form));
  return form_eig.vectors.col(form_eig.vectors.cols() - 1);
}

BeamStatistics beam_statistics(const EffectiveChannels& effective, const ChannelSet& channels,
                               const std::vector<CVector>& directions) {
  if (directions.size() != effective.eh.size()) {
    throw InvalidArgument("beam_statistics: one direction per energy transmitter expected");
  }
  BeamStatistics stats;
  stats.omega.reserve(directions.size());
  for (std::size_t j = 0; j < directions.size(); ++j) {
    if (std::abs(directions[j].norm() - 1.0) > 1e-9) {
      throw InvalidArgument("beam_statistics: directions must be unit norm");
    }
    stats.omega.push_back((effective.h11[j] * directions[j]).squaredNorm());
  }
  stats.shape.resize(effective.id.size());
  for (std::size_t i = 0; i < effective.id.size(); ++i) {
    for (std::size_t j = 0; j < directions.size(); ++j) {
      const CVector g = channels.link(effective.id[i], effective.eh[j]) * directions[j];
      stats.shape[i].push_back(g * g.adjoint());
    }
  }
  return stats;
}

std::vector<CVector> scheme_directions(const EffectiveChannels& effective, Scheme scheme,
                                       double ebar, double p_max, double tilt_decay,
                                       int tilt_exponent) {
  const int k1 = static_cast<int>(effective.eh.size());
  std::vector<CVector> out;
  out.reserve(effective.eh.size());
  for (std::size_t j = 0; j < effective.eh.size(); ++j) {
    switch (scheme) {
      case Scheme::MEB:
        out.push_back(meb_direction(effective.h11[j]));
        break;
      case Scheme::MLB:
        // With no ID receivers there is nothing to protect; fall back to MEB.
        out.push_back(effective.id.empty() ? meb_direction(effective.h11[j])
                                           : mlb_direction(effective.h21[j]));
        break;
      case Scheme::SLER:
      case Scheme::SLER_TILT:
        out.push_back(effective.id.empty()
                          ? meb_direction(effective.h11[j])
                          : sler_direction(effective.h11[j], effective.h21[j], ebar, p_max, k1,
                                           tilt_decay, scheme == Scheme::SLER ? 0 : tilt_exponent));
        break;
    }
  }
  return out;
}

}  // namespace swipt
