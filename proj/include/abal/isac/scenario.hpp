#pragma once

#include "abal/linalg.hpp"

namespace abal::isac {

/// Channels, SINR targets and budgets of one beamforming instance.
///
/// The user covariances Q_k = h_k h_k^H are never formed; every contraction
/// <Q_k, M> is evaluated as h_k^H M h_k.
struct ScenarioData {
  CMatrix H;              // N x K, column k is h_k
  RVector gamma;          // SINR targets Gamma_k > 0
  double sigma2 = 1.0;    // noise power
  double p_t = 1.0;       // power budget
  RVector rho;            // 1 + 1 / Gamma_k
  RVector channel_gain;   // ||h_k||^2

  /// Validates and fills the derived fields. Throws ContractError when a
  /// channel is zero, a target or budget is non-positive, or shapes disagree.
  static ScenarioData make(CMatrix H, RVector gamma, double sigma2, double p_t);

  Index antennas() const { return H.rows(); }
  Index users() const { return H.cols(); }
  double min_channel_gain() const { return channel_gain.minCoeff(); }
};

}  // namespace abal::isac
