#include "abal/isac/scenario.hpp"

#include <cmath>
#include <string>

namespace abal::isac {

ScenarioData ScenarioData::make(CMatrix H, RVector gamma, double sigma2, double p_t) {
  if (H.rows() < 1 || H.cols() < 1) throw ContractError("channel matrix must be non-empty");
  if (gamma.size() != H.cols()) {
    throw ContractError("expected " + std::to_string(H.cols()) + " SINR targets, got " +
                        std::to_string(gamma.size()));
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ContractError("sigma2 must be positive");
  if (!(p_t > 0.0) || !std::isfinite(p_t)) throw ContractError("p_t must be positive");
  if (!H.allFinite()) throw ContractError("channel matrix has non-finite entries");

  ScenarioData s;
  s.channel_gain = H.colwise().squaredNorm().transpose();
  for (Index k = 0; k < H.cols(); ++k) {
    if (!(gamma(k) > 0.0) || !std::isfinite(gamma(k))) {
      throw ContractError("SINR target " + std::to_string(k) + " must be positive");
    }
    if (!(s.channel_gain(k) > 0.0)) {
      throw ContractError("channel " + std::to_string(k) + " is zero");
    }
  }
  s.rho = gamma.cwiseInverse().array() + 1.0;
  s.H = std::move(H);
  s.gamma = std::move(gamma);
  s.sigma2 = sigma2;
  s.p_t = p_t;
  return s;
}

}  // namespace abal::isac
