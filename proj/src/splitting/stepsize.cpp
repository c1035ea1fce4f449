#include "abal/splitting/stepsize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abal/linalg.hpp"

namespace abal {

double omega_default(long t) {
  const double s = static_cast<double>(t) + 1.0;
  return 1.0 / (s * s);
}

void AbalConfig::validate() const {
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) throw ContractError("tau0 must be positive");
  if (!(eta_lo > 0.0) || !(eta_lo < eta_hi)) {
    throw ContractError("eta bounds must satisfy 0 < eta_lo < eta_hi");
  }
  if (!omega) throw ContractError("omega schedule is empty");
  if (omega(0) != 1.0) throw ContractError("omega schedule must start at 1");
  if (max_iter < 0) throw ContractError("max_iter must be nonnegative");
  if (!(stop_tol >= 0.0)) throw ContractError("stop_tol must be nonnegative");
}

StepsizeState adapt_stepsize(const StepsizeState& state, double norm_u, double norm_gap,
                             double omega, double eta_lo, double eta_hi) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw ContractError("omega must lie in [0, 1], got " + std::to_string(omega));
  }
  if (!(eta_lo > 0.0) || !(eta_lo < eta_hi)) {
    throw ContractError("eta bounds must satisfy 0 < eta_lo < eta_hi");
  }
  StepsizeState next;
  next.eta = norm_gap > 0.0 ? std::clamp(norm_u / norm_gap, eta_lo, eta_hi) : eta_hi;
  next.kappa = 1.0 - omega + omega * next.eta;
  next.tau_prev = state.tau_cur;
  next.tau_cur = next.kappa * state.tau_cur;
  next.t = state.t + 1;
  return next;
}

}  // namespace abal
