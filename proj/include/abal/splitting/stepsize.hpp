#pragma once

#include <cstdint>
#include <functional>

namespace abal {

/// Relaxation weight omega_t as a function of the iteration counter.
using OmegaSchedule = std::function<double(long)>;

/// omega_t = (t + 1)^{-2}: omega_0 = 1 and the series is summable.
double omega_default(long t);

struct AbalConfig {
  double tau0 = 1.0;
  double eta_lo = 1e-2;
  double eta_hi = 1e2;
  OmegaSchedule omega = omega_default;
  long max_iter = 10000;
  double stop_tol = 1e-6;
  // Seeds randomized helpers (power iteration start vectors).
  std::uint64_t seed = 0;

  /// Throws ContractError on tau0 <= 0, bad eta bounds, omega_0 != 1,
  /// negative iteration budget or tolerance.
  void validate() const;
};

/// Stepsize controller state after iteration `t` has been applied.
/// `tau_cur` is the stepsize the next iteration uses as tau_{t-1}.
struct StepsizeState {
  double tau_prev = 1.0;
  double tau_cur = 1.0;
  double eta = 1.0;
  double kappa = 1.0;
  long t = 0;

  /// tau_{-1} := tau_0.
  static StepsizeState initial(double tau0) { return {tau0, tau0, 1.0, 1.0, 0}; }
};

/// eta_t = clamp(norm_u / norm_gap, eta_lo, eta_hi) (eta_hi when norm_gap is
/// zero), kappa_t = 1 - omega + omega * eta_t, tau_t = kappa_t * tau_{t-1}.
StepsizeState adapt_stepsize(const StepsizeState& state, double norm_u, double norm_gap,
                             double omega, double eta_lo, double eta_hi);

}  // namespace abal
