#pragma once

#include <string_view>
#include <vector>

#include "abal/rng.hpp"
#include "abal/splitting/problem.hpp"
#include "abal/splitting/stepsize.hpp"

namespace abal {

// `stalled` is only reported by problem-specific drivers that detect a
// residual plateau together with a collapsed stepsize.
enum class Termination { tolerance, max_iter, divergence, stalled };

std::string_view to_string(Termination reason);

struct RunReport {
  long iterations = 0;
  double objective = 0.0;
  std::vector<double> primal_residual_history;  // ||D u^{t+1} - b||
  std::vector<double> tau_history;              // tau_t
  bool converged = false;
  double wall_time = 0.0;
  Termination termination_reason = Termination::max_iter;
};

/// Iterate of the generic solvers. `Du` caches D u for the extrapolated
/// residual of the next iteration.
struct SplittingState {
  CVector u;
  CVector lambda;
  CVector Du;
  StepsizeState step;
};

SplittingState make_initial_state(const Problem& problem, const CVector& u0,
                                  const CVector& lambda0, double tau0);

/// How one iteration chooses kappa_t and tau_t and updates the multiplier.
struct IterationRule {
  enum class Dual { regularized_solve, scaled_identity };

  // Adaptive: the ABAL controller. Otherwise kappa = 1 and tau is frozen.
  bool adaptive = true;
  // Regularized solve: lambda += (gamma tau_t)^{-1} (DD^H + theta^2 I)^{-1} p.
  // Scaled identity: lambda += (upsilon tau_t ||D||^2)^{-1} p.
  Dual dual = Dual::regularized_solve;
  double gamma = 1.0;
  double upsilon = 1.0;
  double op_norm_sq = 0.0;
  double eta_lo = 1e-2;
  double eta_hi = 1e2;

  static IterationRule abal(const AbalConfig& config);
  static IterationRule bal(double gamma);
  static IterationRule tfpdhg(const AbalConfig& config, double upsilon, double op_norm_sq);
};

struct StepInfo {
  double residual_norm = 0.0;  // ||D u^{t+1} - b||
  CVector p;                   // extrapolated residual p^{t+1}
  bool finite = true;
};

/// One iteration of the generic loop, advancing `state` in place:
///   u~ = u - tau_{t-1} D^H lambda,  u+ = prox_{tau_{t-1} f}(u~),
///   eta_t, kappa_t, tau_t from the controller (or kappa = 1),
///   p = D(u+ + kappa (u+ - u)) - b,  lambda += dual step on p.
StepInfo splitting_step(const Problem& problem, const IterationRule& rule, double omega,
                        SplittingState& state);

struct SplittingResult {
  RunReport report;
  CVector u;
  CVector lambda;
};

/// Adaptive balanced augmented Lagrangian solve.
SplittingResult abal_solve(const Problem& problem, const AbalConfig& config, const CVector& u0,
                           const CVector& lambda0);

/// Balanced augmented Lagrangian with constant stepsize tau and dual scaling gamma >= 3/4.
SplittingResult bal_solve(const Problem& problem, double tau, double gamma, long max_iter,
                          double stop_tol, const CVector& u0, const CVector& lambda0);

/// ABAL loop with the multiplier update replaced by the scaled-identity
/// approximation (tuning-free PDHG style). ||D||^2 is estimated by power iteration.
SplittingResult tfpdhg_solve(const Problem& problem, const AbalConfig& config, double upsilon,
                             const CVector& u0, const CVector& lambda0);

/// lambda + (upsilon tau ||D||^2)^{-1} p.
CVector tfpdhg_dual_update(const CVector& lambda, const CVector& p, double tau, double upsilon,
                           double op_norm_sq);

/// Largest eigenvalue of D D^H by power iteration (relative tolerance, iteration cap).
double estimate_op_norm_sq(const Problem& problem, CounterRng& rng, double rel_tol = 1e-6,
                           int max_iter = 500);

}  // namespace abal
