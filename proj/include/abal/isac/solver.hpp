#pragma once

#include <optional>
#include <string_view>

#include "abal/isac/certificate.hpp"
#include "abal/isac/dual_system.hpp"
#include "abal/isac/operators.hpp"
#include "abal/splitting/solver.hpp"

namespace abal::isac {

enum class Algorithm { abal, bal_c, tfpdhg };

std::string_view to_string(Algorithm algo);
/// Parses "abal", "bal_c" or "tfpdhg"; throws ContractError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct IsacOptions {
  AbalConfig abal;  // tau0, eta bounds, omega schedule, max_iter, seed
  Algorithm algorithm = Algorithm::abal;
  double theta = 1e-2;
  double eps = 1e-3;
  double bal_tau = 1.0;
  double bal_gamma = 1.0;
  double upsilon = 1.0;
  // Stall diagnostic: no 1% improvement of the certificate residual within
  // this many iterations while tau has collapsed below tau_collapse * tau0.
  long stall_window = 2000;
  double tau_collapse = 1e-6;
  bool record_history = true;

  void validate() const;
};

/// Full iterate of the customized loop. `A_cur` and `B_cur` cache the
/// operator values at `primal` for the next extrapolated residual.
struct IsacIterate {
  PrimalState primal;
  DualState dual;
  StepsizeState step;
  RVector A_cur;
  CMatrix B_cur;

  /// Initial point for the given stepsize, duals zero.
  static IsacIterate start(const ScenarioData& s, const PrimalState& x0, double tau0);
};

struct IterationStats {
  double sinr_residual = 0.0;      // ||A(W+, Z+) - rhs||
  double coupling_residual = 0.0;  // ||B(W+, Z+)||_F
  bool finite = true;
};

/// One iteration of the structure-exploiting loop on the split problem with
/// right-hand side `rhs_level` 1 for the SINR rows. The multiplier step
/// follows `rule`: the exact regularized solve through `factor` scaled by
/// (gamma tau_t)^{-1}, or the scaled-identity step of TF-PDHG.
IterationStats customized_iteration(const ScenarioData& s, const DualSystemFactor& factor,
                                    const IterationRule& rule, double omega, double rhs_level,
                                    IsacIterate& it);

/// Largest eigenvalue of D D^H for the split problem, by power iteration.
double isac_op_norm_sq(const ScenarioData& s, CounterRng& rng, double rel_tol = 1e-6,
                       int max_iter = 500);

struct IsacResult {
  RunReport report;
  PrimalState primal;
  DualState dual;
  FeasibilityCertificate certificate;
  double objective = 0.0;  // tr((sum_k W_k)^{-1})
  bool suspected_infeasible = false;
  Algorithm algorithm = Algorithm::abal;
};

/// Solves the problem with sigma2 replaced by (1 + eps) sigma2 until the
/// feasibility certificate holds or the budget runs out.
IsacResult isac_solve(const ScenarioData& s, const IsacOptions& options);

/// Same, from a caller-supplied starting point.
IsacResult isac_solve(const ScenarioData& s, const IsacOptions& options, const PrimalState& x0,
                      const DualState& y0);

}  // namespace abal::isac
