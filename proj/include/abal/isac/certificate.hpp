#pragma once

#include <vector>

#include "abal/isac/operators.hpp"

namespace abal::isac {

/// tr(M^{-1}) for Hermitian positive definite M; +infinity when the Cholesky
/// factorization fails (singular or indefinite input).
double trace_inverse(const CMatrix& m);

/// CRB objective tr((sum_k W_k)^{-1}) of the original problem.
double isac_objective(const std::vector<CMatrix>& W);

/// Exact SINR slacks rho_k h_k^H W_k h_k - h_k^H (sum_i W_i) h_k - sigma2.
RVector sinr_slacks(const ScenarioData& s, const std::vector<CMatrix>& W);

double total_power(const std::vector<CMatrix>& W);

struct FeasibilityCertificate {
  double eps = 0.0;
  double tol = 0.0;                // eps sigma2 / (1 + min_k ||h_k||^2)
  double sinr_residual = 0.0;      // ||A(W, Z) - (1 + eps) sigma2 1||
  double coupling_residual = 0.0;  // ||B(W, Z)||_F
  bool satisfied = false;
  bool original_feasible = false;  // exact slacks >= 0, power <= P_T, blocks PSD
  RVector slacks;
  double power = 0.0;
  double min_eigenvalue = 0.0;
};

/// Slack below which a computed constraint value is treated as rounding noise.
inline constexpr double kFeasibilityRoundoff = 1e-12;

double certificate_tolerance(const ScenarioData& s, double eps);

FeasibilityCertificate check_certificate(const ScenarioData& s, const PrimalState& x, double eps);

}  // namespace abal::isac
