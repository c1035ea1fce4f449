#pragma once

#include <vector>

#include "abal/isac/scenario.hpp"

namespace abal::isac {

/// Blocks W_1..W_{K+1} and the auxiliary Z = sum_k W_k of the split problem.
struct PrimalState {
  std::vector<CMatrix> W;
  CMatrix Z;

  static PrimalState zeros(Index n, Index k);
  /// W_k = P_T / ((K+1) N) I, Z = sum_k W_k.
  static PrimalState initial(const ScenarioData& s);

  double squared_norm() const;
};

/// Multipliers of the SINR equalities (mu) and of the coupling Z = sum W_k (Lambda).
struct DualState {
  RVector mu;
  CMatrix Lambda;

  static DualState zeros(Index n, Index k);
  double squared_norm() const { return mu.squaredNorm() + Lambda.squaredNorm(); }
};

/// Entry k: rho_k h_k^H W_k h_k - h_k^H Z h_k.
RVector apply_A(const ScenarioData& s, const PrimalState& x);

/// sum_k W_k - Z.
CMatrix apply_B(const ScenarioData& s, const PrimalState& x);

/// Adjoint of (A, B) at (mu, Lambda):
///   W-block k <= K: rho_k mu_k Q_k + Lambda,  W-block K+1: Lambda,
///   Z-block: -sum_k mu_k Q_k - Lambda.
PrimalState apply_adjoint(const ScenarioData& s, const RVector& mu, const CMatrix& Lambda);

/// sum_k c_k h_k h_k^H = H Diag(c) H^H (N x N).
CMatrix weighted_outer_sum(const CMatrix& H, const RVector& c);

/// h_k^H M h_k for every column of H.
RVector column_quadratic_forms(const CMatrix& H, const CMatrix& M);

/// Throws ContractError unless every matrix in `x` matches the scenario
/// shape and is Hermitian to 1e-10 relative.
void check_primal(const ScenarioData& s, const PrimalState& x);

}  // namespace abal::isac
