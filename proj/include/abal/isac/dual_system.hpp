#pragma once

#include <Eigen/Cholesky>

#include "abal/isac/scenario.hpp"

namespace abal::isac {

/// Precomputed pieces of the block-structured solve with
/// A A^H + B B^H + theta^2 I = [[M11, T12], [T12^H, d I]],  d = K + 2 + theta^2.
///
/// The N^2 x N^2 block is a multiple of the identity, so the inverse reduces
/// to the K x K Schur complement
///   L = theta^2 I + |H^H H|^2 o (Diag(rho o rho) + S),
///   s_ij = 1 - (rho_i + 1)(rho_j + 1) / d.
/// T12 acts as R -> diag(H^H R H) o (rho + 1) and its adjoint as
/// mu -> H Diag(mu o (rho + 1)) H^H; neither is assembled.
struct DualSystemFactor {
  CMatrix H;
  RVector rho_plus_one;
  RMatrix L;
  RMatrix S;
  double d = 0.0;
  double theta = 0.0;
  Eigen::LLT<RMatrix> llt;

  Index users() const { return H.cols(); }
  Index antennas() const { return H.rows(); }
};

/// O(K^2 N + K^3) setup. Throws ContractError for theta <= 0 and
/// NumericalError if L is not positive definite.
DualSystemFactor build_dual_factor(const ScenarioData& s, double theta);

struct DualStep {
  RVector mu;
  CMatrix Lambda;
};

/// (A A^H + B B^H + theta^2 I)^{-1} (r; vec(R)) in O(K^2 + K N^2):
///   w = T12 vec(R),  dmu = L^{-1}(r - w / d),  dLambda = (R - T12^H dmu) / d.
DualStep solve_dual_system(const DualSystemFactor& factor, const RVector& r, const CMatrix& R);

}  // namespace abal::isac
