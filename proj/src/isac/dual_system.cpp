#include "abal/isac/dual_system.hpp"

#include <cmath>

#include "abal/isac/operators.hpp"

namespace abal::isac {

DualSystemFactor build_dual_factor(const ScenarioData& s, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ContractError("theta must be positive");
  const Index k = s.users();

  DualSystemFactor f;
  f.H = s.H;
  f.theta = theta;
  f.rho_plus_one = s.rho.array() + 1.0;
  f.d = static_cast<double>(k) + 2.0 + theta * theta;

  const RMatrix gram_sq = (s.H.adjoint() * s.H).cwiseAbs2();
  f.S = RMatrix::Ones(k, k) - f.rho_plus_one * f.rho_plus_one.transpose() / f.d;
  RMatrix weights = f.S;
  weights.diagonal() += s.rho.cwiseAbs2();
  f.L = gram_sq.cwiseProduct(weights);
  f.L.diagonal().array() += theta * theta;
  f.L = 0.5 * (f.L + f.L.transpose());

  f.llt.compute(f.L);
  if (f.llt.info() != Eigen::Success || !(f.llt.matrixLLT().diagonal().minCoeff() > 0.0)) {
    throw NumericalError("dual Schur complement L is not positive definite");
  }
  return f;
}

DualStep solve_dual_system(const DualSystemFactor& factor, const RVector& r, const CMatrix& R) {
  const Index n = factor.antennas();
  if (r.size() != factor.users()) throw ContractError("r has the wrong length");
  if (R.rows() != n || R.cols() != n) throw ContractError("R has the wrong shape");

  const RVector w = column_quadratic_forms(factor.H, R).cwiseProduct(factor.rho_plus_one);
  DualStep out;
  out.mu = factor.llt.solve(r - w / factor.d);
  out.Lambda = (R - weighted_outer_sum(factor.H, out.mu.cwiseProduct(factor.rho_plus_one))) /
               factor.d;
  make_hermitian(out.Lambda);
  return out;
}

}  // namespace abal::isac
