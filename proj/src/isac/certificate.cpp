#include "abal/isac/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

namespace abal::isac {

double trace_inverse(const CMatrix& m) {
  Eigen::LLT<CMatrix> llt(hermitian_part(m));
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const auto diag = llt.matrixLLT().diagonal();
  for (Index i = 0; i < diag.size(); ++i) {
    if (!(diag(i).real() > 0.0)) return std::numeric_limits<double>::infinity();
  }
  // tr(M^{-1}) = ||L^{-1}||_F^2 for M = L L^H.
  const CMatrix linv = llt.matrixL().solve(CMatrix::Identity(m.rows(), m.cols()));
  return linv.squaredNorm();
}

double isac_objective(const std::vector<CMatrix>& W) {
  if (W.empty()) throw ContractError("objective needs at least one block");
  CMatrix sum = W.front();
  for (size_t i = 1; i < W.size(); ++i) sum += W[i];
  return trace_inverse(sum);
}

RVector sinr_slacks(const ScenarioData& s, const std::vector<CMatrix>& W) {
  if (static_cast<Index>(W.size()) != s.users() + 1) throw ContractError("wrong W block count");
  CMatrix sum = W.front();
  for (size_t i = 1; i < W.size(); ++i) sum += W[i];
  RVector slack = -column_quadratic_forms(s.H, sum);
  for (Index k = 0; k < s.users(); ++k) {
    slack(k) += s.rho(k) * quadratic_form(W[static_cast<size_t>(k)], s.H.col(k)) - s.sigma2;
  }
  return slack;
}

double total_power(const std::vector<CMatrix>& W) {
  double p = 0.0;
  for (const auto& w : W) p += w.trace().real();
  return p;
}

double certificate_tolerance(const ScenarioData& s, double eps) {
  return eps * s.sigma2 / (1.0 + s.min_channel_gain());
}

FeasibilityCertificate check_certificate(const ScenarioData& s, const PrimalState& x, double eps) {
  if (!(eps > 0.0)) throw ContractError("certificate needs eps > 0");
  FeasibilityCertificate c;
  c.eps = eps;
  c.tol = certificate_tolerance(s, eps);
  const RVector target = RVector::Constant(s.users(), (1.0 + eps) * s.sigma2);
  c.sinr_residual = (apply_A(s, x) - target).norm();
  c.coupling_residual = apply_B(s, x).norm();
  c.satisfied = std::max(c.sinr_residual, c.coupling_residual) <= c.tol;

  c.slacks = sinr_slacks(s, x.W);
  c.power = total_power(x.W);
  c.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& w : x.W) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(w), Eigen::EigenvaluesOnly);
    c.min_eigenvalue = std::min(c.min_eigenvalue, eig.eigenvalues().minCoeff());
  }
  const double scale = std::max(1.0, s.p_t);
  c.original_feasible = c.slacks.minCoeff() >= -kFeasibilityRoundoff &&
                        c.power <= s.p_t * (1.0 + kFeasibilityRoundoff) &&
                        c.min_eigenvalue >= -kFeasibilityRoundoff * scale;
  return c;
}

}  // namespace abal::isac
