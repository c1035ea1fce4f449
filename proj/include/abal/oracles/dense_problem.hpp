#pragma once

#include <Eigen/Cholesky>
#include <Eigen/SparseCore>

#include "abal/isac/operators.hpp"
#include "abal/splitting/problem.hpp"

namespace abal::oracles {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

/// u = (vec W_1; ...; vec W_{K+1}; vec Z), column-major vec.
CVector vectorize(const isac::PrimalState& x);
isac::PrimalState devectorize(const CVector& u, Index n, Index k);

/// lambda = (mu; vec Lambda).
CVector vectorize_dual(const RVector& mu, const CMatrix& Lambda);
isac::DualState devectorize_dual(const CVector& lambda, Index n, Index k);

/// Explicit constraint matrix D = [A, B] of the vectorized split problem,
/// built entry by entry from vec(Q_k) = vec(h_k h_k^H):
///   A = [A1; A2], A1 = blockdiag_k(rho_k vec(Q_k)^H) padded with a zero
///   block for W_{K+1}, A2 = 1_{K+1}^T (x) I_{N^2};
///   B = [B1; B2], B1 rows -vec(Q_k)^H, B2 = -I_{N^2}.
SparseCMatrix assemble_constraint_matrix(const isac::ScenarioData& s);

/// Fully assembled D D^H + theta^2 I with a direct Cholesky factorization.
struct DenseDualSystem {
  CMatrix matrix;
  Eigen::LLT<CMatrix> llt;
  Index users = 0;
};

DenseDualSystem assemble_dense_dual_system(const isac::ScenarioData& s, double theta);
DenseDualSystem assemble_dense_dual_system(const SparseCMatrix& D, Index users, double theta);

/// Direct solve with the assembled system. Throws NumericalError when the
/// factorization failed.
CVector dense_dual_solve(const DenseDualSystem& system, const CVector& p);

/// Schur complement M11 - M12 M12^H / M22(0,0) of the assembled system,
/// which the structured factor must reproduce as L.
RMatrix dense_schur_complement(const DenseDualSystem& system);

/// The split problem in generic form over the vectorized variables:
/// f(u) = indicator(W set) + tr(Z^{-1}) + indicator(Z PSD), D explicit,
/// b = (rhs_level 1_K; 0).
class DenseIsacProblem final : public Problem {
 public:
  DenseIsacProblem(const isac::ScenarioData& s, double theta, double rhs_level);

  Index primal_dim() const override { return D_.cols(); }
  Index dual_dim() const override { return D_.rows(); }
  double theta() const override { return theta_; }
  CVector prox(const CVector& v, double tau) const override;
  CVector apply_constraint(const CVector& u) const override { return D_ * u; }
  CVector apply_adjoint(const CVector& lambda) const override { return D_.adjoint() * lambda; }
  CVector solve_regularized(const CVector& p) const override {
    return dense_dual_solve(system_, p);
  }
  const CVector& rhs() const override { return b_; }
  /// tr(Z^{-1}).
  double objective(const CVector& u) const override;

  const SparseCMatrix& constraint_matrix() const { return D_; }
  const DenseDualSystem& dual_system() const { return system_; }
  Index antennas() const { return n_; }
  Index users() const { return k_; }

 private:
  Index n_;
  Index k_;
  double p_t_;
  double theta_;
  SparseCMatrix D_;
  DenseDualSystem system_;
  CVector b_;
};

}  // namespace abal::oracles
