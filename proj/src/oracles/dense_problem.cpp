#include "abal/oracles/dense_problem.hpp"

#include <vector>

#include "abal/isac/certificate.hpp"
#include "abal/isac/prox.hpp"

namespace abal::oracles {

CVector vectorize(const isac::PrimalState& x) {
  const Index n = x.Z.rows();
  const Index nn = n * n;
  CVector u(nn * static_cast<Index>(x.W.size() + 1));
  for (size_t b = 0; b < x.W.size(); ++b) {
    u.segment(static_cast<Index>(b) * nn, nn) = x.W[b].reshaped();
  }
  u.tail(nn) = x.Z.reshaped();
  return u;
}

isac::PrimalState devectorize(const CVector& u, Index n, Index k) {
  const Index nn = n * n;
  if (u.size() != nn * (k + 2)) throw ContractError("vectorized primal has the wrong size");
  isac::PrimalState x;
  for (Index b = 0; b <= k; ++b) x.W.push_back(u.segment(b * nn, nn).reshaped(n, n));
  x.Z = u.tail(nn).reshaped(n, n);
  return x;
}

CVector vectorize_dual(const RVector& mu, const CMatrix& Lambda) {
  CVector lambda(mu.size() + Lambda.size());
  lambda.head(mu.size()) = mu.cast<Complex>();
  lambda.tail(Lambda.size()) = Lambda.reshaped();
  return lambda;
}

isac::DualState devectorize_dual(const CVector& lambda, Index n, Index k) {
  if (lambda.size() != k + n * n) throw ContractError("vectorized dual has the wrong size");
  return {lambda.head(k).real(), lambda.tail(n * n).reshaped(n, n)};
}

SparseCMatrix assemble_constraint_matrix(const isac::ScenarioData& s) {
  const Index n = s.antennas();
  const Index k = s.users();
  const Index nn = n * n;
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<size_t>((3 * k + 2) * nn));

  for (Index user = 0; user < k; ++user) {
    const auto h = s.H.col(user);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        // conj(Q_ij) with Q = h h^H.
        const Complex q_conj = std::conj(h(i) * std::conj(h(j)));
        const Index pos = i + j * n;
        entries.emplace_back(user, user * nn + pos, s.rho(user) * q_conj);  // A1
        entries.emplace_back(user, (k + 1) * nn + pos, -q_conj);             // B1
      }
    }
  }
  for (Index pos = 0; pos < nn; ++pos) {
    for (Index block = 0; block <= k; ++block) {
      entries.emplace_back(k + pos, block * nn + pos, Complex(1.0, 0.0));  // A2
    }
    entries.emplace_back(k + pos, (k + 1) * nn + pos, Complex(-1.0, 0.0));  // B2
  }
  SparseCMatrix D(k + nn, (k + 2) * nn);
  D.setFromTriplets(entries.begin(), entries.end());
  return D;
}

DenseDualSystem assemble_dense_dual_system(const SparseCMatrix& D, Index users, double theta) {
  if (!(theta > 0.0)) throw ContractError("theta must be positive");
  DenseDualSystem system;
  system.users = users;
  const SparseCMatrix gram = D * SparseCMatrix(D.adjoint());
  system.matrix = CMatrix(gram);
  system.matrix.diagonal().array() += theta * theta;
  system.llt.compute(system.matrix);
  if (system.llt.info() != Eigen::Success) {
    throw NumericalError("dense dual system factorization failed");
  }
  return system;
}

DenseDualSystem assemble_dense_dual_system(const isac::ScenarioData& s, double theta) {
  return assemble_dense_dual_system(assemble_constraint_matrix(s), s.users(), theta);
}

CVector dense_dual_solve(const DenseDualSystem& system, const CVector& p) {
  if (system.llt.info() != Eigen::Success) throw NumericalError("dense dual system not factored");
  if (p.size() != system.matrix.rows()) throw ContractError("p has the wrong size");
  return system.llt.solve(p);
}

RMatrix dense_schur_complement(const DenseDualSystem& system) {
  const Index k = system.users;
  const Index rest = system.matrix.rows() - k;
  const CMatrix m12 = system.matrix.topRightCorner(k, rest);
  const Complex d = system.matrix(k, k);
  const CMatrix schur = system.matrix.topLeftCorner(k, k) - m12 * m12.adjoint() / d;
  return schur.real();
}

DenseIsacProblem::DenseIsacProblem(const isac::ScenarioData& s, double theta, double rhs_level)
    : n_(s.antennas()),
      k_(s.users()),
      p_t_(s.p_t),
      theta_(theta),
      D_(assemble_constraint_matrix(s)),
      system_(assemble_dense_dual_system(D_, s.users(), theta)),
      b_(CVector::Zero(D_.rows())) {
  b_.head(k_).setConstant(Complex(rhs_level, 0.0));
}

CVector DenseIsacProblem::prox(const CVector& v, double tau) const {
  isac::PrimalState x = devectorize(v, n_, k_);
  for (auto& w : x.W) make_hermitian(w);
  x.W = isac::project_W(x.W, p_t_);
  x.Z = isac::prox_trace_inverse(hermitian_part(x.Z), tau);
  return vectorize(x);
}

double DenseIsacProblem::objective(const CVector& u) const {
  return isac::trace_inverse(u.tail(n_ * n_).reshaped(n_, n_));
}

}  // namespace abal::oracles
