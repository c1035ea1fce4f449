#pragma once

#include <optional>

#include "abal/linalg.hpp"

namespace abal {

/// Capability set of  min f(u)  s.t.  D u = b  consumed by the splitting
/// solvers. The solvers only touch f through its proximal map and D through
/// forward/adjoint actions plus the regularized normal solve.
///
/// Implementations are immutable after construction and may be shared by
/// concurrent solves.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual Index primal_dim() const = 0;
  virtual Index dual_dim() const = 0;
  virtual double theta() const = 0;

  /// argmin_u f(u) + ||u - v||^2 / (2 tau).
  virtual CVector prox(const CVector& v, double tau) const = 0;
  /// D u.
  virtual CVector apply_constraint(const CVector& u) const = 0;
  /// D^H lambda.
  virtual CVector apply_adjoint(const CVector& lambda) const = 0;
  /// (D D^H + theta^2 I)^{-1} p.
  virtual CVector solve_regularized(const CVector& p) const = 0;
  virtual const CVector& rhs() const = 0;
  virtual double objective(const CVector& u) const = 0;

  /// Problem-specific stopping predicate evaluated at u^{t+1}. When it
  /// returns a value it replaces the default ||Du - b|| <= stop_tol test.
  virtual std::optional<bool> stop_test(const CVector& /*u*/, double /*residual_norm*/) const {
    return std::nullopt;
  }
};

}  // namespace abal
