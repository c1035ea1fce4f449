#pragma once

#include <vector>

#include "abal/linalg.hpp"

namespace abal::isac {

/// Euclidean projection of v onto {x >= 0, sum x = s} (sort and threshold).
RVector simplex_project(const RVector& v, double s);

/// Projection onto the set of Hermitian PSD blocks with total trace p_t.
///
/// Each block is eigendecomposed, all eigenvalues are projected jointly onto
/// the simplex scaled to p_t, and every block is rebuilt from its own
/// eigenvectors. The set is invariant under per-block unitary congruence, so
/// the joint eigenvalue projection is the exact Euclidean projection.
std::vector<CMatrix> project_W(const std::vector<CMatrix>& blocks, double p_t);

/// Unique z > 0 with z^3 - sigma z^2 - tau = 0 (tau > 0), by Newton's method
/// safeguarded with bisection on the bracket [max(sigma, 0), max(sigma, 0) + tau^{1/3} + 1].
double cubic_positive_root(double sigma, double tau);

/// prox of tau tr(Z^{-1}) over positive definite Z: eigenvalues sigma_i of
/// z_tilde map to cubic_positive_root(sigma_i, tau).
CMatrix prox_trace_inverse(const CMatrix& z_tilde, double tau);

}  // namespace abal::isac
