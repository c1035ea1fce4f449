#include "abal/isac/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace abal::isac {

RVector simplex_project(const RVector& v, double s) {
  if (!(s > 0.0)) throw ContractError("simplex scale must be positive");
  if (v.size() == 0) throw ContractError("cannot project an empty vector onto the simplex");

  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double cumulative = 0.0;
  double threshold = 0.0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - s) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) threshold = candidate;
  }
  return (v.array() - threshold).max(0.0).matrix();
}

std::vector<CMatrix> project_W(const std::vector<CMatrix>& blocks, double p_t) {
  if (blocks.empty()) throw ContractError("project_W needs at least one block");
  const Index n = blocks.front().rows();

  std::vector<CMatrix> vectors;
  vectors.reserve(blocks.size());
  RVector all(n * static_cast<Index>(blocks.size()));
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].rows() != n || blocks[b].cols() != n) {
      throw ContractError("block " + std::to_string(b) + " has inconsistent shape");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(blocks[b]));
    if (eig.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition failed for block " + std::to_string(b));
    }
    all.segment(static_cast<Index>(b) * n, n) = eig.eigenvalues();
    vectors.push_back(eig.eigenvectors());
  }

  const RVector projected = simplex_project(all, p_t);
  std::vector<CMatrix> out;
  out.reserve(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    out.push_back(rebuild_hermitian(vectors[b], projected.segment(static_cast<Index>(b) * n, n)));
  }
  return out;
}

double cubic_positive_root(double sigma, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ContractError("cubic root needs tau > 0");
  if (!std::isfinite(sigma)) throw ContractError("cubic root needs finite sigma");

  // g(z) = z^2 (z - sigma) - tau is negative on (0, max(sigma, 0)] and
  // strictly increasing beyond, so the positive root is unique.
  const auto g = [&](double z) { return z * z * (z - sigma) - tau; };
  const double base = std::max(sigma, 0.0);
  double lo = base;
  double hi = base + std::cbrt(tau) + 1.0;
  while (g(hi) <= 0.0) {
    hi = base + 2.0 * (hi - base);
    if (!std::isfinite(hi)) throw NumericalError("cubic root bracket expansion overflowed");
  }

  double z = std::clamp(base + std::cbrt(tau), lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double gz = g(z);
    if (gz == 0.0) return z;
    if (gz < 0.0) lo = z; else hi = z;

    const double slope = z * (3.0 * z - 2.0 * sigma);
    double next = slope > 0.0 ? z - gz / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 4.0 * std::numeric_limits<double>::epsilon() * next ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      // Never report a point at or below the lower end of the bracket.
      return next > base ? next : hi;
    }
    z = next;
  }
  throw NumericalError("cubic root solver did not converge (sigma=" + std::to_string(sigma) +
                       ", tau=" + std::to_string(tau) + ")");
}

CMatrix prox_trace_inverse(const CMatrix& z_tilde, double tau) {
  if (!(tau > 0.0)) throw ContractError("prox_trace_inverse needs tau > 0");
  const HermitianEigen eig = hermitian_eigen(z_tilde);
  RVector z(eig.values.size());
  for (Index i = 0; i < z.size(); ++i) z(i) = cubic_positive_root(eig.values(i), tau);
  return rebuild_hermitian(eig.vectors, z);
}

}  // namespace abal::isac
