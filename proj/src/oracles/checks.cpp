#include "abal/oracles/checks.hpp"

#include <algorithm>
#include <cmath>

#include "abal/isac/certificate.hpp"
#include "abal/oracles/dense_problem.hpp"
#include "abal/splitting/solver.hpp"

namespace abal::oracles {
namespace {

double distance_sq(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]).squaredNorm();
  return total;
}

}  // namespace

double scalar_prox_oracle(double sigma, double tau) {
  const auto g = [&](double z) { return z * z * z - sigma * z * z - tau; };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

FeasibleSampler make_feasible_sampler(Index n, Index blocks, double p_t) {
  return [n, blocks, p_t](CounterRng& rng) {
    std::vector<CMatrix> out;
    double trace = 0.0;
    while (!(trace > 0.0)) {
      out.clear();
      trace = 0.0;
      for (Index b = 0; b < blocks; ++b) {
        const auto rank = static_cast<Index>(rng() % static_cast<std::uint64_t>(n + 1));
        const double weight = rng.uniform();
        CMatrix block = CMatrix::Zero(n, n);
        if (rank > 0) {
          const CMatrix g = random_complex_matrix(rng, n, rank);
          block = weight * g * g.adjoint();
        }
        trace += block.trace().real();
        out.push_back(std::move(block));
      }
    }
    for (auto& block : out) {
      block *= p_t / trace;
      make_hermitian(block);
    }
    return out;
  };
}

bool is_in_power_set(const std::vector<CMatrix>& blocks, double p_t, double tol) {
  double trace = 0.0;
  for (const auto& b : blocks) {
    if (hermitian_defect(b) > tol * std::max(1.0, b.norm())) return false;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(b), Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -tol * p_t) return false;
    trace += b.trace().real();
  }
  return std::abs(trace - p_t) <= tol * p_t;
}

bool projection_distance_check(const std::vector<CMatrix>& point,
                               const std::vector<CMatrix>& candidate, double p_t,
                               const FeasibleSampler& sampler, int trials, CounterRng& rng) {
  if (point.size() != candidate.size()) return false;
  if (!is_in_power_set(candidate, p_t)) return false;
  const double best = std::sqrt(distance_sq(point, candidate));
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<CMatrix> sample = sampler(rng);
    if (best > std::sqrt(distance_sq(point, sample)) + 1e-10) return false;
    std::vector<CMatrix> nearby = candidate;
    for (size_t i = 0; i < nearby.size(); ++i) nearby[i] += 1e-3 * (sample[i] - candidate[i]);
    if (best > std::sqrt(distance_sq(point, nearby)) + 1e-10) return false;
  }
  return true;
}

double adjoint_consistency(const isac::ScenarioData& s, int trials, CounterRng& rng,
                           const AdjointMap& adjoint) {
  const Index n = s.antennas();
  const Index k = s.users();
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    isac::PrimalState x;
    for (Index b = 0; b <= k; ++b) x.W.push_back(random_hermitian(rng, n));
    x.Z = random_hermitian(rng, n);
    RVector mu(k);
    for (Index i = 0; i < k; ++i) mu(i) = rng.normal();
    const CMatrix lambda = random_hermitian(rng, n);

    const double lhs =
        isac::apply_A(s, x).dot(mu) + real_inner(isac::apply_B(s, x), lambda);
    const isac::PrimalState g = adjoint(s, mu, lambda);
    double rhs = real_inner(x.Z, g.Z);
    for (Index b = 0; b <= k; ++b) {
      rhs += real_inner(x.W[static_cast<size_t>(b)], g.W[static_cast<size_t>(b)]);
    }
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

ReferenceSolution reference_solve(const isac::ScenarioData& s, double eps,
                                  const ReferenceOptions& options) {
  const DenseIsacProblem problem(s, options.theta, (1.0 + eps) * s.sigma2);
  AbalConfig config;
  config.tau0 = options.tau0;
  config.stop_tol = options.stop_tol;
  config.max_iter = options.max_iter;
  const CVector u0 = vectorize(isac::PrimalState::initial(s));
  const CVector lambda0 = CVector::Zero(problem.dual_dim());
  const SplittingResult run = abal_solve(problem, config, u0, lambda0);

  ReferenceSolution out;
  out.primal = devectorize(run.u, s.antennas(), s.users());
  for (auto& w : out.primal.W) make_hermitian(w);
  make_hermitian(out.primal.Z);
  out.objective = isac::isac_objective(out.primal.W);
  out.iterations = run.report.iterations;
  out.converged = run.report.converged;
  return out;
}

}  // namespace abal::oracles
