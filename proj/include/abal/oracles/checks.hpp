#pragma once

#include <functional>
#include <vector>

#include "abal/isac/operators.hpp"
#include "abal/rng.hpp"

namespace abal::oracles {

/// argmin_{z > 0} tau / z + (z - sigma)^2 / 2, by plain bisection on the
/// increasing stationarity function z^3 - sigma z^2 - tau over an expanding
/// bracket. Tolerance 1e-12 relative.
double scalar_prox_oracle(double sigma, double tau);

using FeasibleSampler = std::function<std::vector<CMatrix>(CounterRng&)>;

/// Random PSD blocks of random rank, rescaled to total trace p_t.
FeasibleSampler make_feasible_sampler(Index n, Index blocks, double p_t);

/// Membership in {W_b Hermitian PSD, sum_b tr(W_b) = p_t} with tolerance
/// tol * p_t on the trace and eigenvalues.
bool is_in_power_set(const std::vector<CMatrix>& blocks, double p_t, double tol = 1e-12);

/// True iff `candidate` is feasible and no sampled feasible point is closer
/// to `point` (slack 1e-10). Besides each raw sample Y, the segment point
/// candidate + 1e-3 (Y - candidate) is tested, which probes the
/// variational inequality of the projection locally.
bool projection_distance_check(const std::vector<CMatrix>& point,
                               const std::vector<CMatrix>& candidate, double p_t,
                               const FeasibleSampler& sampler, int trials, CounterRng& rng);

using AdjointMap =
    std::function<isac::PrimalState(const isac::ScenarioData&, const RVector&, const CMatrix&)>;

/// max over random (W, Z, mu, Lambda) of
///   |Re<A(W,Z), mu> + Re<B(W,Z), Lambda> - Re<(W,Z), adjoint(mu,Lambda)>| / scale,
/// scale = max of the two sides. Zero inputs contribute zero.
double adjoint_consistency(const isac::ScenarioData& s, int trials, CounterRng& rng,
                           const AdjointMap& adjoint = isac::apply_adjoint);

struct ReferenceOptions {
  double theta = 1e-2;
  double tau0 = 1.0;
  double stop_tol = 1e-10;
  long max_iter = 200000;
};

struct ReferenceSolution {
  isac::PrimalState primal;
  double objective = 0.0;  // tr((sum_k W_k)^{-1})
  long iterations = 0;
  bool converged = false;
};

/// High-accuracy solution of the problem with sigma2 replaced by
/// (1 + eps) sigma2, by the generic adaptive solver on the explicitly
/// assembled vectorized problem. Intended for N <= 16, K <= 4.
ReferenceSolution reference_solve(const isac::ScenarioData& s, double eps,
                                  const ReferenceOptions& options = {});

}  // namespace abal::oracles
