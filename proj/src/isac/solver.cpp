#include "abal/isac/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "abal/isac/prox.hpp"

namespace abal::isac {
namespace {

constexpr double kDivergenceResidual = 1e12;

IterationRule make_rule(const ScenarioData& s, const IsacOptions& options) {
  switch (options.algorithm) {
    case Algorithm::abal:
      return IterationRule::abal(options.abal);
    case Algorithm::bal_c:
      return IterationRule::bal(options.bal_gamma);
    case Algorithm::tfpdhg: {
      CounterRng rng = CounterRng::stream({options.abal.seed, 0x6f706e6f726dULL});
      return IterationRule::tfpdhg(options.abal, options.upsilon, isac_op_norm_sq(s, rng));
    }
  }
  throw ContractError("unknown algorithm");
}

}  // namespace

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::abal:
      return "abal";
    case Algorithm::bal_c:
      return "bal_c";
    case Algorithm::tfpdhg:
      return "tfpdhg";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "abal") return Algorithm::abal;
  if (name == "bal_c") return Algorithm::bal_c;
  if (name == "tfpdhg") return Algorithm::tfpdhg;
  throw ContractError("unknown algorithm '" + std::string(name) + "'");
}

void IsacOptions::validate() const {
  abal.validate();
  if (!(theta > 0.0)) throw ContractError("theta must be positive");
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  if (!(bal_tau > 0.0)) throw ContractError("BAL-C tau must be positive");
  if (!(bal_gamma >= 0.75)) throw ContractError("BAL-C gamma must be at least 3/4");
  if (!(upsilon >= 1.0)) throw ContractError("TF-PDHG upsilon must be at least 1");
  if (stall_window < 1) throw ContractError("stall_window must be positive");
}

IsacIterate IsacIterate::start(const ScenarioData& s, const PrimalState& x0, double tau0) {
  IsacIterate it;
  it.primal = x0;
  it.dual = DualState::zeros(s.antennas(), s.users());
  it.step = StepsizeState::initial(tau0);
  it.A_cur = apply_A(s, x0);
  it.B_cur = apply_B(s, x0);
  return it;
}

IterationStats customized_iteration(const ScenarioData& s, const DualSystemFactor& factor,
                                    const IterationRule& rule, double omega, double rhs_level,
                                    IsacIterate& it) {
  const double tau_prev = it.step.tau_cur;
  const size_t blocks = it.primal.W.size();

  // u~ = u - tau_{t-1} D^H lambda.
  PrimalState g = apply_adjoint(s, it.dual.mu, it.dual.Lambda);
  std::vector<CMatrix> w_tilde(blocks);
  for (size_t i = 0; i < blocks; ++i) w_tilde[i] = it.primal.W[i] - tau_prev * g.W[i];
  const CMatrix z_tilde = it.primal.Z - tau_prev * g.Z;

  PrimalState next;
  next.W = project_W(w_tilde, s.p_t);
  next.Z = prox_trace_inverse(z_tilde, tau_prev);

  if (rule.adaptive) {
    double gap_sq = (next.Z - z_tilde).squaredNorm();
    for (size_t i = 0; i < blocks; ++i) gap_sq += (next.W[i] - w_tilde[i]).squaredNorm();
    const double theta_tau = factor.theta * tau_prev;
    gap_sq += theta_tau * theta_tau * it.dual.squared_norm();
    it.step = adapt_stepsize(it.step, std::sqrt(next.squared_norm()), std::sqrt(gap_sq), omega,
                             rule.eta_lo, rule.eta_hi);
  } else {
    it.step = {tau_prev, tau_prev, 1.0, 1.0, it.step.t + 1};
  }
  const double kappa = it.step.kappa;
  const double tau = it.step.tau_cur;

  RVector a_next = apply_A(s, next);
  CMatrix b_next = apply_B(s, next);
  const RVector r = (1.0 + kappa) * a_next - kappa * it.A_cur -
                    RVector::Constant(s.users(), rhs_level);
  CMatrix R = (1.0 + kappa) * b_next - kappa * it.B_cur;
  make_hermitian(R);

  IterationStats stats;
  stats.sinr_residual = (a_next - RVector::Constant(s.users(), rhs_level)).norm();
  stats.coupling_residual = b_next.norm();

  if (rule.dual == IterationRule::Dual::regularized_solve) {
    const DualStep step = solve_dual_system(factor, r, R);
    const double scale = 1.0 / (rule.gamma * tau);
    it.dual.mu += scale * step.mu;
    it.dual.Lambda += scale * step.Lambda;
  } else {
    const double scale = 1.0 / (rule.upsilon * tau * rule.op_norm_sq);
    it.dual.mu += scale * r;
    it.dual.Lambda += scale * R;
  }
  make_hermitian(it.dual.Lambda);

  it.primal = std::move(next);
  it.A_cur = std::move(a_next);
  it.B_cur = std::move(b_next);

  stats.finite = std::isfinite(tau) && tau > 0.0 && it.dual.mu.allFinite() &&
                 it.dual.Lambda.allFinite() && it.primal.Z.allFinite() &&
                 std::isfinite(stats.sinr_residual) && std::isfinite(stats.coupling_residual);
  return stats;
}

double isac_op_norm_sq(const ScenarioData& s, CounterRng& rng, double rel_tol, int max_iter) {
  const Index n = s.antennas();
  const Index k = s.users();
  RVector mu(k);
  for (Index i = 0; i < k; ++i) mu(i) = rng.normal();
  CMatrix lambda = random_hermitian(rng, n);
  auto normalize = [&] {
    const double norm = std::sqrt(mu.squaredNorm() + lambda.squaredNorm());
    mu /= norm;
    lambda /= norm;
    return norm;
  };
  normalize();

  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const PrimalState x = apply_adjoint(s, mu, lambda);
    const RVector a = apply_A(s, x);
    const CMatrix b = apply_B(s, x);
    const double next = mu.dot(a) + real_inner(lambda, b);
    mu = a;
    lambda = b;
    normalize();
    if (it > 0 && std::abs(next - estimate) <= rel_tol * std::abs(next)) return next;
    estimate = next;
  }
  return estimate;
}

IsacResult isac_solve(const ScenarioData& s, const IsacOptions& options) {
  return isac_solve(s, options, PrimalState::initial(s),
                    DualState::zeros(s.antennas(), s.users()));
}

IsacResult isac_solve(const ScenarioData& s, const IsacOptions& options, const PrimalState& x0,
                      const DualState& y0) {
  options.validate();
  const auto start = std::chrono::steady_clock::now();

  const DualSystemFactor factor = build_dual_factor(s, options.theta);
  const IterationRule rule = make_rule(s, options);
  const double tau0 = options.algorithm == Algorithm::bal_c ? options.bal_tau : options.abal.tau0;
  const double rhs_level = (1.0 + options.eps) * s.sigma2;
  const double tol = certificate_tolerance(s, options.eps);

  IsacIterate it = IsacIterate::start(s, x0, tau0);
  if (y0.mu.size() != s.users() || y0.Lambda.rows() != s.antennas()) {
    throw ContractError("initial multipliers do not match the scenario");
  }
  it.dual = y0;

  IsacResult result;
  result.algorithm = options.algorithm;
  RunReport& report = result.report;
  double best = std::numeric_limits<double>::infinity();
  long last_improvement = 0;

  for (long t = 0; t < options.abal.max_iter; ++t) {
    const double omega = rule.adaptive ? options.abal.omega(t) : 0.0;
    const IterationStats stats = customized_iteration(s, factor, rule, omega, rhs_level, it);
    ++report.iterations;
    const double residual = std::hypot(stats.sinr_residual, stats.coupling_residual);
    if (options.record_history) {
      report.primal_residual_history.push_back(residual);
      report.tau_history.push_back(it.step.tau_cur);
    }
    if (!stats.finite || !(residual <= kDivergenceResidual)) {
      report.termination_reason = Termination::divergence;
      break;
    }
    const double worst = std::max(stats.sinr_residual, stats.coupling_residual);
    if (worst <= tol) {
      report.converged = true;
      report.termination_reason = Termination::tolerance;
      break;
    }
    if (worst < 0.99 * best) {
      best = worst;
      last_improvement = t;
    } else if (t - last_improvement >= options.stall_window &&
               it.step.tau_cur <= options.tau_collapse * tau0) {
      result.suspected_infeasible = true;
      report.termination_reason = Termination::stalled;
      break;
    }
  }

  result.certificate = check_certificate(s, it.primal, options.eps);
  result.objective = isac_objective(it.primal.W);
  report.objective = result.objective;
  result.primal = std::move(it.primal);
  result.dual = std::move(it.dual);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace abal::isac
