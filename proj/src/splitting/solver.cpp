#include "abal/splitting/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace abal {
namespace {

constexpr double kDivergenceResidual = 1e12;

void check_dims(const Problem& problem, const CVector& u0, const CVector& lambda0) {
  if (u0.size() != problem.primal_dim()) {
    throw ContractError("u0 has size " + std::to_string(u0.size()) + ", expected " +
                        std::to_string(problem.primal_dim()));
  }
  if (lambda0.size() != problem.dual_dim()) {
    throw ContractError("lambda0 has size " + std::to_string(lambda0.size()) + ", expected " +
                        std::to_string(problem.dual_dim()));
  }
}

SplittingResult run_loop(const Problem& problem, const IterationRule& rule,
                         const OmegaSchedule& omega, long max_iter, double stop_tol, double tau0,
                         const CVector& u0, const CVector& lambda0) {
  check_dims(problem, u0, lambda0);
  const auto start = std::chrono::steady_clock::now();

  SplittingState state = make_initial_state(problem, u0, lambda0, tau0);
  RunReport report;
  report.primal_residual_history.reserve(static_cast<size_t>(std::min(max_iter, 100000L)));
  report.tau_history.reserve(report.primal_residual_history.capacity());

  for (long t = 0; t < max_iter; ++t) {
    const double w = rule.adaptive ? omega(t) : 0.0;
    const StepInfo info = splitting_step(problem, rule, w, state);
    ++report.iterations;
    report.primal_residual_history.push_back(info.residual_norm);
    report.tau_history.push_back(state.step.tau_cur);

    if (!info.finite || !(info.residual_norm <= kDivergenceResidual)) {
      report.termination_reason = Termination::divergence;
      break;
    }
    const bool stop = problem.stop_test(state.u, info.residual_norm)
                          .value_or(info.residual_norm <= stop_tol);
    if (stop) {
      report.converged = true;
      report.termination_reason = Termination::tolerance;
      break;
    }
  }

  report.objective = problem.objective(state.u);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(report), std::move(state.u), std::move(state.lambda)};
}

}  // namespace

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::tolerance:
      return "tolerance";
    case Termination::max_iter:
      return "max_iter";
    case Termination::divergence:
      return "divergence";
    case Termination::stalled:
      return "stalled";
  }
  return "unknown";
}

IterationRule IterationRule::abal(const AbalConfig& config) {
  IterationRule rule;
  rule.eta_lo = config.eta_lo;
  rule.eta_hi = config.eta_hi;
  return rule;
}

IterationRule IterationRule::bal(double gamma) {
  if (!(gamma >= 0.75)) throw ContractError("BAL requires gamma >= 3/4");
  IterationRule rule;
  rule.adaptive = false;
  rule.gamma = gamma;
  return rule;
}

IterationRule IterationRule::tfpdhg(const AbalConfig& config, double upsilon, double op_norm_sq) {
  if (!(upsilon >= 1.0)) throw ContractError("TF-PDHG requires upsilon >= 1");
  if (!(op_norm_sq > 0.0)) throw ContractError("operator norm estimate must be positive");
  IterationRule rule = abal(config);
  rule.dual = Dual::scaled_identity;
  rule.upsilon = upsilon;
  rule.op_norm_sq = op_norm_sq;
  return rule;
}

SplittingState make_initial_state(const Problem& problem, const CVector& u0,
                                  const CVector& lambda0, double tau0) {
  check_dims(problem, u0, lambda0);
  return {u0, lambda0, problem.apply_constraint(u0), StepsizeState::initial(tau0)};
}

StepInfo splitting_step(const Problem& problem, const IterationRule& rule, double omega,
                        SplittingState& state) {
  const double tau_prev = state.step.tau_cur;
  const CVector u_tilde = state.u - tau_prev * problem.apply_adjoint(state.lambda);
  CVector u_next = problem.prox(u_tilde, tau_prev);

  if (rule.adaptive) {
    const double theta = problem.theta();
    const double gap_sq = (u_next - u_tilde).squaredNorm() +
                          theta * theta * tau_prev * tau_prev * state.lambda.squaredNorm();
    state.step = adapt_stepsize(state.step, u_next.norm(), std::sqrt(gap_sq), omega, rule.eta_lo,
                                rule.eta_hi);
  } else {
    state.step = {tau_prev, tau_prev, 1.0, 1.0, state.step.t + 1};
  }
  const double kappa = state.step.kappa;
  const double tau = state.step.tau_cur;

  CVector Du_next = problem.apply_constraint(u_next);
  StepInfo info;
  info.p = (1.0 + kappa) * Du_next - kappa * state.Du - problem.rhs();
  info.residual_norm = (Du_next - problem.rhs()).norm();

  if (rule.dual == IterationRule::Dual::regularized_solve) {
    state.lambda += problem.solve_regularized(info.p) / (rule.gamma * tau);
  } else {
    state.lambda = tfpdhg_dual_update(state.lambda, info.p, tau, rule.upsilon, rule.op_norm_sq);
  }
  state.u = std::move(u_next);
  state.Du = std::move(Du_next);

  info.finite = std::isfinite(tau) && tau > 0.0 && state.u.allFinite() &&
                state.lambda.allFinite();
  return info;
}

SplittingResult abal_solve(const Problem& problem, const AbalConfig& config, const CVector& u0,
                           const CVector& lambda0) {
  config.validate();
  return run_loop(problem, IterationRule::abal(config), config.omega, config.max_iter,
                  config.stop_tol, config.tau0, u0, lambda0);
}

SplittingResult bal_solve(const Problem& problem, double tau, double gamma, long max_iter,
                          double stop_tol, const CVector& u0, const CVector& lambda0) {
  if (!(tau > 0.0)) throw ContractError("BAL requires tau > 0");
  return run_loop(problem, IterationRule::bal(gamma), omega_default, max_iter, stop_tol, tau, u0,
                  lambda0);
}

SplittingResult tfpdhg_solve(const Problem& problem, const AbalConfig& config, double upsilon,
                             const CVector& u0, const CVector& lambda0) {
  config.validate();
  CounterRng rng = CounterRng::stream({config.seed, 0x6f706e6f726dULL});
  const double op_norm_sq = estimate_op_norm_sq(problem, rng);
  return run_loop(problem, IterationRule::tfpdhg(config, upsilon, op_norm_sq), config.omega,
                  config.max_iter, config.stop_tol, config.tau0, u0, lambda0);
}

CVector tfpdhg_dual_update(const CVector& lambda, const CVector& p, double tau, double upsilon,
                           double op_norm_sq) {
  if (!(op_norm_sq > 0.0)) throw ContractError("operator norm estimate must be positive");
  if (lambda.size() != p.size()) throw ContractError("lambda and p differ in size");
  return lambda + p / (upsilon * tau * op_norm_sq);
}

double estimate_op_norm_sq(const Problem& problem, CounterRng& rng, double rel_tol,
                           int max_iter) {
  CVector x = random_complex_vector(rng, problem.dual_dim());
  x.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    CVector y = problem.apply_constraint(problem.apply_adjoint(x));
    const double next = x.dot(y).real();
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    x = y / norm;
    if (it > 0 && std::abs(next - estimate) <= rel_tol * std::abs(next)) return next;
    estimate = next;
  }
  return estimate;
}

}  // namespace abal
