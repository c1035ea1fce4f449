#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

#include "abal/splitting/solver.hpp"
#include "support/toy_problems.hpp"

using namespace abal;
using abal::testing::QuadraticProblem;

TEST_SUITE("stepsize") {

TEST_CASE("omega default values and summability") {
  CHECK(omega_default(0) == 1.0);
  CHECK(omega_default(1) == 0.25);
  double sum = 0.0;
  for (long t = 1'000'000; t >= 0; --t) sum += omega_default(t);
  CHECK(sum < std::numbers::pi * std::numbers::pi / 6.0 + 1e-6);
}

TEST_CASE("clamp to the upper bound") {
  const StepsizeState s = adapt_stepsize(StepsizeState::initial(1.0), 10.0, 1.0, 1.0, 0.5, 2.0);
  CHECK(s.eta == 2.0);
}

TEST_CASE("identity case leaves tau unchanged") {
  const StepsizeState s = adapt_stepsize(StepsizeState::initial(0.7), 1.0, 1.0, 1.0, 1e-2, 1e2);
  CHECK(s.eta == 1.0);
  CHECK(s.kappa == 1.0);
  CHECK(s.tau_cur == 0.7);
}

TEST_CASE("direct substitution") {
  const StepsizeState s = adapt_stepsize(StepsizeState::initial(1.0), 2.0, 1.0, 0.5, 1e-2, 1e2);
  CHECK(s.eta == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.kappa == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s.tau_cur == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s.tau_prev == 1.0);
  CHECK(s.t == 1);
}

TEST_CASE("zero gap maps to the upper bound") {
  const StepsizeState s = adapt_stepsize(StepsizeState::initial(1.0), 3.0, 0.0, 1.0, 0.1, 5.0);
  CHECK(s.eta == 5.0);
  CHECK(s.tau_cur == 5.0);
}

TEST_CASE("invariants over a parameter grid") {
  const double omegas[] = {0.0, 1e-3, 0.25, 0.5, 1.0};
  const double bounds[][2] = {{1e-2, 1e2}, {0.5, 2.0}, {0.9, 1.1}};
  const double ratios[] = {0.0, 1e-6, 0.3, 1.0, 7.0, 1e6};
  const double taus[] = {1e-4, 1.0, 30.0};
  for (double w : omegas)
    for (const auto& b : bounds)
      for (double r : ratios)
        for (double tau : taus) {
          const StepsizeState s = adapt_stepsize(StepsizeState::initial(tau), r, 1.0, w, b[0], b[1]);
          CHECK(s.eta >= b[0]);
          CHECK(s.eta <= b[1]);
          CHECK(s.eta == std::clamp(r, b[0], b[1]));
          CHECK(s.kappa == doctest::Approx(1.0 - w + w * s.eta).epsilon(1e-15));
          CHECK(s.tau_cur == doctest::Approx(s.kappa * tau).epsilon(1e-15));
          CHECK(s.tau_cur > 0.0);
        }
}

TEST_CASE("contract violations") {
  CHECK_THROWS_AS(adapt_stepsize(StepsizeState::initial(1.0), 1.0, 1.0, 1.5, 0.1, 1.0),
                  ContractError);
  CHECK_THROWS_AS(adapt_stepsize(StepsizeState::initial(1.0), 1.0, 1.0, 0.5, 2.0, 1.0),
                  ContractError);
  AbalConfig bad;
  bad.omega = [](long) { return 0.5; };
  CHECK_THROWS_AS(bad.validate(), ContractError);
  AbalConfig neg;
  neg.tau0 = -1.0;
  CHECK_THROWS_AS(neg.validate(), ContractError);
}

}  // TEST_SUITE

TEST_SUITE("splitting") {

TEST_CASE("unit ratio at the first iteration keeps tau") {
  // f = u^2 / 2, tau = 1, lambda = 0: u+ = u / 2 and the gap equals u+.
  QuadraticProblem p({CMatrix::Identity(1, 1), CVector::Constant(1, 1.0), CVector::Zero(1), 0.1});
  SplittingState state =
      make_initial_state(p, CVector::Constant(1, 4.0), CVector::Zero(1), 1.0);
  splitting_step(p, IterationRule::abal(AbalConfig{}), 1.0, state);
  CHECK(state.step.eta == 1.0);
  CHECK(state.step.kappa == 1.0);
  CHECK(state.step.tau_cur == 1.0);
}

TEST_CASE("omega zero after the first step freezes tau") {
  CounterRng rng(3);
  const QuadraticProblem p = abal::testing::random_problem(rng, 3, 6, 0.1);
  AbalConfig config;
  config.omega = [](long t) { return t == 0 ? 1.0 : 0.0; };
  config.max_iter = 50;
  config.stop_tol = 0.0;
  const auto run = abal_solve(p, config, CVector::Zero(6), CVector::Zero(3));
  REQUIRE(run.report.tau_history.size() == 50);
  for (double tau : run.report.tau_history) CHECK(tau == run.report.tau_history.front());
}

TEST_CASE("scalar instance converges for every solver") {
  const QuadraticProblem p = abal::testing::scalar_problem(0.1);
  AbalConfig config;
  config.max_iter = 2000;
  config.stop_tol = 1e-9;
  const auto a = abal_solve(p, config, CVector::Zero(1), CVector::Zero(1));
  CHECK(std::abs(a.u(0) - 1.0) <= 1e-6);
  CHECK(a.report.converged);

  const auto b = bal_solve(p, 1.0, 1.0, 2000, 1e-9, CVector::Zero(1), CVector::Zero(1));
  CHECK(std::abs(b.u(0) - 1.0) <= 1e-6);

  const auto c = tfpdhg_solve(p, config, 1.0, CVector::Zero(1), CVector::Zero(1));
  CHECK(std::abs(c.u(0) - 1.0) <= 1e-6);
}

TEST_CASE("run report invariants") {
  CounterRng rng(11);
  const QuadraticProblem p = abal::testing::random_problem(rng, 4, 9, 0.1);
  AbalConfig config;
  config.max_iter = 3000;
  const auto run = abal_solve(p, config, CVector::Zero(9), CVector::Zero(4));
  CHECK(run.report.primal_residual_history.size() == static_cast<size_t>(run.report.iterations));
  CHECK(run.report.tau_history.size() == static_cast<size_t>(run.report.iterations));
  if (run.report.converged) {
    CHECK(run.report.primal_residual_history.back() <= config.stop_tol);
    CHECK(run.report.termination_reason == Termination::tolerance);
  }
  for (double tau : run.report.tau_history) CHECK(tau > 0.0);
}

TEST_CASE("ABAL with frozen controller reproduces BAL") {
  CounterRng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const QuadraticProblem p = abal::testing::random_problem(rng, 3, 7, 0.05);
    const CVector u0 = random_complex_vector(rng, 7);
    const CVector l0 = random_complex_vector(rng, 3);
    const double tau0 = rng.uniform(0.2, 3.0);
    SplittingState a = make_initial_state(p, u0, l0, tau0);
    SplittingState b = make_initial_state(p, u0, l0, tau0);
    const IterationRule adaptive = IterationRule::abal(AbalConfig{});
    const IterationRule bal = IterationRule::bal(1.0);
    for (int t = 0; t < 40; ++t) {
      splitting_step(p, adaptive, 0.0, a);
      splitting_step(p, bal, 0.0, b);
      CHECK((a.u - b.u).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((a.lambda - b.lambda).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(a.step.tau_cur == tau0);
    }
  }
}

TEST_CASE("multiplier step solves the regularized system") {
  CounterRng rng(8);
  const QuadraticProblem p = abal::testing::random_problem(rng, 4, 8, 0.2);
  SplittingState state = make_initial_state(p, random_complex_vector(rng, 8),
                                            random_complex_vector(rng, 4), 1.0);
  const double op_norm = (p.D() * p.D().adjoint()).norm() + p.theta() * p.theta();
  for (int t = 0; t < 20; ++t) {
    const CVector before = state.lambda;
    const StepInfo info = splitting_step(p, IterationRule::abal(AbalConfig{}), omega_default(t), state);
    const CVector delta = state.lambda - before;
    const CVector lhs = p.apply_constraint(p.apply_adjoint(delta)) + p.theta() * p.theta() * delta;
    const CVector rhs = info.p / state.step.tau_cur;
    // delta is a difference of multipliers and carries their rounding error.
    const double cancellation = 16.0 * std::numeric_limits<double>::epsilon() * op_norm *
                                state.lambda.norm();
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm() + cancellation);
  }
}

TEST_CASE("regularized solve is a true inverse") {
  CounterRng rng(9);
  const QuadraticProblem p = abal::testing::random_problem(rng, 5, 9, 0.3);
  const CVector q = random_complex_vector(rng, 5);
  const CVector x = p.solve_regularized(q);
  const CVector back = p.apply_constraint(p.apply_adjoint(x)) + 0.09 * x;
  CHECK((back - q).norm() <= 1e-10 * q.norm());
}

TEST_CASE("empirical convergence on random feasible instances") {
  CounterRng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Index m = 2 + static_cast<Index>(rng() % 4);
    const Index n = m + 2 + static_cast<Index>(rng() % 5);
    const QuadraticProblem p = abal::testing::random_problem(rng, m, n, 0.1);
    AbalConfig config;
    config.max_iter = 10000;
    const auto run = abal_solve(p, config, CVector::Zero(n), CVector::Zero(m));
    CHECK(run.report.converged);
    CHECK((p.apply_constraint(run.u) - p.rhs()).norm() <= 1e-6);
  }
}

TEST_CASE("BAL rejects small gamma") {
  CHECK_THROWS_AS(IterationRule::bal(0.5), ContractError);
  const QuadraticProblem p = abal::testing::scalar_problem(0.1);
  CHECK_THROWS_AS(bal_solve(p, 1.0, 0.7, 10, 0.0, CVector::Zero(1), CVector::Zero(1)),
                  ContractError);
}

TEST_CASE("dimension mismatch is a contract error") {
  const QuadraticProblem p = abal::testing::scalar_problem(0.1);
  CHECK_THROWS_AS(abal_solve(p, AbalConfig{}, CVector::Zero(2), CVector::Zero(1)), ContractError);
}

TEST_CASE("divergence is reported") {
  // A prox that blows up on purpose.
  struct Exploding final : public Problem {
    Index primal_dim() const override { return 1; }
    Index dual_dim() const override { return 1; }
    double theta() const override { return 0.1; }
    CVector prox(const CVector& v, double) const override { return v * 1e9 + CVector::Ones(1); }
    CVector apply_constraint(const CVector& u) const override { return u; }
    CVector apply_adjoint(const CVector& l) const override { return l; }
    CVector solve_regularized(const CVector& p) const override { return p / 1.01; }
    const CVector& rhs() const override { return b; }
    double objective(const CVector&) const override { return 0.0; }
    CVector b = CVector::Zero(1);
  } p;
  const auto run = abal_solve(p, AbalConfig{}, CVector::Zero(1), CVector::Zero(1));
  CHECK(run.report.termination_reason == Termination::divergence);
  CHECK_FALSE(run.report.converged);
}

}  // TEST_SUITE

TEST_SUITE("tfpdhg") {

TEST_CASE("zero residual leaves the multiplier") {
  const CVector l = CVector::Constant(3, Complex(1.0, -2.0));
  CHECK(tfpdhg_dual_update(l, CVector::Zero(3), 0.5, 1.0, 2.0) == l);
}

TEST_CASE("arithmetic example") {
  const CVector out = tfpdhg_dual_update(CVector::Zero(1), CVector::Constant(1, 8.0), 1.0, 1.0, 4.0);
  CHECK(out(0).real() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("identity constraint differs from the exact step by 1 + theta^2") {
  const double theta = 0.05;
  QuadraticProblem p({CMatrix::Identity(3, 3), CVector::Zero(3), CVector::Zero(3), theta});
  CounterRng rng(2);
  const CVector q = random_complex_vector(rng, 3);
  const double tau = 0.8;
  const CVector exact = p.solve_regularized(q) / tau;
  const CVector approx = tfpdhg_dual_update(CVector::Zero(3), q, tau, 1.0, 1.0);
  CHECK((exact - approx / (1.0 + theta * theta)).norm() <= 1e-14 * approx.norm());
}

TEST_CASE("power iteration matches the dense spectral norm") {
  CounterRng rng(4);
  const QuadraticProblem p = abal::testing::random_problem(rng, 4, 6, 0.1);
  const double dense = Eigen::JacobiSVD<CMatrix>(p.D()).singularValues()(0);
  CounterRng seed(1);
  const double est = estimate_op_norm_sq(p, seed);
  CHECK(est == doctest::Approx(dense * dense).epsilon(1e-4));
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(tfpdhg_dual_update(CVector::Zero(1), CVector::Zero(1), 1.0, 1.0, 0.0),
                  ContractError);
  CHECK_THROWS_AS(IterationRule::tfpdhg(AbalConfig{}, 0.5, 1.0), ContractError);
}

}  // TEST_SUITE
