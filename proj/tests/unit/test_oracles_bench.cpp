#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abal/bench/benchmark.hpp"
#include "abal/isac/certificate.hpp"
#include "abal/isac/tighten.hpp"
#include "abal/oracles/checks.hpp"

using namespace abal;

TEST_SUITE("reference") {

TEST_CASE("reference solution is stable, tight and certified") {
  const isac::ScenarioData s = bench::generate_scenario(2, 4, 2);
  oracles::ReferenceOptions a;
  oracles::ReferenceOptions b;
  b.tau0 = 0.1;
  const oracles::ReferenceSolution ra = oracles::reference_solve(s, 1e-3, a);
  const oracles::ReferenceSolution rb = oracles::reference_solve(s, 1e-3, b);
  REQUIRE(ra.converged);
  REQUIRE(rb.converged);
  CHECK(std::abs(ra.objective - rb.objective) <= 1e-7 * std::abs(ra.objective));

  const isac::FeasibilityCertificate c = isac::check_certificate(s, ra.primal, 1e-3);
  CHECK(c.satisfied);
  CHECK(c.original_feasible);

  const isac::TightenResult t = isac::tighten_solution(s, ra.primal.W);
  CHECK(std::abs(isac::isac_objective(t.W) - ra.objective) <= 1e-6 * ra.objective);
}

TEST_CASE("reference agrees with the customized solver") {
  const isac::ScenarioData s = bench::generate_scenario(5, 6, 2);
  const oracles::ReferenceSolution ref = oracles::reference_solve(s, 1e-3);
  const isac::IsacResult r = isac::isac_solve(s, isac::IsacOptions{});
  REQUIRE(ref.converged);
  REQUIRE(r.report.converged);
  CHECK(std::abs(r.objective - ref.objective) <= 1e-3 * ref.objective);
}

TEST_CASE("sampler output is feasible") {
  CounterRng rng(3);
  const auto sampler = oracles::make_feasible_sampler(3, 4, 7.0);
  for (int i = 0; i < 50; ++i) CHECK(oracles::is_in_power_set(sampler(rng), 7.0));
}

}  // TEST_SUITE

TEST_SUITE("rng") {

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a = CounterRng::stream({1, 2, 3});
  CounterRng b = CounterRng::stream({1, 2, 3});
  CounterRng c = CounterRng::stream({1, 2, 4});
  CounterRng d = CounterRng::stream({2, 1, 3});
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
}

TEST_CASE("uniform and normal moments") {
  CounterRng rng(99);
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const double u = rng.uniform();
    CHECK_UNARY(u > 0.0 && u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / m == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sn / m) <= 0.01);
  CHECK(sn2 / m == doctest::Approx(1.0).epsilon(0.01));
}

}  // TEST_SUITE

TEST_SUITE("scenario_gen") {

TEST_CASE("same seed gives identical channels") {
  const auto a = bench::generate_scenario(17, 8, 3);
  const auto b = bench::generate_scenario(17, 8, 3);
  CHECK(a.H == b.H);
  CHECK(a.H != bench::generate_scenario(18, 8, 3).H);
  CHECK(a.H != bench::generate_scenario(17, 8, 3, {}, 1).H);
}

TEST_CASE("defaults") {
  const auto s = bench::generate_scenario(1, 4, 2);
  CHECK(s.rho(0) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(s.sigma2 == 1.0);
  CHECK(s.p_t == 100.0);
  CHECK(s.gamma(1) == 10.0);
}

TEST_CASE("column norms concentrate near N") {
  double total = 0.0;
  const int draws = 1000;
  for (int seed = 0; seed < draws; ++seed) {
    total += bench::generate_scenario(static_cast<std::uint64_t>(seed), 16, 1).channel_gain(0);
  }
  CHECK(std::abs(total / draws - 16.0) <= 0.05 * 16.0);
}

TEST_CASE("invalid sizes") {
  CHECK_THROWS_AS(bench::generate_scenario(1, 1, 1), ContractError);
  CHECK_THROWS_AS(bench::generate_scenario(1, 4, 0), ContractError);
}

}  // TEST_SUITE

TEST_SUITE("benchmark") {

namespace {

bench::BenchConfig small_config() {
  bench::BenchConfig c;
  c.grid = {{4, 1}, {4, 2}};
  c.seeds = 2;
  c.max_iter = 1500;
  return c;
}

}  // namespace

TEST_CASE("f_gap definition") {
  CHECK(*bench::f_gap(2.0, 2.0) == 0.0);
  CHECK(*bench::f_gap(3.0, 2.0) == doctest::Approx(0.5));
  CHECK_FALSE(bench::f_gap(std::nan(""), 2.0).has_value());
}

TEST_CASE("small sweep") {
  const bench::BenchConfig c = small_config();
  const bench::BenchResults r = bench::run_benchmark(c);
  REQUIRE(r.rows.size() == 2u * 2u * 3u);
  REQUIRE(r.details.size() == r.rows.size());
  for (size_t i = 0; i < r.rows.size(); i += 3) {
    // Algorithms of one instance share the scenario and one of them attains f_min
    // unless the reference anchor is lower.
    double best = INFINITY;
    for (size_t j = i; j < i + 3; ++j) {
      if (r.rows[j].solved) best = std::min(best, *r.rows[j].f_gap);
      if (!r.rows[j].solved) CHECK_FALSE(r.rows[j].f_gap.has_value());
      if (r.rows[j].f_gap) CHECK(*r.rows[j].f_gap >= 0.0);
    }
    CHECK(r.rows[i].algorithm == isac::Algorithm::abal);
    CHECK(r.rows[i].solved);
    CHECK(best <= 1e-6);
  }
}

TEST_CASE("parallel runs give the same rows") {
  bench::BenchConfig c = small_config();
  const auto serial = bench::run_benchmark(c);
  c.parallel = 3;
  const auto parallel = bench::run_benchmark(c);
  CHECK(bench::rows_to_csv(serial.rows, false) == bench::rows_to_csv(parallel.rows, false));
}

TEST_CASE("csv round trip") {
  std::vector<bench::BenchRow> rows = {
      {8, 2, isac::Algorithm::abal, 0.0, 57, 0.0123456789012345, true},
      {8, 2, isac::Algorithm::bal_c, 1.0 / 3.0, 612, 1e-7, true},
      {16, 4, isac::Algorithm::tfpdhg, std::nullopt, 10000, 2.5, false}};
  CHECK(bench::rows_from_csv(bench::rows_to_csv(rows)) == rows);
  const std::string csv = bench::rows_to_csv(rows);
  CHECK(csv.rfind("n,k,algo,f_gap,iterations,time_seconds,solved\n", 0) == 0);
  CHECK(csv.find("16,4,tfpdhg,,10000,2.5,0") != std::string::npos);
}

TEST_CASE("unsolved cells render the sentinel") {
  std::vector<bench::BenchRow> rows = {
      {8, 2, isac::Algorithm::abal, 0.0, 50, 0.01, true},
      {8, 2, isac::Algorithm::tfpdhg, std::nullopt, 10000, 1.0, false}};
  const auto cells = bench::summarize(rows);
  const std::string text =
      bench::render_summary(cells, {isac::Algorithm::abal, isac::Algorithm::tfpdhg});
  CHECK(text.find("--") != std::string::npos);
  CHECK(text.find("f-gap:abal") != std::string::npos);
  CHECK(text.find("iter:tfpdhg") != std::string::npos);
  CHECK(text.find("time:abal") != std::string::npos);
}

TEST_CASE("summary averages over solved runs") {
  std::vector<bench::BenchRow> rows = {
      {8, 2, isac::Algorithm::abal, 0.0, 50, 1.0, true},
      {8, 2, isac::Algorithm::abal, 0.2, 150, 3.0, true},
      {8, 2, isac::Algorithm::abal, std::nullopt, 10000, 9.0, false}};
  const auto cells = bench::summarize(rows);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].runs == 3);
  CHECK(cells[0].solved == 2);
  CHECK(cells[0].mean_f_gap == doctest::Approx(0.1));
  CHECK(cells[0].mean_iterations == doctest::Approx(100.0));
  CHECK(cells[0].mean_time == doctest::Approx(2.0));
}

TEST_CASE("report emission") {
  const auto dir = std::filesystem::temp_directory_path() / "abal_report_test";
  std::filesystem::create_directories(dir);
  bench::BenchConfig c = small_config();
  c.seeds = 1;
  c.grid = {{4, 1}};
  const auto r = bench::run_benchmark(c);
  bench::emit_report(r, c, bench::ReportFormat::csv, dir / "r.csv");
  bench::emit_report(r, c, bench::ReportFormat::json, dir / "r.json");
  std::stringstream csv;
  csv << std::ifstream(dir / "r.csv").rdbuf();
  CHECK(bench::rows_from_csv(csv.str()).size() == r.rows.size());
  const nlohmann::json j = nlohmann::json::parse(std::ifstream(dir / "r.json"));
  CHECK(j.at("rows").size() == r.rows.size());
  CHECK(j.at("cells").size() == 3);
  CHECK(j.at("config").at("seeds") == 1);
  CHECK(j.at("config").at("scenario").at("p_t") == 100.0);
  CHECK(j.at("summary").get<std::string>().find("f-gap") != std::string::npos);

  CHECK_THROWS_AS(bench::emit_report({}, c, bench::ReportFormat::csv, dir / "e.csv"),
                  ContractError);
  CHECK_THROWS_WITH_AS(
      bench::emit_report(r, c, bench::ReportFormat::csv, dir / "missing" / "x.csv"),
      doctest::Contains("missing"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config json") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "grid": [[8, 2]], "seeds": 3, "algorithms": ["abal", "tfpdhg"], "eps": 1e-4,
    "upsilon": 2, "omega": "geometric", "scenario": {"p_t": 10}
  })");
  const auto c = bench::BenchConfig::from_json(j);
  CHECK(c.grid.size() == 1);
  CHECK(c.seeds == 3);
  CHECK(c.algorithms.size() == 2);
  CHECK(c.eps == 1e-4);
  CHECK(c.scenario.p_t == 10.0);
  const auto back = bench::BenchConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());

  CHECK_THROWS_AS(bench::BenchConfig::from_json(nlohmann::json::parse(R"({"seeds": 0})")),
                  ContractError);
  CHECK_THROWS_AS(bench::BenchConfig::from_json(nlohmann::json::parse(R"({"eps": -1})")),
                  ContractError);
  CHECK_THROWS_AS(bench::BenchConfig::from_json(nlohmann::json::parse(R"({"algorithms": []})")),
                  ContractError);
  CHECK_THROWS_AS(bench::BenchConfig::from_json(nlohmann::json::parse(R"({"omega": "x"})")),
                  ContractError);
  CHECK_THROWS_AS(bench::BenchConfig::from_json(nlohmann::json::parse(R"({"seeds": "a"})")),
                  ContractError);
}

}  // TEST_SUITE
