// bench: scenario generation, single solves and benchmark sweeps.
//
//   bench run   --config <file> [--out <dir>] [--parallel <n>]
//   bench solve --scenario <file> --algo <name> [--eps] [--max-iter] [--tau0] [--theta]
//   bench gen   --seed <s> --n <N> --k <K> --out <file>
//
// Exit codes: 0 success, 1 usage or config error, 2 run failures present.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "abal/bench/benchmark.hpp"
#include "abal/isac/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRunFailure = 2;

int cmd_run(const std::string& config_path, const std::string& out_dir, int parallel) {
  using namespace abal;
  bench::BenchConfig config;
  try {
    config = bench::BenchConfig::from_json(isac::read_json(config_path));
    if (parallel > 0) config.parallel = parallel;
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "bench run: " << e.what() << '\n';
    return kExitUsage;
  }

  const bench::BenchResults results = bench::run_benchmark(config);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  bench::emit_report(results, config, bench::ReportFormat::csv, dir / "results.csv");
  bench::emit_report(results, config, bench::ReportFormat::json, dir / "results.json");

  const std::string summary = bench::render_summary(bench::summarize(results.rows), config.algorithms);
  std::ofstream(dir / "summary.txt") << summary;
  std::cout << summary;

  if (results.has_failures()) {
    size_t failed = 0;
    for (const auto& d : results.details) failed += d.failed ? 1 : 0;
    std::cerr << "bench run: " << failed << " run(s) failed (see results.json)\n";
    return kExitRunFailure;
  }
  return kExitOk;
}

int cmd_solve(const std::string& scenario_path, const std::string& algo, double eps,
              long max_iter, double tau0, double theta) {
  using namespace abal;
  isac::ScenarioData scenario;
  isac::IsacOptions options;
  try {
    scenario = isac::scenario_from_json(isac::read_json(scenario_path));
    options.algorithm = isac::parse_algorithm(algo);
    options.eps = eps;
    options.abal.max_iter = max_iter;
    options.abal.tau0 = tau0;
    options.theta = theta;
    options.record_history = false;
    options.validate();
  } catch (const std::exception& e) {
    std::cerr << "bench solve: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const isac::IsacResult result = isac::isac_solve(scenario, options);
    std::cout << isac::result_to_json(result).dump(2) << '\n';
    const auto reason = result.report.termination_reason;
    return reason == Termination::divergence || reason == Termination::stalled ? kExitRunFailure
                                                                              : kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "bench solve: " << e.what() << '\n';
    return kExitRunFailure;
  }
}

int cmd_gen(std::uint64_t seed, long n, long k, const std::string& out) {
  using namespace abal;
  try {
    const isac::ScenarioData s = bench::generate_scenario(seed, n, k);
    isac::write_json(out, isac::scenario_to_json(s));
  } catch (const std::exception& e) {
    std::cerr << "bench gen: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ABAL beamforming solver benchmark"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "bench_out";
  int parallel = 0;
  auto* run = app.add_subcommand("run", "Run a benchmark sweep");
  run->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--parallel", parallel, "Worker threads (overrides config)")
      ->check(CLI::PositiveNumber);

  std::string scenario_path, algo;
  double eps = 1e-3, tau0 = 1.0, theta = 1e-2;
  long max_iter = 10000;
  auto* solve = app.add_subcommand("solve", "Solve one scenario and print a JSON report");
  solve->add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  solve->add_option("--algo", algo, "abal, bal_c or tfpdhg")->required();
  solve->add_option("--eps", eps, "Feasibility margin");
  solve->add_option("--max-iter", max_iter, "Iteration budget");
  solve->add_option("--tau0", tau0, "Initial stepsize");
  solve->add_option("--theta", theta, "Dual regularization");

  std::uint64_t seed = 0;
  long n = 0, k = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a scenario file");
  gen->add_option("--seed", seed, "Seed")->required();
  gen->add_option("--n", n, "Antennas")->required();
  gen->add_option("--k", k, "Users")->required();
  gen->add_option("--out", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, parallel);
    if (*solve) return cmd_solve(scenario_path, algo, eps, max_iter, tau0, theta);
    return cmd_gen(seed, n, k, gen_out);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return kExitRunFailure;
  }
}
