#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "abal/bench/scenario_gen.hpp"
#include "abal/isac/solver.hpp"

namespace abal::bench {

struct BenchConfig {
  std::vector<std::pair<Index, Index>> grid = {{8, 2}, {8, 4}, {16, 2}, {16, 4}};
  int seeds = 20;
  std::uint64_t base_seed = 0;
  std::uint64_t stream = 0;
  double eps = 1e-3;
  std::vector<isac::Algorithm> algorithms = {isac::Algorithm::abal, isac::Algorithm::bal_c,
                                             isac::Algorithm::tfpdhg};
  double theta = 1e-2;
  double tau0 = 1.0;
  double eta_lo = 1e-2;
  double eta_hi = 1e2;
  std::string omega = "inverse_square";
  double bal_tau = 1.0;
  double bal_gamma = 1.0;
  double upsilon = 1.0;
  long max_iter = 10000;
  // Adds the high-accuracy reference solve to the f_min anchor (cells with
  // N <= 16 and K <= 4 only).
  bool reference = true;
  ScenarioParams scenario;
  int parallel = 1;

  /// Throws ContractError on an empty grid or algorithm list, seeds < 1,
  /// eps <= 0 or an unknown omega rule.
  void validate() const;
  isac::IsacOptions solver_options(isac::Algorithm algo) const;

  static BenchConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// One solve. f_gap is empty for unsolved runs.
struct BenchRow {
  Index n = 0;
  Index k = 0;
  isac::Algorithm algorithm = isac::Algorithm::abal;
  std::optional<double> f_gap;
  long iterations = 0;
  double time_seconds = 0.0;
  bool solved = false;

  bool operator==(const BenchRow&) const = default;
};

/// Per-run detail kept alongside each row for the JSON report.
struct RunDetail {
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::string termination;
  bool failed = false;  // exception, divergence or stall
  std::string error;
};

struct CellSummary {
  Index n = 0;
  Index k = 0;
  isac::Algorithm algorithm = isac::Algorithm::abal;
  int runs = 0;
  int solved = 0;
  double mean_f_gap = 0.0;       // over solved runs
  double mean_iterations = 0.0;  // over solved runs
  double mean_time = 0.0;        // over solved runs
};

struct BenchResults {
  std::vector<BenchRow> rows;
  std::vector<RunDetail> details;  // parallel to rows
  std::vector<double> reference_objective;  // per (cell, seed); NaN when absent

  bool has_failures() const;
};

/// f_gap = (f - f_min) / |f_min| with f_min the best objective among the
/// solved runs of the same instance and the reference anchor.
std::optional<double> f_gap(double objective, double f_min);

/// Solves every (cell, seed) instance with every requested algorithm.
/// Per-run exceptions are recorded as failed, unsolved rows.
BenchResults run_benchmark(const BenchConfig& config);

std::vector<CellSummary> summarize(const std::vector<BenchRow>& rows);

/// Table with f-gap | iter | time groups per algorithm, "--" where no run solved.
std::string render_summary(const std::vector<CellSummary>& cells,
                           const std::vector<isac::Algorithm>& algorithms);

enum class ReportFormat { csv, json };

/// CSV header: n,k,algo,f_gap,iterations,time_seconds,solved. Unsolved rows
/// leave f_gap empty. Throws ContractError for empty rows and
/// std::runtime_error (with the path) on I/O failure.
void emit_report(const BenchResults& results, const BenchConfig& config, ReportFormat format,
                 const std::filesystem::path& path);

std::string rows_to_csv(const std::vector<BenchRow>& rows, bool include_time = true);
std::vector<BenchRow> rows_from_csv(const std::string& text);

}  // namespace abal::bench
