#include "abal/bench/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "abal/oracles/checks.hpp"

namespace abal::bench {

using nlohmann::json;

namespace {

constexpr Index kReferenceMaxN = 16;
constexpr Index kReferenceMaxK = 4;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

OmegaSchedule omega_rule(const std::string& name) {
  if (name == "inverse_square") return omega_default;
  if (name == "geometric") {
    return [](long t) { return std::pow(0.5, static_cast<double>(t)); };
  }
  throw ContractError("unknown omega rule '" + name + "' (inverse_square, geometric)");
}

struct InstanceOutcome {
  std::vector<BenchRow> rows;
  std::vector<RunDetail> details;
  double reference = std::numeric_limits<double>::quiet_NaN();
};

InstanceOutcome run_instance(const BenchConfig& config, Index n, Index k, std::uint64_t seed) {
  InstanceOutcome out;
  const isac::ScenarioData scenario =
      generate_scenario(seed, n, k, config.scenario, config.stream);

  std::vector<double> objectives;
  for (isac::Algorithm algo : config.algorithms) {
    BenchRow row{n, k, algo, std::nullopt, 0, 0.0, false};
    RunDetail detail;
    detail.seed = seed;
    try {
      const isac::IsacResult result = isac::isac_solve(scenario, config.solver_options(algo));
      row.iterations = result.report.iterations;
      row.time_seconds = result.report.wall_time;
      row.solved = result.certificate.satisfied && result.certificate.original_feasible;
      detail.objective = result.objective;
      detail.termination = std::string(to_string(result.report.termination_reason));
      detail.failed = result.report.termination_reason == Termination::divergence ||
                      result.report.termination_reason == Termination::stalled;
    } catch (const std::exception& e) {
      detail.failed = true;
      detail.error = e.what();
      detail.termination = "error";
      detail.objective = std::numeric_limits<double>::quiet_NaN();
    }
    out.rows.push_back(row);
    out.details.push_back(std::move(detail));
  }

  double f_min = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].solved) f_min = std::min(f_min, out.details[i].objective);
  }
  if (config.reference && n <= kReferenceMaxN && k <= kReferenceMaxK) {
    oracles::ReferenceOptions options;
    options.theta = config.theta;
    const oracles::ReferenceSolution ref = oracles::reference_solve(scenario, config.eps, options);
    if (ref.converged && std::isfinite(ref.objective)) {
      out.reference = ref.objective;
      f_min = std::min(f_min, ref.objective);
    } else {
      std::fprintf(stderr, "notice: reference solve did not converge (N=%ld K=%ld seed=%llu), anchor excluded\n",
                   static_cast<long>(n), static_cast<long>(k), static_cast<unsigned long long>(seed));
    }
  }
  for (size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].solved) out.rows[i].f_gap = f_gap(out.details[i].objective, f_min);
  }
  return out;
}

std::string cell_value(double v, const char* fmt) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

void BenchConfig::validate() const {
  if (grid.empty()) throw ContractError("benchmark grid is empty");
  for (const auto& [n, k] : grid) {
    if (n < 2 || k < 1) throw ContractError("grid cells need N > 1 and K >= 1");
  }
  if (seeds < 1) throw ContractError("seeds must be at least 1");
  if (!(eps > 0.0)) throw ContractError("eps must be positive");
  if (algorithms.empty()) throw ContractError("at least one algorithm is required");
  if (parallel < 1) throw ContractError("parallel must be at least 1");
  omega_rule(omega);
  for (isac::Algorithm algo : algorithms) solver_options(algo).validate();
}

isac::IsacOptions BenchConfig::solver_options(isac::Algorithm algo) const {
  isac::IsacOptions o;
  o.algorithm = algo;
  o.abal.tau0 = tau0;
  o.abal.eta_lo = eta_lo;
  o.abal.eta_hi = eta_hi;
  o.abal.omega = omega_rule(omega);
  o.abal.max_iter = max_iter;
  o.abal.seed = base_seed;
  o.theta = theta;
  o.eps = eps;
  o.bal_tau = bal_tau;
  o.bal_gamma = bal_gamma;
  o.upsilon = upsilon;
  o.record_history = false;
  return o;
}

BenchConfig BenchConfig::from_json(const json& j) {
  BenchConfig c;
  try {
    if (j.contains("grid")) {
      c.grid.clear();
      for (const auto& cell : j.at("grid")) {
        c.grid.emplace_back(cell.at(0).get<Index>(), cell.at(1).get<Index>());
      }
    }
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& name : j.at("algorithms")) {
        c.algorithms.push_back(isac::parse_algorithm(name.get<std::string>()));
      }
    }
    c.seeds = j.value("seeds", c.seeds);
    c.base_seed = j.value("base_seed", c.base_seed);
    c.stream = j.value("stream", c.stream);
    c.eps = j.value("eps", c.eps);
    c.theta = j.value("theta", c.theta);
    c.tau0 = j.value("tau0", c.tau0);
    c.eta_lo = j.value("eta_lo", c.eta_lo);
    c.eta_hi = j.value("eta_hi", c.eta_hi);
    c.omega = j.value("omega", c.omega);
    c.bal_tau = j.value("bal_tau", c.bal_tau);
    c.bal_gamma = j.value("bal_gamma", c.bal_gamma);
    c.upsilon = j.value("upsilon", c.upsilon);
    c.max_iter = j.value("max_iter", c.max_iter);
    c.reference = j.value("reference", c.reference);
    c.parallel = j.value("parallel", c.parallel);
    if (j.contains("scenario")) {
      const json& s = j.at("scenario");
      c.scenario.gamma = s.value("gamma", c.scenario.gamma);
      c.scenario.sigma2 = s.value("sigma2", c.scenario.sigma2);
      c.scenario.p_t = s.value("p_t", c.scenario.p_t);
    }
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed benchmark config: ") + e.what());
  }
  c.validate();
  return c;
}

json BenchConfig::to_json() const {
  json j;
  json cells = json::array();
  for (const auto& [n, k] : grid) cells.push_back({n, k});
  j["grid"] = std::move(cells);
  json algos = json::array();
  for (auto a : algorithms) algos.push_back(std::string(isac::to_string(a)));
  j["algorithms"] = std::move(algos);
  j["seeds"] = seeds;
  j["base_seed"] = base_seed;
  j["stream"] = stream;
  j["eps"] = eps;
  j["theta"] = theta;
  j["tau0"] = tau0;
  j["eta_lo"] = eta_lo;
  j["eta_hi"] = eta_hi;
  j["omega"] = omega;
  j["bal_tau"] = bal_tau;
  j["bal_gamma"] = bal_gamma;
  j["upsilon"] = upsilon;
  j["max_iter"] = max_iter;
  j["reference"] = reference;
  j["parallel"] = parallel;
  j["scenario"] = {{"gamma", scenario.gamma},
                   {"sigma2", scenario.sigma2},
                   {"p_t", scenario.p_t},
                   {"channel", "CN(0,1) i.i.d."}};
  return j;
}

bool BenchResults::has_failures() const {
  return std::any_of(details.begin(), details.end(), [](const RunDetail& d) { return d.failed; });
}

std::optional<double> f_gap(double objective, double f_min) {
  if (!std::isfinite(objective) || !std::isfinite(f_min) || f_min == 0.0) return std::nullopt;
  return std::max(0.0, (objective - f_min) / std::abs(f_min));
}

BenchResults run_benchmark(const BenchConfig& config) {
  config.validate();
  struct Job {
    Index n, k;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& [n, k] : config.grid) {
    for (int s = 0; s < config.seeds; ++s) {
      jobs.push_back({n, k, config.base_seed + static_cast<std::uint64_t>(s)});
    }
  }

  std::vector<InstanceOutcome> outcomes(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      outcomes[i] = run_instance(config, jobs[i].n, jobs[i].k, jobs[i].seed);
    }
  };
  const auto threads = static_cast<size_t>(std::min<int>(config.parallel, static_cast<int>(jobs.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BenchResults results;
  for (auto& o : outcomes) {
    results.rows.insert(results.rows.end(), o.rows.begin(), o.rows.end());
    results.details.insert(results.details.end(), o.details.begin(), o.details.end());
    results.reference_objective.push_back(o.reference);
  }
  return results;
}

std::vector<CellSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<CellSummary> cells;
  std::map<std::tuple<Index, Index, int>, size_t> index;
  for (const auto& row : rows) {
    const auto key = std::make_tuple(row.n, row.k, static_cast<int>(row.algorithm));
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, cells.size()).first;
      cells.push_back({row.n, row.k, row.algorithm});
    }
    CellSummary& c = cells[it->second];
    ++c.runs;
    if (row.solved) {
      ++c.solved;
      c.mean_f_gap += row.f_gap.value_or(0.0);
      c.mean_iterations += static_cast<double>(row.iterations);
      c.mean_time += row.time_seconds;
    }
  }
  for (auto& c : cells) {
    if (c.solved > 0) {
      c.mean_f_gap /= c.solved;
      c.mean_iterations /= c.solved;
      c.mean_time /= c.solved;
    }
  }
  return cells;
}

std::string render_summary(const std::vector<CellSummary>& cells,
                           const std::vector<isac::Algorithm>& algorithms) {
  std::ostringstream out;
  auto pad = [](std::string s, size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  constexpr size_t w = 10;
  out << pad("N", 4) << pad("K", 4) << "  |";
  for (const char* group : {"f-gap", "iter", "time"}) {
    for (auto a : algorithms) out << pad(std::string(group) + ":" + std::string(to_string(a)), w + 6);
    out << "  |";
  }
  out << '\n';

  std::vector<std::pair<Index, Index>> order;
  for (const auto& c : cells) {
    if (std::find(order.begin(), order.end(), std::make_pair(c.n, c.k)) == order.end()) {
      order.emplace_back(c.n, c.k);
    }
  }
  for (const auto& [n, k] : order) {
    out << pad(std::to_string(n), 4) << pad(std::to_string(k), 4) << "  |";
    for (int group = 0; group < 3; ++group) {
      for (auto a : algorithms) {
        std::string text = "--";
        for (const auto& c : cells) {
          if (c.n != n || c.k != k || c.algorithm != a || c.solved == 0) continue;
          if (group == 0) text = cell_value(c.mean_f_gap, "%.0e");
          if (group == 1) text = cell_value(c.mean_iterations, "%.0f");
          if (group == 2) text = cell_value(c.mean_time, "%.3f");
          if (c.solved < c.runs) text += "(" + std::to_string(c.solved) + "/" + std::to_string(c.runs) + ")";
        }
        out << pad(text, w + 6);
      }
      out << "  |";
    }
    out << '\n';
  }
  return out.str();
}

std::string rows_to_csv(const std::vector<BenchRow>& rows, bool include_time) {
  std::ostringstream out;
  out << "n,k,algo,f_gap,iterations,time_seconds,solved\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << to_string(r.algorithm) << ','
        << (r.f_gap ? format_double(*r.f_gap) : std::string()) << ',' << r.iterations << ','
        << (include_time ? format_double(r.time_seconds) : std::string()) << ','
        << (r.solved ? 1 : 0) << '\n';
  }
  return out.str();
}

std::vector<BenchRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n,k,algo,f_gap,iterations,time_seconds,solved") {
    throw ContractError("unexpected CSV header");
  }
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 7) throw ContractError("malformed CSV row: " + line);
    BenchRow r;
    r.n = std::stol(fields[0]);
    r.k = std::stol(fields[1]);
    r.algorithm = isac::parse_algorithm(fields[2]);
    if (!fields[3].empty()) r.f_gap = std::stod(fields[3]);
    r.iterations = std::stol(fields[4]);
    r.time_seconds = fields[5].empty() ? 0.0 : std::stod(fields[5]);
    r.solved = fields[6] == "1";
    rows.push_back(r);
  }
  return rows;
}

void emit_report(const BenchResults& results, const BenchConfig& config, ReportFormat format,
                 const std::filesystem::path& path) {
  if (results.rows.empty()) throw ContractError("no benchmark rows to report");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

  if (format == ReportFormat::csv) {
    out << rows_to_csv(results.rows);
  } else {
    json j;
    j["config"] = config.to_json();
    json rows = json::array();
    for (size_t i = 0; i < results.rows.size(); ++i) {
      const auto& r = results.rows[i];
      const auto& d = results.details[i];
      json row = {{"n", r.n},
                  {"k", r.k},
                  {"algo", std::string(to_string(r.algorithm))},
                  {"f_gap", r.f_gap ? json(*r.f_gap) : json(nullptr)},
                  {"iterations", r.iterations},
                  {"time_seconds", r.time_seconds},
                  {"solved", r.solved},
                  {"seed", d.seed},
                  {"objective", std::isfinite(d.objective) ? json(d.objective) : json(nullptr)},
                  {"termination", d.termination}};
      if (!d.error.empty()) row["error"] = d.error;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    const auto cells = summarize(results.rows);
    json agg = json::array();
    for (const auto& c : cells) {
      agg.push_back({{"n", c.n},
                     {"k", c.k},
                     {"algo", std::string(to_string(c.algorithm))},
                     {"runs", c.runs},
                     {"solved", c.solved},
                     {"mean_f_gap", c.solved ? json(c.mean_f_gap) : json(nullptr)},
                     {"mean_iterations", c.solved ? json(c.mean_iterations) : json(nullptr)},
                     {"mean_time_seconds", c.solved ? json(c.mean_time) : json(nullptr)}});
    }
    j["cells"] = std::move(agg);
    j["summary"] = render_summary(cells, config.algorithms);
    out << j.dump(2) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace abal::bench
