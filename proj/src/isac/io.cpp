#include "abal/isac/io.hpp"

#include <fstream>
#include <stdexcept>

namespace abal::isac {

using nlohmann::json;

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ContractError("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<size_t>(i)];
    if (static_cast<Index>(row.size()) != cols) throw ContractError("ragged matrix row");
    for (Index c = 0; c < cols; ++c) {
      const json& entry = row[static_cast<size_t>(c)];
      if (!entry.is_array() || entry.size() != 2) {
        throw ContractError("matrix entries must be [re, im] pairs");
      }
      m(i, c) = {entry[0].get<double>(), entry[1].get<double>()};
    }
  }
  return m;
}

json scenario_to_json(const ScenarioData& s) {
  json j;
  j["n"] = s.antennas();
  j["k"] = s.users();
  j["sigma2"] = s.sigma2;
  j["p_t"] = s.p_t;
  j["gamma"] = std::vector<double>(s.gamma.data(), s.gamma.data() + s.gamma.size());
  j["h"] = matrix_to_json(s.H);
  return j;
}

ScenarioData scenario_from_json(const json& j) {
  try {
    const auto n = j.at("n").get<Index>();
    const auto k = j.at("k").get<Index>();
    CMatrix H = matrix_from_json(j.at("h"));
    if (H.rows() != n || H.cols() != k) {
      throw ContractError("h must be an n x k array of [re, im] pairs");
    }
    const auto gamma = j.at("gamma").get<std::vector<double>>();
    RVector g = Eigen::Map<const RVector>(gamma.data(), static_cast<Index>(gamma.size()));
    return ScenarioData::make(std::move(H), std::move(g), j.at("sigma2").get<double>(),
                              j.at("p_t").get<double>());
  } catch (const json::exception& e) {
    throw ContractError(std::string("malformed scenario: ") + e.what());
  }
}

json result_to_json(const IsacResult& result) {
  const auto& c = result.certificate;
  json j;
  j["algorithm"] = std::string(to_string(result.algorithm));
  j["objective"] = result.objective;
  j["iterations"] = result.report.iterations;
  j["converged"] = result.report.converged;
  j["termination"] = std::string(to_string(result.report.termination_reason));
  j["suspected_infeasible"] = result.suspected_infeasible;
  j["wall_time"] = result.report.wall_time;
  j["certificate"] = {
      {"eps", c.eps},
      {"tol", c.tol},
      {"sinr_residual", c.sinr_residual},
      {"coupling_residual", c.coupling_residual},
      {"satisfied", c.satisfied},
      {"original_feasible", c.original_feasible},
      {"power", c.power},
      {"min_slack", c.slacks.size() ? c.slacks.minCoeff() : 0.0},
  };
  json w = json::array();
  for (const auto& block : result.primal.W) w.push_back(matrix_to_json(block));
  j["W"] = std::move(w);
  j["Z"] = matrix_to_json(result.primal.Z);
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ContractError(path.string() + ": " + e.what());
  }
}

}  // namespace abal::isac
