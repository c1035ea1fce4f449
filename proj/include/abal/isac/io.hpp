#pragma once

#include <filesystem>

#include <json.hpp>

#include "abal/isac/scenario.hpp"
#include "abal/isac/solver.hpp"

namespace abal::isac {

/// Scenario file layout:
///   {"n": N, "k": K, "sigma2": s, "p_t": P, "gamma": [K numbers],
///    "h": N rows of K [re, im] pairs}
nlohmann::json scenario_to_json(const ScenarioData& s);
ScenarioData scenario_from_json(const nlohmann::json& j);

/// Hermitian matrices are written as N rows of N [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

/// objective, iterations, termination, wall time, certificate fields, W and Z.
nlohmann::json result_to_json(const IsacResult& result);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace abal::isac
