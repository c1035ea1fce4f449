#pragma once

#include <cstdint>

#include "abal/isac/scenario.hpp"

namespace abal::bench {

/// Defaults used when a configuration does not override them: CN(0, 1)
/// channel entries, Gamma_k = 10 (linear), sigma2 = 1, P_T = 100.
struct ScenarioParams {
  double gamma = 10.0;
  double sigma2 = 1.0;
  double p_t = 100.0;
};

/// Deterministic instance for (seed, N, K, cell). Channel entries are drawn
/// column by column from CounterRng::stream({seed, N, K, cell}).
isac::ScenarioData generate_scenario(std::uint64_t seed, Index n, Index k,
                                     const ScenarioParams& params = {}, std::uint64_t cell = 0);

}  // namespace abal::bench
