#include "abal/bench/scenario_gen.hpp"

#include "abal/rng.hpp"

namespace abal::bench {

isac::ScenarioData generate_scenario(std::uint64_t seed, Index n, Index k,
                                     const ScenarioParams& params, std::uint64_t cell) {
  if (n < 2) throw ContractError("generate_scenario needs N > 1");
  if (k < 1) throw ContractError("generate_scenario needs K >= 1");
  CounterRng rng = CounterRng::stream(
      {seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), cell});
  CMatrix H = random_complex_matrix(rng, n, k);
  return isac::ScenarioData::make(std::move(H), RVector::Constant(k, params.gamma),
                                  params.sigma2, params.p_t);
}

}  // namespace abal::bench
