#pragma once

#include <vector>

#include "abal/isac/scenario.hpp"

namespace abal::isac {

/// Raised when a user's SINR cannot be made active (its beam carries no
/// signal power while positive slack is demanded).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TightenResult {
  std::vector<CMatrix> W;
  double power_scale = 1.0;   // P_T / sum_k tr(W_k)
  RVector transfer_ratio;     // per user; 1 where no transfer was needed
  int transfers = 0;
};

/// Makes every constraint of a feasible point active without increasing the
/// objective: scale all blocks up to the power budget, then for each user
/// with SINR slack move the fraction (1 - r_k) of W_k into W_{K+1}, where
///   r_k = (h_k^H (sum_i W_i) h_k + sigma2) / (rho_k h_k^H W_k h_k).
/// The transfers leave sum_k W_k unchanged. Slacks down to -1e-9 sigma2 are
/// accepted as rounding; anything lower throws ContractError.
TightenResult tighten_solution(const ScenarioData& s, std::vector<CMatrix> W);

}  // namespace abal::isac
