#include "abal/isac/tighten.hpp"

#include <string>

#include "abal/isac/certificate.hpp"
#include "abal/isac/operators.hpp"

namespace abal::isac {
namespace {
constexpr double kInputSlackTol = 1e-9;
}

TightenResult tighten_solution(const ScenarioData& s, std::vector<CMatrix> W) {
  const Index k_users = s.users();
  if (static_cast<Index>(W.size()) != k_users + 1) throw ContractError("wrong W block count");

  const RVector slack = sinr_slacks(s, W);
  for (Index k = 0; k < k_users; ++k) {
    if (slack(k) < -kInputSlackTol * s.sigma2) {
      throw ContractError("input violates SINR constraint " + std::to_string(k));
    }
  }
  const double power = total_power(W);
  if (!(power > 0.0) || power > s.p_t * (1.0 + kInputSlackTol)) {
    throw ContractError("input violates the power budget");
  }

  TightenResult out;
  out.power_scale = s.p_t / power;
  for (auto& w : W) w *= out.power_scale;

  out.transfer_ratio = RVector::Ones(k_users);
  CMatrix sum = W.front();
  for (size_t i = 1; i < W.size(); ++i) sum += W[i];
  const RVector interference = column_quadratic_forms(s.H, sum);

  CMatrix& sensing = W.back();
  for (Index k = 0; k < k_users; ++k) {
    CMatrix& wk = W[static_cast<size_t>(k)];
    const double signal = s.rho(k) * quadratic_form(wk, s.H.col(k));
    const double needed = interference(k) + s.sigma2;
    if (!(signal > 0.0)) {
      throw InfeasibleError("SINR of user " + std::to_string(k) + " is unreachable");
    }
    const double ratio = needed / signal;
    if (ratio >= 1.0) continue;
    sensing += (1.0 - ratio) * wk;
    wk *= ratio;
    out.transfer_ratio(k) = ratio;
    ++out.transfers;
  }
  out.W = std::move(W);
  return out;
}

}  // namespace abal::isac
