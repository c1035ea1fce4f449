#include "abal/isac/operators.hpp"

#include <algorithm>
#include <string>

namespace abal::isac {
namespace {

constexpr double kHermitianTol = 1e-10;

void check_matrix(const CMatrix& m, Index n, const char* what, Index index) {
  if (m.rows() != n || m.cols() != n) {
    throw ContractError(std::string(what) + " block " + std::to_string(index) + " is " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                        ", expected " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (hermitian_defect(m) > kHermitianTol * std::max(1.0, m.norm())) {
    throw ContractError(std::string(what) + " block " + std::to_string(index) +
                        " is not Hermitian");
  }
}

}  // namespace

PrimalState PrimalState::zeros(Index n, Index k) {
  return {std::vector<CMatrix>(static_cast<size_t>(k + 1), CMatrix::Zero(n, n)),
          CMatrix::Zero(n, n)};
}

PrimalState PrimalState::initial(const ScenarioData& s) {
  const Index n = s.antennas();
  const Index k = s.users();
  const double level = s.p_t / (static_cast<double>(k + 1) * static_cast<double>(n));
  PrimalState x = zeros(n, k);
  for (auto& w : x.W) w.diagonal().setConstant(level);
  x.Z.diagonal().setConstant(level * static_cast<double>(k + 1));
  return x;
}

double PrimalState::squared_norm() const {
  double total = Z.squaredNorm();
  for (const auto& w : W) total += w.squaredNorm();
  return total;
}

DualState DualState::zeros(Index n, Index k) {
  return {RVector::Zero(k), CMatrix::Zero(n, n)};
}

void check_primal(const ScenarioData& s, const PrimalState& x) {
  const Index n = s.antennas();
  if (static_cast<Index>(x.W.size()) != s.users() + 1) {
    throw ContractError("expected " + std::to_string(s.users() + 1) + " W blocks, got " +
                        std::to_string(x.W.size()));
  }
  for (size_t i = 0; i < x.W.size(); ++i) check_matrix(x.W[i], n, "W", static_cast<Index>(i));
  check_matrix(x.Z, n, "Z", 0);
}

RVector column_quadratic_forms(const CMatrix& H, const CMatrix& M) {
  const CMatrix MH = M * H;
  RVector out(H.cols());
  for (Index k = 0; k < H.cols(); ++k) out(k) = H.col(k).dot(MH.col(k)).real();
  return out;
}

CMatrix weighted_outer_sum(const CMatrix& H, const RVector& c) {
  CMatrix out = H * c.asDiagonal() * H.adjoint();
  make_hermitian(out);
  return out;
}

RVector apply_A(const ScenarioData& s, const PrimalState& x) {
  check_primal(s, x);
  RVector out = -column_quadratic_forms(s.H, x.Z);
  for (Index k = 0; k < s.users(); ++k) {
    out(k) += s.rho(k) * quadratic_form(x.W[static_cast<size_t>(k)], s.H.col(k));
  }
  return out;
}

CMatrix apply_B(const ScenarioData& s, const PrimalState& x) {
  check_primal(s, x);
  CMatrix out = -x.Z;
  for (const auto& w : x.W) out += w;
  return out;
}

PrimalState apply_adjoint(const ScenarioData& s, const RVector& mu, const CMatrix& Lambda) {
  const Index n = s.antennas();
  const Index k = s.users();
  if (mu.size() != k) throw ContractError("mu has the wrong length");
  check_matrix(Lambda, n, "Lambda", 0);

  PrimalState g;
  g.W.reserve(static_cast<size_t>(k + 1));
  for (Index i = 0; i < k; ++i) {
    const CVector& h = s.H.col(i);
    CMatrix block = (s.rho(i) * mu(i)) * (h * h.adjoint()) + Lambda;
    make_hermitian(block);
    g.W.push_back(std::move(block));
  }
  g.W.push_back(Lambda);
  g.Z = -weighted_outer_sum(s.H, mu) - Lambda;
  return g;
}

}  // namespace abal::isac
