#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace abal {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Thrown when inputs violate an operation's shape or domain contract.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical kernel (factorization, eigensolver, root finder)
/// cannot deliver its result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline CMatrix hermitian_part(const CMatrix& m) {
  return (m + m.adjoint()) * 0.5;
}

inline void make_hermitian(CMatrix& m) {
  m = hermitian_part(m);
}

/// ||M - M^H||_F, the deviation from Hermitian symmetry.
inline double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).norm();
}

/// Re <A, B> = Re tr(A^H B).
inline double real_inner(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.conjugate()).sum().real();
}

inline double real_inner(const CVector& a, const CVector& b) {
  return a.dot(b).real();
}

/// h^H M h for Hermitian M; the imaginary part is rounding noise.
inline double quadratic_form(const CMatrix& m, const Eigen::Ref<const CVector>& h) {
  return h.dot(m * h).real();
}

struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};

/// Eigendecomposition of a Hermitian matrix; the input is symmetrized first.
HermitianEigen hermitian_eigen(const CMatrix& m);

/// U diag(values) U^H, returned exactly Hermitian.
CMatrix rebuild_hermitian(const CMatrix& vectors, const RVector& values);

}  // namespace abal
