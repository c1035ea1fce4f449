#include "abal/linalg.hpp"

namespace abal {

HermitianEigen hermitian_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix rebuild_hermitian(const CMatrix& vectors, const RVector& values) {
  CMatrix out = vectors * values.asDiagonal() * vectors.adjoint();
  make_hermitian(out);
  return out;
}

}  // namespace abal
