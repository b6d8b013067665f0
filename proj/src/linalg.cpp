#include "rkhs/linalg.hpp"

#include "rkhs/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace rkhs {
namespace {

template <class T>
void require_finite(const Matrix<T>& a, const char* what) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      using std::isfinite;
      using boost::multiprecision::isfinite;
      if (!isfinite(a(i, j))) throw InvalidArgument(std::string(what) + " has non-finite entries");
    }
}

template <class T>
Eigen::PartialPivLU<Matrix<T>> checked_lu(const Matrix<T>& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidArgument("lu_solve: matrix must be square and nonempty");
  require_finite(a, "lu_solve: matrix");
  Eigen::PartialPivLU<Matrix<T>> lu(a);
  const T guard = precision_scaled<T>(1e-14) * max_abs(a);
  const auto& packed = lu.matrixLU();
  for (Eigen::Index k = 0; k < packed.rows(); ++k) {
    using std::abs;
    using boost::multiprecision::abs;
    if (!(abs(packed(k, k)) > guard)) {
      std::ostringstream os;
      os << "singular matrix: pivot " << k << " has magnitude "
         << static_cast<double>(abs(packed(k, k)));
      throw SingularMatrix(os.str());
    }
  }
  return lu;
}

}  // namespace

template <class T>
Matrix<T> lu_solve(const Matrix<T>& a, const Matrix<T>& rhs) {
  if (rhs.rows() != a.rows()) throw InvalidArgument("lu_solve: rhs row count mismatch");
  return checked_lu(a).solve(rhs);
}

template <class T>
Vector<T> lu_solve(const Matrix<T>& a, const Vector<T>& rhs) {
  if (rhs.rows() != a.rows()) throw InvalidArgument("lu_solve: rhs row count mismatch");
  return checked_lu(a).solve(rhs);
}

template <class T>
double condition_estimate(const Matrix<T>& a) {
  const auto lu = checked_lu(a);
  // Matrices here are at most a few hundred wide; the inverse from the LU
  // factors gives the 1-norm condition number outright.
  const Matrix<T> inv = lu.inverse();
  const T norm = a.cwiseAbs().colwise().sum().maxCoeff();
  const T inv_norm = inv.cwiseAbs().colwise().sum().maxCoeff();
  const double cond = static_cast<double>(norm * inv_norm);
  if (!std::isfinite(cond)) throw SingularMatrix("condition_estimate: inverse overflowed");
  return cond < 1.0 ? 1.0 : cond;
}

std::vector<ComplexValue> eigenvalues(const Eigen::MatrixXd& a, const EigenOptions& options) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw InvalidArgument("eigenvalues: matrix must be square and nonempty");
  require_finite<double>(a, "eigenvalues: matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(static_cast<Eigen::Index>(options.max_sweeps_per_dim) * a.rows());
  solver.compute(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigenvalues: Schur iteration did not converge");
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

template Matrix<double> lu_solve(const Matrix<double>&, const Matrix<double>&);
template Vector<double> lu_solve(const Matrix<double>&, const Vector<double>&);
template Matrix<Real> lu_solve(const Matrix<Real>&, const Matrix<Real>&);
template Vector<Real> lu_solve(const Matrix<Real>&, const Vector<Real>&);
template double condition_estimate(const Matrix<double>&);
template double condition_estimate(const Matrix<Real>&);

}  // namespace rkhs
