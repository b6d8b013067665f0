#pragma once

// Dense linear-algebra substrate. Every routine is a pure function of its
// inputs; the factorizations are Eigen's, the guards are ours.

#include "rkhs/scalar.hpp"

#include <complex>
#include <vector>

namespace rkhs {

using ComplexValue = std::complex<double>;

/// Solves a * x = rhs with partially pivoted LU.
///
/// Throws SingularMatrix when a pivot of U drops below
/// 1e-14 * max|a_ij| (threshold rescaled to the precision of T).
template <class T>
Matrix<T> lu_solve(const Matrix<T>& a, const Matrix<T>& rhs);

template <class T>
Vector<T> lu_solve(const Matrix<T>& a, const Vector<T>& rhs);

/// ||a||_1 * ||a^{-1}||_1, with the inverse formed from the pivoted LU.
template <class T>
double condition_estimate(const Matrix<T>& a);

/// Maximum sweep count of the Schur iteration is max_sweeps_per_dim * n.
struct EigenOptions {
  int max_sweeps_per_dim = 100;
};

/// Eigenvalues of a real square matrix, unordered. Complex ones come in
/// conjugate pairs. Throws ConvergenceFailure when the QR iteration stalls.
std::vector<ComplexValue> eigenvalues(const Eigen::MatrixXd& a,
                                      const EigenOptions& options = {});

template <class T>
T max_abs(const Matrix<T>& a) {
  return a.size() == 0 ? T(0) : T(a.cwiseAbs().maxCoeff());
}

}  // namespace rkhs
