#pragma once

// Working precision for everything that touches kernel Gram matrices.
//
// Gram matrices of W_2^m kernels have condition numbers that grow like
// h^{-(2m-1)}; for m = 8 and 40 nodes that is beyond 1e24, so the kernel,
// orthogonalization and differentiation-matrix pipeline runs in IEEE quad
// precision. Time stepping only needs the finished matrices and runs in double.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Dense>

#include <limits>
#include <string>
#include <vector>

namespace rkhs {

using Real = boost::multiprecision::float128;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using RealMatrix = Matrix<Real>;
using RealVector = Vector<Real>;
using RealPoint = std::vector<Real>;

/// Rescales a relative threshold that was calibrated for double so that it
/// keeps the same distance (in ulps) from machine epsilon of T.
template <class T>
T precision_scaled(double double_threshold) {
  return T(double_threshold) * (std::numeric_limits<T>::epsilon() /
                                T(std::numeric_limits<double>::epsilon()));
}

inline double to_double(const Real& x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }

inline Eigen::MatrixXd to_double(const RealMatrix& m) { return m.cast<double>(); }

inline std::vector<double> to_double(const RealPoint& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = static_cast<double>(p[i]);
  return out;
}

inline RealPoint to_real(const std::vector<double>& p) {
  return RealPoint(p.begin(), p.end());
}

/// Shortest decimal text that reads back to the same quad value.
std::string to_exact_string(const Real& x);
Real real_from_string(const std::string& text);

}  // namespace rkhs
