#pragma once

// Reproducing kernels of W_2^m[a,b] under the inner product
//
//   (u, v) = sum_{i<m} u^(i)(a) v^(i)(a) + int_a^b u^(m) v^(m) dx,
//
// stored in closed form as two bivariate polynomials (one per side of the
// diagonal), and their rank-one deflations onto subspaces cut out by
// homogeneous endpoint conditions u^(r)(p) = 0.

#include "rkhs/polynomial.hpp"
#include "rkhs/scalar.hpp"

#include <vector>

namespace rkhs {

/// Largest smoothness order accepted by build_base_kernel.
inline constexpr int kMaxOrder = 10;

struct Interval {
  Real a;
  Real b;

  Real length() const { return b - a; }
  bool contains(const Real& x) const { return a <= x && x <= b; }
};

Interval make_interval(const Real& a, const Real& b);

/// The functional u -> u^(order)(point).
struct BoundaryFunctional {
  Real point;
  int order = 0;

  friend bool operator==(const BoundaryFunctional&, const BoundaryFunctional&) = default;
};

struct KernelSpace {
  Interval interval;
  int m = 1;
  std::vector<BoundaryFunctional> constraints;
};

/// K(x, y) = sum_ij left(i, j) x^i y^j  for x <= y, right(i, j) otherwise.
class Kernel {
 public:
  const KernelSpace& space() const { return space_; }
  int order() const { return space_.m; }
  const Interval& interval() const { return space_.interval; }
  const RealMatrix& left() const { return left_; }
  const RealMatrix& right() const { return right_; }

  /// d^s/dx^s d^r/dy^r K(x, y).
  Real eval(int s, int r, const Real& x, const Real& y) const;

  /// max_x K(x, x) over a uniform sample of the interval.
  const Real& diagonal_scale() const { return diagonal_scale_; }

  /// Assembles a kernel from stored tables (used by deserialization).
  static Kernel from_tables(KernelSpace space, RealMatrix left, RealMatrix right);

 private:
  Kernel(KernelSpace space, RealMatrix left, RealMatrix right);

  KernelSpace space_;
  RealMatrix left_;
  RealMatrix right_;
  Real diagonal_scale_;
};

/// Kernel of the unconstrained space W_2^m[a,b].
Kernel build_base_kernel(int m, const Interval& interval);

/// K - phi(x) phi(y) / d with phi(x) = lambda_y K(x, y), d = lambda_x lambda_y K.
/// Only endpoint functionals are supported.
Kernel deflate(const Kernel& kernel, const BoundaryFunctional& lambda);

/// Base kernel deflated by every constraint of the space, in listed order.
Kernel build_kernel(const KernelSpace& space);

inline Real eval(const Kernel& k, int s, int r, const Real& x, const Real& y) {
  return k.eval(s, r, x, y);
}

/// |(f, K(., y)) - f(y)| with the inner product evaluated by Gauss-Legendre
/// quadrature split at the knot x = y.
Real verify_reproducing(const Kernel& kernel, const Polynomial<Real>& f, const Real& y);

}  // namespace rkhs
