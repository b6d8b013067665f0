#include "rkhs/kernel1d.hpp"

#include "rkhs/errors.hpp"
#include "rkhs/linalg.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include <sstream>

namespace rkhs {
namespace {

using boost::multiprecision::abs;

constexpr int kDiagonalSamples = 129;

Real binomial(int n, int k) {
  return Real(boost::math::binomial_coefficient<double>(static_cast<unsigned>(n),
                                                        static_cast<unsigned>(k)));
}

Real factorial(int n) { return falling_factorial<Real>(n, n); }

Real power(const Real& x, int n) {
  Real out(1);
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

/// Values of d^k/dx^k x^i for i = 0..n-1.
std::vector<Real> monomial_derivatives(int n, int k, const Real& x) {
  std::vector<Real> out(static_cast<std::size_t>(n), Real(0));
  Real p(1);
  for (int i = k; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = falling_factorial<Real>(i, k) * p;
    p *= x;
  }
  return out;
}

Real eval_table(const RealMatrix& table, int s, int r, const Real& x, const Real& y) {
  const int n = static_cast<int>(table.rows());
  const auto px = monomial_derivatives(n, s, x);
  const auto py = monomial_derivatives(n, r, y);
  Real acc(0);
  for (int i = s; i < n; ++i) {
    Real row(0);
    for (int j = r; j < n; ++j) row += table(i, j) * py[static_cast<std::size_t>(j)];
    acc += px[static_cast<std::size_t>(i)] * row;
  }
  return acc;
}

std::string describe(const BoundaryFunctional& f) {
  std::ostringstream os;
  os << "d" << f.order << "@" << static_cast<double>(f.point);
  return os.str();
}

}  // namespace

Interval make_interval(const Real& a, const Real& b) {
  using boost::multiprecision::isfinite;
  if (!isfinite(a) || !isfinite(b) || !(a < b))
    throw InvalidArgument("interval requires finite a < b");
  return Interval{a, b};
}

Kernel::Kernel(KernelSpace space, RealMatrix left, RealMatrix right)
    : space_(std::move(space)), left_(std::move(left)), right_(std::move(right)) {
  const Interval& iv = space_.interval;
  Real scale(0);
  for (int i = 0; i < kDiagonalSamples; ++i) {
    const Real x = iv.a + iv.length() * Real(i) / Real(kDiagonalSamples - 1);
    const Real v = eval_table(left_, 0, 0, x, x);
    if (v > scale) scale = v;
  }
  diagonal_scale_ = scale;
}

Kernel Kernel::from_tables(KernelSpace space, RealMatrix left, RealMatrix right) {
  const Eigen::Index n = 2 * space.m;
  if (space.m < 1 || left.rows() != n || left.cols() != n || right.rows() != n ||
      right.cols() != n)
    throw InvalidArgument("kernel tables must be 2m x 2m");
  make_interval(space.interval.a, space.interval.b);
  return Kernel(std::move(space), std::move(left), std::move(right));
}

Real Kernel::eval(int s, int r, const Real& x, const Real& y) const {
  const Interval& iv = space_.interval;
  if (s < 0 || r < 0) throw InvalidArgument("derivative orders must be nonnegative");
  if (!iv.contains(x) || !iv.contains(y)) {
    std::ostringstream os;
    os << "kernel argument (" << static_cast<double>(x) << ", " << static_cast<double>(y)
       << ") outside [" << static_cast<double>(iv.a) << ", " << static_cast<double>(iv.b)
       << "]";
    throw OutOfDomain(os.str());
  }
  if (x == y && s + r > 2 * space_.m - 2) {
    std::ostringstream os;
    os << "d^" << s << "/dx d^" << r << "/dy of a W_2^" << space_.m
       << " kernel is discontinuous on the diagonal";
    throw SmoothnessExceeded(os.str());
  }
  return eval_table(x <= y ? left_ : right_, s, r, x, y);
}

Kernel build_base_kernel(int m, const Interval& interval) {
  if (m < 1 || m > kMaxOrder) {
    std::ostringstream os;
    os << "smoothness order m=" << m << " outside 1.." << kMaxOrder;
    throw InvalidArgument(os.str());
  }
  const Interval iv = make_interval(interval.a, interval.b);
  const int n = 2 * m;
  const Real& a = iv.a;
  const Real& b = iv.b;

  // Left piece p_y(x) = sum_k c_k(y) x^k; rows 0..m-1 match the boundary terms
  // of the inner product at a, rows m..2m-1 are the natural conditions at b.
  // The right-hand side is polynomial in y, one column per power of y.
  RealMatrix system = RealMatrix::Zero(n, n);
  RealMatrix rhs = RealMatrix::Zero(n, m);
  for (int i = 0; i < m; ++i) {
    const int high = 2 * m - 1 - i;
    const Real sign = ((m - 1 - i) % 2 == 0) ? Real(1) : Real(-1);
    const auto lo_d = monomial_derivatives(n, i, a);
    const auto hi_d = monomial_derivatives(n, high, a);
    for (int k = 0; k < n; ++k)
      system(i, k) = lo_d[static_cast<std::size_t>(k)] - sign * hi_d[static_cast<std::size_t>(k)];
  }
  const Real sign_m = (m % 2 == 0) ? Real(1) : Real(-1);
  for (int j = 0; j < m; ++j) {
    const int row = m + j;
    const auto d = monomial_derivatives(n, m + j, b);
    for (int k = 0; k < n; ++k) system(row, k) = d[static_cast<std::size_t>(k)];
    // -(-1)^m (b - y)^e / e!
    const int e = m - 1 - j;
    for (int l = 0; l <= e; ++l) {
      const Real sign_l = (l % 2 == 0) ? Real(1) : Real(-1);
      rhs(row, l) = -sign_m * binomial(e, l) * power(b, e - l) * sign_l / factorial(e);
    }
  }

  RealMatrix coeffs;
  try {
    coeffs = lu_solve<Real>(system, rhs);
  } catch (const SingularMatrix& err) {
    throw IllConditionedConstruction(std::string("kernel coefficient system: ") + err.what());
  }

  RealMatrix left = RealMatrix::Zero(n, n);
  left.leftCols(m) = coeffs;

  // Right piece: q_y(x) = p_y(x) + (-1)^m (x - y)^{2m-1} / (2m-1)!.
  RealMatrix right = left;
  const int top = 2 * m - 1;
  const Real scale = sign_m / factorial(top);
  for (int i = 0; i <= top; ++i) {
    const Real sign_y = ((top - i) % 2 == 0) ? Real(1) : Real(-1);
    right(i, top - i) += scale * binomial(top, i) * sign_y;
  }

  return Kernel::from_tables(KernelSpace{iv, m, {}}, std::move(left), std::move(right));
}

Kernel deflate(const Kernel& kernel, const BoundaryFunctional& lambda) {
  const KernelSpace& space = kernel.space();
  const Interval& iv = space.interval;
  const int m = space.m;
  if (lambda.order < 0 || lambda.order > m - 1)
    throw DegenerateConstraint("constraint " + describe(lambda) +
                               " has order above m-1 = " + std::to_string(m - 1));
  if (lambda.point != iv.a && lambda.point != iv.b)
    throw InvalidArgument("constraint " + describe(lambda) +
                          " is not at an interval endpoint; only endpoint functionals are supported");
  if (static_cast<int>(space.constraints.size()) >= 2 * m)
    throw DegenerateConstraint("a W_2^m space admits at most 2m constraints");
  for (const auto& c : space.constraints)
    if (c == lambda) throw DegenerateConstraint("constraint " + describe(lambda) + " already imposed");

  const Real d = kernel.eval(lambda.order, lambda.order, lambda.point, lambda.point);
  if (!(abs(d) > Real(1e-12) * kernel.diagonal_scale()))
    throw DegenerateConstraint("constraint " + describe(lambda) +
                               " is already annihilated by the kernel");

  // phi(x) = d^r/dy^r K(x, p). At p = a every x sits in the right region,
  // at p = b in the left one, so phi is a single polynomial.
  const RealMatrix& table = lambda.point == iv.a ? kernel.right() : kernel.left();
  const int n = 2 * m;
  const auto py = monomial_derivatives(n, lambda.order, lambda.point);
  RealVector phi = RealVector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) phi(i) += table(i, j) * py[static_cast<std::size_t>(j)];

  const RealMatrix update = (phi * phi.transpose()) / d;
  KernelSpace next = space;
  next.constraints.push_back(lambda);
  return Kernel::from_tables(std::move(next), kernel.left() - update, kernel.right() - update);
}

Kernel build_kernel(const KernelSpace& space) {
  Kernel k = build_base_kernel(space.m, space.interval);
  for (const auto& c : space.constraints) k = deflate(k, c);
  return k;
}

Real verify_reproducing(const Kernel& kernel, const Polynomial<Real>& f, const Real& y) {
  using Quadrature = boost::math::quadrature::gauss<Real, 20>;
  const Interval& iv = kernel.interval();
  const int m = kernel.order();
  if (!iv.contains(y)) throw OutOfDomain("verify_reproducing: y outside the interval");
  if (f.degree() > 2 * m - 1)
    throw InvalidArgument("verify_reproducing: polynomial degree exceeds 2m-1");

  Real inner(0);
  for (int i = 0; i < m; ++i) inner += f(iv.a, i) * kernel.eval(i, 0, iv.a, y);
  auto integrand = [&](const Real& x) { return f(x, m) * kernel.eval(m, 0, x, y); };
  if (y > iv.a) inner += Quadrature::integrate(integrand, iv.a, y);
  if (y < iv.b) inner += Quadrature::integrate(integrand, y, iv.b);
  return abs(inner - f(y));
}

}  // namespace rkhs
