#include "rkhs/errors.hpp"
#include "rkhs/linalg.hpp"
#include "rkhs/solver.hpp"

#include <bit>
#include <sstream>

namespace rkhs {

ExtensionFunction::ExtensionFunction(std::size_t dim, SpaceTimeFunction f, std::string description)
    : dim_(dim), f_(std::move(f)), description_(std::move(description)) {
  if (dim_ == 0 || !f_) throw InvalidArgument("extension needs a dimension and a function");
}

double ExtensionFunction::operator()(std::span<const double> x, double t) const {
  return f_(x, t, MultiIndex::zero(dim_), 0);
}

double ExtensionFunction::derivative(std::span<const double> x, double t, const MultiIndex& alpha,
                                     int time_order) const {
  return f_(x, t, alpha, time_order);
}

double ExtensionFunction::apply(const LinearOperator& op, std::span<const double> x, double t) const {
  double out = 0;
  for (const auto& term : op.terms()) out += term.coefficient * f_(x, t, term.index, 0);
  return out;
}

ExtensionFunction zero_extension(std::size_t dim) {
  return ExtensionFunction(
      dim, [](std::span<const double>, double, const MultiIndex&, int) { return 0.0; }, "zero");
}

ExtensionFunction make_extension(const std::vector<Interval>& box, SpaceTimeFunction g,
                                 ExtensionKind kind) {
  const std::size_t dim = box.size();
  if (dim == 0) throw InvalidArgument("make_extension: empty box");
  if (kind == ExtensionKind::linear_blend && dim != 1)
    throw InvalidArgument("make_extension: linear blend is one-dimensional");
  if (dim > 16) throw InvalidArgument("make_extension: too many dimensions");
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    lo[d] = to_double(box[d].a);
    hi[d] = to_double(box[d].b);
  }

  // Boolean sum of the per-axis linear projectors: sum over nonempty axis
  // subsets S of (-1)^{|S|+1} prod_{d in S} P_d g.
  auto h = [g = std::move(g), lo, hi, dim](std::span<const double> x, double t,
                                            const MultiIndex& alpha, int time_order) {
    if (x.size() != dim || alpha.dim() != dim)
      throw InvalidArgument("extension evaluated with the wrong dimension");
    double total = 0;
    std::vector<double> p(dim);
    MultiIndex tangential = alpha;
    for (unsigned subset = 1; subset < (1u << dim); ++subset) {
      const int size = std::popcount(subset);
      const double sign = size % 2 == 1 ? 1.0 : -1.0;
      bool vanishes = false;
      for (std::size_t d = 0; d < dim; ++d)
        if ((subset >> d & 1u) && alpha.orders[d] >= 2) vanishes = true;
      if (vanishes) continue;
      for (std::size_t d = 0; d < dim; ++d) tangential.orders[d] = (subset >> d & 1u) ? 0 : alpha.orders[d];

      for (unsigned corner = 0; corner < (1u << dim); ++corner) {
        if ((corner & ~subset) != 0) continue;
        double weight = 1;
        for (std::size_t d = 0; d < dim; ++d) {
          if (!(subset >> d & 1u)) {
            p[d] = x[d];
            continue;
          }
          const double len = hi[d] - lo[d];
          const bool upper = corner >> d & 1u;
          const double s = (x[d] - lo[d]) / len;
          if (alpha.orders[d] == 0)
            weight *= upper ? s : 1 - s;
          else
            weight *= upper ? 1 / len : -1 / len;
          p[d] = upper ? hi[d] : lo[d];
        }
        total += sign * weight * g(p, t, tangential, time_order);
      }
    }
    return total;
  };
  return ExtensionFunction(dim, std::move(h),
                           dim == 1 ? "linear blend" : "multilinear transfinite blend");
}

ExtensionFunction hermite_extension(const Interval& interval, const std::vector<BoundaryValue>& data) {
  const auto n = static_cast<Eigen::Index>(data.size());
  if (n == 0) return zero_extension(1);
  RealMatrix m(n, n);
  RealVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = data[static_cast<std::size_t>(i)];
    if (!interval.contains(c.functional.point))
      throw OutOfDomain("hermite_extension: condition outside the interval");
    for (Eigen::Index k = 0; k < n; ++k) {
      const int kk = static_cast<int>(k);
      const Real f = falling_factorial<Real>(kk, c.functional.order);
      m(i, k) = f == 0 ? Real(0) : f * pow(c.functional.point, kk - c.functional.order);
    }
    rhs(i) = Real(c.value);
  }
  RealVector coeffs;
  try {
    coeffs = lu_solve<Real>(m, rhs);
  } catch (const SingularMatrix&) {
    throw InvalidArgument("hermite_extension: conditions do not determine a polynomial");
  }
  std::vector<double> c(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = to_double(coeffs(k));
  Polynomial<double> poly(std::move(c));

  std::ostringstream os;
  os << "degree-" << poly.degree() << " Hermite polynomial";
  return ExtensionFunction(
      1,
      [poly](std::span<const double> x, double, const MultiIndex& alpha, int time_order) {
        if (time_order > 0) return 0.0;
        return poly(x[0], alpha.orders.at(0));
      },
      os.str());
}

}  // namespace rkhs
