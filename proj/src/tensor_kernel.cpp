#include "rkhs/tensor_kernel.hpp"

#include "rkhs/errors.hpp"

#include <map>
#include <numeric>
#include <sstream>

namespace rkhs {
namespace {

void check_dims(const TensorKernel& k, std::size_t got, const char* what) {
  if (got != k.dim()) {
    std::ostringstream os;
    os << what << " has dimension " << got << ", kernel has " << k.dim();
    throw InvalidArgument(os.str());
  }
}

}  // namespace

MultiIndex MultiIndex::axis(std::size_t dim, std::size_t axis, int order) {
  if (axis >= dim) throw InvalidArgument("multi-index axis out of range");
  MultiIndex out = zero(dim);
  out.orders[axis] = order;
  return out;
}

int MultiIndex::total() const { return std::accumulate(orders.begin(), orders.end(), 0); }

LinearOperator::LinearOperator(std::vector<OperatorTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("linear operator needs at least one term");
  const std::size_t d = terms_.front().index.dim();
  for (const auto& t : terms_) {
    if (t.index.dim() != d || d == 0)
      throw InvalidArgument("operator terms must share one nonzero dimension");
    for (int o : t.index.orders)
      if (o < 0) throw InvalidArgument("negative derivative order in operator");
  }
}

LinearOperator LinearOperator::identity(std::size_t dim) {
  return LinearOperator({{1.0, MultiIndex::zero(dim)}});
}

LinearOperator LinearOperator::derivative(std::size_t dim, std::size_t axis, int order) {
  return LinearOperator({{1.0, MultiIndex::axis(dim, axis, order)}});
}

LinearOperator LinearOperator::laplacian(std::size_t dim) {
  std::vector<OperatorTerm> terms;
  for (std::size_t d = 0; d < dim; ++d) terms.push_back({1.0, MultiIndex::axis(dim, d, 2)});
  return LinearOperator(std::move(terms));
}

int LinearOperator::max_order(std::size_t axis) const {
  int out = 0;
  for (const auto& t : terms_) out = std::max(out, t.index.orders.at(axis));
  return out;
}

LinearOperator LinearOperator::operator+(const LinearOperator& other) const {
  if (other.dim() != dim()) throw InvalidArgument("adding operators of different dimension");
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return LinearOperator(std::move(terms));
}

LinearOperator LinearOperator::operator*(double scale) const {
  auto terms = terms_;
  for (auto& t : terms) t.coefficient *= scale;
  return LinearOperator(std::move(terms));
}

TensorKernel::TensorKernel(std::vector<Kernel> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("tensor kernel needs at least one factor");
}

Real TensorKernel::diagonal_scale() const {
  Real s(1);
  for (const auto& f : factors_) s *= f.diagonal_scale();
  return s;
}

TensorKernel make_tensor_kernel(const std::vector<KernelSpace>& spaces) {
  std::vector<Kernel> factors;
  factors.reserve(spaces.size());
  for (const auto& s : spaces) factors.push_back(build_kernel(s));
  return TensorKernel(std::move(factors));
}

TensorGrid::TensorGrid(std::vector<std::vector<Real>> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw InvalidArgument("tensor grid needs at least one axis");
  size_ = 1;
  for (const auto& ax : axes_) {
    if (ax.empty()) throw InvalidArgument("tensor grid axis is empty");
    for (std::size_t i = 1; i < ax.size(); ++i)
      if (!(ax[i - 1] < ax[i])) throw InvalidArgument("grid axis must be strictly increasing");
    size_ *= ax.size();
  }
}

std::vector<std::size_t> TensorGrid::multi_index(std::size_t flat) const {
  std::vector<std::size_t> out(dim());
  for (std::size_t d = dim(); d-- > 0;) {
    out[d] = flat % axes_[d].size();
    flat /= axes_[d].size();
  }
  return out;
}

std::size_t TensorGrid::flat_index(std::span<const std::size_t> multi) const {
  std::size_t flat = 0;
  for (std::size_t d = 0; d < dim(); ++d) flat = flat * axes_[d].size() + multi[d];
  return flat;
}

const Real& TensorGrid::coordinate(std::size_t flat, std::size_t axis) const {
  std::size_t stride = 1;
  for (std::size_t d = axis + 1; d < dim(); ++d) stride *= axes_[d].size();
  return axes_[axis][(flat / stride) % axes_[axis].size()];
}

RealPoint TensorGrid::point(std::size_t flat) const {
  const auto idx = multi_index(flat);
  RealPoint p(dim());
  for (std::size_t d = 0; d < dim(); ++d) p[d] = axes_[d][idx[d]];
  return p;
}

std::vector<std::vector<double>> TensorGrid::points_double() const {
  std::vector<std::vector<double>> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = to_double(point(i));
  return out;
}

TensorGrid make_interior_grid(std::span<const Interval> intervals, std::span<const int> counts) {
  if (intervals.size() != counts.size() || intervals.empty())
    throw InvalidArgument("make_interior_grid: one count per interval required");
  std::vector<std::vector<Real>> axes;
  for (std::size_t d = 0; d < intervals.size(); ++d) {
    const int n = counts[d];
    if (n < 1) throw InvalidArgument("make_interior_grid: counts must be >= 1");
    const Interval& iv = intervals[d];
    std::vector<Real> ax;
    ax.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) ax.push_back(iv.a + Real(i) * iv.length() / Real(n + 1));
    axes.push_back(std::move(ax));
  }
  return TensorGrid(std::move(axes));
}

Real eval_tensor(const TensorKernel& k, const MultiIndex& s, const MultiIndex& r,
                 std::span<const Real> x, std::span<const Real> y) {
  check_dims(k, s.dim(), "multi-index s");
  check_dims(k, r.dim(), "multi-index r");
  check_dims(k, x.size(), "point x");
  check_dims(k, y.size(), "point y");
  Real out(1);
  for (std::size_t d = 0; d < k.dim(); ++d)
    out *= k.factor(d).eval(s.orders[d], r.orders[d], x[d], y[d]);
  return out;
}

Real apply_operator(const TensorKernel& k, const LinearOperator& op, Argument argument,
                    std::span<const Real> x, std::span<const Real> y) {
  const MultiIndex none = MultiIndex::zero(k.dim());
  Real out(0);
  for (const auto& t : op.terms()) {
    const Real v = argument == Argument::first ? eval_tensor(k, t.index, none, x, y)
                                               : eval_tensor(k, none, t.index, x, y);
    out += Real(t.coefficient) * v;
  }
  return out;
}

Real apply_operator_both(const TensorKernel& k, const LinearOperator& op,
                         std::span<const Real> z) {
  Real out(0);
  for (const auto& a : op.terms())
    for (const auto& b : op.terms())
      out += Real(a.coefficient) * Real(b.coefficient) * eval_tensor(k, a.index, b.index, z, z);
  return out;
}

RealMatrix kernel_matrix(const TensorKernel& k, const LinearOperator& op, const TensorGrid& grid) {
  check_dims(k, grid.dim(), "grid");
  check_dims(k, op.dim(), "operator");
  const std::size_t dim = k.dim();
  const auto n = static_cast<Eigen::Index>(grid.size());

  // One table per (axis, derivative order) pair the operator needs.
  std::vector<std::map<int, RealMatrix>> tables(dim);
  for (const auto& t : op.terms())
    for (std::size_t d = 0; d < dim; ++d) {
      const int s = t.index.orders[d];
      if (tables[d].count(s)) continue;
      const auto& ax = grid.axis(d);
      const auto na = static_cast<Eigen::Index>(ax.size());
      RealMatrix table(na, na);
      for (Eigen::Index p = 0; p < na; ++p)
        for (Eigen::Index q = 0; q < na; ++q)
          table(p, q) = k.factor(d).eval(s, 0, ax[static_cast<std::size_t>(p)],
                                         ax[static_cast<std::size_t>(q)]);
      tables[d].emplace(s, std::move(table));
    }

  std::vector<std::vector<std::size_t>> idx(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) idx[i] = grid.multi_index(i);

  RealMatrix out = RealMatrix::Zero(n, n);
  for (const auto& t : op.terms()) {
    std::vector<const RealMatrix*> per_axis(dim);
    for (std::size_t d = 0; d < dim; ++d) per_axis[d] = &tables[d].at(t.index.orders[d]);
    const Real c(t.coefficient);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& ii = idx[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n; ++j) {
        const auto& jj = idx[static_cast<std::size_t>(j)];
        Real v = c;
        for (std::size_t d = 0; d < dim; ++d)
          v *= (*per_axis[d])(static_cast<Eigen::Index>(ii[d]), static_cast<Eigen::Index>(jj[d]));
        out(i, j) += v;
      }
    }
  }
  return out;
}

void check_operator_order(const TensorKernel& k, const LinearOperator& op, int arguments) {
  check_dims(k, op.dim(), "operator");
  for (std::size_t d = 0; d < k.dim(); ++d) {
    const int limit = 2 * k.factor(d).order() - 2;
    if (arguments * op.max_order(d) > limit) {
      std::ostringstream os;
      os << "operator order " << op.max_order(d) << " on axis " << d
         << " needs a smoother kernel than W_2^" << k.factor(d).order();
      throw SmoothnessExceeded(os.str());
    }
  }
}

}  // namespace rkhs
