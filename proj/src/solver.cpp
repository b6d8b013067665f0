#include "rkhs/solver.hpp"

#include "rkhs/errors.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace rkhs {

Eigen::VectorXd homogenize_rhs(const LinearBVP& p, const TensorGrid& grid) {
  if (!p.rhs) throw InvalidArgument("homogenize_rhs: missing right-hand side");
  Eigen::VectorXd f(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = to_double(grid.point(i));
    f(static_cast<Eigen::Index>(i)) = p.rhs(x, 0.0) - p.extension.apply(p.op, x);
  }
  return f;
}

std::shared_ptr<const OrthoFactor> make_factor(const std::vector<KernelSpace>& spaces,
                                               std::span<const int> counts,
                                               const MgsOptions& options) {
  if (spaces.size() != counts.size())
    throw InvalidArgument("make_factor: one node count per dimension required");
  auto kernel = std::make_shared<const TensorKernel>(make_tensor_kernel(spaces));
  std::vector<Interval> box;
  for (const auto& s : spaces) box.push_back(s.interval);
  auto grid = std::make_shared<const TensorGrid>(make_interior_grid(box, counts));
  return std::make_shared<const OrthoFactor>(mgs_factor(gram(kernel, grid), options));
}

double BvpSolution::operator()(std::span<const double> z) const {
  const RealPoint zr = to_real(std::vector<double>(z.begin(), z.end()));
  return to_double(interpolate(*factor, v, zr)) + extension(z);
}

BvpSolution solve_linear_bvp(const LinearBVP& p, std::span<const int> counts,
                             const MgsOptions& options) {
  return solve_linear_bvp(p, make_factor(p.spaces, counts, options));
}

BvpSolution solve_linear_bvp(const LinearBVP& p, std::shared_ptr<const OrthoFactor> factor) {
  if (!factor) throw InvalidArgument("solve_linear_bvp: null factor");
  DiffMatrix l = build_diffmat(factor, p.op);
  const Eigen::VectorXd f = homogenize_rhs(p, factor->grid());
  RealVector v = lu_solve<Real>(l.l, RealVector(f.cast<Real>()));
  Eigen::VectorXd u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    u(i) = to_double(v(i)) + p.extension(to_double(factor->grid().point(static_cast<std::size_t>(i))));
  return {std::move(factor), std::move(l), std::move(v), std::move(u), p.extension};
}

std::size_t euler_step_count(double t0, double dt, double t_end) {
  if (!(dt > 0)) throw InvalidArgument("euler_integrate: dt must be positive");
  if (!(t_end >= t0)) throw InvalidArgument("euler_integrate: t_end precedes the start time");
  const double span = t_end - t0;
  const double whole = std::round(span / dt);
  if (std::abs(whole * dt - span) <= 1e-9 * std::max(span, dt)) return static_cast<std::size_t>(whole);
  return static_cast<std::size_t>(std::ceil(span / dt));
}

NodalField euler_integrate(const SemidiscreteSystem& sys, NodalField field, double dt, double t_end,
                           const StepObserver& observer) {
  if (!sys.rhs) throw InvalidArgument("euler_integrate: missing right-hand side");
  const double t0 = field.t;
  const std::size_t steps = euler_step_count(t0, dt, t_end);
  if (observer) observer(0, field);
  for (std::size_t k = 0; k < steps; ++k) {
    const double next = k + 1 == steps ? t_end : t0 + static_cast<double>(k + 1) * dt;
    const double h = next - field.t;
    field.v += h * sys.rhs(field.v, field.t);
    field.t = next;
    if (!field.v.allFinite()) {
      std::ostringstream os;
      os << "non-finite nodal value after step " << k + 1 << " (t = " << field.t << ")";
      throw Divergence(os.str(), k + 1);
    }
    if (observer) observer(k + 1, field);
  }
  return field;
}

NodalExtension::NodalExtension(const TensorGrid& grid, ExtensionFunction h)
    : nodes_(grid.points_double()), h_(std::move(h)) {
  if (grid.dim() != h_.dim()) throw InvalidArgument("extension and grid dimensions differ");
}

Eigen::VectorXd NodalExtension::sample(double t, const MultiIndex& alpha, int time_order) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(nodes_.size()));
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = h_.derivative(nodes_[i], t, alpha, time_order);
  return out;
}

Eigen::VectorXd NodalExtension::value(double t) const { return sample(t, MultiIndex::zero(dim()), 0); }

Eigen::VectorXd NodalExtension::gradient(std::size_t axis, double t) const {
  return sample(t, MultiIndex::axis(dim(), axis, 1), 0);
}

Eigen::VectorXd NodalExtension::laplacian(double t) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  for (std::size_t d = 0; d < dim(); ++d) out += sample(t, MultiIndex::axis(dim(), d, 2), 0);
  return out;
}

Eigen::VectorXd NodalExtension::time_derivative(double t) const {
  return sample(t, MultiIndex::zero(dim()), 1);
}

RhsEvaluator burgers_rhs_1d(const Eigen::MatrixXd& d1, const Eigen::MatrixXd& d2, double nu,
                            std::shared_ptr<const NodalExtension> h, bool advect) {
  if (!h || h->dim() != 1) throw InvalidArgument("burgers_rhs_1d: one-dimensional extension required");
  return [d1, d2, nu, h, advect](const Eigen::VectorXd& v, double t) {
    Eigen::VectorXd out = nu * (d2 * v + h->laplacian(t)) - h->time_derivative(t);
    if (advect)
      out -= (v + h->value(t)).cwiseProduct(d1 * v + h->gradient(0, t));
    return out;
  };
}

RhsEvaluator burgers_rhs_multi(const std::vector<Eigen::MatrixXd>& d1, const Eigen::MatrixXd& lap,
                               double nu, std::shared_ptr<const NodalExtension> h) {
  if (!h || h->dim() != d1.size())
    throw InvalidArgument("burgers_rhs_multi: one first-derivative matrix per dimension required");
  return [d1, lap, nu, h](const Eigen::VectorXd& v, double t) {
    Eigen::VectorXd slope = Eigen::VectorXd::Zero(v.size());
    for (std::size_t d = 0; d < d1.size(); ++d) slope += d1[d] * v + h->gradient(d, t);
    return Eigen::VectorXd(-(v + h->value(t)).cwiseProduct(slope) +
                           nu * (lap * v + h->laplacian(t)) - h->time_derivative(t));
  };
}

RhsEvaluator heat_rhs(const Eigen::MatrixXd& lap, double c, SourceFunction source,
                      std::shared_ptr<const NodalExtension> h) {
  if (!h) throw InvalidArgument("heat_rhs: missing extension");
  return [lap, c, source = std::move(source), h](const Eigen::VectorXd& v, double t) {
    Eigen::VectorXd out = c * (lap * v + h->laplacian(t)) - h->time_derivative(t);
    if (source)
      for (std::size_t i = 0; i < h->size(); ++i) out(static_cast<Eigen::Index>(i)) += source(h->nodes()[i], t);
    return out;
  };
}

RhsEvaluator heat3d_rhs(const Eigen::MatrixXd& lap, std::shared_ptr<const NodalExtension> h) {
  if (!h || h->dim() != 3) throw InvalidArgument("heat3d_rhs: three-dimensional extension required");
  constexpr double pi = std::numbers::pi;
  return heat_rhs(lap, 1 / (pi * pi),
                  [](std::span<const double> x, double t) {
                    return -2 * std::exp(t - pi * (x[0] + x[1] + x[2]));
                  },
                  std::move(h));
}

void write_snapshot_header(std::ostream& out, std::size_t dim, bool with_exact) {
  out << "t,node_index";
  for (std::size_t d = 1; d <= dim; ++d) out << ",coord_" << d;
  out << ",v,u";
  if (with_exact) out << ",exact,abs_err";
  out << '\n';
}

void write_snapshot(std::ostream& out, const NodalExtension& h, const NodalField& field,
                    const std::optional<SpaceTimeFunction>& exact) {
  const auto old = out.precision(17);
  const Eigen::VectorXd hv = h.value(field.t);
  const MultiIndex zero = MultiIndex::zero(h.dim());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    const double u = field.v(k) + hv(k);
    out << field.t << ',' << i;
    for (double c : h.nodes()[i]) out << ',' << c;
    out << ',' << field.v(k) << ',' << u;
    if (exact) {
      const double e = (*exact)(h.nodes()[i], field.t, zero, 0);
      out << ',' << e << ',' << std::abs(u - e);
    }
    out << '\n';
  }
  out.precision(old);
}

}  // namespace rkhs
