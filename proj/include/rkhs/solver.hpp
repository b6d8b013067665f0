#pragma once

// Homogenization u = v + h, linear boundary-value solves through the
// differentiation matrix, and explicit Euler method of lines.

#include "rkhs/diffmat.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

namespace rkhs {

/// f(x, t) with the requested partial derivatives: alpha in space,
/// time_order in t. Implementations throw InvalidArgument for orders they
/// do not provide.
using SpaceTimeFunction = std::function<double(std::span<const double> x, double t,
                                               const MultiIndex& alpha, int time_order)>;

/// Spatial-only source term f(x, t).
using SourceFunction = std::function<double(std::span<const double> x, double t)>;

class ExtensionFunction {
 public:
  ExtensionFunction(std::size_t dim, SpaceTimeFunction f, std::string description);

  std::size_t dim() const { return dim_; }
  const std::string& description() const { return description_; }

  double operator()(std::span<const double> x, double t = 0.0) const;
  double derivative(std::span<const double> x, double t, const MultiIndex& alpha,
                    int time_order = 0) const;
  /// op applied in space at (x, t).
  double apply(const LinearOperator& op, std::span<const double> x, double t = 0.0) const;

 private:
  std::size_t dim_;
  SpaceTimeFunction f_;
  std::string description_;
};

ExtensionFunction zero_extension(std::size_t dim);

enum class ExtensionKind { linear_blend, multilinear_transfinite };

/// Extension of boundary data into a box. boundary_data is only evaluated on
/// the boundary, with derivatives tangential to the face it sits on.
ExtensionFunction make_extension(const std::vector<Interval>& box, SpaceTimeFunction boundary_data,
                                 ExtensionKind kind);

struct BoundaryValue {
  BoundaryFunctional functional;
  double value = 0.0;
};

/// Lowest-degree polynomial matching the listed derivative values (one
/// condition per coefficient), time independent.
ExtensionFunction hermite_extension(const Interval& interval, const std::vector<BoundaryValue>& data);

struct LinearBVP {
  std::vector<KernelSpace> spaces;
  LinearOperator op;
  SourceFunction rhs;
  ExtensionFunction extension;
};

/// F_i = f(x_i) - (op h)(x_i).
Eigen::VectorXd homogenize_rhs(const LinearBVP& p, const TensorGrid& grid);

/// Kernel, grid and factor shared by every solver on one node set.
std::shared_ptr<const OrthoFactor> make_factor(const std::vector<KernelSpace>& spaces,
                                               std::span<const int> counts,
                                               const MgsOptions& options = {});

struct BvpSolution {
  std::shared_ptr<const OrthoFactor> factor;
  DiffMatrix l;
  RealVector v;
  Eigen::VectorXd u;
  ExtensionFunction extension;

  /// u_N(z) = sum_k v_k h_k(z) + h(z).
  double operator()(std::span<const double> z) const;
};

/// v = L^{-1} F by LU; throws SingularMatrix when L is numerically singular.
BvpSolution solve_linear_bvp(const LinearBVP& p, std::span<const int> counts,
                             const MgsOptions& options = {});
BvpSolution solve_linear_bvp(const LinearBVP& p, std::shared_ptr<const OrthoFactor> factor);

struct NodalField {
  Eigen::VectorXd v;
  double t = 0.0;
};

using RhsEvaluator = std::function<Eigen::VectorXd(const Eigen::VectorXd& v, double t)>;

struct SemidiscreteSystem {
  RhsEvaluator rhs;
};

using StepObserver = std::function<void(std::size_t step, const NodalField& field)>;

/// Forward Euler from v0.t to t_end. When t_end - t0 is not a whole number of
/// steps the last step is shortened. The observer sees the initial field
/// (step 0) and the field after every step. Throws Divergence on non-finite
/// values.
NodalField euler_integrate(const SemidiscreteSystem& sys, NodalField v0, double dt, double t_end,
                           const StepObserver& observer = {});

/// Number of Euler steps euler_integrate takes.
std::size_t euler_step_count(double t0, double dt, double t_end);

/// h and the derivatives the method-of-lines right-hand sides need, at every
/// node of a grid.
class NodalExtension {
 public:
  NodalExtension(const TensorGrid& grid, ExtensionFunction h);

  std::size_t size() const { return nodes_.size(); }
  std::size_t dim() const { return h_.dim(); }
  const std::vector<std::vector<double>>& nodes() const { return nodes_; }
  const ExtensionFunction& function() const { return h_; }

  Eigen::VectorXd value(double t) const;
  Eigen::VectorXd gradient(std::size_t axis, double t) const;
  Eigen::VectorXd laplacian(double t) const;
  Eigen::VectorXd time_derivative(double t) const;

 private:
  Eigen::VectorXd sample(double t, const MultiIndex& alpha, int time_order) const;

  std::vector<std::vector<double>> nodes_;
  ExtensionFunction h_;
};

/// dv/dt = -(v + h)(D1 v + h_x) + nu (D2 v + h_xx) - h_t.
/// With advect = false the nonlinear term is dropped.
RhsEvaluator burgers_rhs_1d(const Eigen::MatrixXd& d1, const Eigen::MatrixXd& d2, double nu,
                            std::shared_ptr<const NodalExtension> h, bool advect = true);

/// dv/dt = -(v + h) sum_d (D1_d v + h_{x_d}) + nu (Lap v + Lap h) - h_t.
RhsEvaluator burgers_rhs_multi(const std::vector<Eigen::MatrixXd>& d1, const Eigen::MatrixXd& lap,
                               double nu, std::shared_ptr<const NodalExtension> h);

/// dv/dt = c (Lap v + Lap h) + s(x, t) - h_t.
RhsEvaluator heat_rhs(const Eigen::MatrixXd& lap, double c, SourceFunction source,
                      std::shared_ptr<const NodalExtension> h);

/// The three-dimensional benchmark: c = 1/pi^2, s = -2 exp(t - pi (x + y + z)).
RhsEvaluator heat3d_rhs(const Eigen::MatrixXd& lap, std::shared_ptr<const NodalExtension> h);

/// Rows t,node_index,coord_1..coord_d,v,u[,exact,abs_err].
void write_snapshot_header(std::ostream& out, std::size_t dim, bool with_exact);
void write_snapshot(std::ostream& out, const NodalExtension& h, const NodalField& field,
                    const std::optional<SpaceTimeFunction>& exact);

}  // namespace rkhs
