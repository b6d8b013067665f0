#pragma once

// Product kernels on boxes, constant-coefficient differential operators and
// tensor-product node sets.

#include "rkhs/kernel1d.hpp"

#include <span>
#include <vector>

namespace rkhs {

/// Derivative order per dimension.
struct MultiIndex {
  std::vector<int> orders;

  static MultiIndex zero(std::size_t dim) { return {std::vector<int>(dim, 0)}; }
  static MultiIndex axis(std::size_t dim, std::size_t axis, int order);

  std::size_t dim() const { return orders.size(); }
  int total() const;
  bool is_zero() const { return total() == 0; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

struct OperatorTerm {
  double coefficient = 1.0;
  MultiIndex index;
};

/// sum_k c_k d^{alpha_k}, real constant coefficients.
class LinearOperator {
 public:
  explicit LinearOperator(std::vector<OperatorTerm> terms);

  static LinearOperator identity(std::size_t dim);
  static LinearOperator derivative(std::size_t dim, std::size_t axis, int order);
  static LinearOperator laplacian(std::size_t dim);

  const std::vector<OperatorTerm>& terms() const { return terms_; }
  std::size_t dim() const { return terms_.front().index.dim(); }
  int max_order(std::size_t axis) const;

  LinearOperator operator+(const LinearOperator& other) const;
  LinearOperator operator*(double scale) const;

 private:
  std::vector<OperatorTerm> terms_;
};

class TensorKernel {
 public:
  explicit TensorKernel(std::vector<Kernel> factors);

  std::size_t dim() const { return factors_.size(); }
  const Kernel& factor(std::size_t axis) const { return factors_[axis]; }
  const std::vector<Kernel>& factors() const { return factors_; }
  Real diagonal_scale() const;

 private:
  std::vector<Kernel> factors_;
};

/// Same space on every axis.
TensorKernel make_tensor_kernel(const std::vector<KernelSpace>& spaces);

/// Nodes of a tensor grid; flat index is lexicographic with the last axis
/// varying fastest.
class TensorGrid {
 public:
  explicit TensorGrid(std::vector<std::vector<Real>> axes);

  std::size_t dim() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<std::vector<Real>>& axes() const { return axes_; }
  const std::vector<Real>& axis(std::size_t d) const { return axes_[d]; }

  std::vector<std::size_t> multi_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> multi) const;
  const Real& coordinate(std::size_t flat, std::size_t axis) const;
  RealPoint point(std::size_t flat) const;
  std::vector<std::vector<double>> points_double() const;

 private:
  std::vector<std::vector<Real>> axes_;
  std::size_t size_ = 0;
};

/// Uniform interior nodes a + i (b - a) / (n + 1), i = 1..n, per axis.
TensorGrid make_interior_grid(std::span<const Interval> intervals, std::span<const int> counts);

enum class Argument { first, second };

/// prod_d d^{s_d}/dx_d d^{r_d}/dy_d K_d(x_d, y_d).
Real eval_tensor(const TensorKernel& k, const MultiIndex& s, const MultiIndex& r,
                 std::span<const Real> x, std::span<const Real> y);

/// The operator applied to one argument of K(x, y).
Real apply_operator(const TensorKernel& k, const LinearOperator& op, Argument argument,
                    std::span<const Real> x, std::span<const Real> y);

/// op_x op_y K(x, y) at x = y = z.
Real apply_operator_both(const TensorKernel& k, const LinearOperator& op,
                         std::span<const Real> z);

/// M(i, j) = op applied to the first argument of K at (x_i, x_j). Uses
/// per-axis tables, so the cost is dominated by N^2 products.
RealMatrix kernel_matrix(const TensorKernel& k, const LinearOperator& op, const TensorGrid& grid);

/// Throws SmoothnessExceeded if op applied in one argument needs more than
/// 2m-2 derivatives on some axis (factor 2 when both arguments are hit).
void check_operator_order(const TensorKernel& k, const LinearOperator& op, int arguments = 1);

}  // namespace rkhs
