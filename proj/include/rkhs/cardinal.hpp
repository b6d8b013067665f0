#pragma once

// Gram matrices, kernel-trick modified Gram-Schmidt and the cardinal basis
// h_i(z) = sum_k (B^T B)_{ki} K(z, x_k) evaluated through psi = B k(z).

#include "rkhs/tensor_kernel.hpp"

#include <memory>

namespace rkhs {

struct GramMatrix {
  RealMatrix matrix;
  std::shared_ptr<const TensorKernel> kernel;
  std::shared_ptr<const TensorGrid> grid;
};

/// A(i, j) = K(x_i, x_j); throws DegenerateNode when K(x_i, x_i) is below
/// 1e-12 of the kernel's diagonal scale.
GramMatrix gram(std::shared_ptr<const TensorKernel> kernel, std::shared_ptr<const TensorGrid> grid);

struct MgsOptions {
  /// Second orthogonalization pass against all previous vectors.
  bool reorthogonalize = false;
};

/// Lower-triangular B with B A B^T = I.
class OrthoFactor {
 public:
  OrthoFactor(GramMatrix gram, RealMatrix b);

  const RealMatrix& b() const { return b_; }
  const RealMatrix& gram_matrix() const { return gram_.matrix; }
  const TensorKernel& kernel() const { return *gram_.kernel; }
  const TensorGrid& grid() const { return *gram_.grid; }
  std::size_t size() const { return grid().size(); }

 private:
  GramMatrix gram_;
  RealMatrix b_;
};

/// Throws LossOfPositivity if a squared norm falls below the guard (1e-14 of
/// max diag A at double precision, rescaled to Real).
OrthoFactor mgs_factor(const GramMatrix& gram, const MgsOptions& options = {});

/// Column of K(z, x_k) with op applied to the z argument.
RealVector kernel_column(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z);

/// All cardinal functions at z, op applied: (op h_1(z), ..., op h_N(z)).
RealVector cardinal_values(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z);
RealVector cardinal_values(const OrthoFactor& f, std::span<const Real> z);

Real eval_cardinal(const OrthoFactor& f, std::size_t i, std::span<const Real> z);

/// s(z) = sum_k data_k h_k(z).
Real interpolate(const OrthoFactor& f, const RealVector& data, std::span<const Real> z);
double interpolate(const OrthoFactor& f, const Eigen::VectorXd& data, std::span<const Real> z);

}  // namespace rkhs
