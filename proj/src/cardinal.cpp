#include "rkhs/cardinal.hpp"

#include "rkhs/errors.hpp"

#include <sstream>

namespace rkhs {

GramMatrix gram(std::shared_ptr<const TensorKernel> kernel, std::shared_ptr<const TensorGrid> grid) {
  if (!kernel || !grid) throw InvalidArgument("gram: null kernel or grid");
  const Real guard = Real(1e-12) * kernel->diagonal_scale();
  const auto id = LinearOperator::identity(kernel->dim());
  RealMatrix a = kernel_matrix(*kernel, id, *grid);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (!(a(i, i) > guard)) {
      std::ostringstream os;
      os << "node " << i << " annihilates the kernel diagonal (K(x,x) = "
         << static_cast<double>(a(i, i)) << ")";
      throw DegenerateNode(os.str());
    }
    for (Eigen::Index j = 0; j < i; ++j) a(i, j) = a(j, i);
  }
  return {std::move(a), std::move(kernel), std::move(grid)};
}

OrthoFactor::OrthoFactor(GramMatrix gram, RealMatrix b) : gram_(std::move(gram)), b_(std::move(b)) {}

OrthoFactor mgs_factor(const GramMatrix& g, const MgsOptions& options) {
  const RealMatrix& a = g.matrix;
  const Eigen::Index n = a.rows();
  if (n == 0 || a.cols() != n) throw InvalidArgument("mgs_factor: Gram matrix must be square");
  const Real guard = precision_scaled<Real>(1e-14) * Real(a.diagonal().maxCoeff());

  // Row i of v holds the coefficients of the i-th vector in the K(., x_k)
  // basis, row i of w the same vector's Gram image v_i A.
  RealMatrix v = RealMatrix::Identity(n, n);
  RealMatrix w = a;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (options.reorthogonalize) {
      for (Eigen::Index j = 0; j < i; ++j) {
        const Real c = v.row(j).head(j + 1).dot(w.row(i));
        v.row(i).head(j + 1) -= c * v.row(j).head(j + 1);
        w.row(i) -= c * w.row(j);
      }
    }
    const Real norm2 = v.row(i).head(i + 1).dot(w.row(i).head(i + 1));
    if (!(norm2 > guard)) {
      std::ostringstream os;
      os << "squared norm " << static_cast<double>(norm2) << " at column " << i
         << " below guard; nodes too close or m too large";
      throw LossOfPositivity(os.str());
    }
    const Real inv = Real(1) / sqrt(norm2);
    v.row(i).head(i + 1) *= inv;
    w.row(i) *= inv;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Real c = v.row(i).head(i + 1).dot(w.row(j).head(i + 1));
      v.row(j).head(i + 1) -= c * v.row(i).head(i + 1);
      w.row(j) -= c * w.row(i);
    }
  }
  return OrthoFactor(g, v.triangularView<Eigen::Lower>());
}

RealVector kernel_column(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z) {
  const std::size_t n = f.size();
  RealVector k(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const RealPoint xj = f.grid().point(j);
    k(static_cast<Eigen::Index>(j)) = apply_operator(f.kernel(), op, Argument::first, z, xj);
  }
  return k;
}

RealVector cardinal_values(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z) {
  const RealVector psi = f.b().triangularView<Eigen::Lower>() * kernel_column(f, op, z);
  return f.b().transpose().triangularView<Eigen::Upper>() * psi;
}

RealVector cardinal_values(const OrthoFactor& f, std::span<const Real> z) {
  return cardinal_values(f, LinearOperator::identity(f.kernel().dim()), z);
}

Real eval_cardinal(const OrthoFactor& f, std::size_t i, std::span<const Real> z) {
  if (i >= f.size()) throw InvalidArgument("eval_cardinal: index out of range");
  return cardinal_values(f, z)(static_cast<Eigen::Index>(i));
}

Real interpolate(const OrthoFactor& f, const RealVector& data, std::span<const Real> z) {
  if (static_cast<std::size_t>(data.size()) != f.size())
    throw InvalidArgument("interpolate: data length must equal the node count");
  return data.dot(cardinal_values(f, z));
}

double interpolate(const OrthoFactor& f, const Eigen::VectorXd& data, std::span<const Real> z) {
  return static_cast<double>(interpolate(f, RealVector(data.cast<Real>()), z));
}

}  // namespace rkhs
