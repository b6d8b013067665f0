#pragma once

// Differentiation matrices l_ij = (op h_j)(x_i), the power-function error
// estimate and forward-Euler iteration spectra.

#include "rkhs/cardinal.hpp"
#include "rkhs/linalg.hpp"

#include <iosfwd>
#include <memory>

namespace rkhs {

struct DiffMatrix {
  RealMatrix l;
  LinearOperator op;
  std::shared_ptr<const OrthoFactor> factor;

  Eigen::MatrixXd to_double() const { return l.cast<double>(); }
};

/// Psi(i, k) = op applied in the first argument of K at (x_i, x_k).
RealMatrix operator_kernel_matrix(const OrthoFactor& f, const LinearOperator& op);

/// L = Phi^T B with Phi = B Psi^T.
DiffMatrix build_diffmat(std::shared_ptr<const OrthoFactor> f, const LinearOperator& op);

struct ErrorEstimate {
  Real value;
};

/// ||eps_X|| at z: value^2 = op_x op_y K(z, z) - w^T A w, w = op h(z).
ErrorEstimate power_error(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z);

/// Largest power_error over the given sample points.
ErrorEstimate max_power_error(const OrthoFactor& f, const LinearOperator& op,
                              const std::vector<RealPoint>& samples);

Real error_bound(const ErrorEstimate& estimate, const Real& norm_u);

/// Eigenvalues of I + dt * scale * L.
std::vector<ComplexValue> iteration_spectrum(const Eigen::MatrixXd& l, double dt, double scale,
                                             const EigenOptions& options = {});
std::vector<ComplexValue> iteration_spectrum(const DiffMatrix& l, double dt, double scale,
                                             const EigenOptions& options = {});

double spectral_radius(const std::vector<ComplexValue>& values);

/// CSV with header re,im and 17 significant digits.
void write_spectrum_csv(std::ostream& out, const std::vector<ComplexValue>& values);

}  // namespace rkhs
