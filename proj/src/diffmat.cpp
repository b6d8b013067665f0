#include "rkhs/diffmat.hpp"

#include "rkhs/errors.hpp"

#include <algorithm>
#include <ostream>

namespace rkhs {

RealMatrix operator_kernel_matrix(const OrthoFactor& f, const LinearOperator& op) {
  return kernel_matrix(f.kernel(), op, f.grid());
}

DiffMatrix build_diffmat(std::shared_ptr<const OrthoFactor> f, const LinearOperator& op) {
  if (!f) throw InvalidArgument("build_diffmat: null factor");
  check_operator_order(f->kernel(), op);
  const RealMatrix psi = operator_kernel_matrix(*f, op);
  const RealMatrix phi = f->b().triangularView<Eigen::Lower>() * psi.transpose();
  RealMatrix l = phi.transpose() * f->b().triangularView<Eigen::Lower>();
  return {std::move(l), op, std::move(f)};
}

ErrorEstimate power_error(const OrthoFactor& f, const LinearOperator& op, std::span<const Real> z) {
  check_operator_order(f.kernel(), op, 2);
  const Real diag = apply_operator_both(f.kernel(), op, z);
  const RealVector w = cardinal_values(f, op, z);
  Real e2 = diag - w.dot(f.gram_matrix() * w);
  if (e2 < 0 && e2 >= Real(-1e-10)) e2 = 0;
  if (e2 < 0) throw LossOfPositivity("power_error: negative squared error beyond clamp window");
  return {sqrt(e2)};
}

ErrorEstimate max_power_error(const OrthoFactor& f, const LinearOperator& op,
                              const std::vector<RealPoint>& samples) {
  Real best(0);
  for (const auto& z : samples) best = std::max(best, power_error(f, op, z).value);
  return {best};
}

Real error_bound(const ErrorEstimate& estimate, const Real& norm_u) {
  if (norm_u < 0) throw InvalidArgument("error_bound: norm must be nonnegative");
  return norm_u * estimate.value;
}

std::vector<ComplexValue> iteration_spectrum(const Eigen::MatrixXd& l, double dt, double scale,
                                             const EigenOptions& options) {
  if (!(dt > 0)) throw InvalidArgument("iteration_spectrum: dt must be positive");
  const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(l.rows(), l.cols()) + dt * scale * l;
  return eigenvalues(g, options);
}

std::vector<ComplexValue> iteration_spectrum(const DiffMatrix& l, double dt, double scale,
                                             const EigenOptions& options) {
  return iteration_spectrum(l.to_double(), dt, scale, options);
}

double spectral_radius(const std::vector<ComplexValue>& values) {
  double r = 0;
  for (const auto& v : values) r = std::max(r, std::abs(v));
  return r;
}

void write_spectrum_csv(std::ostream& out, const std::vector<ComplexValue>& values) {
  const auto old = out.precision(17);
  out << "re,im\n";
  for (const auto& v : values) out << v.real() << ',' << v.imag() << '\n';
  out.precision(old);
}

}  // namespace rkhs
