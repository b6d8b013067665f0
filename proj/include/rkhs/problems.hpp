#pragma once

// The seven benchmark cases: boundary-value problems ex1-ex2, one-dimensional
// Burgers ex3-ex4, two-dimensional Burgers ex5-ex6 and the 3-D heat problem
// ex7.

#include "rkhs/solver.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <optional>
#include <string>

namespace rkhs {

enum class CaseKind { linear_bvp, burgers, heat };

struct CaseParameters {
  int m = 5;
  std::vector<int> counts;  // nodes per axis
  double dt = 0.0;
  double t_final = 0.0;
  double nu = 0.0;
  double sigma = 0.0;
  bool reorthogonalize = false;

  std::size_t total_nodes() const;
};

struct ParameterOverrides {
  std::optional<int> m;
  std::optional<int> n;                    // total node count
  std::optional<std::vector<int>> counts;  // explicit per-axis counts, wins over n
  std::optional<double> dt;
  std::optional<double> t_final;
  std::optional<double> nu;
  std::optional<double> sigma;
  std::optional<bool> reorthogonalize;
};

struct BenchmarkCase {
  std::string id;
  std::string title;
  std::string equation;
  CaseKind kind;
  std::size_t dim;
  std::vector<Interval> box;
  /// Homogeneous constraints of the trial space on every axis, in deflation order.
  std::vector<BoundaryFunctional> constraints;
  /// Boundary conditions of the original problem, as text.
  std::vector<std::string> boundary_conditions;
  CaseParameters defaults;
  /// Start time: 1 for ex4, 0 otherwise.
  double t_start = 0.0;
  /// Lowest m whose kernel carries the operator.
  int min_m = 2;
  bool uses_nu = false;
  bool uses_sigma = false;
  /// Operator and source of the boundary-value cases.
  std::optional<LinearOperator> op;
  SourceFunction rhs;

  /// Exact solution with derivatives for the given parameters.
  SpaceTimeFunction exact(const CaseParameters& p) const;
  /// Kernel spaces (one per axis) for smoothness m.
  std::vector<KernelSpace> spaces(int m) const;
};

const std::vector<BenchmarkCase>& list_cases();
const BenchmarkCase& find_case(const std::string& id);

/// Balanced per-axis counts with the given product, ascending (150 in 3-D
/// gives 5x5x6).
std::vector<int> counts_for(std::size_t dim, int total);

CaseParameters apply_overrides(const BenchmarkCase& c, const ParameterOverrides& o);

struct ErrorMetrics {
  double linf = 0.0;
  double rel_l2 = 0.0;
  double rms = 0.0;
};

/// Throws ZeroReference when rel_l2 is requested and the exact vector is zero.
ErrorMetrics metrics(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx,
                     bool want_rel_l2 = true);

struct ErrorReport {
  std::string case_id;
  CaseParameters parameters;
  ErrorMetrics errors;
  double runtime_ms = 0.0;
};

nlohmann::json to_json(const ErrorReport& r);

/// Everything a solved case leaves behind, for dense evaluation and dumps.
struct CaseSolution {
  const BenchmarkCase* benchmark = nullptr;
  CaseParameters parameters;
  std::shared_ptr<const OrthoFactor> factor;
  std::shared_ptr<const NodalExtension> extension;
  SpaceTimeFunction exact;
  NodalField final;
  /// Linear diffusion part of the semidiscrete system (scale * matrix).
  Eigen::MatrixXd diffusion;
  double diffusion_scale = 0.0;
  ErrorReport report;

  /// u_N(z, t_final).
  double operator()(std::span<const double> z) const;
  /// u_N(z, t) for a field at time t on the same grid.
  double evaluate(std::span<const double> z, const NodalField& field) const;
};

struct SolveOptions {
  /// Called once the operators exist, before any time stepping.
  std::function<void(const CaseSolution&)> on_ready;
  StepObserver observer;
  /// Build the linear part only, skip the solve (used for spectra).
  bool operators_only = false;
};

CaseSolution solve_case(const std::string& id, const ParameterOverrides& overrides,
                        const SolveOptions& options = {});

ErrorReport run_case(const std::string& id, const ParameterOverrides& overrides = {});

/// log10 |u - u_N| on a cell-centred lattice: 200 points for 1-D boundary
/// problems, 50 x 50 in (x, t) for the 1-D time-dependent ones.
struct LatticeSample {
  std::vector<double> coords;
  double log10_abs_err;
};

struct FigureLattice {
  std::vector<std::string> columns;
  std::vector<LatticeSample> samples;
};

FigureLattice figure_lattice(const std::string& id, const ParameterOverrides& overrides);

void write_lattice_csv(std::ostream& out, const FigureLattice& lattice);

}  // namespace rkhs
