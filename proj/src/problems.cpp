#include "rkhs/problems.hpp"

#include "rkhs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace rkhs {
namespace {

constexpr double pi = std::numbers::pi;

[[noreturn]] void unsupported(const std::string& id, const MultiIndex& alpha, int time_order) {
  std::ostringstream os;
  os << id << ": exact derivative of order (";
  for (std::size_t d = 0; d < alpha.dim(); ++d) os << (d ? "," : "") << alpha.orders[d];
  os << "; t^" << time_order << ") is not provided";
  throw InvalidArgument(os.str());
}

void check_point(std::span<const double> x, const MultiIndex& alpha, std::size_t dim) {
  if (x.size() != dim || alpha.dim() != dim)
    throw InvalidArgument("exact solution evaluated with the wrong dimension");
}

// Cole-Hopf form u = -2 nu phi_x / phi, with phi's partials supplied.
struct Potential {
  double p, px, pxx, pxxx, pt, pxt;
};

double cole_hopf(const Potential& f, double nu, int order, int time_order, const std::string& id,
                 const MultiIndex& alpha) {
  const double r = f.px / f.p;
  if (time_order == 0 && order == 0) return -2 * nu * r;
  if (time_order == 0 && order == 1) return -2 * nu * (f.pxx / f.p - r * r);
  if (time_order == 0 && order == 2)
    return -2 * nu * (f.pxxx / f.p - 3 * f.pxx * f.px / (f.p * f.p) + 2 * r * r * r);
  if (time_order == 1 && order == 0) return -2 * nu * (f.pxt / f.p - f.px * f.pt / (f.p * f.p));
  unsupported(id, alpha, time_order);
}

// d^k/dw^k of 1 / (1 + e^w).
double logistic(double w, int k) {
  const double f = 1 / (1 + std::exp(w));
  const double g = f * (1 - f);
  switch (k) {
    case 0: return f;
    case 1: return -g;
    case 2: return g * (1 - 2 * f);
    case 3: return -g * (1 - 6 * f + 6 * f * f);
    default: throw InvalidArgument("logistic derivative order above 3");
  }
}

// d^k/dw^k of tanh(w).
double tanh_derivative(double w, int k) {
  const double t = std::tanh(w);
  const double s = 1 - t * t;
  switch (k) {
    case 0: return t;
    case 1: return s;
    case 2: return -2 * t * s;
    case 3: return s * (6 * t * t - 2);
    default: throw InvalidArgument("tanh derivative order above 3");
  }
}

SpaceTimeFunction ex1_exact() {
  return [](std::span<const double> x, double, const MultiIndex& a, int c) {
    check_point(x, a, 1);
    const double u = std::sinh(x[0]) / (1 + std::cosh(x[0]));
    if (c == 0 && a.orders[0] == 0) return u;
    if (c == 0 && a.orders[0] == 1) return (1 - u * u) / 2;
    if (c == 0 && a.orders[0] == 2) return -u * (1 - u * u) / 2;
    if (c > 0 && a.orders[0] <= 2) return 0.0;
    unsupported("ex1", a, c);
  };
}

SpaceTimeFunction ex2_exact() {
  // u = (x - x^2) e^x, so u^(k) = (x - x^2 + k (1 - 2x) - k (k - 1)) e^x.
  return [](std::span<const double> x, double, const MultiIndex& a, int c) {
    check_point(x, a, 1);
    if (c > 0) return 0.0;
    const double k = a.orders[0];
    const double y = x[0];
    return (y - y * y + k * (1 - 2 * y) - k * (k - 1)) * std::exp(y);
  };
}

SpaceTimeFunction ex3_exact(double nu, double sigma) {
  return [nu, sigma](std::span<const double> x, double t, const MultiIndex& a, int c) {
    check_point(x, a, 1);
    const double e = std::exp(-pi * pi * nu * t);
    const double cs = std::cos(pi * x[0]), sn = std::sin(pi * x[0]);
    const Potential f{sigma + e * cs,          -pi * e * sn,
                      -pi * pi * e * cs,       pi * pi * pi * e * sn,
                      -pi * pi * nu * e * cs,  pi * pi * pi * nu * e * sn};
    return cole_hopf(f, nu, a.orders[0], c, "ex3", a);
  };
}

SpaceTimeFunction ex4_exact(double nu) {
  // phi = 1 + s with s = sqrt(t0 / t) exp(-x^2 / (4 nu t)), t0 = exp(1 / (8 nu)).
  return [nu](std::span<const double> x, double t, const MultiIndex& a, int c) {
    check_point(x, a, 1);
    const double y = x[0];
    const double s = std::exp(1 / (16 * nu) - 0.5 * std::log(t) - y * y / (4 * nu * t));
    const double q = -y / (2 * nu * t);
    const double st = -1 / (2 * t) + y * y / (4 * nu * t * t);
    const Potential f{1 + s,
                      s * q,
                      s * (q * q - 1 / (2 * nu * t)),
                      s * (q * q * q - 3 * q / (2 * nu * t)),
                      s * st,
                      s * (q * st + y / (2 * nu * t * t))};
    return cole_hopf(f, nu, a.orders[0], c, "ex4", a);
  };
}

// Travelling fronts in w = (x + y - t) / (2 nu).
SpaceTimeFunction front_exact(double nu, bool tanh_front) {
  return [nu, tanh_front](std::span<const double> x, double t, const MultiIndex& a, int c) {
    check_point(x, a, 2);
    const int k = a.total() + c;
    const double w = (x[0] + x[1] - t) / (2 * nu);
    const double scale = std::pow(1 / (2 * nu), k) * (c % 2 == 1 ? -1.0 : 1.0);
    if (tanh_front) return k == 0 ? 0.5 - std::tanh(w) : -scale * tanh_derivative(w, k);
    return scale * logistic(w, k);
  };
}

SpaceTimeFunction ex7_exact() {
  return [](std::span<const double> x, double t, const MultiIndex& a, int c) {
    check_point(x, a, 3);
    const int k = a.total();
    const double e = std::exp(t - pi * (x[0] + x[1] + x[2]));
    double out = e * std::pow(-pi, k);
    if (c == 0 && k == 0) out += x[0] + x[1] + x[2];
    if (c == 0 && k == 1) out += 1;
    return out;
  };
}

std::vector<BenchmarkCase> build_registry() {
  const Interval unit = make_interval(Real(0), Real(1));
  auto dirichlet = [](const Interval& iv) {
    return std::vector<BoundaryFunctional>{{iv.a, 0}, {iv.b, 0}};
  };
  std::vector<BenchmarkCase> out;

  {
    BenchmarkCase c;
    c.id = "ex1";
    c.title = "two-point boundary value problem";
    c.equation = "u'' = -sinh(x) / (1 + cosh(x))^2 on [-1, 1]";
    c.kind = CaseKind::linear_bvp;
    c.dim = 1;
    c.box = {make_interval(Real(-1), Real(1))};
    c.constraints = dirichlet(c.box[0]);
    c.boundary_conditions = {"u(-1) = sinh(-1)/(1+cosh(-1))", "u(1) = sinh(1)/(1+cosh(1))"};
    c.defaults = {5, {100}, 0, 0, 0, 0, false};
    c.op = LinearOperator::derivative(1, 0, 2);
    c.rhs = [](std::span<const double> x, double) {
      const double d = 1 + std::cosh(x[0]);
      return -std::sinh(x[0]) / (d * d);
    };
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    c.id = "ex2";
    c.title = "fifth-order boundary value problem";
    c.equation = "u^(5) + u = e^x (-2 x^2 - 8 x - 15) on [0, 1]";
    c.kind = CaseKind::linear_bvp;
    c.dim = 1;
    c.box = {unit};
    c.constraints = {{Real(0), 0}, {Real(1), 0}, {Real(0), 1}, {Real(1), 1}, {Real(0), 3}};
    c.boundary_conditions = {"u(0) = 0", "u(1) = 0", "u'(0) = 1", "u'(1) = -e", "u'''(0) = -3"};
    c.defaults = {8, {40}, 0, 0, 0, 0, false};
    c.min_m = 4;
    c.op = LinearOperator::derivative(1, 0, 5) + LinearOperator::identity(1);
    c.rhs = [](std::span<const double> x, double) {
      const double y = x[0];
      return std::exp(y) * (-2 * y * y - 8 * y - 15);
    };
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    c.id = "ex3";
    c.title = "Burgers equation, decaying wave";
    c.equation = "u_t + u u_x - nu u_xx = 0 on [0, 1]";
    c.kind = CaseKind::burgers;
    c.dim = 1;
    c.box = {unit};
    c.constraints = dirichlet(unit);
    c.boundary_conditions = {"u(0, t) = 0", "u(1, t) = 0"};
    c.defaults = {5, {40}, 0.01, 1.0, 0.01, 100.0, false};
    c.uses_nu = c.uses_sigma = true;
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    c.id = "ex4";
    c.title = "Burgers equation, shock-like profile";
    c.equation = "u_t + u u_x - nu u_xx = 0 on [0, 1], t >= 1";
    c.kind = CaseKind::burgers;
    c.dim = 1;
    c.box = {unit};
    c.constraints = dirichlet(unit);
    c.boundary_conditions = {"u(0, t) = 0", "u(1, t) = exact"};
    c.defaults = {5, {50}, 0.004, 2.4, 0.005, 0.0, false};
    c.t_start = 1.0;
    c.uses_nu = true;
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    c.id = "ex5";
    c.title = "two-dimensional Burgers equation, logistic front";
    c.equation = "u_t + u u_x + u u_y = nu (u_xx + u_yy) on [0, 1]^2";
    c.kind = CaseKind::burgers;
    c.dim = 2;
    c.box = {unit, unit};
    c.constraints = dirichlet(unit);
    c.boundary_conditions = {"Dirichlet data of u = 1 / (1 + exp((x + y - t) / (2 nu)))"};
    c.defaults = {5, {5, 5}, 0.001, 1.0, 1.0, 0.0, false};
    c.uses_nu = true;
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    const Interval half = make_interval(Real(-0.5), Real(0.5));
    c.id = "ex6";
    c.title = "two-dimensional Burgers equation, tanh front";
    c.equation = "u_t + u u_x + u u_y = nu (u_xx + u_yy) on [-0.5, 0.5]^2";
    c.kind = CaseKind::burgers;
    c.dim = 2;
    c.box = {half, half};
    c.constraints = dirichlet(half);
    c.boundary_conditions = {"Dirichlet data of u = 0.5 - tanh((x + y - t) / (2 nu))"};
    c.defaults = {5, {5, 5}, 0.001, 1.0, 1.0, 0.0, false};
    c.uses_nu = true;
    out.push_back(std::move(c));
  }
  {
    BenchmarkCase c;
    c.id = "ex7";
    c.title = "three-dimensional heat equation with source";
    c.equation = "u_t = (1/pi^2) Lap u - 2 exp(t - pi (x + y + z)) on [0, 1]^3";
    c.kind = CaseKind::heat;
    c.dim = 3;
    c.box = {unit, unit, unit};
    c.constraints = dirichlet(unit);
    c.boundary_conditions = {"Dirichlet data of u = exp(t - pi (x + y + z)) + x + y + z"};
    c.defaults = {5, {5, 5, 5}, 0.001, 1.0, 0.0, 0.0, false};
    out.push_back(std::move(c));
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::size_t CaseParameters::total_nodes() const {
  std::size_t n = 1;
  for (int c : counts) n *= static_cast<std::size_t>(c);
  return n;
}

SpaceTimeFunction BenchmarkCase::exact(const CaseParameters& p) const {
  if (id == "ex1") return ex1_exact();
  if (id == "ex2") return ex2_exact();
  if (id == "ex3") return ex3_exact(p.nu, p.sigma);
  if (id == "ex4") return ex4_exact(p.nu);
  if (id == "ex5") return front_exact(p.nu, false);
  if (id == "ex6") return front_exact(p.nu, true);
  if (id == "ex7") return ex7_exact();
  throw InvalidArgument("unknown case " + id);
}

std::vector<KernelSpace> BenchmarkCase::spaces(int m) const {
  std::vector<KernelSpace> out;
  for (const auto& iv : box) {
    KernelSpace s{iv, m, {}};
    for (const auto& c : constraints) s.constraints.push_back({c.point, c.order});
    out.push_back(std::move(s));
  }
  return out;
}

const std::vector<BenchmarkCase>& list_cases() {
  static const std::vector<BenchmarkCase> registry = build_registry();
  return registry;
}

const BenchmarkCase& find_case(const std::string& id) {
  for (const auto& c : list_cases())
    if (c.id == id) return c;
  throw InvalidArgument("unknown case '" + id + "' (expected ex1..ex7)");
}

std::vector<int> counts_for(std::size_t dim, int total) {
  if (dim == 0 || total < 1) throw InvalidArgument("counts_for: need dim >= 1 and total >= 1");
  std::vector<int> best;
  double best_spread = 0;
  std::vector<int> current;
  // Nondecreasing factorizations only, so the result is ascending.
  auto search = [&](auto&& self, int remaining, int min_factor) -> void {
    if (current.size() + 1 == dim) {
      if (remaining < min_factor) return;
      current.push_back(remaining);
      const double spread = static_cast<double>(current.back()) / current.front();
      if (best.empty() || spread < best_spread) {
        best = current;
        best_spread = spread;
      }
      current.pop_back();
      return;
    }
    for (int f = min_factor; f <= remaining; ++f) {
      if (remaining % f != 0) continue;
      current.push_back(f);
      self(self, remaining / f, f);
      current.pop_back();
    }
  };
  search(search, total, 1);
  return best;
}

CaseParameters apply_overrides(const BenchmarkCase& c, const ParameterOverrides& o) {
  CaseParameters p = c.defaults;
  if (o.m) p.m = *o.m;
  if (o.counts) {
    p.counts = *o.counts;
  } else if (o.n) {
    p.counts = counts_for(c.dim, *o.n);
  }
  if (o.dt) p.dt = *o.dt;
  if (o.t_final) p.t_final = *o.t_final;
  if (o.nu) p.nu = *o.nu;
  if (o.sigma) p.sigma = *o.sigma;
  if (o.reorthogonalize) p.reorthogonalize = *o.reorthogonalize;

  std::ostringstream why;
  if (p.m < c.min_m || p.m > kMaxOrder)
    why << c.id << " needs " << c.min_m << " <= m <= " << kMaxOrder << ", got m = " << p.m;
  else if (p.counts.size() != c.dim)
    why << c.id << " is " << c.dim << "-dimensional, got " << p.counts.size() << " node counts";
  else if (std::any_of(p.counts.begin(), p.counts.end(), [](int n) { return n < 1; }))
    why << "node counts must be >= 1";
  else if (c.kind != CaseKind::linear_bvp && !(p.dt > 0))
    why << "dt must be positive";
  else if (c.kind != CaseKind::linear_bvp && !(p.t_final > c.t_start))
    why << "t-final must exceed the start time " << c.t_start;
  else if (c.uses_nu && !(p.nu > 0))
    why << "nu must be positive";
  if (!why.str().empty()) throw InvalidArgument(why.str());
  return p;
}

ErrorMetrics metrics(const Eigen::VectorXd& exact, const Eigen::VectorXd& approx, bool want_rel_l2) {
  if (exact.size() == 0 || exact.size() != approx.size())
    throw InvalidArgument("metrics: vectors must be nonempty and of equal length");
  const Eigen::VectorXd e = exact - approx;
  ErrorMetrics m;
  m.linf = e.cwiseAbs().maxCoeff();
  m.rms = e.norm() / std::sqrt(static_cast<double>(e.size()));
  if (want_rel_l2) {
    const double ref = exact.norm();
    if (ref == 0) throw ZeroReference("metrics: exact vector is zero, relative error undefined");
    m.rel_l2 = e.norm() / ref;
  }
  return m;
}

nlohmann::json to_json(const ErrorReport& r) {
  const auto& p = r.parameters;
  const BenchmarkCase& c = find_case(r.case_id);
  nlohmann::json params = {{"m", p.m}, {"counts", p.counts}, {"N", p.total_nodes()}};
  if (c.kind != CaseKind::linear_bvp) {
    params["dt"] = p.dt;
    params["t_start"] = c.t_start;
    params["t_final"] = p.t_final;
  }
  if (c.uses_nu) params["nu"] = p.nu;
  if (c.uses_sigma) params["sigma"] = p.sigma;
  if (p.reorthogonalize) params["reorthogonalize"] = true;
  return {{"case", r.case_id},
          {"parameters", params},
          {"linf", r.errors.linf},
          {"rel_l2", r.errors.rel_l2},
          {"rms", r.errors.rms}};
}

double CaseSolution::evaluate(std::span<const double> z, const NodalField& field) const {
  const RealPoint zr = to_real(std::vector<double>(z.begin(), z.end()));
  return interpolate(*factor, field.v, zr) + extension->function()(z, field.t);
}

double CaseSolution::operator()(std::span<const double> z) const { return evaluate(z, final); }

CaseSolution solve_case(const std::string& id, const ParameterOverrides& overrides,
                        const SolveOptions& options) {
  const BenchmarkCase& c = find_case(id);
  CaseSolution out;
  out.benchmark = &c;
  out.parameters = apply_overrides(c, overrides);
  const CaseParameters& p = out.parameters;
  const auto start = std::chrono::steady_clock::now();

  out.factor = make_factor(c.spaces(p.m), p.counts, {p.reorthogonalize});
  const TensorGrid& grid = out.factor->grid();
  out.exact = c.exact(p);

  ExtensionFunction h = [&] {
    if (c.id == "ex2") {
      std::vector<BoundaryValue> data;
      const MultiIndex zero = MultiIndex::zero(1);
      for (const auto& f : c.constraints) {
        const double x = to_double(f.point);
        data.push_back({f, out.exact(std::span<const double>(&x, 1), 0.0,
                                     MultiIndex::axis(1, 0, f.order), 0)});
      }
      return hermite_extension(c.box[0], data);
    }
    return make_extension(c.box, out.exact,
                          c.dim == 1 ? ExtensionKind::linear_blend
                                     : ExtensionKind::multilinear_transfinite);
  }();
  out.extension = std::make_shared<const NodalExtension>(grid, h);

  if (c.kind == CaseKind::linear_bvp) {
    const LinearBVP bvp{c.spaces(p.m), *c.op, c.rhs, h};
    if (options.operators_only) {
      out.diffusion = build_diffmat(out.factor, *c.op).to_double();
      out.diffusion_scale = 1.0;
      return out;
    }
    const BvpSolution sol = solve_linear_bvp(bvp, out.factor);
    out.final = {sol.v.cast<double>(), 0.0};
  } else {
    const std::size_t dim = c.dim;
    RhsEvaluator rhs;
    if (c.kind == CaseKind::heat) {
      out.diffusion = build_diffmat(out.factor, LinearOperator::laplacian(dim)).to_double();
      out.diffusion_scale = 1 / (pi * pi);
      rhs = heat3d_rhs(out.diffusion, out.extension);
    } else if (dim == 1) {
      const Eigen::MatrixXd d1 = build_diffmat(out.factor, LinearOperator::derivative(1, 0, 1)).to_double();
      out.diffusion = build_diffmat(out.factor, LinearOperator::derivative(1, 0, 2)).to_double();
      out.diffusion_scale = p.nu;
      rhs = burgers_rhs_1d(d1, out.diffusion, p.nu, out.extension);
    } else {
      std::vector<Eigen::MatrixXd> d1;
      for (std::size_t d = 0; d < dim; ++d)
        d1.push_back(build_diffmat(out.factor, LinearOperator::derivative(dim, d, 1)).to_double());
      out.diffusion = build_diffmat(out.factor, LinearOperator::laplacian(dim)).to_double();
      out.diffusion_scale = p.nu;
      rhs = burgers_rhs_multi(d1, out.diffusion, p.nu, out.extension);
    }
    if (options.operators_only) return out;
    if (options.on_ready) options.on_ready(out);

    NodalField v0{Eigen::VectorXd(static_cast<Eigen::Index>(grid.size())), c.t_start};
    const Eigen::VectorXd h0 = out.extension->value(c.t_start);
    const MultiIndex zero = MultiIndex::zero(dim);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      v0.v(k) = out.exact(out.extension->nodes()[i], c.t_start, zero, 0) - h0(k);
    }
    out.final = euler_integrate({rhs}, std::move(v0), p.dt, p.t_final, options.observer);
  }

  const Eigen::VectorXd u = out.final.v + out.extension->value(out.final.t);
  Eigen::VectorXd e(u.size());
  const MultiIndex zero = MultiIndex::zero(c.dim);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    e(i) = out.exact(out.extension->nodes()[static_cast<std::size_t>(i)], out.final.t, zero, 0);
  out.report = {c.id, p, metrics(e, u), elapsed_ms(start)};
  return out;
}

ErrorReport run_case(const std::string& id, const ParameterOverrides& overrides) {
  return solve_case(id, overrides).report;
}

FigureLattice figure_lattice(const std::string& id, const ParameterOverrides& overrides) {
  const BenchmarkCase& c = find_case(id);
  if (c.dim != 1) throw InvalidArgument("figure lattices are defined for the one-dimensional cases");
  const double a = to_double(c.box[0].a), b = to_double(c.box[0].b);
  FigureLattice out;
  const MultiIndex zero = MultiIndex::zero(1);
  auto log_err = [](double e) { return std::log10(std::abs(e)); };

  if (c.kind == CaseKind::linear_bvp) {
    const CaseSolution s = solve_case(id, overrides);
    out.columns = {"x", "log10_abs_err"};
    for (int i = 0; i < 200; ++i) {
      const double x = a + (i + 0.5) * (b - a) / 200;
      const std::vector<double> z{x};
      out.samples.push_back({{x}, log_err(s(z) - s.exact(z, 0.0, zero, 0))});
    }
    return out;
  }

  const CaseParameters p = apply_overrides(c, overrides);
  const std::size_t steps = euler_step_count(c.t_start, p.dt, p.t_final);
  constexpr int kLevels = 50;
  std::vector<double> xs;
  for (int i = 0; i < kLevels; ++i) xs.push_back(a + (i + 0.5) * (b - a) / kLevels);
  std::vector<std::size_t> record;
  for (int j = 1; j <= kLevels; ++j)
    record.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(j) * steps / kLevels)));

  out.columns = {"x", "t", "log10_abs_err"};
  const CaseSolution* live = nullptr;
  Eigen::MatrixXd card(kLevels, static_cast<Eigen::Index>(p.total_nodes()));
  std::size_t next = 0;

  SolveOptions options;
  options.on_ready = [&](const CaseSolution& s) {
    live = &s;
    for (int i = 0; i < kLevels; ++i)
      card.row(i) = cardinal_values(*s.factor, RealPoint{Real(xs[static_cast<std::size_t>(i)])})
                        .cast<double>()
                        .transpose();
  };
  options.observer = [&](std::size_t step, const NodalField& field) {
    for (; next < record.size() && record[next] == step; ++next) {
      const Eigen::VectorXd interior = card * field.v;
      for (int i = 0; i < kLevels; ++i) {
        const std::vector<double> z{xs[static_cast<std::size_t>(i)]};
        const double u = interior(i) + live->extension->function()(z, field.t);
        out.samples.push_back({{z[0], field.t}, log_err(u - live->exact(z, field.t, zero, 0))});
      }
    }
  };
  solve_case(id, overrides, options);
  return out;
}

void write_lattice_csv(std::ostream& out, const FigureLattice& lattice) {
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < lattice.columns.size(); ++i) out << (i ? "," : "") << lattice.columns[i];
  out << '\n';
  for (const auto& s : lattice.samples) {
    for (double c : s.coords) out << c << ',';
    out << s.log10_abs_err << '\n';
  }
  out.precision(old);
}

}  // namespace rkhs
