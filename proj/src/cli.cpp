#include "rkhs/cli.hpp"

#include "rkhs/kernel_io.hpp"
#include "rkhs/problems.hpp"
#include "rkhs/tables.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace rkhs::cli {
namespace {

const std::vector<std::string> kCommands{"kernel", "solve-bvp", "solve-pde", "spectrum", "table", "figure"};

// Output goes to --out when given, else to the stream passed in.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : path_(path) {
    if (path_) {
      file_.open(*path_);
      if (!file_) throw IoError("cannot open '" + *path_ + "' for writing");
    }
    stream_ = path_ ? static_cast<std::ostream*>(&file_) : &fallback;
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed" + (path_ ? " for '" + *path_ + "'" : std::string()));
  }

 private:
  std::optional<std::string> path_;
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<int> parse_counts(const std::string& text, const std::string& flag) {
  static const std::regex grid(R"((\d+)(x\d+)*)");
  if (!std::regex_match(text, grid)) throw UsageError(flag + ": expected N or a grid like 5x5x6, got '" + text + "'");
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) out.push_back(std::stoi(part));
  return out;
}

ParameterOverrides overrides_of(const RunConfig& c, const BenchmarkCase& bc) {
  ParameterOverrides o;
  if (!c.m.empty()) o.m = c.m.front();
  if (c.n) {
    const auto counts = parse_counts(*c.n, "--n");
    if (counts.size() == 1)
      o.n = counts.front();
    else if (counts.size() == bc.dim)
      o.counts = counts;
    else
      throw UsageError("--n: grid '" + *c.n + "' does not match the dimension of " + bc.id);
  }
  if (!c.dt.empty()) o.dt = c.dt.front();
  o.t_final = c.t_final;
  o.nu = c.nu;
  o.sigma = c.sigma;
  if (c.reorthogonalize) o.reorthogonalize = true;
  if (c.nu && !bc.uses_nu) throw UsageError("--nu: " + bc.id + " has no viscosity parameter");
  if (c.sigma && !bc.uses_sigma) throw UsageError("--sigma: " + bc.id + " has no sigma parameter");
  if (bc.kind == CaseKind::linear_bvp && (!c.dt.empty() || c.t_final))
    throw UsageError(std::string(c.dt.empty() ? "--t-final" : "--dt") + ": " + bc.id + " is not time dependent");
  return o;
}

void reject_kernel_only(const RunConfig& c) {
  if (c.interval) throw UsageError("--interval applies to the kernel command only");
  if (!c.bc.empty()) throw UsageError("--bc applies to the kernel command only");
}

const BenchmarkCase& require_case(const RunConfig& c, std::initializer_list<CaseKind> kinds) {
  if (!c.case_id) throw UsageError("--case is required for " + c.command);
  const BenchmarkCase* bc = nullptr;
  try {
    bc = &find_case(*c.case_id);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--case: ") + e.what());
  }
  if (std::find(kinds.begin(), kinds.end(), bc->kind) == kinds.end())
    throw UsageError("--case: " + bc->id + " cannot be run by " + c.command);
  return *bc;
}

void write_report(std::ostream& out, const ErrorReport& r, const RunConfig& c) {
  if (c.format == "csv") {
    out << "case,m,N,linf,rel_l2,rms" << (c.timing ? ",runtime_ms" : "") << '\n';
    out << std::setprecision(17) << r.case_id << ',' << r.parameters.m << ',' << r.parameters.total_nodes()
        << ',' << r.errors.linf << ',' << r.errors.rel_l2 << ',' << r.errors.rms;
    if (c.timing) out << ',' << r.runtime_ms;
    out << '\n';
    return;
  }
  auto j = to_json(r);
  if (c.timing) j["runtime_ms"] = r.runtime_ms;
  out << j.dump(2) << '\n';
}

KernelSpace kernel_space(const RunConfig& c) {
  if (c.m.size() != 1) throw UsageError("--m: the kernel command takes exactly one m");
  const auto [a, b] = c.interval.value_or(std::pair{0.0, 1.0});
  KernelSpace s;
  try {
    s.interval = make_interval(Real(a), Real(b));
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--interval: ") + e.what());
  }
  s.m = c.m.front();
  for (const auto& t : c.bc) {
    Real p;
    if (t.where == "a")
      p = s.interval.a;
    else if (t.where == "b")
      p = s.interval.b;
    else
      p = real_from_string(t.where);
    s.constraints.push_back({p, t.order});
  }
  return s;
}

// Polynomials of degree <= 2m-1 satisfying every constraint: null space of
// the constraint rows acting on monomial coefficients.
std::vector<Polynomial<Real>> constrained_polynomials(const KernelSpace& s) {
  const int n = 2 * s.m;
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(s.constraints.size()), n);
  for (std::size_t i = 0; i < s.constraints.size(); ++i)
    for (int k = 0; k < n; ++k) {
      const auto& c = s.constraints[i];
      const double f = falling_factorial<double>(k, c.order);
      rows(static_cast<Eigen::Index>(i), k) = f == 0 ? 0.0 : f * std::pow(to_double(c.point), k - c.order);
    }
  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(n, n);
  if (!s.constraints.empty()) basis = Eigen::FullPivLU<Eigen::MatrixXd>(rows).kernel();
  std::vector<Polynomial<Real>> out;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    std::vector<Real> coeffs;
    for (Eigen::Index k = 0; k < n; ++k) coeffs.emplace_back(basis(k, j));
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

nlohmann::json validate_kernel(const Kernel& k) {
  const Interval& iv = k.interval();
  const double a = to_double(iv.a), b = to_double(iv.b);
  std::mt19937 gen(20240601);
  std::uniform_real_distribution<double> u(a, b);
  double symmetry = 0, annihilation = 0, reproducing = 0;
  for (int t = 0; t < 100; ++t) {
    const Real x(u(gen)), y(u(gen));
    symmetry = std::max(symmetry, to_double(abs(k.eval(0, 0, x, y) - k.eval(0, 0, y, x))));
  }
  for (const auto& c : k.space().constraints)
    for (int t = 0; t < 50; ++t) {
      const Real y(u(gen));
      annihilation = std::max(annihilation, to_double(abs(k.eval(c.order, 0, c.point, y))));
    }
  for (const auto& f : constrained_polynomials(k.space()))
    for (int t = 0; t < 10; ++t) {
      const Real y(u(gen));
      reproducing = std::max(reproducing, to_double(verify_reproducing(k, f, y) / (1 + abs(f(y)))));
    }
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : k.space().constraints) cons.push_back({{"point", to_double(c.point)}, {"order", c.order}});
  return {{"m", k.order()},
          {"interval", {a, b}},
          {"constraints", cons},
          {"diagonal_scale", to_double(k.diagonal_scale())},
          {"symmetry_max", symmetry},
          {"annihilation_max", annihilation},
          {"reproducing_max_relative", reproducing}};
}

int run_kernel(const RunConfig& c, std::ostream& out) {
  if (c.case_id) throw UsageError("--case does not apply to the kernel command");
  std::optional<Kernel> k;
  if (c.load) {
    std::ifstream in(*c.load);
    if (!in) throw IoError("cannot open '" + *c.load + "'");
    k = read_kernel(in);
  } else {
    if (c.m.empty()) throw UsageError("--m is required for kernel (or --load a dumped kernel)");
    k = build_kernel(kernel_space(c));
  }
  Sink sink(c.out, out);
  if (c.dump)
    write_kernel(*sink, *k);
  else
    *sink << validate_kernel(*k).dump(2) << '\n';
  sink.close();
  return kOk;
}

int run_solve(const RunConfig& c, std::ostream& out, bool pde) {
  reject_kernel_only(c);
  const BenchmarkCase& bc =
      pde ? require_case(c, {CaseKind::burgers, CaseKind::heat}) : require_case(c, {CaseKind::linear_bvp});
  if (c.m.size() > 1) throw UsageError("--m: " + c.command + " takes a single m");
  if (c.dt.size() > 1) throw UsageError("--dt: " + c.command + " takes a single dt");
  const ParameterOverrides o = overrides_of(c, bc);

  std::optional<Sink> snap;
  SolveOptions options;
  std::shared_ptr<const NodalExtension> ext;
  std::optional<SpaceTimeFunction> exact;
  std::optional<double> last_written;
  if (c.snapshot) {
    snap.emplace(c.snapshot, out);
    write_snapshot_header(**snap, bc.dim, true);
    options.on_ready = [&](const CaseSolution& s) {
      ext = s.extension;
      exact = s.exact;
    };
    if (c.snapshot_every > 0)
      options.observer = [&](std::size_t step, const NodalField& f) {
        if (step % static_cast<std::size_t>(c.snapshot_every) != 0) return;
        write_snapshot(**snap, *ext, f, exact);
        last_written = f.t;
      };
  }
  const CaseSolution s = solve_case(bc.id, o, options);
  if (snap) {
    if (last_written != s.final.t) write_snapshot(**snap, *s.extension, s.final, s.exact);
    snap->close();
  }
  Sink sink(c.out, out);
  write_report(*sink, s.report, c);
  sink.close();
  return kOk;
}

std::string spectrum_path(const std::string& base, int m, double dt) {
  const auto dot = base.find_last_of('.');
  const bool has_ext = dot != std::string::npos && base.find('/', dot) == std::string::npos;
  std::ostringstream os;
  os << (has_ext ? base.substr(0, dot) : base) << "_m" << m << "_dt" << dt << (has_ext ? base.substr(dot) : ".csv");
  return os.str();
}

int run_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  reject_kernel_only(c);
  if (c.self_test) {
    // Diagonal stand-in L = diag(-1, -2) at dt = 0.1.
    const Eigen::MatrixXd l = Eigen::Vector2d(-1, -2).asDiagonal();
    auto ev = iteration_spectrum(l, 0.1, 1.0);
    std::sort(ev.begin(), ev.end(), [](auto x, auto y) { return x.real() < y.real(); });
    Sink sink(c.out, out);
    write_spectrum_csv(*sink, ev);
    sink.close();
    return kOk;
  }
  RunConfig local = c;
  if (!local.case_id) local.case_id = "ex7";
  const BenchmarkCase& bc = require_case(local, {CaseKind::burgers, CaseKind::heat});
  if (c.dt.empty()) throw UsageError("--dt is required for spectrum");
  for (double dt : c.dt)
    if (!(dt > 0)) throw UsageError("--dt: time step must be positive");
  std::vector<int> ms = c.m.empty() ? std::vector<int>{bc.defaults.m} : c.m;
  const std::size_t pairs = ms.size() * c.dt.size();
  if (pairs > 1 && !c.out) throw UsageError("--out is required when several (m, dt) pairs are requested");

  for (int m : ms) {
    RunConfig one = local;
    one.m = {m};
    one.dt = {c.dt.front()};
    ParameterOverrides o = overrides_of(one, bc);
    const CaseSolution s = solve_case(bc.id, o, {{}, {}, true});
    for (double dt : c.dt) {
      const auto ev = iteration_spectrum(s.diffusion, dt, s.diffusion_scale);
      const std::optional<std::string> path =
          pairs > 1 ? std::optional<std::string>(spectrum_path(*c.out, m, dt)) : c.out;
      Sink sink(path, out);
      write_spectrum_csv(*sink, ev);
      sink.close();
      err << bc.id << " m=" << m << " N=" << s.parameters.total_nodes() << " dt=" << dt
          << " spectral_radius=" << std::setprecision(10) << spectral_radius(ev)
          << (path ? " -> " + *path : std::string()) << '\n';
    }
  }
  return kOk;
}

int run_table(const RunConfig& c, std::ostream& out) {
  reject_kernel_only(c);
  if (!c.table_id) throw UsageError("table: missing table id (table1..table9, table7b)");
  const TableSpec* spec = nullptr;
  try {
    spec = &find_table(*c.table_id);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("table: ") + e.what());
  }
  const unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  const TableResult r = compute_table(*spec, threads);
  Sink sink(c.out, out);
  if (c.format == "json")
    *sink << table_to_json(r).dump(2) << '\n';
  else
    write_table_csv(*sink, r);
  sink.close();
  return kOk;
}

int run_figure(const RunConfig& c, std::ostream& out) {
  reject_kernel_only(c);
  const BenchmarkCase& bc = require_case(c, {CaseKind::linear_bvp, CaseKind::burgers});
  if (bc.dim != 1) throw UsageError("--case: figure lattices are defined for ex1..ex4");
  const FigureLattice lattice = figure_lattice(bc.id, overrides_of(c, bc));
  Sink sink(c.out, out);
  write_lattice_csv(*sink, lattice);
  sink.close();
  return kOk;
}

}  // namespace

std::vector<BcToken> parse_bc(const std::string& text) {
  static const std::regex token(R"(d(\d+)@(a|b|[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?))");
  std::vector<BcToken> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::smatch m;
    if (!std::regex_match(part, m, token))
      throw UsageError("--bc: cannot parse '" + part + "' (expected tokens like d0@a, d1@b, d2@0.5)");
    out.push_back({std::stoi(m[1]), m[2]});
  }
  if (out.empty()) throw UsageError("--bc: empty constraint list");
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Reproducing-kernel collocation toolkit", "rkhs"};
  app.set_config("--config", "", "Read key = value settings from a file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> case_id, n, out, load, snapshot, interval, bc;
  std::optional<double> t_final, nu, sigma;
  app.add_option("--case", case_id, "Benchmark case ex1..ex7");
  app.add_option("--m", c.m, "Smoothness order (spectrum accepts a list)")->delimiter(',');
  app.add_option("--n", n, "Node count N, or per-axis grid like 5x5x6");
  app.add_option("--dt", c.dt, "Time step (spectrum accepts a list)")->delimiter(',');
  app.add_option("--t-final", t_final, "Final time");
  app.add_option("--nu", nu, "Viscosity");
  app.add_option("--sigma", sigma, "Example 3 parameter sigma");
  app.add_option("--interval", interval, "Kernel interval a,b");
  app.add_option("--bc", bc, "Kernel constraints, e.g. d0@a,d0@b,d1@a");
  app.add_option("--out", out, "Output file (default stdout)");
  auto* format = app.add_option("--format", c.format, "Output format (json reports, csv tables)")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--load", load, "Read a dumped kernel instead of building one");
  app.add_option("--snapshot", snapshot, "Write nodal snapshots to this CSV file");
  app.add_option("--snapshot-every", c.snapshot_every, "Snapshot every k steps (default: final only)");
  app.add_option("--threads", c.threads, "Worker threads for table sweeps (default: all cores)");
  app.add_flag("--dump", c.dump, "Write the kernel as JSON");
  app.add_flag("--reorthogonalize", c.reorthogonalize, "Second Gram-Schmidt pass");
  app.add_flag("--timing", c.timing, "Include wall-clock time in reports");
  app.add_flag("--self-test", c.self_test)->group("");

  for (const auto& name : kCommands) {
    auto* sub = app.add_subcommand(name);
    if (name == "table") sub->add_option("id", c.table_id, "table1..table9 or table7b");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (c.command == "table" && format->count() == 0) c.format = "csv";

  c.case_id = case_id;
  c.n = n;
  c.out = out;
  c.load = load;
  c.snapshot = snapshot;
  c.t_final = t_final;
  c.nu = nu;
  c.sigma = sigma;
  if (interval) {
    static const std::regex pair(R"(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*)");
    std::smatch m;
    try {
      if (!std::regex_match(*interval, m, pair)) throw std::invalid_argument("shape");
      c.interval = std::pair{std::stod(m[1]), std::stod(m[2])};
    } catch (const std::exception&) {
      throw UsageError("--interval: expected a,b, got '" + *interval + "'");
    }
  }
  if (bc) c.bc = parse_bc(*bc);
  if (c.command == "table" && !c.table_id) throw UsageError("table: missing table id");
  if (c.snapshot_every < 0) throw UsageError("--snapshot-every: must be >= 0");
  if (c.command != "spectrum" && c.dt.size() > 1) throw UsageError("--dt: only spectrum takes a list");
  if (c.command != "spectrum" && c.m.size() > 1) throw UsageError("--m: only spectrum takes a list");
  if (c.self_test && c.command != "spectrum") throw UsageError("--self-test: spectrum only");
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "kernel") return run_kernel(c, out);
  if (c.command == "solve-bvp") return run_solve(c, out, false);
  if (c.command == "solve-pde") return run_solve(c, out, true);
  if (c.command == "spectrum") return run_spectrum(c, out, err);
  if (c.command == "table") return run_table(c, out);
  if (c.command == "figure") return run_figure(c, out);
  throw UsageError("unknown command '" + c.command + "'");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const CLI::CallForHelp&) {
    CLI::App help{"Reproducing-kernel collocation toolkit", "rkhs"};
    err << "usage: rkhs {kernel|solve-bvp|solve-pde|spectrum|table|figure} [options]\n"
           "options: --case --m --n --dt --t-final --nu --sigma --interval --bc --out --format\n"
           "         --config --load --dump --snapshot --snapshot-every --threads --reorthogonalize --timing\n";
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Divergence& e) {
    err << "numerical failure: " << e.what() << " (step " << e.step() << ")\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rkhs::cli
