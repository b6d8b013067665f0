#include "rkhs/errors.hpp"
#include "rkhs/problems.hpp"
#include "rkhs/tables.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace rkhs;

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
  std::vector<double> x;
  double t;
};

std::vector<Sample> samples(const BenchmarkCase& c, int count, unsigned seed) {
  std::mt19937 gen(seed);
  std::vector<Sample> out;
  for (int k = 0; k < count; ++k) {
    Sample s;
    for (const Interval& iv : c.box) {
      const double a = static_cast<double>(iv.a), b = static_cast<double>(iv.b);
      s.x.push_back(std::uniform_real_distribution<double>(a + 0.05 * (b - a), b - 0.05 * (b - a))(gen));
    }
    s.t = c.t_start + std::uniform_real_distribution<double>(0.1, 0.9)(gen);
    out.push_back(s);
  }
  return out;
}

MultiIndex plus(const MultiIndex& a, std::size_t axis) {
  MultiIndex b = a;
  ++b.orders[axis];
  return b;
}

}  // namespace

TEST_CASE("registry lists the seven cases") {
  const auto& cases = list_cases();
  REQUIRE(cases.size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(cases[i].id == "ex" + std::to_string(i + 1));
  CHECK(find_case("ex7").dim == 3);
  CHECK(find_case("ex4").t_start == 1.0);
  CHECK(find_case("ex2").constraints.size() == 5);
  CHECK_THROWS_AS(find_case("ex8"), InvalidArgument);
}

TEST_CASE("exact derivatives agree with finite differences") {
  // Central differences of each provided derivative against the next one up.
  for (const BenchmarkCase& c : list_cases()) {
    CAPTURE(c.id);
    const SpaceTimeFunction u = c.exact(c.defaults);
    const double step = c.id == "ex4" || c.id == "ex3" ? 1e-4 : 1e-5;
    for (const Sample& s : samples(c, 5, 7)) {
      for (std::size_t axis = 0; axis < c.dim; ++axis) {
        MultiIndex a = MultiIndex::zero(c.dim);
        for (int order = 0; order < 2; ++order) {
          std::vector<double> lo = s.x, hi = s.x;
          lo[axis] -= step;
          hi[axis] += step;
          const double fd = (u(hi, s.t, a, 0) - u(lo, s.t, a, 0)) / (2 * step);
          const double an = u(s.x, s.t, plus(a, axis), 0);
          CHECK(fd == doctest::Approx(an).epsilon(1e-6).scale(1.0));
          a = plus(a, axis);
        }
      }
      if (c.kind == CaseKind::linear_bvp) continue;
      const MultiIndex zero = MultiIndex::zero(c.dim);
      const double fd = (u(s.x, s.t + step, zero, 0) - u(s.x, s.t - step, zero, 0)) / (2 * step);
      CHECK(fd == doctest::Approx(u(s.x, s.t, zero, 1)).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("exact solutions satisfy their equations") {
  for (const BenchmarkCase& c : list_cases()) {
    CAPTURE(c.id);
    const CaseParameters p = c.defaults;
    const SpaceTimeFunction u = c.exact(p);
    for (const Sample& s : samples(c, 20, 11)) {
      const MultiIndex zero = MultiIndex::zero(c.dim);
      double residual = 0.0, scale = 1.0;
      if (c.kind == CaseKind::linear_bvp) {
        double lhs = 0.0;
        for (const OperatorTerm& term : c.op->terms()) lhs += term.coefficient * u(s.x, 0.0, term.index, 0);
        residual = lhs - c.rhs(s.x, 0.0);
      } else {
        const double value = u(s.x, s.t, zero, 0);
        double advection = 0.0, lap = 0.0;
        for (std::size_t d = 0; d < c.dim; ++d) {
          advection += u(s.x, s.t, MultiIndex::axis(c.dim, d, 1), 0);
          lap += u(s.x, s.t, MultiIndex::axis(c.dim, d, 2), 0);
        }
        const double ut = u(s.x, s.t, zero, 1);
        if (c.kind == CaseKind::burgers) {
          residual = ut + value * advection - p.nu * lap;
          scale = std::abs(ut) + std::abs(value * advection) + std::abs(p.nu * lap) + 1e-300;
        } else {
          const double e = std::exp(s.t - kPi * (s.x[0] + s.x[1] + s.x[2]));
          residual = ut - lap / (kPi * kPi) + 2 * e;
        }
      }
      CHECK(std::abs(residual) / std::max(1.0, scale) < 1e-10);
    }
  }
}

TEST_CASE("balanced per-axis counts") {
  CHECK(counts_for(3, 150) == std::vector<int>{5, 5, 6});
  CHECK(counts_for(3, 125) == std::vector<int>{5, 5, 5});
  CHECK(counts_for(3, 27) == std::vector<int>{3, 3, 3});
  CHECK(counts_for(2, 25) == std::vector<int>{5, 5});
  CHECK(counts_for(2, 12) == std::vector<int>{3, 4});
  CHECK(counts_for(2, 7) == std::vector<int>{1, 7});
  CHECK(counts_for(1, 40) == std::vector<int>{40});
  CHECK_THROWS_AS(counts_for(2, 0), InvalidArgument);
}

TEST_CASE("overrides are validated") {
  const BenchmarkCase& ex1 = find_case("ex1");
  const CaseParameters p = apply_overrides(ex1, {.m = 3, .n = 25});
  CHECK(p.m == 3);
  CHECK(p.counts == std::vector<int>{25});
  CHECK_THROWS_AS(apply_overrides(ex1, {.m = 1}), InvalidArgument);
  CHECK_THROWS_AS(apply_overrides(ex1, {.n = 0}), InvalidArgument);
  CHECK_THROWS_AS(apply_overrides(find_case("ex2"), {.m = 3}), InvalidArgument);
  CHECK_THROWS_AS(apply_overrides(find_case("ex3"), {.dt = 0.0}), InvalidArgument);
  CHECK_THROWS_AS(apply_overrides(find_case("ex3"), {.nu = -1.0}), InvalidArgument);
  CHECK_THROWS_AS(apply_overrides(find_case("ex5"), {.counts = std::vector<int>{5}}), InvalidArgument);
  CHECK(apply_overrides(find_case("ex7"), {.n = 150}).counts == std::vector<int>{5, 5, 6});
}

TEST_CASE("error metrics on hand data") {
  const Eigen::Vector2d exact(3, 4), approx(3, 5);
  const ErrorMetrics e = metrics(exact, approx);
  CHECK(e.linf == doctest::Approx(1.0));
  CHECK(e.rel_l2 == doctest::Approx(0.2));
  CHECK(e.rms == doctest::Approx(std::sqrt(0.5)));
  CHECK_THROWS_AS(metrics(Eigen::Vector2d::Zero(), approx), ZeroReference);
  CHECK(metrics(Eigen::Vector2d::Zero(), approx, false).linf == doctest::Approx(5.0));
}

TEST_CASE("case reports are deterministic and match the reference runs") {
  const ErrorReport a = run_case("ex1", {.m = 3, .n = 10});
  const ErrorReport b = run_case("ex1", {.m = 3, .n = 10});
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.errors.linf == doctest::Approx(9.36088e-5).epsilon(1e-5));
  const nlohmann::json j = to_json(a);
  CHECK(j["case"] == "ex1");
  CHECK(j["parameters"]["N"] == 10);
  CHECK(!j.contains("runtime_ms"));
}

TEST_CASE("solved cases honour the boundary data") {
  for (const std::string id : {"ex1", "ex2", "ex3", "ex5", "ex7"}) {
    CAPTURE(id);
    ParameterOverrides o;
    if (id == "ex3") o = {.n = 10, .t_final = 0.1};
    if (id == "ex5" || id == "ex7") o = {.t_final = 0.05};
    const CaseSolution s = solve_case(id, o);
    const BenchmarkCase& c = *s.benchmark;
    const MultiIndex zero = MultiIndex::zero(c.dim);
    std::mt19937 gen(3);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> z;
      for (const Interval& iv : c.box)
        z.push_back(std::uniform_real_distribution<double>(static_cast<double>(iv.a), static_cast<double>(iv.b))(gen));
      const std::size_t axis = static_cast<std::size_t>(k) % c.dim;
      z[axis] = static_cast<double>(k % 2 ? c.box[axis].b : c.box[axis].a);
      CHECK(std::abs(s(z) - s.exact(z, s.final.t, zero, 0)) < 1e-8);
    }
  }
}

TEST_CASE("figure lattices") {
  const FigureLattice bvp = figure_lattice("ex1", {.m = 3, .n = 10});
  CHECK(bvp.columns == std::vector<std::string>{"x", "log10_abs_err"});
  CHECK(bvp.samples.size() == 200);
  CHECK(bvp.samples.front().coords[0] == doctest::Approx(-1 + 1.0 / 200));
  const FigureLattice pde = figure_lattice("ex3", {.n = 10, .t_final = 0.1});
  CHECK(pde.columns == std::vector<std::string>{"x", "t", "log10_abs_err"});
  CHECK(pde.samples.size() == 2500);
  CHECK_THROWS_AS(figure_lattice("ex5", {}), InvalidArgument);
  std::ostringstream os;
  write_lattice_csv(os, bvp);
  CHECK(os.str().rfind("x,log10_abs_err\n", 0) == 0);
}

TEST_CASE("table layouts") {
  CHECK_THROWS_AS(find_table("table10"), InvalidArgument);
  const TableSpec& t1 = find_table("table1");
  CHECK(t1.rows.size() == 2);
  CHECK(t1.columns.size() == 4);
  CHECK(t1.rows[1].cells[3].published.value() == doctest::Approx(2.00868e-11));
  const TableSpec& t8 = find_table("table8");
  CHECK(t8.rows.size() == 8);
  CHECK(t8.columns.size() == 3);
  for (const char* id : {"table2", "table3", "table4", "table5", "table6", "table7", "table7b", "table9"})
    CHECK(!find_table(id).rows.empty());
}

TEST_CASE("parallel table sweep matches the serial one") {
  const TableSpec& t = find_table("table2");
  const TableResult serial = compute_table(t, 1);
  const TableResult parallel = compute_table(t, 4);
  CHECK(serial.values == parallel.values);
  std::ostringstream a, b;
  write_table_csv(a, serial);
  write_table_csv(b, parallel);
  CHECK(a.str() == b.str());
  CHECK(table_to_json(serial)["table"] == "table2");
}
