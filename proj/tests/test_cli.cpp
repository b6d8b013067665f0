#include "rkhs/cli.hpp"
#include "rkhs/kernel_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace rkhs;
using namespace rkhs::cli;

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rkhs_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_args maps flags onto the run config") {
  const RunConfig c = parse_args({"solve-bvp", "--case", "ex1", "--m", "5", "--n", "100"});
  CHECK(c.command == "solve-bvp");
  CHECK(c.case_id == "ex1");
  CHECK(c.m == std::vector<int>{5});
  CHECK(c.n == "100");
  CHECK(c.format == "json");

  const RunConfig p = parse_args({"solve-pde", "--case", "ex3", "--nu", "0.005", "--dt=0.01", "--format", "csv"});
  CHECK(p.nu == 0.005);
  CHECK(p.dt == std::vector<double>{0.01});
  CHECK(p.format == "csv");

  const RunConfig s = parse_args({"spectrum", "--m", "3,5", "--dt", "0.01,0.001"});
  CHECK(s.m == std::vector<int>{3, 5});
  CHECK(s.dt.size() == 2);

  const RunConfig t = parse_args({"table", "table7b", "--threads", "2"});
  CHECK(t.table_id == "table7b");
  CHECK(t.threads == 2);
}

TEST_CASE("constraint grammar") {
  const auto bc = parse_bc("d0@a,d3@a");
  REQUIRE(bc.size() == 2);
  CHECK(bc[0].order == 0);
  CHECK(bc[0].where == "a");
  CHECK(bc[1].order == 3);
  CHECK(bc[1].where == "a");
  CHECK(parse_bc("d2@-0.5")[0].where == "-0.5");
  CHECK_THROWS_AS(parse_bc("d0@c"), UsageError);
  CHECK_THROWS_AS(parse_bc("x0@a"), UsageError);
  CHECK_THROWS_AS(parse_bc("d0@a,,d1@b"), UsageError);

  const RunConfig k = parse_args({"kernel", "--m", "2", "--interval", "-1,1", "--bc", "d0@a,d1@b"});
  REQUIRE(k.interval.has_value());
  CHECK(k.interval->first == -1.0);
  CHECK(k.bc.size() == 2);
}

TEST_CASE("usage errors exit with status 2 and name the flag") {
  Result r = call({"solve-bvp", "--m", "5"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("--case") != std::string::npos);

  r = call({"solve-bvp", "--case", "ex1", "--n", "5x"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("--n") != std::string::npos);

  r = call({"solve-bvp", "--case", "ex1", "--nu", "0.1"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("--nu") != std::string::npos);

  r = call({"solve-bvp", "--case", "ex1", "--bogus"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("--bogus") != std::string::npos);

  r = call({"table", "table10"});
  CHECK(r.code == kUsage);

  r = call({"spectrum", "--dt", "0"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("--dt") != std::string::npos);

  r = call({"kernel", "--m", "3", "--bc", "d7@a"});
  CHECK(r.code != kOk);

  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("i/o failures exit with status 4") {
  const Result r = call({"solve-bvp", "--case", "ex1", "--m", "3", "--n", "10", "--out", "/nonexistent/dir/x.json"});
  CHECK(r.code == kIo);
  CHECK(call({"kernel", "--load", "/nonexistent/k.json"}).code == kIo);
}

TEST_CASE("spectrum self-test reproduces the diagonal stand-in") {
  const Result r = call({"spectrum", "--self-test"});
  CHECK(r.code == kOk);
  CHECK(r.out == "re,im\n0.80000000000000004,0\n0.90000000000000002,0\n");
}

TEST_CASE("tables default to csv") {
  const Result r = call({"table", "table2", "--threads", "2"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("row,N=13,N=13 published,", 0) == 0);
}

TEST_CASE("spectrum writes one file per (m, dt) pair") {
  const fs::path base = scratch("spec.csv");
  const Result r = call({"spectrum", "--case", "ex7", "--m", "3", "--n", "27", "--dt", "0.01,0.001", "--out", base.string()});
  CHECK(r.code == kOk);
  for (const char* dt : {"0.01", "0.001"}) {
    const std::string text = slurp(scratch(std::string("spec_m3_dt") + dt + ".csv"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 28);
  }
  CHECK(call({"spectrum", "--m", "3", "--n", "27", "--dt", "0.01,0.001"}).code == kUsage);
}

TEST_CASE("identical configurations produce identical bytes") {
  const std::vector<std::string> args{"solve-pde", "--case", "ex5", "--t-final", "0.1", "--format", "csv"};
  const Result a = call(args), b = call(args);
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("case,m,N,", 0) == 0);
}

TEST_CASE("config file supplies defaults that flags override") {
  const fs::path cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "# benchmark defaults\ncase = ex1\nm = 3\nn = 10\n";
  }
  const RunConfig c = parse_args({"solve-bvp", "--config", cfg.string(), "--n", "25"});
  CHECK(c.case_id == "ex1");
  CHECK(c.m == std::vector<int>{3});
  CHECK(c.n == "25");
  CHECK(call({"solve-bvp", "--config", (cfg.string() + ".missing")}).code != kOk);
}

TEST_CASE("kernel dump round-trips") {
  const fs::path path = scratch("kernel.json");
  const Result dump = call({"kernel", "--m", "5", "--interval", "0,1", "--bc", "d0@a,d0@b,d1@a", "--dump", "--out", path.string()});
  REQUIRE(dump.code == kOk);
  std::ifstream in(path);
  const Kernel loaded = read_kernel(in);
  const Kernel original = build_kernel({make_interval(Real(0), Real(1)), 5, {{Real(0), 0}, {Real(1), 0}, {Real(0), 1}}});
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 100; ++k) {
    const Real x = u(gen), y = u(gen);
    const Real a = original.eval(0, 0, x, y), b = loaded.eval(0, 0, x, y);
    const Real ulp = boost::multiprecision::abs(a) * std::numeric_limits<Real>::epsilon();
    CHECK(boost::multiprecision::abs(a - b) <= ulp);
  }
  const Result validated = call({"kernel", "--load", path.string()});
  CHECK(validated.code == kOk);
  const auto doc = nlohmann::json::parse(validated.out);
  CHECK(doc["m"] == 5);
  CHECK(doc["symmetry_max"].get<double>() < 1e-20);
}
