#include "rkhs/errors.hpp"
#include "rkhs/kernel1d.hpp"
#include "rkhs/kernel_io.hpp"
#include "rkhs/linalg.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace rkhs;

namespace {

double d(const Real& x) { return static_cast<double>(x); }

Interval unit() { return make_interval(Real(0), Real(1)); }

// Example 2's space: u(0)=u(1)=u'(0)=u'(1)=u'''(0)=0.
KernelSpace five_constraint_space(std::vector<int> order) {
  const std::vector<BoundaryFunctional> all = {
      {Real(0), 0}, {Real(1), 0}, {Real(0), 1}, {Real(1), 1}, {Real(0), 3}};
  KernelSpace s{unit(), 8, {}};
  for (int i : order) s.constraints.push_back(all[static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace

TEST_CASE("m = 1 base kernel is 1 + min(x, y)") {
  const Kernel k = build_base_kernel(1, unit());
  CHECK(d(k.eval(0, 0, Real(0.3), Real(0.7))) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(d(k.eval(0, 0, Real(0.7), Real(0.3))) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(d(k.eval(0, 0, Real(0), Real(0))) == doctest::Approx(1.0));
  CHECK(d(k.eval(1, 0, Real(0.3), Real(0.7))) == doctest::Approx(1.0));
  CHECK(d(k.eval(1, 0, Real(0.7), Real(0.3))) == doctest::Approx(0.0));
}

TEST_CASE("deflation by value at 0 gives min(x, y)") {
  const Kernel k = deflate(build_base_kernel(1, unit()), {Real(0), 0});
  CHECK(d(k.eval(0, 0, Real(0.3), Real(0.7))) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(k.space().constraints.size() == 1);
  CHECK_THROWS_AS(deflate(k, {Real(0), 0}), DegenerateConstraint);
}

TEST_CASE("deflate preconditions") {
  const Kernel k = build_base_kernel(2, unit());
  CHECK_THROWS_AS(deflate(k, {Real(0), 2}), DegenerateConstraint);
  CHECK_THROWS_AS(build_base_kernel(0, unit()), InvalidArgument);
  CHECK_THROWS_AS(make_interval(Real(1), Real(0)), InvalidArgument);
}

TEST_CASE("eval domain and smoothness errors") {
  const Kernel k = build_base_kernel(2, unit());
  CHECK_THROWS_AS(k.eval(0, 0, Real(1.5), Real(0.5)), OutOfDomain);
  CHECK_THROWS_AS(k.eval(2, 1, Real(0.5), Real(0.5)), SmoothnessExceeded);
  CHECK_NOTHROW(k.eval(2, 1, Real(0.5), Real(0.6)));
}

TEST_CASE("symmetry at random pairs") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int m : {1, 2, 3, 5, 8}) {
    const Kernel k = build_base_kernel(m, make_interval(Real(-1), Real(1)));
    for (int t = 0; t < 100; ++t) {
      const Real x(u(gen)), y(u(gen));
      const Real a = k.eval(0, 0, x, y), b = k.eval(0, 0, y, x);
      CHECK(d(abs(a - b)) <= 1e-12 * (1 + d(abs(a))));
    }
  }
}

TEST_CASE("cross-region continuity of mixed derivatives") {
  for (int m : {2, 3, 5, 8}) {
    const Kernel k = build_kernel({unit(), m, {{Real(0), 0}, {Real(1), 0}}});
    for (int p = 1; p <= 20; ++p) {
      const Real x = Real(p) / 21;
      for (int s = 0; s <= 2 * m - 2; ++s)
        for (int r = 0; s + r <= 2 * m - 2; ++r) {
          Real left(0), right(0);
          for (int i = 0; i < k.left().rows(); ++i)
            for (int j = 0; j < k.left().cols(); ++j) {
              const Real f = falling_factorial<Real>(i, s) * falling_factorial<Real>(j, r);
              if (f == 0) continue;
              const Real mono = f * pow(x, i - s) * pow(x, j - r);
              left += k.left()(i, j) * mono;
              right += k.right()(i, j) * mono;
            }
          const double scale = 1 + d(abs(left));
          CHECK(d(abs(left - right)) <= 1e-9 * scale);
        }
    }
  }
}

TEST_CASE("reproducing property for monomials") {
  std::mt19937 gen(11);
  for (int m : {1, 2, 3, 5, 6, 8}) {
    for (auto iv : {unit(), make_interval(Real(-1), Real(1))}) {
      const Kernel k = build_base_kernel(m, iv);
      std::uniform_real_distribution<double> u(d(iv.a), d(iv.b));
      for (int deg = 0; deg <= 2 * m - 1; ++deg) {
        std::vector<Real> c(static_cast<std::size_t>(deg + 1), Real(0));
        c.back() = 1;
        const Polynomial<Real> f(c);
        for (int t = 0; t < 3; ++t) {
          const Real y(u(gen));
          CHECK(d(verify_reproducing(k, f, y)) <= 1e-8 * (1 + d(abs(f(y)))));
        }
      }
    }
  }
}

TEST_CASE("reproducing property hand cases for m = 1") {
  const Kernel k = build_base_kernel(1, unit());
  CHECK(d(verify_reproducing(k, Polynomial<Real>({Real(1)}), Real(0.3))) <= 1e-12);
  CHECK(d(verify_reproducing(k, Polynomial<Real>({Real(0), Real(1)}), Real(0.5))) <= 1e-12);
}

TEST_CASE("reproducing property on a constrained space") {
  // f = x^2 (1 - x)^2 satisfies u(0)=u(1)=u'(0)=u'(1)=0.
  const Kernel k = build_kernel(
      {unit(), 3, {{Real(0), 0}, {Real(1), 0}, {Real(0), 1}, {Real(1), 1}}});
  const Polynomial<Real> f({Real(0), Real(0), Real(1), Real(-2), Real(1)});
  for (double y : {0.1, 0.4, 0.77})
    CHECK(d(verify_reproducing(k, f, Real(y))) <= 1e-8);
}

TEST_CASE("deflated kernel annihilation") {
  const KernelSpace s = five_constraint_space({0, 1, 2, 3, 4});
  const Kernel k = build_kernel(s);
  const double scale = d(k.diagonal_scale());
  for (const auto& c : s.constraints)
    for (int t = 0; t < 50; ++t) {
      const Real y = Real(t) / 49;
      if (y == c.point && c.order > 0) continue;
      CHECK(std::abs(d(k.eval(c.order, 0, c.point, y))) <= 1e-9 * scale);
      CHECK(std::abs(d(k.eval(0, c.order, y, c.point))) <= 1e-9 * scale);
    }
}

TEST_CASE("deflation order independence") {
  const Kernel k1 = build_kernel(five_constraint_space({0, 1, 2, 3, 4}));
  const Kernel k2 = build_kernel(five_constraint_space({4, 2, 0, 3, 1}));
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 100; ++t) {
    const Real x(u(gen)), y(u(gen));
    const Real a = k1.eval(0, 0, x, y), b = k2.eval(0, 0, x, y);
    CHECK(d(abs(a - b)) <= 1e-8 * d(k1.diagonal_scale()));
  }
}

TEST_CASE("Gram matrices are positive definite") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (const Kernel& k : {build_base_kernel(3, unit()), build_kernel(five_constraint_space({0, 1, 2, 3, 4}))}) {
    std::vector<Real> pts;
    for (int i = 0; i < 20; ++i) pts.emplace_back(u(gen));
    RealMatrix a(20, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) a(i, j) = k.eval(0, 0, pts[i], pts[j]);
    Eigen::LLT<RealMatrix> llt(a);
    CHECK(llt.info() == Eigen::Success);
  }
}

TEST_CASE("kernel JSON round trip") {
  const Kernel k = build_kernel(five_constraint_space({0, 1, 2, 3, 4}));
  std::stringstream ss;
  write_kernel(ss, k);
  const Kernel back = read_kernel(ss);
  CHECK(back.order() == k.order());
  CHECK(back.space().constraints == k.space().constraints);
  for (int t = 0; t < 100; ++t) {
    const Real x = Real(t) / 99, y = Real((t * 37) % 100) / 99;
    CHECK(back.eval(0, 0, x, y) == k.eval(0, 0, x, y));
  }
}
