#include "rkhs/errors.hpp"
#include "rkhs/tensor_kernel.hpp"

#include <doctest.h>

using namespace rkhs;

namespace {

double d(const Real& x) { return static_cast<double>(x); }

TensorKernel base_product(int m, std::size_t dim) {
  std::vector<KernelSpace> spaces(dim, KernelSpace{make_interval(Real(0), Real(1)), m, {}});
  return make_tensor_kernel(spaces);
}

}  // namespace

TEST_CASE("eval_tensor products of m = 1 kernels") {
  const TensorKernel k = base_product(1, 2);
  const RealPoint x{Real(0.3), Real(0.3)}, y{Real(0.7), Real(0.7)};
  const auto zero = MultiIndex::zero(2);
  CHECK(d(eval_tensor(k, zero, zero, x, y)) == doctest::Approx(1.69));
  CHECK(d(eval_tensor(k, MultiIndex::axis(2, 0, 1), zero, x, y)) == doctest::Approx(1.3));
  CHECK_THROWS_AS(eval_tensor(k, zero, zero, RealPoint{Real(0.3)}, y), InvalidArgument);
}

TEST_CASE("eval_tensor symmetry and diagonal") {
  const TensorKernel k = base_product(3, 2);
  const RealPoint x{Real(0.2), Real(0.9)}, y{Real(0.6), Real(0.4)};
  const MultiIndex s{{1, 2}}, r{{0, 1}};
  CHECK(d(eval_tensor(k, s, r, x, y)) == doctest::Approx(d(eval_tensor(k, r, s, y, x))));
  const RealPoint c{Real(0.5), Real(0.5)};
  const auto zero = MultiIndex::zero(2);
  CHECK(d(eval_tensor(k, zero, zero, c, c)) ==
        doctest::Approx(d(k.factor(0).eval(0, 0, c[0], c[0]) * k.factor(1).eval(0, 0, c[1], c[1]))));
}

TEST_CASE("apply_operator linearity and identity") {
  const TensorKernel k = base_product(3, 2);
  const RealPoint x{Real(0.2), Real(0.9)}, y{Real(0.6), Real(0.4)};
  const auto zero = MultiIndex::zero(2);
  CHECK(apply_operator(k, LinearOperator::identity(2), Argument::first, x, y) ==
        eval_tensor(k, zero, zero, x, y));
  const auto lap = LinearOperator::laplacian(2);
  const Real expected = eval_tensor(k, MultiIndex::axis(2, 0, 2), zero, x, y) +
                        eval_tensor(k, MultiIndex::axis(2, 1, 2), zero, x, y);
  CHECK(d(abs(apply_operator(k, lap, Argument::first, x, y) - expected)) <= 1e-25);

  const auto op1 = LinearOperator::derivative(2, 0, 1);
  const auto op2 = LinearOperator::laplacian(2) * 0.5;
  for (auto arg : {Argument::first, Argument::second}) {
    const Real sum = apply_operator(k, op1 + op2, arg, x, y);
    const Real parts = apply_operator(k, op1, arg, x, y) + apply_operator(k, op2, arg, x, y);
    CHECK(d(abs(sum - parts)) <= 1e-28);
  }
}

TEST_CASE("second derivative against finite differences") {
  const TensorKernel k = base_product(3, 1);
  const auto op = LinearOperator::derivative(1, 0, 2);
  const Real h(1e-4);
  for (double xv : {0.2, 0.45, 0.8}) {
    const Real x(xv), y(0.6);
    auto f = [&](const Real& t) { return k.factor(0).eval(0, 0, t, y); };
    const Real fd = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    const Real exact = apply_operator(k, op, Argument::first, RealPoint{x}, RealPoint{y});
    CHECK(d(abs(fd - exact)) <= 1e-6 * d(abs(exact)));
  }
}

TEST_CASE("interior grids") {
  const std::vector<Interval> iv{make_interval(Real(0), Real(1))};
  const std::vector<int> n3{3};
  const TensorGrid g = make_interior_grid(iv, n3);
  REQUIRE(g.size() == 3);
  CHECK(d(g.point(0)[0]) == doctest::Approx(0.25));
  CHECK(d(g.point(1)[0]) == doctest::Approx(0.5));
  CHECK(d(g.point(2)[0]) == doctest::Approx(0.75));

  const std::vector<Interval> sym{make_interval(Real(-1), Real(1))};
  const std::vector<int> n1{1};
  CHECK(d(make_interior_grid(sym, n1).point(0)[0]) == 0.0);

  const std::vector<Interval> cube(3, make_interval(Real(0), Real(1)));
  const std::vector<int> c3{3, 3, 3};
  const TensorGrid g3 = make_interior_grid(cube, c3);
  CHECK(g3.size() == 27);
  // Last axis varies fastest.
  CHECK(d(g3.point(1)[2]) == doctest::Approx(0.5));
  CHECK(d(g3.point(1)[0]) == doctest::Approx(0.25));
  CHECK(d(g3.point(3)[1]) == doctest::Approx(0.5));
  for (std::size_t i = 0; i < g3.size(); ++i) {
    CHECK(g3.flat_index(g3.multi_index(i)) == i);
    for (std::size_t a = 0; a < 3; ++a) CHECK(g3.coordinate(i, a) == g3.point(i)[a]);
  }
  const std::vector<int> bad{0};
  CHECK_THROWS_AS(make_interior_grid(iv, bad), InvalidArgument);
}

TEST_CASE("kernel_matrix matches pointwise evaluation and is positive definite") {
  const TensorKernel k = base_product(3, 2);
  const std::vector<Interval> iv(2, make_interval(Real(0), Real(1)));
  const std::vector<int> n{3, 4};
  const TensorGrid g = make_interior_grid(iv, n);
  const auto op = LinearOperator::laplacian(2) + LinearOperator::identity(2);
  const RealMatrix m = kernel_matrix(k, op, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      CHECK(d(abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                  apply_operator(k, op, Argument::first, g.point(i), g.point(j)))) <= 1e-28);
  const RealMatrix a = kernel_matrix(k, LinearOperator::identity(2), g);
  CHECK(d((a - a.transpose()).cwiseAbs().maxCoeff()) <= 1e-30);
  CHECK(Eigen::LLT<RealMatrix>(a).info() == Eigen::Success);
}

TEST_CASE("operator order check") {
  const TensorKernel k = base_product(2, 1);
  CHECK_NOTHROW(check_operator_order(k, LinearOperator::derivative(1, 0, 2)));
  CHECK_THROWS_AS(check_operator_order(k, LinearOperator::derivative(1, 0, 3)), SmoothnessExceeded);
  CHECK_THROWS_AS(check_operator_order(k, LinearOperator::derivative(1, 0, 2), 2), SmoothnessExceeded);
}
