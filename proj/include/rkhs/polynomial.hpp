#pragma once

#include <cstddef>
#include <vector>

namespace rkhs {

/// n! / (n - k)!, zero when k > n.
template <class T>
T falling_factorial(int n, int k) {
  if (k > n) return T(0);
  T out(1);
  for (int t = 0; t < k; ++t) out *= T(n - t);
  return out;
}

/// Dense univariate polynomial, coefficients in ascending powers.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<T>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  /// k-th derivative at x.
  T operator()(const T& x, int k = 0) const {
    T acc(0);
    for (int i = degree(); i >= k; --i)
      acc = acc * x + falling_factorial<T>(i, k) * coeffs_[static_cast<std::size_t>(i)];
    return acc;
  }

 private:
  std::vector<T> coeffs_;
};

}  // namespace rkhs
