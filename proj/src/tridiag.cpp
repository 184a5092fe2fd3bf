#include "evosplit/tridiag.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "evosplit/errors.hpp"

namespace evosplit {

namespace {

void check_shapes(const TridiagonalOperator& T, std::span<const double> rhs) {
  const std::size_t n = T.diag.size();
  if (n == 0) throw std::invalid_argument("tridiagonal solve: empty system");
  if (T.sub.size() + 1 != n || T.super.size() + 1 != n) {
    throw std::invalid_argument("tridiagonal solve: diagonal length mismatch");
  }
  if (rhs.size() != n) {
    throw std::invalid_argument("tridiagonal solve: rhs length mismatch");
  }
}

}  // namespace

bool is_strictly_diagonally_dominant(const TridiagonalOperator& T) {
  const int n = T.size();
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    if (i > 0) off += std::abs(T.sub[static_cast<std::size_t>(i - 1)]);
    if (i + 1 < n) off += std::abs(T.super[static_cast<std::size_t>(i)]);
    if (!(std::abs(T.diag[static_cast<std::size_t>(i)]) > off)) return false;
  }
  return true;
}

std::vector<double> solve_thomas(const TridiagonalOperator& T, std::span<const double> rhs) {
  check_shapes(T, rhs);
  const std::size_t n = T.diag.size();

  std::vector<double> c_prime(n - 1, 0.0);
  std::vector<double> d_prime(n, 0.0);

  double pivot = T.diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) {
    throw NumericalError("solve_thomas: zero pivot in row 0");
  }
  if (n > 1) c_prime[0] = T.super[0] / pivot;
  d_prime[0] = rhs[0] / pivot;

  for (std::size_t i = 1; i < n; ++i) {
    pivot = T.diag[i] - T.sub[i - 1] * c_prime[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("solve_thomas: zero pivot in row " + std::to_string(i));
    }
    if (i + 1 < n) c_prime[i] = T.super[i] / pivot;
    d_prime[i] = (rhs[i] - T.sub[i - 1] * d_prime[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d_prime[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = d_prime[i] - c_prime[i] * x[i + 1];
  }
  return x;
}

std::vector<double> solve_tridiagonal_pivot(const TridiagonalOperator& T,
                                            std::span<const double> rhs) {
  check_shapes(T, rhs);
  const std::size_t n = T.diag.size();

  // Working bands: a = subdiagonal of the remaining rows, b = diagonal,
  // c = first superdiagonal, d = fill-in second superdiagonal.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0), r(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) b[i] = T.diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    c[i] = T.super[i];
    a[i + 1] = T.sub[i];
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (std::abs(a[k + 1]) > std::abs(b[k])) {
      std::swap(b[k], a[k + 1]);
      std::swap(c[k], b[k + 1]);
      std::swap(d[k], c[k + 1]);
      std::swap(r[k], r[k + 1]);
    }
    if (b[k] == 0.0 || !std::isfinite(b[k])) {
      throw NumericalError("solve_tridiagonal_pivot: singular at row " + std::to_string(k));
    }
    const double m = a[k + 1] / b[k];
    b[k + 1] -= m * c[k];
    c[k + 1] -= m * d[k];
    r[k + 1] -= m * r[k];
    a[k + 1] = 0.0;
  }
  if (b[n - 1] == 0.0 || !std::isfinite(b[n - 1])) {
    throw NumericalError("solve_tridiagonal_pivot: singular at last row");
  }

  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    if (i + 1 < n) s -= c[i] * x[i + 1];
    if (i + 2 < n) s -= d[i] * x[i + 2];
    x[i] = s / b[i];
  }
  return x;
}

std::vector<double> solve_tridiagonal(const TridiagonalOperator& T,
                                      std::span<const double> rhs) {
  if (is_strictly_diagonally_dominant(T)) return solve_thomas(T, rhs);
  return solve_tridiagonal_pivot(T, rhs);
}

}  // namespace evosplit
