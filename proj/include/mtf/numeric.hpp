#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mtf/error.hpp"

namespace mtf {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<int>;

/// Dense row-major matrix. Sizes here are tiny (d x d).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix square(int n, const T& fill = T(0)) { return Matrix(n, n, fill); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  /// Keeps the rows and columns listed in `keep`, in that order.
  Matrix principal_submatrix(std::span<const int> keep) const {
    Matrix out(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = 0; b < keep.size(); ++b)
        out(static_cast<int>(a), static_cast<int>(b)) = (*this)(keep[a], keep[b]);
    return out;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<int>;

/// Fraction-free (Bareiss) determinant over an exact integer type.
template <class T>
T determinant(Matrix<T> m) {
  const int n = m.rows();
  if (n != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (n == 0) return T(1);
  T sign(1);
  T prev(1);
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return T(0);
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        T v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = v / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

BigInt factorial(long n);
/// Binomial coefficient; zero unless 0 <= k <= n.
BigInt binomial(long n, long k);
/// num / den, throwing when the division leaves a remainder.
BigInt exact_quotient(const BigInt& num, const BigInt& den);

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
Rational ratio(const BigInt& num, const BigInt& den);

/// Always "p/q", denominator included even when it is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
/// Accepts "p/q", "p" or "-p/q".
Rational parse_rational(std::string_view text);
double to_double(const Rational& q);

/// Decimal rendering for reports.
std::string to_decimal(const Rational& q, int digits = 12);

int sum(std::span<const int> v);

}  // namespace mtf
