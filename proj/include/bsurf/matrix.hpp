// Dense integer and rational matrices, determinants and Smith normal form.
#pragma once

#include <string>
#include <vector>

#include "bsurf/rational.hpp"

namespace bsurf {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> r(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Z>;
using RatMatrix = Matrix<Q>;

RatMatrix to_rational(const IntMatrix& m);
Z determinant(const IntMatrix& m);  // fraction-free (Bareiss)
Q determinant(const RatMatrix& m);
size_t rank(const IntMatrix& m);
size_t rank(const RatMatrix& m);
/// Inverse of a unimodular matrix; throws Domain if det != +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);

struct SNFResult {
  std::vector<Z> diagonal;  // non-negative invariant factors d1 | d2 | ..., length min(rows, cols)
  IntMatrix left, right;    // left * m * right = diag
};

SNFResult smith_normal_form(const IntMatrix& m);

/// Integer basis of {x : m x = 0}, one column per basis vector.
IntMatrix integer_kernel(const IntMatrix& m);

std::string render(const IntMatrix& m);

}  // namespace bsurf
