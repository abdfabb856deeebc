#include "bsurf/matrix.hpp"

#include <utility>

#include "bsurf/error.hpp"

namespace bsurf {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Q(m(i, j));
  return r;
}

Z determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Domain, "determinant of a non-square matrix");
  size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Z prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        Z t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Q determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::Domain, "determinant of a non-square matrix");
  RatMatrix a = m;
  size_t n = a.rows();
  Q det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Q f = a(i, k) / a(k, k);
      for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Q f = a(i, c) / a(r, c);
      for (size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

IntMatrix unimodular_inverse(const IntMatrix& m) {
  Z d = determinant(m);
  if (d != 1 && d != -1) fail(ErrorKind::Domain, "matrix is not unimodular");
  size_t n = m.rows();
  RatMatrix a = to_rational(m), inv = RatMatrix::identity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (a(p, k) == 0) ++p;
    for (size_t j = 0; j < n; ++j) {
      std::swap(a(k, j), a(p, j));
      std::swap(inv(k, j), inv(p, j));
    }
    Q piv = a(k, k);
    for (size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Q f = a(i, k);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  IntMatrix out(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out(i, j) = inv(i, j).get_num();
  return out;
}

namespace {

void swap_rows(IntMatrix& a, size_t i, size_t j) {
  for (size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}
void swap_cols(IntMatrix& a, size_t i, size_t j) {
  for (size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}
// row_i -= f * row_j
void add_row(IntMatrix& a, size_t i, size_t j, const Z& f) {
  for (size_t c = 0; c < a.cols(); ++c) a(i, c) -= f * a(j, c);
}
void add_col(IntMatrix& a, size_t i, size_t j, const Z& f) {
  for (size_t r = 0; r < a.rows(); ++r) a(r, i) -= f * a(r, j);
}
void negate_row(IntMatrix& a, size_t i) {
  for (size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  size_t R = a.rows(), C = a.cols();
  IntMatrix U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  size_t t = 0;
  while (t < R && t < C) {
    // choose the smallest non-zero entry in the trailing block as pivot
    bool found = false;
    size_t pi = t, pj = t;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j)
        if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    swap_rows(a, t, pi);
    swap_rows(U, t, pi);
    swap_cols(a, t, pj);
    swap_cols(V, t, pj);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        add_row(a, i, t, q);
        add_row(U, i, t, q);
        if (a(i, t) != 0) {
          swap_rows(a, t, i);
          swap_rows(U, t, i);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        Z q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        add_col(a, j, t, q);
        add_col(V, j, t, q);
        if (a(t, j) != 0) {
          swap_cols(a, t, j);
          swap_cols(V, t, j);
          clean = false;
        }
      }
      if (clean) {
        // divisibility: pivot must divide the whole trailing block
        for (size_t i = t + 1; i < R && clean; ++i)
          for (size_t j = t + 1; j < C; ++j) {
            Z r;
            mpz_fdiv_r(r.get_mpz_t(), a(i, j).get_mpz_t(), a(t, t).get_mpz_t());
            if (r != 0) {
              // row_t += row_i brings the offending entry into the pivot row
              add_row(a, t, i, Z(-1));
              add_row(U, t, i, Z(-1));
              clean = false;
              break;
            }
          }
      }
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(U, t);
    }
    ++t;
  }
  SNFResult res;
  for (size_t i = 0; i < std::min(R, C); ++i) res.diagonal.push_back(a(i, i));
  res.left = U;
  res.right = V;
  return res;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SNFResult s = smith_normal_form(m);
  size_t r = 0;
  for (const auto& d : s.diagonal)
    if (d != 0) ++r;
  size_t k = m.cols() - r;
  IntMatrix out(m.cols(), k);
  for (size_t c = 0; c < k; ++c)
    for (size_t i = 0; i < m.cols(); ++i) out(i, c) = s.right(i, r + c);
  return out;
}

std::string render(const IntMatrix& m) {
  std::string s = "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ";";
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) s += " ";
      s += m(i, j).get_str();
    }
  }
  return s + "]";
}

}  // namespace bsurf
