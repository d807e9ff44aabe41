#pragma once

// Exact integer/rational matrices and the lattice primitives built on them:
// content, rank, Hermite normal forms, integer kernels, span tests.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kmarith {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> col_vector(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) {
    std::vector<Int> v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return IntMatrix::from_rows(r);
}

inline IntVector int_vector(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix diagonal_matrix(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

// ---------------------------------------------------------------------------
// Vector helpers

inline Int content(std::span<const Int> xs) {
  Int g = 0;
  for (const auto& x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

inline Int content(const IntMatrix& m) {
  Int g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int r = content(m.row(i));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  }
  return g;
}

inline bool is_zero(std::span<const Int> xs) {
  return std::all_of(xs.begin(), xs.end(), [](const Int& x) { return x == 0; });
}

/// Divides out the content; the zero vector is returned unchanged.
inline IntVector primitive_part(IntVector v) {
  Int g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector mat_vec(const IntMatrix& m, std::span<const Int> x) {
  IntVector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) y[i] = dot(m.row(i), x);
  return y;
}

/// x^T S y
inline Int bilinear(const IntMatrix& s, std::span<const Int> x, std::span<const Int> y) {
  Int total = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (x[i] == 0) continue;
    total += x[i] * dot(s.row(i), y);
  }
  return total;
}

inline IntVector scaled(const IntVector& v, const Int& c) {
  IntVector out(v);
  for (auto& x : out) x *= c;
  return out;
}

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

inline IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e(n, Int(0));
  e[i] = 1;
  return e;
}

inline Int lcm_of_denominators(std::span<const Rat> xs) {
  Int l = 1;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

/// Smallest positive integer multiple of a rational vector, made primitive.
inline IntVector clear_denominators(std::span<const Rat> xs) {
  Int l = lcm_of_denominators(xs);
  IntVector v(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rat t = xs[i] * l;
    v[i] = t.get_num();
  }
  return primitive_part(std::move(v));
}

inline Int isqrt_floor(const Rat& t) {
  if (t <= 0) return 0;
  Int f = t.get_num() / t.get_den();
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

inline Int floor_of(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_of(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& x) {
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Int> positive_divisors(const Int& n) {
  Int a = abs(n);
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= a; ++d) {
    if (divides(d, a)) {
      small.push_back(d);
      Int q = a / d;
      if (q != d) large.push_back(q);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// ---------------------------------------------------------------------------
// Rational elimination

inline std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

inline std::size_t rank(const std::vector<IntVector>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  RatMatrix m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = Rat(rows[i][j]);
  return rank(std::move(m));
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline Rat determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline Int determinant(const IntMatrix& m) {
  Rat d = determinant(to_rational(m));
  return d.get_num();
}

// ---------------------------------------------------------------------------
// Hermite normal form machinery

/// X * transform = echelon, transform unimodular. The first `rank` columns of
/// `echelon` are the column Hermite normal form of X; the remaining columns
/// are zero, so the matching columns of `transform` span the integer kernel.
struct ColumnEchelon {
  IntMatrix echelon;
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

inline ColumnEchelon column_hermite(const IntMatrix& x) {
  ColumnEchelon out{x, IntMatrix::identity(x.cols()), 0, {}};
  IntMatrix& h = out.echelon;
  IntMatrix& u = out.transform;
  const std::size_t n = x.cols();

  auto combine = [&](std::size_t p, std::size_t j, const Int& s, const Int& t, const Int& a_g,
                     const Int& b_g) {
    // col_p <- s*col_p + t*col_j ; col_j <- -b_g*col_p + a_g*col_j
    for (IntMatrix* m : {&h, &u}) {
      for (std::size_t i = 0; i < m->rows(); ++i) {
        Int cp = (*m)(i, p);
        Int cj = (*m)(i, j);
        (*m)(i, p) = s * cp + t * cj;
        (*m)(i, j) = a_g * cj - b_g * cp;
      }
    }
  };

  std::size_t p = 0;
  for (std::size_t i = 0; i < h.rows() && p < n; ++i) {
    for (std::size_t j = p + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, p) == 0) {
        for (IntMatrix* m : {&h, &u})
          for (std::size_t r = 0; r < m->rows(); ++r) std::swap((*m)(r, p), (*m)(r, j));
        continue;
      }
      Int a = h(i, p), b = h(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int a_g = a / g, b_g = b / g;
      combine(p, j, s, t, a_g, b_g);
    }
    if (h(i, p) == 0) continue;
    if (h(i, p) < 0)
      for (IntMatrix* m : {&h, &u})
        for (std::size_t r = 0; r < m->rows(); ++r) (*m)(r, p) = -(*m)(r, p);
    // reduce earlier pivot columns modulo this pivot
    for (std::size_t k = 0; k < p; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, k).get_mpz_t(), h(i, p).get_mpz_t());
      if (q == 0) continue;
      for (IntMatrix* m : {&h, &u})
        for (std::size_t r = 0; r < m->rows(); ++r) (*m)(r, k) -= q * (*m)(r, p);
    }
    out.pivot_rows.push_back(i);
    ++p;
  }
  out.rank = p;
  return out;
}

/// Row Hermite normal form with zero rows dropped: upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot).
inline IntMatrix row_hermite(const IntMatrix& x) {
  ColumnEchelon ce = column_hermite(x.transpose());
  IntMatrix h(ce.rank, x.cols());
  for (std::size_t i = 0; i < ce.rank; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) h(i, j) = ce.echelon(j, i);
  return h;
}

inline IntMatrix rows_to_matrix(const std::vector<IntVector>& rows, std::size_t dim) {
  IntMatrix m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

/// Saturated integer kernel {v : X v = 0}, as rows in Hermite normal form.
inline IntMatrix integer_kernel(const IntMatrix& x) {
  ColumnEchelon ce = column_hermite(x);
  const std::size_t k = x.cols() - ce.rank;
  IntMatrix basis(k, x.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) basis(i, j) = ce.transform(j, ce.rank + i);
  if (k == 0) return basis;
  return row_hermite(basis);
}

/// Index of the lattice spanned by `vectors` inside Z^dim; nullopt when the
/// span has lower rank.
inline std::optional<Int> span_index(const std::vector<IntVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return dim == 0 ? std::optional<Int>(1) : std::nullopt;
  IntMatrix h = row_hermite(rows_to_matrix(vectors, dim));
  if (h.rows() != dim) return std::nullopt;
  Int idx = 1;
  for (std::size_t i = 0; i < dim; ++i) idx *= h(i, i);
  return idx;
}

inline bool spans_lattice(const std::vector<IntVector>& vectors, std::size_t dim) {
  auto idx = span_index(vectors, dim);
  return idx && *idx == 1;
}

/// Solves A x = b over the rationals for square invertible A.
inline std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  auto inv = inverse(a);
  if (!inv) return std::nullopt;
  RatVector x(b.size(), Rat(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) x[i] += (*inv)(i, j) * b[j];
  return x;
}

/// Coefficients c with sum_j c_j cols[j] = x, for linearly independent
/// columns; nullopt if x is outside their span or the columns are dependent.
inline std::optional<RatVector> express_in_span(const std::vector<IntVector>& cols, std::span<const Int> x) {
  const std::size_t k = cols.size(), d = x.size();
  RatMatrix m(d, k + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < k; ++j) m(i, j) = Rat(cols[j][i]);
    m(i, k) = Rat(x[i]);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = r;
    while (p < d && m(p, c) == 0) ++p;
    if (p == d) return std::nullopt;
    if (p != r)
      for (std::size_t j = 0; j <= k; ++j) std::swap(m(p, j), m(r, j));
    Rat piv = m(r, c);
    for (std::size_t j = 0; j <= k; ++j) m(r, j) /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j <= k; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  for (std::size_t i = r; i < d; ++i)
    if (m(i, k) != 0) return std::nullopt;
  RatVector c(k);
  for (std::size_t j = 0; j < k; ++j) c[j] = m(j, k);
  return c;
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace kmarith
