#pragma once

#include <cstddef>
#include <functional>

#include "arith.hpp"

namespace kmarith {

/// Calls `visit` for every integer vector x with x^T q x <= bound, where q is
/// a positive definite rational matrix (Fincke-Pohst, exact arithmetic).
/// Vectors are visited in a fixed order; the zero vector is included.
inline void enumerate_short_vectors(const RatMatrix& q, const Rat& bound,
                                    const std::function<void(const IntVector&)>& visit) {
  const std::size_t n = q.rows();
  RatMatrix d = q;
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) <= 0) throw std::invalid_argument("enumerate_short_vectors: form is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      d(j, i) = d(i, j);
      d(i, j) = d(i, j) / d(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) d(k, l) -= d(k, i) * d(i, l);
  }
  // q(x) = sum_i d_ii (x_i + sum_{j>i} d_ij x_j)^2
  IntVector x(n, Int(0));
  std::function<void(std::size_t, const Rat&)> level = [&](std::size_t i, const Rat& remaining) {
    Rat centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= d(i, j) * Rat(x[j]);
    Int s = isqrt_floor(remaining / d(i, i));
    Int lo = floor_of(centre) - s - 1;
    Int hi = ceil_of(centre) + s + 1;
    for (Int v = lo; v <= hi; ++v) {
      Rat diff = Rat(v) - centre;
      Rat used = d(i, i) * diff * diff;
      if (used > remaining) continue;
      x[i] = v;
      if (i == 0) visit(x);
      else level(i - 1, remaining - used);
    }
    x[i] = 0;
  };
  if (n == 0 || bound < 0) return;
  level(n - 1, bound);
}

}  // namespace kmarith
