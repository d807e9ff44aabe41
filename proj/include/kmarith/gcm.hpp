#pragma once

// Generalized Cartan matrices: axiom checks, indecomposable components and
// the canonical symmetrization A = D B.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "lattice.hpp"

namespace kmarith {

/// A square integer matrix known to satisfy axioms C1-C3.
/// Only `validate_gcm` constructs one.
class GeneralizedCartanMatrix {
 public:
  std::size_t size() const noexcept { return a_.rows(); }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }
  const IntMatrix& matrix() const noexcept { return a_; }

  friend bool operator==(const GeneralizedCartanMatrix& x, const GeneralizedCartanMatrix& y) {
    return x.a_ == y.a_;
  }

 private:
  explicit GeneralizedCartanMatrix(IntMatrix a) : a_(std::move(a)) {}
  friend GeneralizedCartanMatrix validate_gcm(const IntMatrix& raw);
  IntMatrix a_;
};

inline GeneralizedCartanMatrix validate_gcm(const IntMatrix& raw) {
  if (!raw.square() || raw.rows() == 0)
    throw Error(Errc::NonSquare, "matrix must be square of size >= 1");
  const std::size_t n = raw.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (raw(i, i) != 2) throw Error(Errc::C1Violation, "diagonal entry must be 2", {{i + 1, i + 1}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && raw(i, j) > 0)
        throw Error(Errc::C2Violation, "off-diagonal entry must be non-positive", {{i + 1, j + 1}});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && raw(i, j) == 0 && raw(j, i) != 0)
        throw Error(Errc::C3Violation, "zero entry must have a zero transpose partner", {{i + 1, j + 1}});
  return GeneralizedCartanMatrix(raw);
}

inline GeneralizedCartanMatrix validate_gcm(std::initializer_list<std::initializer_list<long>> rows) {
  return validate_gcm(int_matrix(rows));
}

/// Connected components of the graph i ~ j iff a_ij != 0. Indices are
/// 0-based, each component sorted, components ordered by smallest member.
inline std::vector<std::vector<std::size_t>> indecomposable_components(const GeneralizedCartanMatrix& a) {
  const std::size_t n = a.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::queue<std::size_t> q;
    q.push(s);
    comp[s] = static_cast<int>(out.size());
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      members.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && a(i, j) != 0 && comp[j] < 0) {
          comp[j] = static_cast<int>(out.size());
          q.push(j);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_indecomposable(const GeneralizedCartanMatrix& a) {
  return indecomposable_components(a).size() == 1;
}

/// A = D B with D = diag(epsilons), epsilons > 0, B integral symmetric of
/// entry-gcd 1.
struct Symmetrization {
  RatVector epsilons;
  IntMatrix b;
};

inline Symmetrization symmetrize(const GeneralizedCartanMatrix& a) {
  const std::size_t n = a.size();
  if (!is_indecomposable(a)) throw Error(Errc::Decomposable, "symmetrization needs an indecomposable matrix");

  // b_ij = a_ij / eps_i must be symmetric: eps_j = eps_i * a_ji / a_ij.
  RatVector eps(n, Rat(0));
  std::vector<bool> seen(n, false);
  eps[0] = 1;
  seen[0] = true;
  std::queue<std::size_t> q;
  q.push(0);
  while (!q.empty()) {
    std::size_t i = q.front();
    q.pop();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || a(i, j) == 0) continue;
      Rat want = eps[i] * Rat(a(j, i)) / Rat(a(i, j));
      if (!seen[j]) {
        eps[j] = want;
        seen[j] = true;
        q.push(j);
      } else if (eps[j] != want) {
        throw Error(Errc::NotSymmetrizable, "inconsistent cycle product", {{i + 1, j + 1}});
      }
    }
  }

  RatMatrix braw(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) braw(i, j) = Rat(a(i, j)) / eps[i];
  // scale B to integers with gcd 1; D scales inversely
  Int den = 1, num = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), braw(i, j).get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), braw(i, j).get_num_mpz_t());
    }
  Rat scale(den, num);
  scale.canonicalize();
  Symmetrization out;
  out.b = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = braw(i, j) * scale;
      out.b(i, j) = v.get_num();
    }
  out.epsilons.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.epsilons[i] = eps[i] / scale;
  return out;
}

}  // namespace kmarith
