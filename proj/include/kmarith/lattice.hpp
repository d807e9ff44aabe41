#pragma once

// Quotient lattice M = Q / Ker(.|.) with its nondegenerate integral form S,
// plus the exact reflection and light-cone primitives used on top of it.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace kmarith {

struct SignatureTriple {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t zero = 0;

  std::size_t size() const noexcept { return plus + minus + zero; }
  friend bool operator==(const SignatureTriple&, const SignatureTriple&) = default;
};

/// diag = transform^T * B * transform, transform invertible over Q.
struct CongruenceDiagonalization {
  RatVector diagonal;
  RatMatrix transform;
};

inline CongruenceDiagonalization congruence_diagonalize(const IntMatrix& b) {
  if (!b.square()) throw Error(Errc::NonSquare, "congruence diagonalization needs a square matrix");
  const std::size_t n = b.rows();
  RatMatrix m = to_rational(b);
  RatMatrix t = RatMatrix::identity(n);

  auto swap_index = [&](std::size_t a, std::size_t c) {
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, a), m(i, c));
    for (std::size_t j = 0; j < n; ++j) std::swap(m(a, j), m(c, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(t(i, a), t(i, c));
  };
  // index k <- index k + index j, applied congruently
  auto add_index = [&](std::size_t k, std::size_t j, const Rat& f) {
    for (std::size_t i = 0; i < n; ++i) m(i, k) += f * m(i, j);
    for (std::size_t i = 0; i < n; ++i) m(k, i) += f * m(j, i);
    for (std::size_t i = 0; i < n; ++i) t(i, k) += f * t(i, j);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && m(j, j) == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        // every remaining diagonal entry vanishes: hyperbolic-block pivot
        j = k + 1;
        while (j < n && m(k, j) == 0) ++j;
        if (j == n) continue;
        add_index(k, j, Rat(1));
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (m(k, j) == 0) continue;
      Rat f = -m(k, j) / m(k, k);
      add_index(j, k, f);
    }
  }
  CongruenceDiagonalization out;
  out.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = m(i, i);
  out.transform = std::move(t);
  return out;
}

inline SignatureTriple signature(const IntMatrix& b) {
  SignatureTriple s;
  for (const auto& d : congruence_diagonalize(b).diagonal) {
    int sg = sgn(d);
    if (sg > 0) ++s.plus;
    else if (sg < 0) ++s.minus;
    else ++s.zero;
  }
  return s;
}

/// Signature (r-1, 1) with r >= 2 and no kernel.
inline bool is_hyperbolic(const IntMatrix& s) {
  auto sig = signature(s);
  return sig.minus == 1 && sig.zero == 0 && sig.plus >= 1;
}

struct Primitivity {
  bool is_primitive = false;
  Int content;
};

inline Primitivity primitivity(const IntMatrix& s) {
  Int c = content(s);
  return {c == 1, c};
}

/// M = Q / Ker with Gram matrix S and projection pi : Z^n -> Z^r.
/// pi is kept in row Hermite normal form, so the basis of M is canonical.
struct QuotientLattice {
  IntMatrix gram;          // S, r x r, nondegenerate
  IntMatrix projection;    // pi, r x n
  IntMatrix kernel_basis;  // k x n, rows span the saturated kernel
  IntMatrix section;       // n x r with pi * section = identity

  std::size_t rank() const noexcept { return gram.rows(); }
  std::size_t ambient_rank() const noexcept { return projection.cols(); }

  IntVector project(std::span<const Int> x) const { return mat_vec(projection, x); }
  IntVector project_simple_root(std::size_t i) const { return projection.col_vector(i); }
  Int form(std::span<const Int> x, std::span<const Int> y) const { return bilinear(gram, x, y); }
  Int norm(std::span<const Int> x) const { return form(x, x); }
  /// S * x, the functional y -> S(y, x) in coordinates.
  IntVector functional(std::span<const Int> x) const { return mat_vec(gram, x); }

  /// A lattice given directly by a nondegenerate Gram matrix; pi = identity.
  static QuotientLattice from_gram(const IntMatrix& s) {
    if (!s.square()) throw Error(Errc::NonSquare, "Gram matrix must be square");
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (s(i, j) != s(j, i)) throw Error(Errc::Parse, "Gram matrix must be symmetric", {{i + 1, j + 1}});
    if (determinant(s) == 0) throw Error(Errc::DegenerateInput, "Gram matrix is degenerate");
    const std::size_t n = s.rows();
    return {s, IntMatrix::identity(n), IntMatrix(0, n), IntMatrix::identity(n)};
  }
};

inline QuotientLattice kernel_quotient(const IntMatrix& b) {
  if (!b.square()) throw Error(Errc::NonSquare, "form matrix must be square");
  const std::size_t n = b.rows();
  IntMatrix kernel = integer_kernel(b);
  if (kernel.rows() == 0) {
    return {b, IntMatrix::identity(n), kernel, IntMatrix::identity(n)};
  }
  IntMatrix pi = integer_kernel(kernel);  // annihilator of the kernel, already HNF
  const std::size_t r = pi.rows();
  ColumnEchelon ce = column_hermite(pi);
  IntMatrix section(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) section(i, j) = ce.transform(i, j);
  // pi is onto Z^r, so its column Hermite form is the identity
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (ce.echelon(i, j) != (i == j ? 1 : 0))
        throw std::logic_error("kernel_quotient: projection is not surjective");
  IntMatrix gram = section.transpose() * b * section;
  return {std::move(gram), std::move(pi), std::move(kernel), std::move(section)};
}

/// Exponent of the discriminant group M^* / M: least e with e * S^{-1} integral.
inline Int discriminant_exponent(const IntMatrix& s) {
  auto inv = inverse(to_rational(s));
  if (!inv) throw Error(Errc::DegenerateInput, "form is degenerate");
  Int e = 1;
  for (std::size_t i = 0; i < inv->rows(); ++i)
    for (std::size_t j = 0; j < inv->cols(); ++j)
      mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), (*inv)(i, j).get_den_mpz_t());
  return e;
}

/// r_delta preserves M: S(d,d) divides 2 S(x,d) * content(d) for every basis x.
/// For primitive d this is the divisibility S(d,d) | 2 S(M,d).
inline bool is_crystallographic_root(const QuotientLattice& lat, std::span<const Int> delta) {
  Int nrm = lat.norm(delta);
  if (nrm <= 0) throw Error(Errc::NonPositiveNorm, "root candidate must have positive norm");
  Int c = content(delta);
  for (const auto& v : lat.functional(delta))
    if (!divides(nrm, 2 * v * c)) return false;
  return true;
}

inline IntVector reflect_vector(const QuotientLattice& lat, std::span<const Int> delta,
                                std::span<const Int> x) {
  Int nrm = lat.norm(delta);
  if (nrm <= 0) throw Error(Errc::NonPositiveNorm, "reflection vector must have positive norm");
  Rat coef(2 * lat.form(x, delta), nrm);
  coef.canonicalize();
  IntVector out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rat v = Rat(out[i]) - coef * Rat(delta[i]);
    if (v.get_den() != 1) throw Error(Errc::NonIntegralImage, "reflection does not preserve the lattice");
    out[i] = v.get_num();
  }
  return out;
}

/// Matrix of r_delta acting on coordinate columns.
inline IntMatrix reflection_matrix(const QuotientLattice& lat, std::span<const Int> delta) {
  const std::size_t r = lat.rank();
  IntMatrix m(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    IntVector img = reflect_vector(lat, delta, unit_vector(r, j));
    for (std::size_t i = 0; i < r; ++i) m(i, j) = img[i];
  }
  return m;
}

/// Selects the half-cone V+ as the one containing `reference` (S(ref,ref) < 0).
struct ConeOrientation {
  IntVector reference;
};

enum class ConeSide { InteriorPositive, InteriorNegative, Boundary, Outside };

inline const char* cone_side_name(ConeSide s) {
  switch (s) {
    case ConeSide::InteriorPositive: return "interior V+";
    case ConeSide::InteriorNegative: return "interior -V+";
    case ConeSide::Boundary: return "boundary";
    case ConeSide::Outside: return "outside";
  }
  return "?";
}

inline ConeSide cone_side(const QuotientLattice& lat, const ConeOrientation& orientation,
                          std::span<const Int> x) {
  if (!is_hyperbolic(lat.gram)) throw Error(Errc::NotHyperbolic, "form is not hyperbolic");
  Int nrm = lat.norm(x);
  if (nrm == 0) return ConeSide::Boundary;
  if (nrm > 0) return ConeSide::Outside;
  return lat.form(x, orientation.reference) < 0 ? ConeSide::InteriorPositive
                                               : ConeSide::InteriorNegative;
}

/// The negative direction of the congruence diagonalization, as a primitive
/// lattice vector. `sign_hint`, when given, fixes the sign so that the
/// reference pairs negatively with it.
inline ConeOrientation default_orientation(const QuotientLattice& lat,
                                           std::span<const Int> sign_hint = {}) {
  if (!is_hyperbolic(lat.gram)) throw Error(Errc::NotHyperbolic, "form is not hyperbolic");
  auto cd = congruence_diagonalize(lat.gram);
  for (std::size_t k = 0; k < cd.diagonal.size(); ++k) {
    if (cd.diagonal[k] >= 0) continue;
    RatVector col(lat.rank());
    for (std::size_t i = 0; i < lat.rank(); ++i) col[i] = cd.transform(i, k);
    IntVector ref = clear_denominators(col);
    if (!sign_hint.empty() && lat.form(ref, sign_hint) > 0) ref = negated(std::move(ref));
    return {ref};
  }
  throw Error(Errc::NotHyperbolic, "no negative direction");
}

}  // namespace kmarith
