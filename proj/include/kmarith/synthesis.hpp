#pragma once

// The invariant triple (S, facets of the simple-root chamber, lambda) of an
// arithmetic hyperbolic GCM, admissible lambda functions, and reconstruction
// of a GCM from a triple.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "gcm.hpp"
#include "lattice.hpp"
#include "reflect.hpp"

namespace kmarith {

/// lambda(delta) > 0 per facet, aligned with the facet list.
struct LambdaFunction {
  std::vector<Int> values;
  friend auto operator<=>(const LambdaFunction&, const LambdaFunction&) = default;
};

struct InvariantTriple {
  QuotientLattice lattice;
  FundamentalPolyhedron polyhedron;
  LambdaFunction lambda;
  /// Simple-root index of each facet when extracted from a GCM.
  std::vector<std::size_t> source_index;
};

struct LambdaCheck {
  bool ok = false;
  std::string violation;  // "positivity", "divisibility" or "generation"
  std::vector<std::size_t> where;
};

inline std::vector<IntVector> weighted_facets(const std::vector<IntVector>& facets, const LambdaFunction& lambda) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < facets.size(); ++i) out.push_back(scaled(facets[i], lambda.values[i]));
  return out;
}

/// S(l_i d_i, l_i d_i) | 2 S(l_j d_j, l_i d_i) for all i != j, and the
/// vectors l_i d_i generate M.
inline LambdaCheck check_lambda(const QuotientLattice& lat, const std::vector<IntVector>& facets,
                                const LambdaFunction& lambda) {
  LambdaCheck out;
  if (lambda.values.size() != facets.size()) {
    out.violation = "length";
    return out;
  }
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (lambda.values[i] <= 0) {
      out.violation = "positivity";
      out.where = {i};
      return out;
    }
  auto v = weighted_facets(facets, lambda);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int ni = lat.norm(v[i]);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (i == j) continue;
      if (!divides(ni, 2 * lat.form(v[j], v[i]))) {
        out.violation = "divisibility";
        out.where = {i, j};
        return out;
      }
    }
  }
  if (!spans_lattice(v, lat.rank())) {
    out.violation = "generation";
    return out;
  }
  out.ok = true;
  return out;
}

/// Admissible values of lambda_j / lambda_i across a facet pair with nonzero
/// pairing s: the Cartan entries a_ij, a_ji are negative integers with product
/// 4 s^2 / (n_i n_j), and a_ij = -d gives lambda_j / lambda_i = d n_i / (2|s|).
inline std::vector<Rat> lambda_ratio_choices(const QuotientLattice& lat, const IntVector& di, const IntVector& dj) {
  Int s = lat.form(di, dj);
  if (s == 0) throw Error(Errc::ConstraintViolation, "facets are orthogonal");
  Int ni = lat.norm(di), nj = lat.norm(dj);
  Int num = 4 * s * s, den = ni * nj;
  if (!divides(den, num)) return {};
  std::vector<Rat> out;
  for (const auto& d : positive_divisors(num / den)) {
    Rat r(d * ni, 2 * abs(s));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

/// Every lambda satisfying divisibility and generation, sorted.
inline std::vector<LambdaFunction> enumerate_lambda(const QuotientLattice& lat, const std::vector<IntVector>& facets) {
  const std::size_t m = facets.size();
  if (m == 0) return {};
  // BFS spanning tree of the nonzero-pairing graph
  std::vector<std::ptrdiff_t> parent(m, -1);
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(m, false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h) {
    std::size_t i = order[h];
    for (std::size_t j = 0; j < m; ++j)
      if (!seen[j] && lat.form(facets[i], facets[j]) != 0) {
        seen[j] = true;
        parent[j] = static_cast<std::ptrdiff_t>(i);
        order.push_back(j);
      }
  }
  if (order.size() != m) throw Error(Errc::ConstraintViolation, "facet pairing graph is disconnected");

  std::vector<std::vector<Rat>> choices(m);
  for (std::size_t k = 1; k < m; ++k) {
    std::size_t j = order[k];
    choices[j] = lambda_ratio_choices(lat, facets[static_cast<std::size_t>(parent[j])], facets[j]);
    if (choices[j].empty()) return {};
  }

  std::set<LambdaFunction> found;
  RatVector ratio(m, Rat(0));
  ratio[0] = 1;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) {
      LambdaFunction lam{clear_denominators(ratio)};
      if (check_lambda(lat, facets, lam).ok) found.insert(std::move(lam));
      return;
    }
    std::size_t j = order[k];
    for (const auto& c : choices[j]) {
      ratio[j] = ratio[static_cast<std::size_t>(parent[j])] * c;
      rec(k + 1);
    }
  };
  rec(1);
  return {found.begin(), found.end()};
}

inline InvariantTriple make_triple(const QuotientLattice& lat, const std::vector<IntVector>& facets,
                                   const LambdaFunction& lambda) {
  FacetVerification ver = verify_fundamental_polyhedron(lat, facets);
  if (!ver.valid) throw Error(Errc::ConstraintViolation, "facets are not a valid chamber: " + ver.reason);
  LambdaCheck lc = check_lambda(lat, facets, lambda);
  if (!lc.ok) throw Error(Errc::ConstraintViolation, "lambda fails " + lc.violation);
  InvariantTriple t{lat, ver.polyhedron, lambda, {}};
  for (std::size_t i = 0; i < facets.size(); ++i) t.source_index.push_back(i);
  return t;
}

/// (S, chamber facets, lambda) with pi(alpha_i) = lambda_i delta_i. Facets are
/// listed in decreasing lexicographic order.
inline InvariantTriple extract_invariants(const GeneralizedCartanMatrix& a) {
  TypeClass tc = classify(a, SearchBudget{});
  if (tc.kind != TypeKind::ArithmeticHyperbolic)
    throw Error(Errc::NotArithmeticHyperbolic, std::string("matrix is ") + type_kind_name(tc.kind));
  QuotientLattice lat = kernel_quotient(symmetrize(a).b);
  const std::size_t n = a.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<IntVector> delta(n);
  std::vector<Int> lam(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector p = lat.project_simple_root(i);
    lam[i] = content(p);
    delta[i] = primitive_part(std::move(p));
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return delta[x] > delta[y]; });
  std::vector<IntVector> facets;
  LambdaFunction lambda;
  for (auto i : idx) {
    facets.push_back(delta[i]);
    lambda.values.push_back(lam[i]);
  }
  InvariantTriple t = make_triple(lat, facets, lambda);
  t.source_index = idx;
  return t;
}

/// a_ij = 2 S(v_i, v_j) / S(v_i, v_i) with v_i = lambda_i delta_i.
inline GeneralizedCartanMatrix synthesize_gcm(const InvariantTriple& t) {
  const auto& facets = t.polyhedron.facets;
  if (t.lattice.rank() < 3 || facets.size() < 3)
    throw Error(Errc::ConstraintViolation, "a hyperbolic chamber of rank >= 3 needs at least 3 facets");
  if (t.lambda.values.size() != facets.size()) throw Error(Errc::ConstraintViolation, "lambda length mismatch");
  auto v = weighted_facets(facets, t.lambda);
  const std::size_t m = v.size();
  IntMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Int ni = t.lattice.norm(v[i]);
    if (ni <= 0) throw Error(Errc::ConstraintViolation, "facet of non-positive norm", {{i + 1, i + 1}});
    for (std::size_t j = 0; j < m; ++j) {
      Int num = 2 * t.lattice.form(v[i], v[j]);
      if (!divides(ni, num)) throw Error(Errc::ConstraintViolation, "non-integral Cartan entry", {{i + 1, j + 1}});
      a(i, j) = num / ni;
    }
  }
  try {
    return validate_gcm(a);
  } catch (const Error& e) {
    throw Error(Errc::ConstraintViolation, std::string("synthesized matrix is not a GCM: ") + e.what(), e.location());
  }
}

/// Permutation p with synthesize(extract(A))(k, l) = A(p[k], p[l]), if any.
inline std::optional<std::vector<std::size_t>> round_trip(const GeneralizedCartanMatrix& a) {
  InvariantTriple t = extract_invariants(a);
  GeneralizedCartanMatrix b = synthesize_gcm(t);
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  auto matches = [&](const std::vector<std::size_t>& p) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        if (b(k, l) != a(p[k], p[l])) return false;
    return true;
  };
  if (matches(t.source_index)) return t.source_index;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (matches(p)) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

}  // namespace kmarith
