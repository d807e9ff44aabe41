#pragma once

// Hyperbolic reflection engine: finite-volume test for polyhedra cut out by
// root hyperplanes, fundamental polyhedron search, reflectivity and
// 2-reflectivity, and verification of user supplied facet sets.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arith.hpp"
#include "budget.hpp"
#include "cone.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "lattice.hpp"

namespace kmarith {

enum class VolumeStatus { Finite, Infinite, Undecided };

inline const char* volume_status_name(VolumeStatus v) {
  switch (v) {
    case VolumeStatus::Finite: return "finite";
    case VolumeStatus::Infinite: return "infinite";
    case VolumeStatus::Undecided: return "undecided";
  }
  return "?";
}

/// Polyhedron cut out by the half-spaces S(x, d) <= 0, one per facet d.
struct FundamentalPolyhedron {
  std::vector<IntVector> facets;
  IntMatrix coxeter_gram;
  VolumeStatus volume_status = VolumeStatus::Undecided;
  std::vector<IntVector> extreme_rays;
  std::size_t stabilizer_facets = 0;
};

inline IntMatrix gram_of(const QuotientLattice& lat, const std::vector<IntVector>& vs) {
  IntMatrix g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) g(i, j) = lat.form(vs[i], vs[j]);
  return g;
}

inline DoubleDescription chamber_cone(const QuotientLattice& lat, const std::vector<IntVector>& facets) {
  DoubleDescription dd(lat.rank());
  for (const auto& f : facets) dd.add(lat.functional(f));
  return dd;
}

namespace detail {

inline void for_each_subset(std::size_t m, std::size_t max_size,
                            const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> cur;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!cur.empty() && fn(cur)) return true;
    if (cur.size() == max_size) return false;
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(i);
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  rec(0);
}

}  // namespace detail

/// A point of the cone with negative norm in the half-cone of `half`, if one
/// exists. Exact: minimizes S(x,x) over the cone slice S(x, half) = -1 face
/// by face.
inline std::optional<IntVector> find_timelike_point(const QuotientLattice& lat, const DoubleDescription& dd,
                                                    const IntVector& half) {
  std::vector<IntVector> gens = dd.rays();
  for (const auto& l : dd.lineality()) {
    gens.push_back(l);
    gens.push_back(negated(l));
  }
  for (const auto& g : gens)
    if (lat.norm(g) < 0 && lat.form(g, half) < 0) return g;

  std::optional<IntVector> found;
  const std::size_t r = lat.rank();
  detail::for_each_subset(gens.size(), r, [&](const std::vector<std::size_t>& idx) {
    const std::size_t k = idx.size();
    if (k < 2) return false;
    RatMatrix g(k, k);
    RatVector h(k);
    for (std::size_t a = 0; a < k; ++a) {
      h[a] = Rat(lat.form(gens[idx[a]], half));
      for (std::size_t b = 0; b < k; ++b) g(a, b) = Rat(lat.form(gens[idx[a]], gens[idx[b]]));
    }
    auto ginv_h = solve(g, h);
    if (!ginv_h) return false;
    Rat denom = 0;
    for (std::size_t a = 0; a < k; ++a) denom += h[a] * (*ginv_h)[a];
    if (denom == 0) return false;
    Rat mu = Rat(-1) / denom;
    RatVector x(r, Rat(0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t t = 0; t < r; ++t) x[t] += mu * (*ginv_h)[a] * Rat(gens[idx[a]][t]);
    IntVector xi = clear_denominators(x);
    if (is_zero(xi) || !dd.contains(xi)) return false;
    if (lat.norm(xi) < 0 && lat.form(xi, half) < 0) {
      found = xi;
      return true;
    }
    return false;
  });
  return found;
}

struct VolumeCertificate {
  VolumeStatus status = VolumeStatus::Undecided;
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
  /// A generator of the cone outside the closed light cone, when infinite.
  std::optional<IntVector> spacelike_witness;
  /// An interior point of negative norm.
  std::optional<IntVector> interior_point;
};

/// Finite iff the cone {x : S(x,d) <= 0 for all facets d} lies in the closure
/// of one half of the light cone: every extreme ray has S(r,r) <= 0 and the
/// rays pair non-positively (same half). With an orientation, that half must
/// be V+. Throws EmptyInterior when the cone has no interior point in V+.
inline VolumeCertificate finite_volume_certificate(const QuotientLattice& lat,
                                                   const std::vector<IntVector>& facets,
                                                   const std::optional<ConeOrientation>& orientation = std::nullopt) {
  DoubleDescription dd = chamber_cone(lat, facets);
  VolumeCertificate cert;
  cert.rays = dd.rays();
  cert.lineality = dd.lineality();
  if (!dd.full_dimensional()) throw Error(Errc::EmptyInterior, "facet half-spaces have empty interior");

  bool inside = dd.pointed();
  for (const auto& r : dd.rays()) {
    if (lat.norm(r) > 0) {
      inside = false;
      if (!cert.spacelike_witness) cert.spacelike_witness = r;
    }
  }
  if (inside) {
    for (std::size_t i = 0; i < dd.rays().size() && inside; ++i)
      for (std::size_t j = i + 1; j < dd.rays().size(); ++j)
        if (lat.form(dd.rays()[i], dd.rays()[j]) > 0) {
          inside = false;
          break;
        }
  }
  if (!dd.pointed() && !cert.spacelike_witness) cert.spacelike_witness = dd.lineality().front();

  if (inside) {
    IntVector sum(lat.rank(), Int(0));
    for (const auto& r : dd.rays()) sum = add(sum, r);
    if (orientation && lat.form(sum, orientation->reference) >= 0)
      throw Error(Errc::EmptyInterior, "cone lies in the opposite half-cone");
    cert.interior_point = sum;
    cert.status = VolumeStatus::Finite;
    return cert;
  }

  if (orientation) {
    cert.interior_point = find_timelike_point(lat, dd, orientation->reference);
  } else {
    IntVector e = default_orientation(lat).reference;
    cert.interior_point = find_timelike_point(lat, dd, e);
    if (!cert.interior_point) cert.interior_point = find_timelike_point(lat, dd, negated(e));
  }
  if (!cert.interior_point) throw Error(Errc::EmptyInterior, "cone misses the light cone interior");
  cert.status = VolumeStatus::Infinite;
  return cert;
}

inline VolumeStatus finite_volume(const QuotientLattice& lat, const std::vector<IntVector>& facets,
                                  const std::optional<ConeOrientation>& orientation = std::nullopt) {
  return finite_volume_certificate(lat, facets, orientation).status;
}

// ---------------------------------------------------------------------------
// Fundamental polyhedron search

enum class SearchStatus { Complete, Inconclusive };

struct VinbergResult {
  SearchStatus status = SearchStatus::Inconclusive;
  FundamentalPolyhedron polyhedron;
  IntVector base_point;
  std::vector<Int> candidate_norms;
  BudgetSpent spent;
  std::string stop_reason;
};

/// Positive integers dividing 2 * exponent(M^*/M), capped by max_norm and
/// restricted to `filter` when given.
inline std::vector<Int> candidate_root_norms(const QuotientLattice& lat, const std::optional<std::vector<Int>>& filter,
                                             const SearchBudget& budget) {
  std::vector<Int> out;
  for (const auto& d : positive_divisors(2 * discriminant_exponent(lat.gram))) {
    if (d > budget.max_norm) continue;
    if (filter && std::find(filter->begin(), filter->end(), d) == filter->end()) continue;
    out.push_back(d);
  }
  return out;
}

namespace detail {

/// Majorant S(x,x) - 2 S(x,v0)^2 / S(v0,v0), positive definite for S(v0,v0) < 0.
inline RatMatrix majorant(const QuotientLattice& lat, const IntVector& v0) {
  const std::size_t r = lat.rank();
  IntVector sv = lat.functional(v0);
  Rat nv(lat.norm(v0));
  RatMatrix p = to_rational(lat.gram);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) p(i, j) -= Rat(2) * Rat(sv[i] * sv[j]) / nv;
  return p;
}

inline bool accept_root(const QuotientLattice& lat, const IntVector& x) {
  return content(x) == 1 && is_crystallographic_root(lat, x);
}

/// Outward normals of the chamber containing a generic vector w of the finite
/// reflection group generated by roots orthogonal to v0.
inline std::vector<IntVector> stabilizer_chamber(const QuotientLattice& lat, const IntVector& v0,
                                                 const std::vector<IntVector>& roots) {
  if (roots.empty()) return {};
  const std::size_t r = lat.rank();
  IntMatrix row(1, r);
  IntVector sv = lat.functional(v0);
  for (std::size_t j = 0; j < r; ++j) row(0, j) = sv[j];
  IntMatrix perp = integer_kernel(row);
  IntVector w;
  for (Int base = 2;; ++base) {
    w.assign(r, Int(0));
    Int scale = 1;
    for (std::size_t i = perp.rows(); i-- > 0;) {
      for (std::size_t j = 0; j < r; ++j) w[j] -= scale * perp(i, j);
      scale *= base;
    }
    bool generic = std::all_of(roots.begin(), roots.end(), [&](const IntVector& d) { return lat.form(w, d) != 0; });
    if (generic) break;
  }
  std::vector<IntVector> negative;
  for (const auto& d : roots)
    if (lat.form(w, d) < 0) negative.push_back(d);
  DoubleDescription dd = chamber_cone(lat, negative);
  std::vector<IntVector> simple;
  for (std::size_t j = 0; j < negative.size(); ++j)
    if (dd.facet_defining(j)) simple.push_back(negative[j]);
  std::sort(simple.begin(), simple.end(), std::greater<IntVector>());
  return simple;
}

}  // namespace detail

/// Vinberg-style search for the fundamental polyhedron of the group generated
/// by reflections in crystallographic roots, started at v0 (S(v0,v0) < 0).
inline VinbergResult vinberg_search(const QuotientLattice& lat, const IntVector& v0,
                                    const std::optional<std::vector<Int>>& norm_filter,
                                    const SearchBudget& budget) {
  if (lat.rank() < 3 || !is_hyperbolic(lat.gram))
    throw Error(Errc::NotHyperbolic, "polyhedron search needs a hyperbolic form of rank >= 3");
  if (lat.norm(v0) >= 0) throw Error(Errc::BadBasePoint, "base point must have negative norm");

  VinbergResult res;
  res.base_point = v0;
  res.candidate_norms = candidate_root_norms(lat, norm_filter, budget);
  const ConeOrientation orient{v0};
  if (res.candidate_norms.empty()) {
    res.stop_reason = "no admissible root norms";
    return res;
  }
  const Int max_k = res.candidate_norms.back();
  const RatMatrix major = detail::majorant(lat, v0);
  const Rat n0 = Rat(-lat.norm(v0));

  auto is_norm = [&](const Int& k) {
    return std::binary_search(res.candidate_norms.begin(), res.candidate_norms.end(), k);
  };

  // (i) stabilizer chamber
  std::vector<IntVector> stab_roots;
  enumerate_short_vectors(major, Rat(max_k), [&](const IntVector& x) {
    if (is_zero(x) || lat.form(x, v0) != 0 || !is_norm(lat.norm(x))) return;
    if (detail::accept_root(lat, x)) stab_roots.push_back(x);
  });
  std::sort(stab_roots.begin(), stab_roots.end());
  std::vector<IntVector> accepted = detail::stabilizer_chamber(lat, v0, stab_roots);
  res.polyhedron.stabilizer_facets = accepted.size();

  auto finish = [&](VolumeStatus vs, const std::vector<IntVector>& rays) {
    res.polyhedron.facets = accepted;
    res.polyhedron.coxeter_gram = gram_of(lat, accepted);
    res.polyhedron.volume_status = vs;
    res.polyhedron.extreme_rays = rays;
  };

  // (ii) candidates by increasing m^2 / k, ties by k then m
  struct Pair {
    Rat priority;
    Int k;
    std::int64_t m;
  };
  std::vector<Pair> pairs;
  for (std::int64_t m = 1; m <= budget.max_height; ++m)
    for (const auto& k : res.candidate_norms) {
      Rat p(Int(m) * Int(m), k);
      p.canonicalize();
      pairs.push_back({p, k, m});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.priority != b.priority) return a.priority < b.priority;
    if (a.k != b.k) return a.k < b.k;
    return a.m < b.m;
  });

  std::map<std::int64_t, std::map<Int, std::vector<IntVector>>> by_height;
  auto candidates_at = [&](std::int64_t m) -> std::map<Int, std::vector<IntVector>>& {
    auto it = by_height.find(m);
    if (it != by_height.end()) return it->second;
    auto& bucket = by_height[m];
    Rat bound = Rat(max_k) + Rat(2 * m * m) / n0;
    enumerate_short_vectors(major, bound, [&](const IntVector& x) {
      if (lat.form(x, v0) != -m) return;
      Int k = lat.norm(x);
      if (is_norm(k)) bucket[k].push_back(x);
    });
    for (auto& [k, vs] : bucket) std::sort(vs.begin(), vs.end());
    return bucket;
  };

  std::int64_t accepted_beyond = 0;
  for (const auto& pair : pairs) {
    res.spent.max_height_reached = std::max(res.spent.max_height_reached, pair.m);
    auto& bucket = candidates_at(pair.m);
    auto it = bucket.find(pair.k);
    if (it == bucket.end()) continue;
    for (const auto& x : it->second) {
      ++res.spent.candidates;
      if (!detail::accept_root(lat, x)) continue;
      bool ok = std::all_of(accepted.begin(), accepted.end(),
                            [&](const IntVector& a) { return lat.form(x, a) <= 0; });
      if (!ok) continue;
      if (accepted_beyond >= budget.max_iter) {
        res.stop_reason = "iteration budget exhausted";
        finish(VolumeStatus::Undecided, {});
        return res;
      }
      accepted.push_back(x);
      ++accepted_beyond;
      ++res.spent.iterations;
      auto cert = finite_volume_certificate(lat, accepted, orient);
      if (cert.status == VolumeStatus::Finite) {
        finish(VolumeStatus::Finite, cert.rays);
        res.status = SearchStatus::Complete;
        res.stop_reason = "finite volume reached";
        return res;
      }
    }
  }
  res.stop_reason = "height budget exhausted";
  finish(VolumeStatus::Undecided, {});
  return res;
}

// ---------------------------------------------------------------------------
// Reflectivity

enum class Verdict { Reflective, NotReflective, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Reflective: return "reflective";
    case Verdict::NotReflective: return "not_reflective";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ReflectivityReport {
  Verdict verdict = Verdict::Inconclusive;
  FundamentalPolyhedron polyhedron;
  bool generates_lattice = false;
  IntVector base_point;
  std::vector<Int> candidate_norms;
  BudgetSpent spent;
  std::string stop_reason;
  std::vector<std::string> notes;
};

/// Negative-norm vector closest to the light cone inside the smallest box
/// [-R, R]^r containing one; ties broken lexicographically, sign fixed so the
/// first nonzero coordinate is positive.
inline IntVector choose_base_point(const QuotientLattice& lat) {
  const std::size_t r = lat.rank();
  for (long box = 1; box <= 6; ++box) {
    double cells = 1;
    for (std::size_t i = 0; i < r; ++i) cells *= static_cast<double>(2 * box + 1);
    if (cells > 2e6) break;
    std::optional<IntVector> best;
    Int best_norm;
    IntVector x(r, Int(-box));
    while (true) {
      auto first = std::find_if(x.begin(), x.end(), [](const Int& v) { return v != 0; });
      if (first != x.end() && *first > 0) {
        Int nrm = lat.norm(x);
        if (nrm < 0 && (!best || nrm > best_norm || (nrm == best_norm && x < *best))) {
          best = x;
          best_norm = nrm;
        }
      }
      std::size_t i = r;
      while (i > 0) {
        --i;
        if (x[i] < box) {
          ++x[i];
          break;
        }
        x[i] = -box;
        if (i == 0) {
          i = r + 1;
          break;
        }
      }
      if (i == r + 1) break;
    }
    if (best) return *best;
  }
  return default_orientation(lat).reference;
}

namespace detail {

inline ReflectivityReport reflectivity(const QuotientLattice& lat, const std::optional<std::vector<Int>>& filter,
                                       const SearchBudget& budget) {
  if (lat.rank() < 3 || !is_hyperbolic(lat.gram))
    throw Error(Errc::NotHyperbolic, "reflectivity needs a hyperbolic form of rank >= 3");
  ReflectivityReport rep;
  if (!primitivity(lat.gram).is_primitive)
    rep.notes.push_back("form is not primitive; reflection groups are unchanged by rescaling");
  IntVector v0 = choose_base_point(lat);
  VinbergResult vr = vinberg_search(lat, v0, filter, budget);
  rep.polyhedron = vr.polyhedron;
  rep.base_point = vr.base_point;
  rep.candidate_norms = vr.candidate_norms;
  rep.spent = vr.spent;
  rep.stop_reason = vr.stop_reason;
  rep.verdict = vr.status == SearchStatus::Complete ? Verdict::Reflective : Verdict::Inconclusive;
  rep.generates_lattice = spans_lattice(rep.polyhedron.facets, lat.rank());
  return rep;
}

}  // namespace detail

inline ReflectivityReport is_reflective(const QuotientLattice& lat, const SearchBudget& budget) {
  ReflectivityReport rep = detail::reflectivity(lat, std::nullopt, budget);
  if (lat.rank() > 30)
    rep.notes.push_back("rank exceeds 30: reflective hyperbolic forms are known to have rank <= 30");
  return rep;
}

inline ReflectivityReport is_two_reflective(const QuotientLattice& lat, const SearchBudget& budget) {
  ReflectivityReport rep = detail::reflectivity(lat, std::vector<Int>{Int(2)}, budget);
  if (lat.rank() > 19)
    rep.notes.push_back("rank exceeds 19: known 2-reflective hyperbolic forms have rank <= 19");
  return rep;
}

// ---------------------------------------------------------------------------
// Verification of a supplied facet set

struct FacetVerification {
  bool valid = false;
  std::string reason;  // empty when valid
  std::vector<std::size_t> where;  // 0-based facet indices involved
  bool generates_lattice = false;
  FundamentalPolyhedron polyhedron;
};

inline FacetVerification verify_fundamental_polyhedron(const QuotientLattice& lat,
                                                       const std::vector<IntVector>& facets) {
  FacetVerification out;
  out.polyhedron.facets = facets;
  auto fail = [&](std::string reason, std::vector<std::size_t> where) {
    out.valid = false;
    out.reason = std::move(reason);
    out.where = std::move(where);
    return out;
  };
  if (facets.empty()) return fail("no-facets", {});
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (facets[i].size() != lat.rank()) return fail("wrong-dimension", {i});
  out.polyhedron.coxeter_gram = gram_of(lat, facets);
  out.generates_lattice = spans_lattice(facets, lat.rank());

  for (std::size_t i = 0; i < facets.size(); ++i) {
    if (content(facets[i]) != 1) return fail("not-primitive", {i});
    if (lat.norm(facets[i]) <= 0) return fail("non-positive-norm", {i});
    if (!is_crystallographic_root(lat, facets[i])) return fail("not-crystallographic", {i});
  }
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (std::size_t j = i + 1; j < facets.size(); ++j)
      if (lat.form(facets[i], facets[j]) > 0) return fail("positive-pairing", {i, j});

  if (!is_hyperbolic(lat.gram)) return fail("not-hyperbolic", {});
  VolumeCertificate cert;
  try {
    cert = finite_volume_certificate(lat, facets);
  } catch (const Error& e) {
    if (e.code() == Errc::EmptyInterior) return fail("empty-interior", {});
    throw;
  }
  DoubleDescription dd = chamber_cone(lat, facets);
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (!dd.facet_defining(i)) return fail("redundant-facet", {i});
  out.polyhedron.extreme_rays = cert.rays;
  out.polyhedron.volume_status = cert.status;
  if (cert.status != VolumeStatus::Finite) return fail("infinite-volume", {});
  out.valid = true;
  return out;
}

}  // namespace kmarith
