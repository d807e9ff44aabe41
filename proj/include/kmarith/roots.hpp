#pragma once

// Height-bounded root combinatorics over the root lattice Q = Z^n (coordinates
// over the simple roots), chamber reduction in the quotient lattice, and the
// direct arithmetic-type oracle: does some multiple of beta agree with an
// imaginary root modulo the kernel of the form?

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "arith.hpp"
#include "budget.hpp"
#include "cone.hpp"
#include "error.hpp"
#include "gcm.hpp"
#include "lattice.hpp"

namespace kmarith {

/// Coefficients over the simple roots.
struct RootElement {
  IntVector coords;

  Int height() const {
    Int h = 0;
    for (const auto& c : coords) h += c;
    return h;
  }
  friend auto operator<=>(const RootElement&, const RootElement&) = default;
};

struct RootSlice {
  std::int64_t height_bound = 0;
  std::vector<RootElement> real_roots;
  std::vector<RootElement> imaginary_roots;
};

inline bool is_positive_element(std::span<const Int> x) {
  bool nonzero = false;
  for (const auto& c : x) {
    if (c < 0) return false;
    if (c != 0) nonzero = true;
  }
  return nonzero;
}

inline bool support_connected(const RootElement& alpha, const GeneralizedCartanMatrix& a) {
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < alpha.coords.size(); ++i)
    if (alpha.coords[i] != 0) supp.push_back(i);
  if (supp.empty()) return false;
  std::vector<bool> seen(a.size(), false);
  std::deque<std::size_t> q{supp.front()};
  seen[supp.front()] = true;
  std::size_t reached = 0;
  while (!q.empty()) {
    std::size_t i = q.front();
    q.pop_front();
    ++reached;
    for (std::size_t j : supp)
      if (!seen[j] && a(i, j) != 0) {
        seen[j] = true;
        q.push_back(j);
      }
  }
  return reached == supp.size();
}

/// A, its symmetrization and the canonical form on Q.
class RootSystem {
 public:
  explicit RootSystem(GeneralizedCartanMatrix a) : a_(std::move(a)), sym_(symmetrize(a_)) {}

  const GeneralizedCartanMatrix& gcm() const noexcept { return a_; }
  const IntMatrix& form_matrix() const noexcept { return sym_.b; }
  const Symmetrization& symmetrization() const noexcept { return sym_; }
  std::size_t rank() const noexcept { return a_.size(); }

  Int pairing(std::span<const Int> x, std::span<const Int> y) const { return bilinear(sym_.b, x, y); }
  /// (x | alpha_i)
  Int pairing_simple(std::span<const Int> x, std::size_t i) const {
    Int s = 0;
    for (std::size_t j = 0; j < rank(); ++j) s += sym_.b(i, j) * x[j];
    return s;
  }
  /// <alpha_i^vee, x> = sum_j a_ij x_j
  Int coroot_pairing(std::size_t i, std::span<const Int> x) const {
    Int s = 0;
    for (std::size_t j = 0; j < rank(); ++j) s += a_(i, j) * x[j];
    return s;
  }
  IntVector reflect(std::size_t i, std::span<const Int> x) const {
    IntVector y(x.begin(), x.end());
    y[i] -= coroot_pairing(i, x);
    return y;
  }

  bool support_connected(std::span<const Int> x) const;

 private:
  GeneralizedCartanMatrix a_;
  Symmetrization sym_;
};

inline bool RootSystem::support_connected(std::span<const Int> x) const {
  return kmarith::support_connected(RootElement{IntVector(x.begin(), x.end())}, a_);
}

/// r_i(x) = x - <alpha_i^vee, x> alpha_i
inline RootElement fundamental_reflection(const GeneralizedCartanMatrix& a, std::size_t i, const RootElement& x) {
  if (i >= a.size() || x.coords.size() != a.size()) throw std::out_of_range("fundamental_reflection: bad index");
  RootElement y = x;
  Int s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x.coords[j];
  y.coords[i] -= s;
  return y;
}

namespace detail {

/// Closure of `seeds` under fundamental reflections inside the positive
/// elements of height <= bound. Sorted output.
inline std::vector<IntVector> positive_closure(const RootSystem& rs, std::vector<IntVector> seeds, const Int& bound) {
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  std::sort(seeds.begin(), seeds.end());
  for (auto& s : seeds)
    if (seen.insert(s).second) queue.push_back(s);
  while (!queue.empty()) {
    IntVector x = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      IntVector y = rs.reflect(i, x);
      if (!is_positive_element(y)) continue;
      Int h = 0;
      for (const auto& c : y) h += c;
      if (h > bound) continue;
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return {seen.begin(), seen.end()};
}

/// Calls fn on every element of Q_+ - {0} with height <= h, in lexicographic order.
inline void for_each_positive(std::size_t n, std::int64_t h, const std::function<void(const IntVector&)>& fn) {
  IntVector x(n, Int(0));
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      if (left < h) fn(x);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      x[i] = v;
      rec(i + 1, left - v);
    }
    x[i] = 0;
  };
  rec(0, h);
}

inline std::vector<RootElement> wrap(const std::vector<IntVector>& xs, const Int& bound) {
  std::vector<RootElement> out;
  for (const auto& x : xs) {
    RootElement e{x};
    if (e.height() <= bound) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

/// Positive real roots of height <= H. Every positive real root reduces to a
/// simple root through strictly decreasing heights, so the height-capped
/// closure is complete.
inline std::vector<RootElement> real_roots(const RootSystem& rs, std::int64_t h) {
  std::vector<IntVector> simple;
  for (std::size_t i = 0; i < rs.rank(); ++i) simple.push_back(unit_vector(rs.rank(), i));
  if (h < 1) return {};
  return detail::wrap(detail::positive_closure(rs, simple, Int(h)), Int(h));
}

inline std::vector<RootElement> real_roots(const GeneralizedCartanMatrix& a, std::int64_t h) {
  return real_roots(RootSystem(a), h);
}

/// Elements of Q_+ - {0} with height <= H, connected support and
/// (alpha | alpha_i) <= 0 for every i.
inline std::vector<RootElement> k_set(const RootSystem& rs, std::int64_t h) {
  std::vector<RootElement> out;
  if (h < 1) return out;
  detail::for_each_positive(rs.rank(), h, [&](const IntVector& x) {
    for (std::size_t i = 0; i < rs.rank(); ++i)
      if (rs.pairing_simple(x, i) > 0) return;
    if (rs.support_connected(x)) out.push_back({x});
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<RootElement> k_set(const GeneralizedCartanMatrix& a, std::int64_t h) {
  return k_set(RootSystem(a), h);
}

/// Positive imaginary roots of height <= H: the orbit of K, generated from K
/// up to height 2H.
inline std::vector<RootElement> imaginary_roots(const RootSystem& rs, std::int64_t h) {
  if (h < 1) return {};
  std::vector<IntVector> seeds;
  for (auto& k : k_set(rs, 2 * h)) seeds.push_back(std::move(k.coords));
  return detail::wrap(detail::positive_closure(rs, std::move(seeds), Int(2 * h)), Int(h));
}

inline std::vector<RootElement> imaginary_roots(const GeneralizedCartanMatrix& a, std::int64_t h) {
  return imaginary_roots(RootSystem(a), h);
}

inline RootSlice root_slice(const RootSystem& rs, std::int64_t h) {
  return {h, real_roots(rs, h), imaginary_roots(rs, h)};
}

/// alpha with every coefficient positive and (alpha | alpha_i) < 0 for all i.
/// Small coefficients are tried first, then an exact cone computation decides.
inline RootElement strictly_negative_vector(const RootSystem& rs) {
  const std::size_t n = rs.rank();
  auto good = [&](const IntVector& x) {
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] <= 0 || rs.pairing_simple(x, i) >= 0) return false;
    return true;
  };
  // lowest height first, then lexicographic, inside a small box
  const std::int64_t small = n <= 4 ? 4 : (n <= 6 ? 2 : 1);
  std::optional<IntVector> best;
  Int best_h;
  IntVector x(n, Int(1));
  while (true) {
    if (good(x)) {
      Int hx = RootElement{x}.height();
      if (!best || hx < best_h || (hx == best_h && x < *best)) {
        best = x;
        best_h = hx;
      }
    }
    std::size_t i = 0;
    while (i < n && x[i] == small) x[i++] = 1;
    if (i == n) break;
    ++x[i];
  }
  if (best) return {*best};

  // variables (k, t): t >= 0, k_i - t >= 0, -(B k)_i - t >= 0; want t > 0
  DoubleDescription dd(n + 1);
  IntVector c(n + 1, Int(0));
  c[n] = -1;
  dd.add(c);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector a(n + 1, Int(0));
    a[i] = -1;
    a[n] = 1;
    dd.add(a);
  }
  for (std::size_t i = 0; i < n; ++i) {
    IntVector a(n + 1, Int(0));
    for (std::size_t j = 0; j < n; ++j) a[j] = rs.form_matrix()(i, j);
    a[n] = 1;
    dd.add(a);
  }
  std::vector<IntVector> found;
  for (const auto& r : dd.rays())
    if (r[n] > 0) found.push_back(primitive_part(IntVector(r.begin(), r.begin() + n)));
  for (const auto& l : dd.lineality())
    if (l[n] != 0) found.push_back(primitive_part(IntVector(l.begin(), l.begin() + n)));
  std::vector<IntVector> ok;
  for (auto& f : found)
    if (good(f)) ok.push_back(f);
  if (ok.empty()) {
    // the open condition may need an interior combination of the rays
    IntVector sum(n, Int(0));
    for (const auto& f : found) sum = add(sum, f);
    if (!found.empty() && good(sum)) ok.push_back(primitive_part(sum));
  }
  if (ok.empty()) throw Error(Errc::NotFound, "no vector with positive coefficients pairs negatively with every simple root");
  std::sort(ok.begin(), ok.end(), [](const IntVector& p, const IntVector& q) {
    Int hp = RootElement{p}.height(), hq = RootElement{q}.height();
    return hp != hq ? hp < hq : p < q;
  });
  return {ok.front()};
}

inline RootElement strictly_negative_vector(const GeneralizedCartanMatrix& a) {
  return strictly_negative_vector(RootSystem(a));
}

// ---------------------------------------------------------------------------
// Chamber reduction in M

struct ChamberReduction {
  IntVector reduced;
  std::vector<std::size_t> word;  // generator indices, in application order
};

/// Reflects x in the first generator pairing positively with it until none
/// does or the iteration budget runs out.
inline ChamberReduction chamber_reduce(const QuotientLattice& lat, const std::vector<IntVector>& generators,
                                       std::span<const Int> x, const SearchBudget& budget) {
  ChamberReduction out{IntVector(x.begin(), x.end()), {}};
  std::vector<IntVector> functionals;
  std::vector<Int> norms;
  for (const auto& g : generators) {
    functionals.push_back(lat.functional(g));
    norms.push_back(lat.norm(g));
  }
  for (std::int64_t step = 0;; ++step) {
    std::size_t hit = generators.size();
    Int value;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      value = dot(functionals[i], out.reduced);
      if (value > 0) {
        hit = i;
        break;
      }
    }
    if (hit == generators.size()) return out;
    if (step >= budget.max_iter) throw Error(Errc::BudgetExhausted, "chamber reduction exceeded the iteration budget");
    Int num = 2 * value;
    if (!divides(norms[hit], num)) throw Error(Errc::NonIntegralImage, "reflection does not preserve the lattice");
    Int coef = num / norms[hit];
    for (std::size_t k = 0; k < out.reduced.size(); ++k) out.reduced[k] -= coef * generators[hit][k];
    out.word.push_back(hit);
  }
}

// ---------------------------------------------------------------------------
// Arithmetic-type oracle

struct ArithmeticWitness {
  Int n;                  // n * beta = alpha modulo the kernel
  RootElement alpha;      // imaginary root, possibly negative
  RootElement k_element;  // element of K in the orbit of +-alpha
  std::vector<std::size_t> word;  // simple reflections applied to the projection of beta
  bool negated = false;           // alpha is a negative root
};

/// Reusable context for witnesses over one GCM.
class ArithmeticOracle {
 public:
  explicit ArithmeticOracle(const GeneralizedCartanMatrix& a)
      : rs_(a), lat_(kernel_quotient(rs_.form_matrix())), sig_(signature(rs_.form_matrix())) {
    for (std::size_t i = 0; i < rs_.rank(); ++i) simple_.push_back(lat_.project_simple_root(i));
    if (sig_.minus >= 1) {
      try {
        reference_ = lat_.project(strictly_negative_vector(rs_).coords);
      } catch (const Error&) {
      }
    }
  }

  const RootSystem& root_system() const noexcept { return rs_; }
  const QuotientLattice& lattice() const noexcept { return lat_; }
  const std::vector<IntVector>& projected_simple_roots() const noexcept { return simple_; }

  ArithmeticWitness witness(const RootElement& beta, const SearchBudget& budget) const {
    if (beta.coords.size() != rs_.rank()) throw Error(Errc::DegenerateInput, "beta has the wrong length");
    if (rs_.pairing(beta.coords, beta.coords) >= 0)
      throw Error(Errc::DegenerateInput, "beta must have negative norm");
    if (!reference_) throw Error(Errc::NotFound, "no negative-norm reference in the projected cone");
    IntVector b = lat_.project(beta.coords);
    const bool flip_first = lat_.form(b, *reference_) > 0;
    std::optional<Error> last;
    for (int attempt = 0; attempt < (sig_.minus >= 2 ? 2 : 1); ++attempt) {
      const bool flip = attempt == 0 ? flip_first : !flip_first;
      IntVector x = flip ? negated(b) : b;
      try {
        auto w = reduce_and_match(x, budget);
        if (flip) w.alpha.coords = negated(std::move(w.alpha.coords));
        w.negated = flip;
        return w;
      } catch (const Error& e) {
        if (e.code() != Errc::NotFound && e.code() != Errc::BudgetExhausted) throw;
        last = e;
      }
    }
    throw Error(Errc::NotFound, std::string("no imaginary root matches beta: ") + last->what());
  }

 private:
  ArithmeticWitness reduce_and_match(const IntVector& x0, const SearchBudget& budget) const {
    ChamberReduction red = chamber_reduce(lat_, simple_, x0, budget);
    const IntVector& x = red.reduced;
    const std::size_t n = rs_.rank(), r = lat_.rank();

    // x as a non-negative combination of linearly independent projected simple roots
    std::optional<IntVector> kappa;
    std::vector<std::size_t> idx;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
      if (!idx.empty()) {
        std::vector<IntVector> cols;
        for (auto i : idx) cols.push_back(simple_[i]);
        if (auto c = express_in_span(cols, x)) {
          if (std::all_of(c->begin(), c->end(), [](const Rat& v) { return v >= 0; })) {
            RatVector full(n, Rat(0));
            for (std::size_t k = 0; k < idx.size(); ++k) full[idx[k]] = (*c)[k];
            kappa = clear_denominators(full);
            return true;
          }
        }
      }
      if (idx.size() == r) return false;
      for (std::size_t i = start; i < n; ++i) {
        idx.push_back(i);
        if (rec(i + 1)) return true;
        idx.pop_back();
      }
      return false;
    };
    rec(0);
    if (!kappa || is_zero(*kappa))
      throw Error(Errc::NotFound, "reduced vector lies outside the cone of projected simple roots");

    // keep one connected component of the support; for t_- = 1 they are proportional
    IntVector part(n, Int(0));
    {
      std::size_t s = 0;
      while ((*kappa)[s] == 0) ++s;
      std::vector<bool> seen(n, false);
      std::deque<std::size_t> q{s};
      seen[s] = true;
      while (!q.empty()) {
        std::size_t i = q.front();
        q.pop_front();
        part[i] = (*kappa)[i];
        for (std::size_t j = 0; j < n; ++j)
          if (!seen[j] && (*kappa)[j] != 0 && rs_.gcm()(i, j) != 0) {
            seen[j] = true;
            q.push_back(j);
          }
      }
    }
    IntVector px = lat_.project(part);
    // px = t * x with t > 0 rational
    std::size_t nz = 0;
    while (nz < r && x[nz] == 0) ++nz;
    Rat t(px[nz], x[nz]);
    t.canonicalize();
    if (t <= 0) throw Error(Errc::NotFound, "support component is not proportional to the reduced vector");
    for (std::size_t i = 0; i < r; ++i)
      if (Rat(px[i]) != t * Rat(x[i]))
        throw Error(Errc::NotFound, "support component is not proportional to the reduced vector");
    // p x = q pi(part) with t = p / q
    Int p = t.get_num(), q = t.get_den();
    IntVector k_elem = scaled(part, q);
    Int g = gcd(p, content(k_elem));
    p /= g;
    for (auto& v : k_elem) v /= g;

    for (std::size_t i = 0; i < n; ++i)
      if (rs_.pairing_simple(k_elem, i) > 0) throw Error(Errc::NotFound, "component leaves the set K");

    IntVector alpha = k_elem;
    for (std::size_t s = red.word.size(); s-- > 0;) alpha = rs_.reflect(red.word[s], alpha);
    ArithmeticWitness w;
    w.n = p;
    w.alpha = {std::move(alpha)};
    w.k_element = {std::move(k_elem)};
    w.word = std::move(red.word);
    return w;
  }

  RootSystem rs_;
  QuotientLattice lat_;
  SignatureTriple sig_;
  std::vector<IntVector> simple_;
  std::optional<IntVector> reference_;
};

inline ArithmeticWitness arithmetic_witness(const GeneralizedCartanMatrix& a, const RootElement& beta,
                                            const SearchBudget& budget) {
  return ArithmeticOracle(a).witness(beta, budget);
}

}  // namespace kmarith
