#pragma once

// Arithmetic-type classification of symmetrizable indecomposable GCMs:
// finite, affine, rank-two hyperbolic, arithmetic hyperbolic, or not
// arithmetic.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "budget.hpp"
#include "gcm.hpp"
#include "lattice.hpp"
#include "reflect.hpp"

namespace kmarith {

enum class TypeKind { Finite, Affine, RankTwoHyperbolic, ArithmeticHyperbolic, NotArithmetic, Inconclusive };

enum class NotArithmeticReason { WrongSignature, ReflectivityRefuted };

inline const char* type_kind_name(TypeKind k) {
  switch (k) {
    case TypeKind::Finite: return "finite";
    case TypeKind::Affine: return "affine";
    case TypeKind::RankTwoHyperbolic: return "rank-two-hyperbolic";
    case TypeKind::ArithmeticHyperbolic: return "arithmetic-hyperbolic";
    case TypeKind::NotArithmetic: return "not-arithmetic";
    case TypeKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* reason_name(NotArithmeticReason r) {
  return r == NotArithmeticReason::WrongSignature ? "wrong-signature" : "reflectivity-refuted";
}

struct TypeClass {
  TypeKind kind = TypeKind::Inconclusive;
  SignatureTriple signature;
  std::optional<NotArithmeticReason> reason;
  /// Chamber of the projected simple roots, for hyperbolic rank >= 3.
  std::optional<FundamentalPolyhedron> certificate;
  /// A cone generator outside the closed light cone, when the chamber has infinite volume.
  std::optional<IntVector> spacelike_ray;
  std::string detail;

  bool arithmetic() const noexcept {
    return kind == TypeKind::Finite || kind == TypeKind::Affine || kind == TypeKind::RankTwoHyperbolic ||
           kind == TypeKind::ArithmeticHyperbolic;
  }
};

/// Projected simple roots with repeats removed, in index order.
inline std::vector<IntVector> simple_root_chamber(const QuotientLattice& lat) {
  std::vector<IntVector> facets;
  for (std::size_t i = 0; i < lat.ambient_rank(); ++i) {
    IntVector p = lat.project_simple_root(i);
    if (std::find(facets.begin(), facets.end(), p) == facets.end()) facets.push_back(std::move(p));
  }
  return facets;
}

inline TypeClass classify(const GeneralizedCartanMatrix& a, const SearchBudget& budget) {
  Symmetrization sym = symmetrize(a);  // rejects decomposable input
  TypeClass out;
  out.signature = signature(sym.b);
  const auto& sig = out.signature;

  if (sig.minus == 0) {
    if (sig.zero == 0) {
      out.kind = TypeKind::Finite;
    } else if (sig.zero == 1) {
      out.kind = TypeKind::Affine;
    } else {
      out.kind = TypeKind::NotArithmetic;
      out.reason = NotArithmeticReason::WrongSignature;
      out.detail = "semidefinite form with kernel of dimension > 1";
    }
    return out;
  }
  if (sig.minus >= 2 || sig.plus == 0) {
    out.kind = TypeKind::NotArithmetic;
    out.reason = NotArithmeticReason::WrongSignature;
    out.detail = "negative index must be 1";
    return out;
  }
  if (sig.plus == 1) {
    out.kind = TypeKind::RankTwoHyperbolic;
    return out;
  }

  QuotientLattice lat = kernel_quotient(sym.b);
  std::vector<IntVector> facets = simple_root_chamber(lat);
  if (static_cast<std::int64_t>(facets.size()) > budget.max_iter) {
    out.kind = TypeKind::Inconclusive;
    out.detail = "facet count exceeds the iteration budget";
    return out;
  }
  VolumeCertificate cert = finite_volume_certificate(lat, facets);
  FundamentalPolyhedron poly;
  poly.facets = facets;
  poly.coxeter_gram = gram_of(lat, facets);
  poly.volume_status = cert.status;
  poly.extreme_rays = cert.rays;
  out.certificate = std::move(poly);
  if (cert.status == VolumeStatus::Finite) {
    out.kind = TypeKind::ArithmeticHyperbolic;
  } else {
    out.kind = TypeKind::NotArithmetic;
    out.reason = NotArithmeticReason::ReflectivityRefuted;
    out.spacelike_ray = cert.spacelike_witness;
    out.detail = "chamber of the projected simple roots has infinite volume";
  }
  return out;
}

}  // namespace kmarith
