#pragma once

// Double-description method over the integers: a polyhedral cone given by
// inequalities a_j . x <= 0 is converted incrementally into its generators
// (a lineality basis plus extreme rays). Rays are kept primitive.

#include <cstddef>
#include <span>
#include <vector>

#include "arith.hpp"

namespace kmarith {

class DoubleDescription {
 public:
  explicit DoubleDescription(std::size_t dim) : dim_(dim) {
    for (std::size_t i = 0; i < dim; ++i) lineality_.push_back(unit_vector(dim, i));
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<IntVector>& constraints() const noexcept { return constraints_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<IntVector>& lineality() const noexcept { return lineality_; }
  bool pointed() const noexcept { return lineality_.empty(); }

  /// Intersects the cone with {x : normal . x <= 0}.
  void add(const IntVector& normal) {
    const std::size_t idx = constraints_.size();
    constraints_.push_back(normal);
    for (auto& t : tight_) t.push_back(0);

    // Lineality absorbs the constraint when some line is not orthogonal to it.
    std::size_t pick = lineality_.size();
    for (std::size_t i = 0; i < lineality_.size(); ++i)
      if (dot(normal, lineality_[i]) != 0) {
        pick = i;
        break;
      }
    if (pick < lineality_.size()) {
      IntVector l0 = lineality_[pick];
      Int h0 = dot(normal, l0);
      if (h0 > 0) {
        l0 = negated(std::move(l0));
        h0 = -h0;
      }
      std::vector<IntVector> new_lines;
      for (std::size_t i = 0; i < lineality_.size(); ++i) {
        if (i == pick) continue;
        Int h = dot(normal, lineality_[i]);
        IntVector l = lineality_[i];
        if (h != 0)
          for (std::size_t k = 0; k < dim_; ++k) l[k] = h0 * l[k] - h * l0[k];
        new_lines.push_back(primitive_part(std::move(l)));
      }
      for (std::size_t r = 0; r < rays_.size(); ++r) {
        Int h = dot(normal, rays_[r]);
        if (h != 0) {
          IntVector v = rays_[r];
          Int a = -h0;
          for (std::size_t k = 0; k < dim_; ++k) v[k] = a * v[k] + h * l0[k];
          rays_[r] = primitive_part(std::move(v));
        }
        tight_[r][idx] = 1;
      }
      std::vector<char> t(constraints_.size(), 1);
      t[idx] = 0;
      rays_.push_back(primitive_part(std::move(l0)));
      tight_.push_back(std::move(t));
      lineality_ = std::move(new_lines);
      return;
    }

    std::vector<IntVector> next_rays;
    std::vector<std::vector<char>> next_tight;
    std::vector<std::size_t> pos, neg;
    std::vector<Int> value(rays_.size());
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      value[r] = dot(normal, rays_[r]);
      if (value[r] > 0) {
        pos.push_back(r);
      } else {
        if (value[r] == 0) tight_[r][idx] = 1;
        if (value[r] < 0) neg.push_back(r);
        next_rays.push_back(rays_[r]);
        next_tight.push_back(tight_[r]);
      }
    }
    const std::size_t cone_dim = dim_ - lineality_.size();
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        if (!adjacent(p, q, cone_dim)) continue;
        IntVector v(dim_);
        Int a = value[p], b = -value[q];
        for (std::size_t k = 0; k < dim_; ++k) v[k] = a * rays_[q][k] + b * rays_[p][k];
        std::vector<char> t(constraints_.size(), 0);
        for (std::size_t j = 0; j < idx; ++j) t[j] = tight_[p][j] && tight_[q][j];
        t[idx] = 1;
        next_rays.push_back(primitive_part(std::move(v)));
        next_tight.push_back(std::move(t));
      }
    }
    rays_ = std::move(next_rays);
    tight_ = std::move(next_tight);
  }

  /// Some point satisfies every constraint strictly.
  bool full_dimensional() const {
    for (std::size_t j = 0; j < constraints_.size(); ++j) {
      bool strict = false;
      for (const auto& r : rays_)
        if (dot(constraints_[j], r) < 0) {
          strict = true;
          break;
        }
      if (!strict) return false;
    }
    return true;
  }

  /// Constraint j cuts out a facet (codimension one face) and is not a
  /// positive multiple of an earlier facet-defining constraint.
  bool facet_defining(std::size_t j) const {
    std::vector<IntVector> on_face = lineality_;
    for (const auto& r : rays_)
      if (dot(constraints_[j], r) == 0) on_face.push_back(r);
    if (rank(on_face, dim_) + 1 != dim_) return false;
    for (std::size_t i = 0; i < j; ++i)
      if (primitive_part(constraints_[i]) == primitive_part(constraints_[j])) return false;
    // the face must be proper: some generator lies strictly inside
    for (const auto& r : rays_)
      if (dot(constraints_[j], r) < 0) return true;
    return false;
  }

  bool contains(std::span<const Int> x) const {
    for (const auto& c : constraints_)
      if (dot(c, x) > 0) return false;
    return true;
  }

 private:
  bool adjacent(std::size_t p, std::size_t q, std::size_t cone_dim) const {
    if (cone_dim < 2) return false;
    std::vector<IntVector> common;
    for (std::size_t j = 0; j + 1 < constraints_.size(); ++j)
      if (tight_[p][j] && tight_[q][j]) common.push_back(constraints_[j]);
    if (common.size() + 2 < cone_dim) return false;
    return rank(common, dim_) + 2 == cone_dim;
  }

  std::size_t dim_;
  std::vector<IntVector> constraints_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> rays_;
  std::vector<std::vector<char>> tight_;
};

/// Cone {x : a_j . x <= 0 for all j}.
inline DoubleDescription cone_from_inequalities(const std::vector<IntVector>& normals, std::size_t dim) {
  DoubleDescription dd(dim);
  for (const auto& a : normals) dd.add(a);
  return dd;
}

}  // namespace kmarith
