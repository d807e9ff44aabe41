#pragma once

#include <cstdint>

namespace kmarith {

/// Caps shared by every search in the library. A search that hits any cap
/// reports itself inconclusive instead of guessing.
struct SearchBudget {
  /// Largest candidate root norm S(d,d) considered.
  std::int64_t max_norm = 64;
  /// Iteration cap: reflection steps, accepted roots, cone insertions.
  std::int64_t max_iter = 10000;
  /// Height cap: |S(d, v0)| for polyhedron search, root heights elsewhere.
  std::int64_t max_height = 20;
};

/// Work actually spent by a search, reported next to its verdict.
struct BudgetSpent {
  std::int64_t iterations = 0;
  std::int64_t candidates = 0;
  std::int64_t max_height_reached = 0;
};

}  // namespace kmarith
