#pragma once

// Every indecomposable symmetrizable GCM of size 2 or 3 with off-diagonal
// entries in [-4, 0].

#include <utility>
#include <vector>

#include "gcm.hpp"

namespace kmarith {

inline std::vector<GeneralizedCartanMatrix> small_gcms() {
  std::vector<GeneralizedCartanMatrix> out;
  for (long a = -4; a <= -1; ++a)
    for (long b = -4; b <= -1; ++b) out.push_back(validate_gcm({{2, a}, {b, 2}}));
  // (a12, a21), (a13, a31), (a23, a32): both zero or both negative
  std::vector<std::pair<long, long>> pairs{{0, 0}};
  for (long a = -4; a <= -1; ++a)
    for (long b = -4; b <= -1; ++b) pairs.emplace_back(a, b);
  for (const auto& [a12, a21] : pairs)
    for (const auto& [a13, a31] : pairs)
      for (const auto& [a23, a32] : pairs) {
        auto g = validate_gcm({{2, a12, a13}, {a21, 2, a23}, {a31, a32, 2}});
        if (!is_indecomposable(g)) continue;
        try {
          symmetrize(g);
        } catch (const Error&) {
          continue;
        }
        out.push_back(g);
      }
  return out;
}

}  // namespace kmarith
