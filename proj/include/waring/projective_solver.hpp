#pragma once

// Isolated zeros of m homogeneous equations in m+1 variables by a total-degree
// homotopy in a random affine chart of P^m.

#include <cstdint>
#include <vector>

#include "waring/homotopy.hpp"
#include "waring/polycore.hpp"

namespace waring {

struct ProjectiveSolveResult {
  std::vector<CVector> points;  // last nonzero coordinate normalized to 1
  int paths = 0;
  int failures = 0;
};

ProjectiveSolveResult solve_projective(const std::vector<HomogeneousPoly>& equations, std::uint64_t seed,
                                       const TrackerOptions& options = {});

/// Scale a projective point so its last coordinate with modulus above
/// tol * |p| equals 1.
CVector normalize_last_nonzero(const CVector& p, double tol = 1e-10);

}  // namespace waring
