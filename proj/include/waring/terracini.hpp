#pragma once

// Probabilistic secant-dimension check for X = P(O(a_1) + ... + O(a_r)) over P^n:
// stack the affine tangent spaces at k random points and take the numerical rank.

#include <cstdint>

#include "waring/combinatorics.hpp"
#include "waring/numerics.hpp"
#include "waring/polycore.hpp"

namespace waring {

struct TangentFrame {
  LinearForm form;
  CVector lambdas;
  /// (r + n + 1) x N: rows are the partial derivatives of the parametrization
  /// (lambda^1 l^{a_1}, ..., lambda^r l^{a_r}) at the point.
  CMatrix generators;
};

/// Rows 0..r-1: (0, ..., l^{a_j}, ..., 0). Rows r..r+n: sum_j lambda^j a_j l^{a_j - 1} x_h.
/// Columns use the Bombieri-scaled monomial basis (coefficient / sqrt(multinomial)),
/// a fixed invertible column scaling that leaves every rank unchanged.
TangentFrame tangent_frame(const LinearForm& form, const CVector& lambdas, const CaseSpec& spec);

struct DefectResult {
  int dim = 0;       // numerical rank of the stacked tangent spaces
  int expected = 0;  // min(k (r + n), N)
  int defect = 0;    // expected - dim
  double gap = 0.0;
  bool conclusive = false;
  int attempts = 0;
  std::uint64_t seed = 0;  // seed of the attempt that produced the result
};

struct DefectOptions {
  int max_attempts = 4;  // first try plus 3 retries on ambiguous rank
  int workers = 1;
  double tolerance = kRankTolerance;
};

/// Stack of the tangent frames at k points drawn with entries uniform in the
/// complex box [-1,1] + i[-1,1].
CMatrix tangent_span_matrix(const CaseSpec& spec, int k, std::uint64_t seed, int workers = 1);

DefectResult secant_defect(const CaseSpec& spec, int k, std::uint64_t seed, const DefectOptions& options = {});

}  // namespace waring
