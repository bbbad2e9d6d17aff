#pragma once

#include <vector>

#include "waring/polycore.hpp"

namespace waring {

/// Per-coordinate tolerance used to compare canonical decompositions.
inline constexpr double kSolutionTolerance = 1e-7;

/// f_j = sum_i lambdas(i, j) * forms[i]^{a_j}.
struct WaringDecomposition {
  std::vector<LinearForm> forms;
  CMatrix lambdas;  // k x r
  double residual = 0.0;

  int k() const { return static_cast<int>(forms.size()); }
  int r() const { return static_cast<int>(lambdas.cols()); }
};

/// Rescale every form so its largest-modulus coordinate equals 1 (absorbing
/// the factor into lambdas as c^{a_j}), then sort summands lexicographically by
/// (Re, Im) of the form coordinates, with ties within `tol` deferred to the
/// next key.
WaringDecomposition canonicalize(const WaringDecomposition& dec, const std::vector<int>& degrees,
                                 double tol = kSolutionTolerance);

/// Equality of canonical forms: every form coordinate within `tol`, every
/// lambda within tol * max(1, |lambda|).
bool same_canonical(const WaringDecomposition& a, const WaringDecomposition& b, double tol = kSolutionTolerance);

/// Canonicalizes both sides, then compares.
bool equivalent(const WaringDecomposition& a, const WaringDecomposition& b, const std::vector<int>& degrees,
                double tol = kSolutionTolerance);

PolyVector reconstruct(const WaringDecomposition& dec, int num_vars, const std::vector<int>& degrees);

/// max_j ||f_j - sum_i lambda_i^j l_i^{a_j}|| / ||f_j||.
double reconstruction_residual(const WaringDecomposition& dec, const PolyVector& f);

/// Largest per-coordinate distance between two canonical decompositions with
/// the same k (forms and relative lambdas); infinity when shapes differ.
double canonical_distance(const WaringDecomposition& a, const WaringDecomposition& b);

}  // namespace waring
