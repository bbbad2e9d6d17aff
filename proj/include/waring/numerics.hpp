#pragma once

#include <cstdint>
#include <limits>
#include <random>

#include "waring/polycore.hpp"

namespace waring {

/// Relative singular-value threshold shared by every rank decision.
inline constexpr double kRankTolerance = 1e-10;
/// Gaps below this are reported as ambiguous.
inline constexpr double kAmbiguousGap = 1e2;

struct RankInfo {
  int rank = 0;
  /// sigma_rank / sigma_{rank+1}; when no singular value falls below the
  /// threshold this is sigma_min / (tol * sigma_max), the margin above it.
  double gap = std::numeric_limits<double>::infinity();
  Eigen::VectorXd singular_values;
  bool ambiguous() const { return gap < kAmbiguousGap; }
};

/// Scale each nonzero row to unit Euclidean norm.
CMatrix equilibrate_rows(const CMatrix& m);

/// Numerical rank after row equilibration: singular values above tol * sigma_max.
RankInfo numerical_rank(const CMatrix& m, double tol = kRankTolerance);

/// Orthonormal basis (columns) of the right null space, using the numerical rank.
CMatrix null_space(const CMatrix& m, double tol = kRankTolerance);

double condition_number(const CMatrix& m);

/// SplitMix64 step, used to derive independent per-path / per-loop seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex gaussian();
  /// Real and imaginary parts uniform in [-1, 1].
  Complex uniform_box();
  /// Uniform on the unit circle.
  Complex unit();
  CVector gaussian_vector(Eigen::Index n);
  CVector uniform_box_vector(Eigen::Index n);
  /// Haar-random unitary matrix.
  CMatrix unitary(Eigen::Index n);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace waring
