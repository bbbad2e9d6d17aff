#pragma once

// Catalecticant and nonabelian-apolarity contraction matrices, their kernels,
// the base locus of the kernel, and decomposition recovery in the identifiable
// cases listed below:
//
//   binary (a_1..a_r), k <= a_1 + 1   LineBundle(k)       kernel 1, k points
//   (Sym^2 C^3)^4                      LineBundle(2)       kernel 2, 4 points
//   Sym^2 C^3 + Sym^3 C^3              LineBundle(2)       kernel 2, 4 points
//   (Sym^3 C^3)^2 + Sym^4 C^3          QuotientTwist(2)    kernel 1, 7 points

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/combinatorics.hpp"
#include "waring/decomposition.hpp"
#include "waring/numerics.hpp"
#include "waring/polycore.hpp"

namespace waring {

enum class BundleKind { LineBundle, QuotientTwist };

struct BundleSpec {
  BundleKind kind = BundleKind::LineBundle;
  int twist = 1;
  int expected_kernel_dim = 1;
  int expected_points = 1;

  /// O(e); expected points e^a on P^n with a = kernel dim (n = a for finitely many points).
  static BundleSpec line_bundle(int twist, int kernel_dim);
  /// Q(e) on P^2; a kernel section vanishes at c_2(Q(e)) = e^2 + e + 1 points.
  static BundleSpec quotient_twist(int twist, int kernel_dim = 1);

  int rank() const { return kind == BundleKind::LineBundle ? 1 : 2; }
  std::string name() const;
  /// "line:<e>[:<kernel>]" or "quotient:<e>[:<kernel>]".
  static BundleSpec parse(const std::string& text);
};

/// The bundle of the identifiable row matching this case, if any.
std::optional<BundleSpec> bundle_for_case(const CaseSpec& spec);

struct ContractionMatrix {
  CMatrix entries;
  std::string source_basis;
  std::string target_basis;
  CaseSpec spec;
  BundleSpec bundle;
  /// Catalecticants are stored as target x source (the matrix of the map);
  /// nonabelian matrices as source x target (the bilinear form).
  bool rows_are_source = false;

  Eigen::Index source_dim() const { return rows_are_source ? entries.rows() : entries.cols(); }
  Eigen::Index target_dim() const { return rows_are_source ? entries.cols() : entries.rows(); }
  RankInfo rank(double tol = kRankTolerance) const;
  /// Kernel of the map, one source-space coordinate vector per column.
  CMatrix kernel(double tol = kRankTolerance) const;
};

/// Matrix of g -> (d^g f_1, ..., d^g f_r) from Sym^e (dual) to the sum of
/// Sym^{a_j - e}. Parts with a_j < e contribute no rows. Requires 1 <= e <= a_r.
ContractionMatrix catalecticant(const PolyVector& f, int e);

/// Section of Q(e) on P^2 as a lift (g0, g1, g2) of degree-e forms, modulo
/// Euler lifts (x0 h, x1 h, x2 h).
struct QuotientSection {
  std::array<HomogeneousPoly, 3> lift;

  int degree() const { return lift[0].degree(); }
  static QuotientSection euler(const HomogeneousPoly& h);
  QuotientSection operator+(const QuotientSection& o) const;
  friend QuotientSection operator*(Complex s, const QuotientSection& q);
  /// The three 2x2 minors of [[x0, x1, x2], [g0, g1, g2]], i.e. x cross g.
  std::array<HomogeneousPoly, 3> minors() const;
};

/// Basis of H^0(Q(e)) complementary to the Euler lifts: (m,0,0), (0,m,0) for
/// every degree-e monomial and (0,0,m) for monomials free of x2.
std::vector<QuotientSection> quotient_basis(int e);
/// 3 binom(e+2, 2) - binom(e+1, 2).
std::size_t quotient_section_dim(int e);

/// det [[x0, x1, x2], [g0, g1, g2], [h0, h1, h2]], a form of degree 1 + e + e'.
HomogeneousPoly quotient_pairing(const QuotientSection& g, const QuotientSection& h);

/// For QuotientTwist(e): rows indexed by quotient_basis(e), columns by
/// quotient_basis(a_j - e - 1) for each j, entry sum_j <f_j, det[x; G; H_j]>.
/// For LineBundle(e): catalecticant(f, e).
ContractionMatrix nonabelian_matrix(const PolyVector& f, const BundleSpec& bundle);

QuotientSection section_from_coordinates(const CVector& coords, int e);

struct BaseLocusOptions {
  std::uint64_t seed = 1;
  double residual_tolerance = 1e-8;
};

/// Common zeros of the kernel forms (line bundles). Points are returned with
/// the last nonzero coordinate normalized to 1.
std::vector<CVector> base_locus(const std::vector<HomogeneousPoly>& kernel, const BundleSpec& bundle,
                                const BaseLocusOptions& options = {});
/// Points p with G(p) proportional to p (quotient twists).
std::vector<CVector> base_locus(const std::vector<QuotientSection>& kernel, const BundleSpec& bundle,
                                const BaseLocusOptions& options = {});

/// Roots of a binary form as projective points [c0 : c1].
std::vector<CVector> binary_roots(const HomogeneousPoly& g);

inline constexpr double kLambdaConditionLimit = 1e10;

struct DecomposeOptions {
  std::uint64_t seed = 1;
  double tolerance = kRankTolerance;
};

/// Contraction matrix -> kernel -> base locus -> one linear solve per part.
WaringDecomposition decompose(const PolyVector& f, const BundleSpec& bundle, const DecomposeOptions& options = {});

/// Solve f_j = sum_i lambda_i^j l_i^{a_j} for the lambdas with the forms fixed.
CMatrix solve_lambdas(const PolyVector& f, const std::vector<LinearForm>& forms);

/// f = sum_i (lambda_i^1 l_i^{a_1}, ..., lambda_i^r l_i^{a_r}) with Gaussian l and lambda.
struct ForwardSample {
  PolyVector f;
  WaringDecomposition truth;
};
ForwardSample forward_construct(int n, const std::vector<int>& degrees, int k, std::uint64_t seed);

}  // namespace waring
