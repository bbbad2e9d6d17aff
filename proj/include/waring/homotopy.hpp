#pragma once

// Parameter-homotopy continuation for the square decomposition system
//
//   F(u; p) = [ sum_i lambda_i^j (x0 + sum_h l_h^i x_h)^{a_j} - f_j ]_{j, monomials}
//
// with unknowns ordered in blocks (l_1^i, ..., l_n^i, lambda_i^1, ..., lambda_i^r),
// plus monodromy loops and a stabilization-based solution count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/combinatorics.hpp"
#include "waring/decomposition.hpp"
#include "waring/numerics.hpp"
#include "waring/polycore.hpp"

namespace waring {

struct TrackerOptions {
  double initial_step = 0.05;
  double min_step = 1e-7;
  double max_step = 0.1;
  int max_newton_iterations = 3;
  double newton_tolerance = 1e-11;  // on the update norm, relative to max(1, |u|)
  double step_shrink = 0.5;
  double step_grow = 1.5;
  int successes_before_grow = 4;
  int max_steps = 10000;
  double sharpen_tolerance = 1e-13;
  int max_sharpen_iterations = 10;
  double divergence_norm = 1e8;

  /// Throws Error(Validation) when a bound is non-positive or the step bounds are out of order.
  void validate() const;
};

enum class PathStatus { Success, MinStep, MaxSteps, Diverged };
const char* to_string(PathStatus s);

struct PathResult {
  PathStatus status = PathStatus::Success;
  CVector solution;
  double t = 0.0;  // homotopy time reached
  int steps = 0;
  int rejections = 0;
  double residual = 0.0;  // |H(u, 1)|_inf after sharpening
  bool ok() const { return status == PathStatus::Success; }
};

/// H(u, t) with t running from 0 to 1.
class Homotopy {
 public:
  virtual ~Homotopy() = default;
  virtual Eigen::Index dimension() const = 0;
  virtual CVector evaluate(const CVector& u, double t) const = 0;
  virtual CMatrix jacobian(const CVector& u, double t) const = 0;
  /// dH/dt at (u, t).
  virtual CVector time_derivative(const CVector& u, double t) const = 0;
};

/// Adaptive RK4 predictor with a Newton corrector, then Newton sharpening at t = 1.
PathResult track(const Homotopy& homotopy, const CVector& start, const TrackerOptions& options = {});

class SquareSystem {
 public:
  explicit SquareSystem(CaseSpec spec);

  const CaseSpec& spec() const { return spec_; }
  int k() const { return k_; }
  int block_size() const { return spec_.r() + spec_.n(); }
  Eigen::Index num_unknowns() const { return static_cast<Eigen::Index>(k_) * block_size(); }
  Eigen::Index num_equations() const { return static_cast<Eigen::Index>(spec_.ambient_dimension()); }

  /// sum_i (lambda_i^j l_i^{a_j})_j as a flat coefficient vector.
  CVector model(const CVector& u) const;
  /// F(u; p) = model(u) - p.
  CVector residual(const CVector& u, const CVector& params) const { return model(u) - params; }
  CMatrix jacobian(const CVector& u) const;
  /// Central differences with step h, for checking `jacobian`.
  CMatrix finite_difference_jacobian(const CVector& u, double h = 1e-6) const;

  WaringDecomposition to_decomposition(const CVector& u) const;
  CVector from_decomposition(const WaringDecomposition& dec) const;
  /// Multiply every lambda by s (the solution map of F(.; s p)).
  CVector scale_lambdas(const CVector& u, Complex s) const;
  /// Reorder the k blocks: block i of the result is block perm[i] of u.
  CVector permute_blocks(const CVector& u, const std::vector<int>& perm) const;

 private:
  CaseSpec spec_;
  int k_;
  std::vector<Eigen::Index> part_offsets_;
};

/// Parameter homotopy H(u, t) = model(u) - ((1 - t) gamma p0 + t p1).
class ParameterHomotopy final : public Homotopy {
 public:
  ParameterHomotopy(const SquareSystem& system, CVector start_params, CVector target_params, Complex gamma);
  Eigen::Index dimension() const override { return system_.num_unknowns(); }
  CVector evaluate(const CVector& u, double t) const override;
  CMatrix jacobian(const CVector& u, double t) const override;
  CVector time_derivative(const CVector& u, double t) const override;

 private:
  const SquareSystem& system_;
  CVector start_;
  CVector target_;
  Complex gamma_;
};

struct Startpoint {
  CVector params;
  CVector solution;
  double condition = 0.0;
  int rejections = 0;
};

inline constexpr double kStartConditionLimit = 1e8;
inline constexpr int kMaxStartRejections = 10;

/// Forward-constructs parameters from Gaussian unknowns; redraws while the
/// Jacobian condition number exceeds 1e8 and throws Error(DegenerateCase)
/// after 10 consecutive rejections.
Startpoint generate_startpoint(const SquareSystem& system, std::uint64_t seed);

/// Random parameters with the startpoint distribution (forward construction).
CVector random_parameters(const SquareSystem& system, Rng& rng);

/// Tracks a solution of F(.; start_params) to F(.; target_params). The start
/// solution is rescaled by gamma internally. With no explicit gamma a random
/// unit complex number is drawn from `seed`.
PathResult track_path(const SquareSystem& system, const CVector& start_params, const CVector& target_params,
                      const CVector& start_solution, const TrackerOptions& options, std::uint64_t seed,
                      std::optional<Complex> gamma = std::nullopt);

struct LoopRecord {
  int loop = 0;
  int paths = 0;
  int failures = 0;
  int new_solutions = 0;
};

/// Monodromy orbit: canonically deduplicated solutions of F(.; base).
class SolutionRegistry {
 public:
  explicit SolutionRegistry(const SquareSystem& system, double tolerance = kSolutionTolerance,
                            double residual_limit = 1e-9);

  /// Inserts if the point solves F(.; base) to the residual limit and is not
  /// equivalent to a stored one. Returns true for a new solution.
  bool insert(const CVector& u, const CVector& base_params);

  std::size_t size() const { return chart_.size(); }
  const std::vector<CVector>& chart_solutions() const { return chart_; }
  const std::vector<WaringDecomposition>& decompositions() const { return canonical_; }
  const std::vector<LoopRecord>& loop_log() const { return log_; }
  int stall_counter() const { return stall_; }
  int total_failures() const;
  void record_loop(const LoopRecord& record);

 private:
  const SquareSystem* system_;
  double tolerance_;
  double residual_limit_;
  std::vector<CVector> chart_;
  std::vector<WaringDecomposition> canonical_;
  std::vector<LoopRecord> log_;
  int stall_ = 0;
};

struct MonodromyOptions {
  TrackerOptions tracker;
  int workers = 1;
};

/// One loop base -> p1 -> p2 -> base over every currently known solution.
void monodromy_loop(const SquareSystem& system, SolutionRegistry& registry, const CVector& base_params,
                    std::uint64_t seed, const MonodromyOptions& options = {});

struct CountOptions {
  int stall_loops = 15;
  int budget_loops = 200;
  double time_budget_seconds = 0.0;  // 0 = no wall-clock limit
  bool check_defect = true;
  MonodromyOptions monodromy;
};

struct CountResult {
  int k = 0;
  int count = 0;
  std::string status;  // "stabilized" or "budget-exhausted"
  int loops = 0;
  int path_failures = 0;
  CVector base_params;
  std::vector<WaringDecomposition> solutions;  // canonical
};

/// Startpoint, then monodromy loops until `stall_loops` consecutive loops add
/// nothing or the loop budget runs out. Defective cases are refused with
/// Error(DegenerateCase).
CountResult count_decompositions(const CaseSpec& spec, std::uint64_t seed, const CountOptions& options = {});

struct SolveOptions {
  CountOptions count;
  bool random_unitary = true;  // solve f(Uy) and map forms back by conj(U)
  int start_attempts = 5;
};

/// All decompositions of a given f found by tracking a random startpoint to f
/// and running monodromy at f. Forms are returned in the original variables.
CountResult solve_by_monodromy(const PolyVector& f, std::uint64_t seed, const SolveOptions& options = {});

}  // namespace waring
