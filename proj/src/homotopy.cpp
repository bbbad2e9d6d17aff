#include "waring/homotopy.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <numeric>

#include <Eigen/LU>

#include "waring/error.hpp"
#include "waring/parallel.hpp"
#include "waring/terracini.hpp"

namespace waring {

void TrackerOptions::validate() const {
  const bool positive = initial_step > 0 && min_step > 0 && max_step > 0 && max_newton_iterations > 0 &&
                        newton_tolerance > 0 && step_shrink > 0 && step_shrink < 1 && step_grow > 1 &&
                        successes_before_grow > 0 && max_steps > 0 && sharpen_tolerance > 0 &&
                        max_sharpen_iterations >= 0 && divergence_norm > 0;
  if (!positive) throw Error(ErrorKind::Validation, "tracker options must be positive");
  if (!(min_step < initial_step && initial_step <= max_step)) {
    throw Error(ErrorKind::Validation, "tracker options need min_step < initial_step <= max_step");
  }
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Success: return "success";
    case PathStatus::MinStep: return "min-step";
    case PathStatus::MaxSteps: return "max-steps";
    case PathStatus::Diverged: return "diverged";
  }
  return "unknown";
}

namespace {

bool finite(const CVector& v) { return v.allFinite(); }

// Newton direction J^{-1} H; empty optional if J is numerically singular.
std::optional<CVector> newton_update(const Homotopy& h, const CVector& u, double t) {
  Eigen::PartialPivLU<CMatrix> lu(h.jacobian(u, t));
  CVector du = lu.solve(h.evaluate(u, t));
  if (!finite(du)) return std::nullopt;
  return du;
}

std::optional<CVector> tangent(const Homotopy& h, const CVector& u, double t) {
  Eigen::PartialPivLU<CMatrix> lu(h.jacobian(u, t));
  CVector v = -lu.solve(h.time_derivative(u, t));
  if (!finite(v)) return std::nullopt;
  return v;
}

std::optional<CVector> rk4(const Homotopy& h, const CVector& u, double t, double dt) {
  const auto k1 = tangent(h, u, t);
  if (!k1) return std::nullopt;
  const auto k2 = tangent(h, u + 0.5 * dt * *k1, t + 0.5 * dt);
  if (!k2) return std::nullopt;
  const auto k3 = tangent(h, u + 0.5 * dt * *k2, t + 0.5 * dt);
  if (!k3) return std::nullopt;
  const auto k4 = tangent(h, u + dt * *k3, t + dt);
  if (!k4) return std::nullopt;
  return CVector(u + (dt / 6.0) * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4));
}

}  // namespace

PathResult track(const Homotopy& homotopy, const CVector& start, const TrackerOptions& options) {
  options.validate();
  PathResult res;
  CVector u = start;
  double t = 0.0;
  double step = options.initial_step;
  int streak = 0;
  while (t < 1.0) {
    if (res.steps + res.rejections >= options.max_steps) {
      res.status = PathStatus::MaxSteps;
      res.solution = u;
      res.t = t;
      return res;
    }
    const double dt = std::min(step, 1.0 - t);
    const double t_next = (dt == 1.0 - t) ? 1.0 : t + dt;
    bool converged = false;
    CVector v;
    if (auto pred = rk4(homotopy, u, t, t_next - t)) {
      v = std::move(*pred);
      for (int it = 0; it < options.max_newton_iterations; ++it) {
        const auto du = newton_update(homotopy, v, t_next);
        if (!du) break;
        v -= *du;
        if (du->norm() <= options.newton_tolerance * std::max(1.0, v.norm())) {
          converged = true;
          break;
        }
      }
    }
    if (converged) {
      u = std::move(v);
      t = t_next;
      ++res.steps;
      if (++streak >= options.successes_before_grow) {
        step = std::min(step * options.step_grow, options.max_step);
        streak = 0;
      }
      if (u.norm() > options.divergence_norm) {
        res.status = PathStatus::Diverged;
        res.solution = u;
        res.t = t;
        return res;
      }
    } else {
      ++res.rejections;
      streak = 0;
      step *= options.step_shrink;
      if (step < options.min_step) {
        res.status = PathStatus::MinStep;
        res.solution = u;
        res.t = t;
        return res;
      }
    }
  }
  for (int it = 0; it < options.max_sharpen_iterations; ++it) {
    const auto du = newton_update(homotopy, u, 1.0);
    if (!du) break;
    u -= *du;
    if (du->norm() <= options.sharpen_tolerance * std::max(1.0, u.norm())) break;
  }
  res.status = u.norm() > options.divergence_norm ? PathStatus::Diverged : PathStatus::Success;
  res.solution = u;
  res.t = 1.0;
  res.residual = homotopy.evaluate(u, 1.0).cwiseAbs().maxCoeff();
  return res;
}

// ---------------------------------------------------------------------------

SquareSystem::SquareSystem(CaseSpec spec) : spec_(std::move(spec)), k_(spec_.require_k()) {
  Eigen::Index offset = 0;
  for (int a : spec_.degrees()) {
    part_offsets_.push_back(offset);
    offset += static_cast<Eigen::Index>(num_monomials(a, spec_.num_vars()));
  }
}

CVector SquareSystem::model(const CVector& u) const {
  if (u.size() != num_unknowns()) throw Error(ErrorKind::Validation, "unknown vector has wrong length");
  const int n = spec_.n();
  const int b = block_size();
  CVector out = CVector::Zero(num_equations());
  for (int i = 0; i < k_; ++i) {
    const LinearForm form = LinearForm::affine(std::span<const Complex>(u.data() + i * b, static_cast<std::size_t>(n)));
    for (int j = 0; j < spec_.r(); ++j) {
      const HomogeneousPoly p = power_of_linear(form, spec_.degrees()[j]);
      out.segment(part_offsets_[j], p.coeffs().size()) += u[i * b + n + j] * p.coeffs();
    }
  }
  return out;
}

CMatrix SquareSystem::jacobian(const CVector& u) const {
  if (u.size() != num_unknowns()) throw Error(ErrorKind::Validation, "unknown vector has wrong length");
  const int n = spec_.n();
  const int b = block_size();
  CMatrix jac = CMatrix::Zero(num_equations(), num_unknowns());
  for (int i = 0; i < k_; ++i) {
    const LinearForm form = LinearForm::affine(std::span<const Complex>(u.data() + i * b, static_cast<std::size_t>(n)));
    for (int j = 0; j < spec_.r(); ++j) {
      const int a = spec_.degrees()[j];
      const Complex lambda = u[i * b + n + j];
      const HomogeneousPoly full = power_of_linear(form, a);
      jac.col(i * b + n + j).segment(part_offsets_[j], full.coeffs().size()) = full.coeffs();
      const HomogeneousPoly lower = (lambda * static_cast<double>(a)) * power_of_linear(form, a - 1);
      for (int h = 1; h <= n; ++h)
        jac.col(i * b + h - 1).segment(part_offsets_[j], full.coeffs().size()) += lower.times_variable(h).coeffs();
    }
  }
  return jac;
}

CMatrix SquareSystem::finite_difference_jacobian(const CVector& u, double h) const {
  CMatrix jac(num_equations(), num_unknowns());
  for (Eigen::Index c = 0; c < num_unknowns(); ++c) {
    CVector up = u, um = u;
    up[c] += h;
    um[c] -= h;
    jac.col(c) = (model(up) - model(um)) / (2.0 * h);
  }
  return jac;
}

WaringDecomposition SquareSystem::to_decomposition(const CVector& u) const {
  const int n = spec_.n();
  const int b = block_size();
  WaringDecomposition dec;
  dec.lambdas.resize(k_, spec_.r());
  for (int i = 0; i < k_; ++i) {
    dec.forms.push_back(LinearForm::affine(std::span<const Complex>(u.data() + i * b, static_cast<std::size_t>(n))));
    for (int j = 0; j < spec_.r(); ++j) dec.lambdas(i, j) = u[i * b + n + j];
  }
  return dec;
}

CVector SquareSystem::from_decomposition(const WaringDecomposition& dec) const {
  if (dec.k() != k_ || dec.r() != spec_.r()) throw Error(ErrorKind::Validation, "decomposition shape mismatch");
  const int n = spec_.n();
  const int b = block_size();
  CVector u(num_unknowns());
  for (int i = 0; i < k_; ++i) {
    const CVector& c = dec.forms[static_cast<std::size_t>(i)].coeffs();
    if (std::abs(c[0]) == 0.0) throw Error(ErrorKind::Validation, "form has zero x0 coefficient; outside the affine chart");
    for (int h = 1; h <= n; ++h) u[i * b + h - 1] = c[h] / c[0];
    for (int j = 0; j < spec_.r(); ++j) u[i * b + n + j] = dec.lambdas(i, j) * std::pow(c[0], spec_.degrees()[j]);
  }
  return u;
}

CVector SquareSystem::scale_lambdas(const CVector& u, Complex s) const {
  CVector out = u;
  const int b = block_size();
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < spec_.r(); ++j) out[i * b + spec_.n() + j] *= s;
  return out;
}

CVector SquareSystem::permute_blocks(const CVector& u, const std::vector<int>& perm) const {
  const int b = block_size();
  CVector out(u.size());
  for (int i = 0; i < k_; ++i) out.segment(i * b, b) = u.segment(perm[static_cast<std::size_t>(i)] * b, b);
  return out;
}

// ---------------------------------------------------------------------------

ParameterHomotopy::ParameterHomotopy(const SquareSystem& system, CVector start_params, CVector target_params,
                                     Complex gamma)
    : system_(system), start_(std::move(start_params)), target_(std::move(target_params)), gamma_(gamma) {
  if (start_.size() != system_.num_equations() || target_.size() != system_.num_equations()) {
    throw Error(ErrorKind::Validation, "parameter vectors have wrong length");
  }
}

CVector ParameterHomotopy::evaluate(const CVector& u, double t) const {
  return system_.model(u) - ((1.0 - t) * gamma_ * start_ + t * target_);
}

CMatrix ParameterHomotopy::jacobian(const CVector& u, double) const { return system_.jacobian(u); }

CVector ParameterHomotopy::time_derivative(const CVector&, double) const { return gamma_ * start_ - target_; }

// ---------------------------------------------------------------------------

CVector random_parameters(const SquareSystem& system, Rng& rng) {
  return system.model(rng.gaussian_vector(system.num_unknowns()));
}

Startpoint generate_startpoint(const SquareSystem& system, std::uint64_t seed) {
  Rng rng(seed);
  Startpoint sp;
  for (int attempt = 0; attempt < kMaxStartRejections; ++attempt) {
    CVector u = rng.gaussian_vector(system.num_unknowns());
    const double cond = condition_number(system.jacobian(u));
    if (cond <= kStartConditionLimit) {
      sp.solution = std::move(u);
      sp.params = system.model(sp.solution);
      sp.condition = cond;
      sp.rejections = attempt;
      return sp;
    }
  }
  throw Error(ErrorKind::DegenerateCase, "degenerate case: " + std::to_string(kMaxStartRejections) +
                                             " consecutive startpoints had Jacobian condition number > 1e8 for " +
                                             system.spec().label() + " (likely defective)");
}

PathResult track_path(const SquareSystem& system, const CVector& start_params, const CVector& target_params,
                      const CVector& start_solution, const TrackerOptions& options, std::uint64_t seed,
                      std::optional<Complex> gamma) {
  const Complex g = gamma ? *gamma : Rng(seed).unit();
  const ParameterHomotopy h(system, start_params, target_params, g);
  return track(h, system.scale_lambdas(start_solution, g), options);
}

// ---------------------------------------------------------------------------

SolutionRegistry::SolutionRegistry(const SquareSystem& system, double tolerance, double residual_limit)
    : system_(&system), tolerance_(tolerance), residual_limit_(residual_limit) {}

bool SolutionRegistry::insert(const CVector& u, const CVector& base_params) {
  if (!u.allFinite()) return false;
  const double res = system_->residual(u, base_params).cwiseAbs().maxCoeff();
  if (!(res < residual_limit_)) return false;
  WaringDecomposition dec = canonicalize(system_->to_decomposition(u), system_->spec().degrees(), tolerance_);
  dec.residual = res;
  for (const auto& known : canonical_)
    if (same_canonical(known, dec, tolerance_)) return false;
  chart_.push_back(u);
  canonical_.push_back(std::move(dec));
  return true;
}

int SolutionRegistry::total_failures() const {
  int f = 0;
  for (const auto& r : log_) f += r.failures;
  return f;
}

void SolutionRegistry::record_loop(const LoopRecord& record) {
  log_.push_back(record);
  if (record.new_solutions > 0) {
    stall_ = 0;
  } else if (record.failures < record.paths) {
    ++stall_;
  }
}

void monodromy_loop(const SquareSystem& system, SolutionRegistry& registry, const CVector& base_params,
                    std::uint64_t seed, const MonodromyOptions& options) {
  if (registry.size() == 0) throw Error(ErrorKind::Validation, "monodromy needs at least one known solution");
  Rng rng(seed);
  const CVector p1 = random_parameters(system, rng);
  const CVector p2 = random_parameters(system, rng);
  const std::array<const CVector*, 4> waypoints{&base_params, &p1, &p2, &base_params};

  const std::vector<CVector> starts = registry.chart_solutions();
  std::vector<std::optional<CVector>> endpoints(starts.size());
  parallel_for(starts.size(), options.workers, [&](std::size_t idx) {
    const std::uint64_t path_seed = mix_seed(seed, idx);
    CVector u = starts[idx];
    for (std::size_t seg = 0; seg < 3; ++seg) {
      const PathResult pr = track_path(system, *waypoints[seg], *waypoints[seg + 1], u, options.tracker,
                                       mix_seed(path_seed, seg));
      if (!pr.ok()) return;
      u = pr.solution;
    }
    endpoints[idx] = std::move(u);
  });

  LoopRecord rec;
  rec.loop = static_cast<int>(registry.loop_log().size());
  rec.paths = static_cast<int>(starts.size());
  for (const auto& e : endpoints) {
    if (!e) {
      ++rec.failures;
      continue;
    }
    const std::size_t before = registry.size();
    if (registry.insert(*e, base_params)) {
      ++rec.new_solutions;
    } else if (registry.size() == before &&
               !(system.residual(*e, base_params).cwiseAbs().maxCoeff() < 1e-9)) {
      ++rec.failures;  // endpoint did not re-verify as a solution
    }
  }
  registry.record_loop(rec);
}

namespace {

void run_loops(const SquareSystem& system, SolutionRegistry& registry, const CVector& base, std::uint64_t seed,
               const CountOptions& options, CountResult& out) {
  out.status = "budget-exhausted";
  const auto started = std::chrono::steady_clock::now();
  for (int loop = 0; loop < options.budget_loops; ++loop) {
    if (options.time_budget_seconds > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >
            options.time_budget_seconds) {
      break;
    }
    monodromy_loop(system, registry, base, mix_seed(seed, 1000 + static_cast<std::uint64_t>(loop)), options.monodromy);
    out.loops = loop + 1;
    if (registry.stall_counter() >= options.stall_loops) {
      out.status = "stabilized";
      break;
    }
  }
  out.count = static_cast<int>(registry.size());
  out.path_failures = registry.total_failures();
  out.solutions = registry.decompositions();
}

void require_non_defective(const CaseSpec& spec, int k, std::uint64_t seed) {
  const DefectResult d = secant_defect(spec, k, seed);
  if (!d.conclusive) {
    throw Error(ErrorKind::Numerical, "defect check for " + spec.label() + " was inconclusive (rank gap " +
                                          std::to_string(d.gap) + ")");
  }
  if (d.defect > 0) {
    throw Error(ErrorKind::DegenerateCase, "case " + spec.label() + " is " + std::to_string(k) +
                                               "-defective (defect " + std::to_string(d.defect) +
                                               "); see the `defect` report; no finite decomposition count");
  }
}

}  // namespace

CountResult count_decompositions(const CaseSpec& spec, std::uint64_t seed, const CountOptions& options) {
  const SquareSystem system(spec);
  if (options.check_defect) require_non_defective(spec, system.k(), seed);
  const Startpoint sp = generate_startpoint(system, seed);
  SolutionRegistry registry(system);
  if (!registry.insert(sp.solution, sp.params)) {
    throw Error(ErrorKind::Numerical, "startpoint failed to verify");
  }
  CountResult out;
  out.k = system.k();
  out.base_params = sp.params;
  run_loops(system, registry, sp.params, seed, options, out);
  return out;
}

CountResult solve_by_monodromy(const PolyVector& f, std::uint64_t seed, const SolveOptions& options) {
  const CaseSpec spec(f.n(), f.degrees());
  const SquareSystem system(spec);
  if (options.count.check_defect) require_non_defective(spec, system.k(), seed);

  Rng rng(mix_seed(seed, 77));
  const Eigen::Index nv = f.num_vars();
  const CMatrix change = options.random_unitary ? rng.unitary(nv) : CMatrix::Identity(nv, nv);
  const CVector target = f.substitute(change).flatten();

  SolutionRegistry registry(system);
  for (int attempt = 0; attempt < options.start_attempts && registry.size() == 0; ++attempt) {
    const Startpoint sp = generate_startpoint(system, mix_seed(seed, 200 + static_cast<std::uint64_t>(attempt)));
    const PathResult pr = track_path(system, sp.params, target, sp.solution, options.count.monodromy.tracker,
                                     mix_seed(seed, 300 + static_cast<std::uint64_t>(attempt)));
    if (pr.ok()) registry.insert(pr.solution, target);
  }
  if (registry.size() == 0) {
    throw Error(ErrorKind::Numerical, "could not reach the target system from any startpoint");
  }
  CountResult out;
  out.k = system.k();
  out.base_params = f.flatten();
  run_loops(system, registry, target, seed, options.count, out);

  // back to the original variables: forms c = conj(U) c'
  const CMatrix back = change.conjugate();
  for (auto& dec : out.solutions) {
    for (auto& form : dec.forms) form = LinearForm(back * form.coeffs());
    dec = canonicalize(dec, spec.degrees());
    dec.residual = reconstruction_residual(dec, f);
  }
  return out;
}

}  // namespace waring
