#include "doctest.h"
#include "oracles.hpp"
#include "waring/apolarity.hpp"
#include "waring/error.hpp"
#include "waring/homotopy.hpp"
#include "waring/projective_solver.hpp"

using namespace waring;

namespace {

// x^2 - ((1 - t) a + t b): the path starting at sqrt(a) ends at the root of b
// reached by continuity along the straight segment.
class SquareRoot final : public Homotopy {
 public:
  SquareRoot(Complex a, Complex b) : a_(a), b_(b) {}
  Eigen::Index dimension() const override { return 1; }
  CVector evaluate(const CVector& u, double t) const override {
    CVector v(1);
    v[0] = u[0] * u[0] - ((1.0 - t) * a_ + t * b_);
    return v;
  }
  CMatrix jacobian(const CVector& u, double) const override {
    CMatrix j(1, 1);
    j(0, 0) = 2.0 * u[0];
    return j;
  }
  CVector time_derivative(const CVector&, double) const override {
    CVector v(1);
    v[0] = a_ - b_;
    return v;
  }

 private:
  Complex a_, b_;
};

}  // namespace

TEST_CASE("tracker follows a square-root branch") {
  const Complex a(1.0, 0.0), b(4.0, 3.0);  // segment stays in the right half plane
  const SquareRoot h(a, b);
  CVector start(1);
  start[0] = 1.0;
  const PathResult pr = track(h, start);
  REQUIRE(pr.ok());
  CHECK(std::abs(pr.solution[0] - std::sqrt(b)) < 1e-12);
  CHECK(pr.t == 1.0);
}

TEST_CASE("tracker options are validated") {
  TrackerOptions o;
  o.min_step = 0.2;
  CHECK_THROWS_AS(o.validate(), Error);
  TrackerOptions p;
  p.max_newton_iterations = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("square-system Jacobian agrees with central differences") {
  const std::vector<std::pair<int, std::vector<int>>> cases{{2, {3, 3, 4}}, {2, {4, 5}}, {3, {2, 4}}, {1, {3, 4}}};
  for (const auto& [n, d] : cases) {
    const SquareSystem sys{CaseSpec(n, d)};
    Rng rng(41);
    const CVector u = rng.gaussian_vector(sys.num_unknowns());
    const CMatrix analytic = sys.jacobian(u);
    const CMatrix numeric = oracle::central_jacobian([&](const CVector& v) { return sys.model(v); }, u);
    CHECK((analytic - numeric).norm() < 1e-6 * analytic.norm());
  }
}

TEST_CASE("square-system model matches the reconstructed vector") {
  const SquareSystem sys{CaseSpec(2, {3, 4, 4})};
  CHECK(sys.num_unknowns() == sys.num_equations());
  Rng rng(42);
  const CVector u = rng.gaussian_vector(sys.num_unknowns());
  const WaringDecomposition dec = sys.to_decomposition(u);
  for (const auto& l : dec.forms) CHECK(l.is_affine_normalized());
  const PolyVector f = reconstruct(dec, 3, {3, 4, 4});
  CHECK((f.flatten() - sys.model(u)).norm() < 1e-12 * f.flatten().norm());
  CHECK((sys.from_decomposition(dec) - u).norm() < 1e-12 * u.norm());
}

TEST_CASE("startpoints solve their own system and are well conditioned") {
  const SquareSystem sys{CaseSpec(2, {3, 3, 4})};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Startpoint sp = generate_startpoint(sys, seed);
    CHECK(sys.residual(sp.solution, sp.params).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sp.condition <= kStartConditionLimit);
  }
}

TEST_CASE("tracking to a scaled parameter lands on the scaled solution") {
  // F(u; s p) is solved by multiplying every lambda by s
  const SquareSystem sys{CaseSpec(2, {2, 3, 3, 3})};
  const Startpoint sp = generate_startpoint(sys, 7);
  const Complex s(0.6, 0.8);
  const PathResult pr = track_path(sys, sp.params, s * sp.params, sp.solution, {}, 7);
  REQUIRE(pr.ok());
  const CVector expected = sys.scale_lambdas(sp.solution, s);
  CHECK((pr.solution - expected).norm() < 1e-8 * expected.norm());
}

TEST_CASE("registry removes permutations and rejects non-solutions") {
  const SquareSystem sys{CaseSpec(2, {3, 3, 4})};
  const Startpoint sp = generate_startpoint(sys, 3);
  SolutionRegistry reg(sys);
  CHECK(reg.insert(sp.solution, sp.params));
  std::vector<int> perm(static_cast<std::size_t>(sys.k()));
  for (int i = 0; i < sys.k(); ++i) perm[static_cast<std::size_t>(i)] = (i + 3) % sys.k();
  CHECK_FALSE(reg.insert(sys.permute_blocks(sp.solution, perm), sp.params));
  CVector off = sp.solution;
  off[0] += 1e-3;
  CHECK_FALSE(reg.insert(off, sp.params));
  CHECK(reg.size() == 1);
}

TEST_CASE("projective solver finds the intersection of two line pairs") {
  Rng rng(43);
  std::vector<LinearForm> lines;
  for (int i = 0; i < 4; ++i) lines.emplace_back(rng.gaussian_vector(3));
  const HomogeneousPoly q1 = lines[0].as_poly() * lines[1].as_poly();
  const HomogeneousPoly q2 = lines[2].as_poly() * lines[3].as_poly();
  const auto res = solve_projective({q1, q2}, 5);
  REQUIRE(res.points.size() == 4);
  // the intersection of lines a and b is a x b
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      const CVector a = lines[static_cast<std::size_t>(i)].coeffs();
      const CVector b = lines[static_cast<std::size_t>(j)].coeffs();
      CVector cross(3);
      cross << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0];
      const CVector p = normalize_last_nonzero(cross);
      bool found = false;
      for (const auto& q : res.points) found = found || (q - p).norm() < 1e-8 * p.norm();
      CHECK(found);
    }
  }
}

TEST_CASE("counting is reproducible bit for bit and independent of the worker count") {
  const CaseSpec spec(2, {2, 3});
  CountOptions o;
  o.stall_loops = 4;
  const CountResult a = count_decompositions(spec, 5, o);
  const CountResult b = count_decompositions(spec, 5, o);
  o.monodromy.workers = 3;
  const CountResult c = count_decompositions(spec, 5, o);
  CHECK(a.count == 1);
  for (const CountResult* other : {&b, &c}) {
    CHECK(other->count == a.count);
    CHECK(other->loops == a.loops);
    REQUIRE(other->solutions.size() == a.solutions.size());
    for (std::size_t i = 0; i < a.solutions.size(); ++i) {
      CHECK(other->solutions[i].lambdas == a.solutions[i].lambdas);
      for (int f = 0; f < a.solutions[i].k(); ++f)
        CHECK(other->solutions[i].forms[static_cast<std::size_t>(f)].coeffs() ==
              a.solutions[i].forms[static_cast<std::size_t>(f)].coeffs());
    }
  }
}

TEST_CASE("counting rejects defective and non-perfect cases") {
  try {
    count_decompositions(CaseSpec(2, {2, 2, 6}), 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateCase);
  }
  CHECK_THROWS_AS(count_decompositions(CaseSpec(2, {3, 4}), 1), Error);
}

TEST_CASE("monodromy solve of a given vector reproduces it") {
  const ForwardSample s = forward_construct(2, {2, 2, 2, 2}, 4, 9);
  SolveOptions o;
  o.count.stall_loops = 4;
  const CountResult res = solve_by_monodromy(s.f, 9, o);
  REQUIRE(res.count == 1);
  CHECK(res.solutions.front().residual < 1e-8);
  CHECK(canonical_distance(res.solutions.front(), s.truth) < 1e-7);
}
