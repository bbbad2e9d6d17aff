#include "doctest.h"
#include "oracles.hpp"
#include "waring/apolarity.hpp"
#include "waring/error.hpp"

using namespace waring;

namespace {

HomogeneousPoly random_poly(int nv, int d, Rng& rng) {
  return HomogeneousPoly(nv, d, rng.gaussian_vector(static_cast<Eigen::Index>(num_monomials(d, nv))));
}

QuotientSection random_section(int e, Rng& rng) {
  return QuotientSection{{random_poly(3, e, rng), random_poly(3, e, rng), random_poly(3, e, rng)}};
}

// det [[x], [G(x)], [H(x)]] at a point, by cofactors.
Complex pointwise_det(const QuotientSection& g, const QuotientSection& h, const CVector& x) {
  Complex m[3][3];
  for (int c = 0; c < 3; ++c) {
    m[0][c] = x[c];
    m[1][c] = oracle::evaluate(g.lift[static_cast<std::size_t>(c)], x);
    m[2][c] = oracle::evaluate(h.lift[static_cast<std::size_t>(c)], x);
  }
  return oracle::det3(m);
}

// Ascending sort of projective points normalized by their last coordinate.
bool same_point_sets(std::vector<CVector> a, std::vector<CVector> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = false;
    for (auto it = b.begin(); it != b.end(); ++it) {
      if ((*it - p).norm() < tol * std::max(1.0, p.norm())) {
        b.erase(it);
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("bundle specs parse and count points") {
  const auto l = BundleSpec::parse("line:2:2");
  CHECK(l.kind == BundleKind::LineBundle);
  CHECK(l.expected_points == 4);
  const auto q = BundleSpec::parse("quotient:2");
  CHECK(q.kind == BundleKind::QuotientTwist);
  CHECK(q.expected_points == 7);
  CHECK(q.name() == "quotient:2:1");
  CHECK_THROWS_AS(BundleSpec::parse("plane:2"), Error);
  CHECK_THROWS_AS(BundleSpec::parse("line:x"), Error);
}

TEST_CASE("catalecticant columns are contractions of the parts") {
  Rng rng(31);
  const PolyVector f(3, {random_poly(3, 2, rng), random_poly(3, 4, rng)});
  const ContractionMatrix c = catalecticant(f, 2);
  CHECK(c.entries.rows() == 1 + 6);
  CHECK(c.entries.cols() == 6);
  // apply the map to a random dual form g and compare with direct contraction
  const HomogeneousPoly g = random_poly(3, 2, rng);
  const CVector image = c.entries * g.coeffs();
  const HomogeneousPoly c0 = apolar_contract(f[0], g);
  const HomogeneousPoly c1 = apolar_contract(f[1], g);
  CHECK(std::abs(image[0] - c0.coeffs()[0]) < 1e-12 * (1 + std::abs(image[0])));
  CHECK((image.tail(6) - c1.coeffs()).norm() < 1e-12 * (1 + image.norm()));
  CHECK_THROWS_AS(catalecticant(f, 0), Error);
  CHECK_THROWS_AS(catalecticant(f, 5), Error);
}

TEST_CASE("catalecticant rank is at most the number of summands") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    for (int k = 1; k <= 6; ++k) {
      const ForwardSample s = forward_construct(2, {4, 4}, k, seed);
      for (int e = 1; e <= 3; ++e) {
        const int rk = catalecticant(s.f, e).rank().rank;
        CHECK(rk <= k);
        CHECK(rk == oracle::elimination_rank(catalecticant(s.f, e).entries));
      }
    }
  }
}

TEST_CASE("catalecticant kernel forms vanish at the summand points") {
  const ForwardSample s = forward_construct(2, {2, 2, 2, 2}, 4, 3);
  const ContractionMatrix c = catalecticant(s.f, 2);
  const CMatrix ker = c.kernel();
  REQUIRE(ker.cols() == 2);
  for (Eigen::Index col = 0; col < ker.cols(); ++col) {
    const HomogeneousPoly g(3, 2, ker.col(col));
    for (const auto& l : s.truth.forms) {
      CHECK(std::abs(oracle::evaluate(g, l.coeffs())) < 1e-10 * g.norm() * std::pow(l.coeffs().norm(), 2));
    }
  }
}

TEST_CASE("quotient section space has dimension 3 binom(e+2,2) - binom(e+1,2)") {
  for (int e = 0; e <= 5; ++e) {
    const auto basis = quotient_basis(e);
    CHECK(basis.size() == quotient_section_dim(e));
    // together with the Euler lifts of degree-(e-1) forms the basis spans all triples
    const Eigen::Index m = static_cast<Eigen::Index>(num_monomials(e, 3));
    std::vector<CVector> columns;
    auto flat = [&](const QuotientSection& s) {
      CVector v(3 * m);
      for (int i = 0; i < 3; ++i) v.segment(i * m, m) = s.lift[static_cast<std::size_t>(i)].coeffs();
      return v;
    };
    for (const auto& s : basis) columns.push_back(flat(s));
    if (e >= 1) {
      for (const auto& mono : MonomialBasis::get(e - 1, 3).monomials())
        columns.push_back(flat(QuotientSection::euler(HomogeneousPoly::monomial(mono))));
    }
    CMatrix all(3 * m, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i) all.col(static_cast<Eigen::Index>(i)) = columns[i];
    CHECK(all.cols() == 3 * m);
    CHECK(oracle::elimination_rank(all) == 3 * m);
  }
}

TEST_CASE("quotient pairing is the pointwise 3x3 determinant") {
  Rng rng(32);
  for (int trial = 0; trial < 4; ++trial) {
    const auto g = random_section(2, rng);
    const auto h = random_section(1, rng);
    const HomogeneousPoly p = quotient_pairing(g, h);
    CHECK(p.degree() == 4);
    for (int pt = 0; pt < 3; ++pt) {
      const CVector x = rng.gaussian_vector(3);
      const Complex expected = pointwise_det(g, h, x);
      CHECK(std::abs(p.eval(x) - expected) < 1e-11 * (1 + std::abs(expected)));
    }
  }
}

TEST_CASE("Euler lifts do not change the quotient pairing") {
  Rng rng(33);
  const auto g = random_section(2, rng);
  const auto h = random_section(1, rng);
  const auto shifted = g + QuotientSection::euler(random_poly(3, 1, rng));
  const HomogeneousPoly a = quotient_pairing(g, h);
  const HomogeneousPoly b = quotient_pairing(shifted, h);
  CHECK((a - b).norm() < 1e-12 * a.norm());
  const HomogeneousPoly c = quotient_pairing(g, h + QuotientSection::euler(HomogeneousPoly::constant(3, 2.5)));
  CHECK((a - c).norm() < 1e-12 * a.norm());
}

TEST_CASE("nonabelian matrix for (3,3,4) is 15 x 14 with a one-dimensional kernel") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const ForwardSample s = forward_construct(2, {3, 3, 4}, 7, seed);
    const ContractionMatrix m = nonabelian_matrix(s.f, BundleSpec::quotient_twist(2));
    CHECK(m.entries.rows() == 15);
    CHECK(m.entries.cols() == 14);
    const RankInfo info = m.rank();
    CHECK(info.rank == 14);
    CHECK_FALSE(info.ambiguous());
    const CMatrix ker = m.kernel();
    REQUIRE(ker.cols() == 1);
    // the kernel section G satisfies x cross G(x) = 0 at every summand point
    const QuotientSection g = section_from_coordinates(ker.col(0), 2);
    for (const auto& l : s.truth.forms) {
      const CVector c = l.coeffs() / l.coeffs().norm();
      for (const auto& minor : g.minors()) CHECK(std::abs(oracle::evaluate(minor, c)) < 1e-9 * minor.norm());
    }
    const auto points = base_locus(std::vector<QuotientSection>{g}, BundleSpec::quotient_twist(2));
    CHECK(points.size() == 7);
  }
}

TEST_CASE("base locus is unchanged by an Euler lift of the kernel section") {
  const ForwardSample s = forward_construct(2, {3, 3, 4}, 7, 8);
  const ContractionMatrix m = nonabelian_matrix(s.f, BundleSpec::quotient_twist(2));
  const QuotientSection g = section_from_coordinates(m.kernel().col(0), 2);
  Rng rng(34);
  const QuotientSection shifted = g + QuotientSection::euler(random_poly(3, 1, rng));
  const auto bundle = BundleSpec::quotient_twist(2);
  const auto a = base_locus(std::vector<QuotientSection>{g}, bundle);
  const auto b = base_locus(std::vector<QuotientSection>{shifted}, bundle, BaseLocusOptions{99, 1e-8});
  CHECK(same_point_sets(a, b, 1e-8));
}

TEST_CASE("binary roots recover the linear factors") {
  Rng rng(35);
  for (int k = 1; k <= 6; ++k) {
    std::vector<CVector> roots;
    HomogeneousPoly g = HomogeneousPoly::constant(2, 1.0);
    for (int i = 0; i < k; ++i) {
      CVector r = rng.gaussian_vector(2);
      if (i == 0 && k == 3) r << 1.0, 0.0;  // a root at infinity
      // factor vanishing at r: r1 x0 - r0 x1
      CVector lin(2);
      lin << r[1], -r[0];
      g = g * LinearForm(lin).as_poly();
      roots.push_back(r[1] == 0.0 ? CVector(r / r[0]) : CVector(r / r[1]));
    }
    const auto found = binary_roots(g);
    CHECK(same_point_sets(found, roots, 1e-8));
  }
}

TEST_CASE("apolarity decomposition recovers forward-constructed summands") {
  const std::vector<std::pair<int, std::vector<int>>> cases{
      {1, {3, 4}}, {1, {2, 2}}, {2, {2, 2, 2, 2}}, {2, {2, 3}}, {2, {3, 3, 4}}};
  for (const auto& [n, d] : cases) {
    const CaseSpec spec(n, d);
    const auto bundle = bundle_for_case(spec);
    REQUIRE(bundle.has_value());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ForwardSample s = forward_construct(n, d, spec.require_k(), seed);
      const WaringDecomposition dec = decompose(s.f, *bundle, DecomposeOptions{seed});
      INFO(spec.label(), " seed ", seed);
      CHECK(dec.residual < 1e-8);
      CHECK(canonical_distance(dec, s.truth) < 1e-8);
    }
  }
}

TEST_CASE("lambda solve refuses repeated forms") {
  const ForwardSample s = forward_construct(2, {3, 3, 4}, 7, 1);
  std::vector<LinearForm> forms = s.truth.forms;
  forms[1] = forms[0];
  CHECK_THROWS_AS(solve_lambdas(s.f, forms), Error);
}

TEST_CASE("special input with a degenerate kernel is reported") {
  // f = (x0^3, x0^3, x0^4) has a huge kernel
  const HomogeneousPoly c3 = power_of_linear(LinearForm((CVector(3) << 1, 0, 0).finished()), 3);
  const HomogeneousPoly c4 = power_of_linear(LinearForm((CVector(3) << 1, 0, 0).finished()), 4);
  const PolyVector f(3, {c3, c3, c4});
  try {
    decompose(f, BundleSpec::quotient_twist(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numerical);
  }
}
