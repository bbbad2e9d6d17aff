#include "doctest.h"
#include "oracles.hpp"
#include "waring/homotopy.hpp"
#include "waring/numerics.hpp"
#include "waring/terracini.hpp"

using namespace waring;

TEST_CASE("numerical rank of products of known rank") {
  Rng rng(21);
  for (int r = 0; r <= 6; ++r) {
    CMatrix a(9, std::max(r, 1));
    CMatrix b(std::max(r, 1), 7);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.gaussian();
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.gaussian();
    const CMatrix m = r == 0 ? CMatrix(CMatrix::Zero(9, 7)) : CMatrix(a * b);
    const RankInfo info = numerical_rank(m);
    CHECK(info.rank == r);
    CHECK(info.rank == oracle::elimination_rank(m));
    CHECK(info.gap > 1e4);
    const CMatrix ns = null_space(m);
    CHECK(ns.cols() == 7 - r);
    if (ns.cols() > 0) CHECK((m * ns).norm() < 1e-10 * std::max(1.0, m.norm()));
  }
}

TEST_CASE("row equilibration leaves the rank alone") {
  Rng rng(22);
  CMatrix m(6, 6);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian();
  m.row(5) = m.row(0) + m.row(1);
  m.row(2) *= 1e6;
  CHECK(numerical_rank(m).rank == 5);
  CHECK(numerical_rank(equilibrate_rows(m)).rank == 5);
}

TEST_CASE("mix_seed and Rng are deterministic") {
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.gaussian() == b.gaussian());
  const CMatrix u = Rng(6).unitary(4);
  CHECK((u.adjoint() * u - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("tangent frame rows are derivatives of the parametrization") {
  // (lambda, c) -> (lambda^j (c . x)^{a_j})_j, in Bombieri-scaled coordinates
  const CaseSpec spec(2, {3, 4});
  Rng rng(23);
  const LinearForm l(rng.gaussian_vector(3));
  const CVector lam = rng.gaussian_vector(2);
  const TangentFrame tf = tangent_frame(l, lam, spec);
  REQUIRE(tf.generators.rows() == spec.r() + spec.n() + 1);
  REQUIRE(tf.generators.cols() == spec.ambient_dimension());

  auto param = [&](const CVector& v) {
    const LinearForm form(v.tail(3));
    CVector out(spec.ambient_dimension());
    Eigen::Index off = 0;
    for (int j = 0; j < spec.r(); ++j) {
      const HomogeneousPoly p = v[j] * power_of_linear(form, spec.degrees()[static_cast<std::size_t>(j)]);
      const auto& basis = p.basis();
      for (std::size_t i = 0; i < basis.size(); ++i)
        out[off + static_cast<Eigen::Index>(i)] = p.coeffs()[static_cast<Eigen::Index>(i)] / std::sqrt(basis.multinomial(i));
      off += static_cast<Eigen::Index>(basis.size());
    }
    return out;
  };
  CVector v(5);
  v << lam, l.coeffs();
  const CMatrix j = oracle::central_jacobian(param, v);
  // rows r..r+n of the frame are sum_j lambda^j a_j l^{a_j-1} x_h, i.e. d/dc_h
  for (int i = 0; i < 5; ++i) {
    const CVector frame_row = tf.generators.row(i).transpose();
    CHECK((frame_row - j.col(i)).norm() < 1e-6 * (1 + frame_row.norm()));
  }
}

TEST_CASE("tangent span dimension equals the rank of the square-system Jacobian") {
  const std::vector<std::pair<int, std::vector<int>>> cases{
      {2, {3, 3, 4}}, {2, {2, 2, 6}}, {2, {4, 5}}, {3, {2, 4}}, {2, {2, 3, 3, 3}}, {1, {3, 4}}};
  for (const auto& [n, d] : cases) {
    const CaseSpec spec(n, d);
    const SquareSystem sys(spec);
    Rng rng(24);
    const CVector u = rng.gaussian_vector(sys.num_unknowns());
    const int jac_rank = numerical_rank(sys.jacobian(u)).rank;
    const DefectResult res = secant_defect(spec, sys.k(), 3);
    CHECK(res.conclusive);
    CHECK(res.dim == jac_rank);
  }
}

TEST_CASE("defect of every reference row for three seeds") {
  struct Row {
    int n;
    std::vector<int> degrees;
    int k;
    int delta;
  };
  auto rep = [](int count, int value) { return std::vector<int>(static_cast<std::size_t>(count), value); };
  std::vector<int> fourteen_quartics = rep(14, 4);
  fourteen_quartics.push_back(6);
  std::vector<int> seven_quadrics_sextic = rep(7, 2);
  seven_quadrics_sextic.push_back(6);
  // delta column of the reference table
  const std::vector<Row> rows{{2, {4, 5}, 9, 0},       {2, {6, 6}, 14, 0},         {2, {6, 7}, 16, 0},
                              {3, {2, 4}, 9, 2},       {2, {2, 2, 6}, 8, 4},       {2, {3, 3, 4}, 7, 0},
                              {2, {3, 4, 4}, 8, 0},    {2, {5, 5, 6}, 14, 0},      {3, {3, 3, 3}, 10, 0},
                              {2, {2, 2, 4, 4}, 7, 2}, {2, {2, 3, 3, 3}, 6, 0},    {2, rep(4, 4), 10, 0},
                              {2, {5, 5, 5, 5, 6}, 16, 0}, {2, {2, 2, 2, 2, 2, 3}, 5, 3}, {4, rep(6, 2), 9, 0},
                              {3, rep(7, 2), 7, 0},    {2, rep(8, 3), 8, 0},       {2, seven_quadrics_sextic, 7, 7},
                              {4, rep(11, 2), 11, 0},  {2, rep(13, 4), 13, 0},     {2, fourteen_quartics, 14, 6},
                              {3, rep(17, 3), 17, 0},  {2, rep(19, 5), 19, 0},     {2, rep(26, 6), 26, 0}};
  for (const auto& row : rows) {
    const CaseSpec spec(row.n, row.degrees);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const DefectResult res = secant_defect(spec, row.k, seed);
      INFO(spec.label(), " seed ", seed);
      CHECK(res.conclusive);
      CHECK(res.gap >= 1e4);
      CHECK(res.defect == row.delta);
    }
  }
}

TEST_CASE("defect expected dimension caps at the ambient dimension") {
  const CaseSpec spec(2, {3, 3, 4});
  const DefectResult res = secant_defect(spec, 9, 1);
  CHECK(res.expected == 35);
  CHECK(res.defect == 0);
}
