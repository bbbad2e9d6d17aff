#include "doctest.h"
#include "waring/apolarity.hpp"
#include "waring/decomposition.hpp"
#include "waring/json_io.hpp"

using namespace waring;

TEST_CASE("canonical form ignores summand order and form scaling") {
  const std::vector<int> degrees{3, 3, 4};
  const ForwardSample s = forward_construct(2, degrees, 7, 51);
  WaringDecomposition moved = s.truth;
  std::swap(moved.forms[0], moved.forms[5]);
  moved.lambdas.row(0).swap(moved.lambdas.row(5));
  const Complex c(-0.4, 1.1);
  moved.forms[2] = LinearForm(c * moved.forms[2].coeffs());
  for (int j = 0; j < 3; ++j) moved.lambdas(2, j) /= std::pow(c, degrees[static_cast<std::size_t>(j)]);
  CHECK(reconstruction_residual(moved, s.f) < 1e-12);
  CHECK(equivalent(moved, s.truth, degrees));
  CHECK(canonical_distance(canonicalize(moved, degrees), s.truth) < 1e-12);

  const WaringDecomposition canon = canonicalize(moved, degrees);
  for (const auto& l : canon.forms) CHECK(l.coeffs().cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("different decompositions are told apart") {
  const ForwardSample a = forward_construct(2, {3, 3, 4}, 7, 52);
  const ForwardSample b = forward_construct(2, {3, 3, 4}, 7, 53);
  CHECK_FALSE(equivalent(a.truth, b.truth, {3, 3, 4}));
  CHECK(reconstruction_residual(a.truth, b.f) > 1e-3);
}

TEST_CASE("json round trip") {
  const ForwardSample s = forward_construct(2, {2, 3}, 4, 54);
  const PolyVector f = poly_vector_from_json(Json::parse(to_json(s.f).dump()));
  CHECK(f.degrees() == s.f.degrees());
  CHECK((f.flatten() - s.f.flatten()).norm() == 0.0);
  const WaringDecomposition d = decomposition_from_json(Json::parse(to_json(s.truth).dump()));
  CHECK(canonical_distance(d, s.truth) == 0.0);
  CHECK_THROWS(poly_from_json(Json::parse(R"({"num_vars": 3, "degree": 2, "coeffs": [[1, 0]]})")));
}
