#pragma once

// JSON encodings. Complex numbers are [re, im] pairs.
//
//   poly:          {"num_vars": 3, "degree": 2, "coeffs": [[re, im], ...]}   graded-lex order
//   poly vector:   {"num_vars": 3, "degrees": [3, 3, 4], "parts": [poly, ...]}
//   decomposition: {"forms": [[[re, im], ...], ...], "lambdas": [[[re, im], ...], ...], "residual": r}
//                  lambdas[i][j] is the coefficient of summand i in part j

#include "json.hpp"

#include "waring/decomposition.hpp"
#include "waring/polycore.hpp"

namespace waring {

using Json = nlohmann::json;

Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json to_json(const HomogeneousPoly& p);
HomogeneousPoly poly_from_json(const Json& j);

Json to_json(const PolyVector& f);
/// Accepts either the poly-vector object or a bare array of polys.
PolyVector poly_vector_from_json(const Json& j);

Json to_json(const WaringDecomposition& dec);
WaringDecomposition decomposition_from_json(const Json& j);

}  // namespace waring
