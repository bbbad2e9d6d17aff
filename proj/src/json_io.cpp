#include "waring/json_io.hpp"

#include "waring/error.hpp"

namespace waring {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Validation, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Validation, "expected an array of complex numbers");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return v;
}

Json to_json(const HomogeneousPoly& p) {
  return Json{{"num_vars", p.num_vars()}, {"degree", p.degree()}, {"coeffs", to_json(p.coeffs())}};
}

HomogeneousPoly poly_from_json(const Json& j) {
  try {
    return HomogeneousPoly(j.at("num_vars").get<int>(), j.at("degree").get<int>(), vector_from_json(j.at("coeffs")));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed polynomial: ") + e.what());
  }
}

Json to_json(const PolyVector& f) {
  Json parts = Json::array();
  for (const auto& p : f.parts()) parts.push_back(to_json(p));
  return Json{{"num_vars", f.num_vars()}, {"degrees", f.degrees()}, {"parts", parts}};
}

PolyVector poly_vector_from_json(const Json& j) {
  const Json& parts = j.is_array() ? j : j.at("parts");
  std::vector<HomogeneousPoly> polys;
  for (const auto& p : parts) polys.push_back(poly_from_json(p));
  if (polys.empty()) throw Error(ErrorKind::Validation, "polynomial vector has no parts");
  const int nv = polys.front().num_vars();
  return PolyVector(nv, std::move(polys));
}

Json to_json(const WaringDecomposition& dec) {
  Json forms = Json::array();
  for (const auto& l : dec.forms) forms.push_back(to_json(l.coeffs()));
  Json lambdas = Json::array();
  for (Eigen::Index i = 0; i < dec.lambdas.rows(); ++i) lambdas.push_back(to_json(CVector(dec.lambdas.row(i).transpose())));
  return Json{{"forms", forms}, {"lambdas", lambdas}, {"residual", dec.residual}};
}

WaringDecomposition decomposition_from_json(const Json& j) {
  try {
    WaringDecomposition dec;
    for (const auto& f : j.at("forms")) dec.forms.emplace_back(vector_from_json(f));
    const auto& lam = j.at("lambdas");
    const auto rows = static_cast<Eigen::Index>(lam.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(lam[0].size()) : 0;
    dec.lambdas.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const CVector row = vector_from_json(lam[static_cast<std::size_t>(i)]);
      if (row.size() != cols) throw Error(ErrorKind::Validation, "ragged lambda matrix");
      dec.lambdas.row(i) = row.transpose();
    }
    dec.residual = j.value("residual", 0.0);
    return dec;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed decomposition: ") + e.what());
  }
}

}  // namespace waring
