#include "waring/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "waring/error.hpp"

namespace waring {

namespace {

// -1, 0, 1 with tolerance-aware lexicographic comparison of two coefficient vectors.
int compare_forms(const CVector& a, const CVector& b, double tol) {
  for (Eigen::Index h = 0; h < a.size(); ++h) {
    const double dre = a[h].real() - b[h].real();
    if (std::abs(dre) > tol) return dre < 0 ? -1 : 1;
    const double dim = a[h].imag() - b[h].imag();
    if (std::abs(dim) > tol) return dim < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace

WaringDecomposition canonicalize(const WaringDecomposition& dec, const std::vector<int>& degrees, double tol) {
  const int k = dec.k();
  if (dec.lambdas.rows() != k || dec.lambdas.cols() != static_cast<Eigen::Index>(degrees.size())) {
    throw Error(ErrorKind::Validation, "lambda matrix shape does not match forms and degrees");
  }
  std::vector<CVector> forms;
  CMatrix lambdas = dec.lambdas;
  for (int i = 0; i < k; ++i) {
    CVector c = dec.forms[static_cast<std::size_t>(i)].coeffs();
    Eigen::Index pivot = 0;
    c.cwiseAbs().maxCoeff(&pivot);
    const Complex s = c[pivot];
    if (s == Complex(0.0)) throw Error(ErrorKind::Validation, "zero linear form in decomposition");
    c /= s;
    c[pivot] = 1.0;
    for (std::size_t j = 0; j < degrees.size(); ++j) lambdas(i, static_cast<Eigen::Index>(j)) *= std::pow(s, degrees[j]);
    forms.push_back(std::move(c));
  }
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return compare_forms(forms[a], forms[b], tol) < 0; });
  WaringDecomposition out;
  out.residual = dec.residual;
  out.lambdas.resize(k, lambdas.cols());
  for (int i = 0; i < k; ++i) {
    out.forms.emplace_back(forms[static_cast<std::size_t>(order[i])]);
    out.lambdas.row(i) = lambdas.row(order[i]);
  }
  return out;
}

double canonical_distance(const WaringDecomposition& a, const WaringDecomposition& b) {
  if (a.k() != b.k() || a.lambdas.cols() != b.lambdas.cols()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (int i = 0; i < a.k(); ++i) {
    const auto& ca = a.forms[static_cast<std::size_t>(i)].coeffs();
    const auto& cb = b.forms[static_cast<std::size_t>(i)].coeffs();
    if (ca.size() != cb.size()) return std::numeric_limits<double>::infinity();
    for (Eigen::Index h = 0; h < ca.size(); ++h) {
      d = std::max(d, std::abs(ca[h].real() - cb[h].real()));
      d = std::max(d, std::abs(ca[h].imag() - cb[h].imag()));
    }
    for (Eigen::Index j = 0; j < a.lambdas.cols(); ++j) {
      const Complex la = a.lambdas(i, j);
      const Complex lb = b.lambdas(i, j);
      const double scale = std::max({1.0, std::abs(la), std::abs(lb)});
      d = std::max(d, std::abs(la.real() - lb.real()) / scale);
      d = std::max(d, std::abs(la.imag() - lb.imag()) / scale);
    }
  }
  return d;
}

bool same_canonical(const WaringDecomposition& a, const WaringDecomposition& b, double tol) {
  return canonical_distance(a, b) <= tol;
}

bool equivalent(const WaringDecomposition& a, const WaringDecomposition& b, const std::vector<int>& degrees,
                double tol) {
  return same_canonical(canonicalize(a, degrees, tol), canonicalize(b, degrees, tol), tol);
}

PolyVector reconstruct(const WaringDecomposition& dec, int num_vars, const std::vector<int>& degrees) {
  std::vector<HomogeneousPoly> parts;
  for (std::size_t j = 0; j < degrees.size(); ++j) {
    HomogeneousPoly p(num_vars, degrees[j]);
    for (int i = 0; i < dec.k(); ++i)
      p += dec.lambdas(i, static_cast<Eigen::Index>(j)) * power_of_linear(dec.forms[static_cast<std::size_t>(i)], degrees[j]);
    parts.push_back(std::move(p));
  }
  return PolyVector(num_vars, std::move(parts));
}

double reconstruction_residual(const WaringDecomposition& dec, const PolyVector& f) {
  const PolyVector g = reconstruct(dec, f.num_vars(), f.degrees());
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double denom = f[j].norm();
    const double err = (f[j] - g[j]).norm();
    worst = std::max(worst, denom > 0.0 ? err / denom : err);
  }
  return worst;
}

}  // namespace waring
