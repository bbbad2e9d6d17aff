#pragma once

// Reference computations for the tests. Each one is deliberately naive and
// shares no code path with the library routine it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "waring/polycore.hpp"

namespace oracle {

using waring::CMatrix;
using waring::Complex;
using waring::CVector;
using BigInt = boost::multiprecision::cpp_int;

// All exponent vectors of total degree d in v variables, graded-lex descending.
inline std::vector<std::vector<int>> exponents(int d, int v) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(v), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == v - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Pascal's triangle row by row.
inline BigInt pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<BigInt> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i) + 1, 0);
    next.front() = 1;
    next.back() = 1;
    for (int j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + row[static_cast<std::size_t>(j)];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

// sum_alpha c_alpha x^alpha with exponents listed by `exponents(d, v)`.
inline Complex evaluate(const CVector& coeffs, int d, const CVector& x) {
  const auto ex = exponents(d, static_cast<int>(x.size()));
  Complex s = 0.0;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    Complex term = coeffs[static_cast<Eigen::Index>(i)];
    for (std::size_t h = 0; h < ex[i].size(); ++h) term *= std::pow(x[static_cast<Eigen::Index>(h)], ex[i][h]);
    s += term;
  }
  return s;
}

inline Complex evaluate(const waring::HomogeneousPoly& p, const CVector& x) {
  return evaluate(p.coeffs(), p.degree(), x);
}

inline Complex det3(const Complex m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Central differences of a vector function of complex unknowns (holomorphic,
// so a real step along each coordinate suffices).
inline CMatrix central_jacobian(const std::function<CVector(const CVector&)>& f, const CVector& u, double h = 1e-6) {
  const CVector f0 = f(u);
  CMatrix j(f0.size(), u.size());
  for (Eigen::Index c = 0; c < u.size(); ++c) {
    CVector up = u;
    CVector dn = u;
    up[c] += h;
    dn[c] -= h;
    j.col(c) = (f(up) - f(dn)) / (2.0 * h);
  }
  return j;
}

// Rank by Gaussian elimination with full pivoting and a relative threshold.
inline int elimination_rank(CMatrix m, double tol = 1e-9) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  int rank = 0;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index step = 0; step < std::min(rows, cols); ++step) {
    Eigen::Index pr = step;
    Eigen::Index pc = step;
    double best = 0.0;
    for (Eigen::Index r = step; r < rows; ++r)
      for (Eigen::Index c = step; c < cols; ++c)
        if (std::abs(m(r, c)) > best) {
          best = std::abs(m(r, c));
          pr = r;
          pc = c;
        }
    if (best <= tol * scale) break;
    m.row(step).swap(m.row(pr));
    m.col(step).swap(m.col(pc));
    for (Eigen::Index r = step + 1; r < rows; ++r) {
      const Complex factor = m(r, step) / m(step, step);
      m.row(r) -= factor * m.row(step);
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
