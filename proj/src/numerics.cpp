#include "waring/numerics.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace waring {

CMatrix equilibrate_rows(const CMatrix& m) {
  CMatrix out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double nrm = out.row(i).norm();
    if (nrm > 0.0) out.row(i) /= nrm;
  }
  return out;
}

RankInfo numerical_rank(const CMatrix& m, double tol) {
  RankInfo info;
  if (m.rows() == 0 || m.cols() == 0) {
    info.singular_values = Eigen::VectorXd();
    return info;
  }
  Eigen::BDCSVD<CMatrix> svd(equilibrate_rows(m));
  info.singular_values = svd.singularValues();
  const auto& s = info.singular_values;
  const double smax = s[0];
  if (smax == 0.0) {
    info.gap = std::numeric_limits<double>::infinity();
    return info;
  }
  int rank = 0;
  while (rank < s.size() && s[rank] > tol * smax) ++rank;
  info.rank = rank;
  if (rank == 0) {
    info.gap = std::numeric_limits<double>::infinity();
  } else if (rank < s.size()) {
    // exact zeros are floored at machine precision so the gap stays finite
    const double floor = std::numeric_limits<double>::epsilon() * smax;
    info.gap = s[rank - 1] / std::max(s[rank], floor);
  } else {
    info.gap = s[rank - 1] / (tol * smax);
  }
  return info;
}

CMatrix null_space(const CMatrix& m, double tol) {
  if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
  // Full V is needed; pad short matrices with zero rows so V is square.
  CMatrix work = equilibrate_rows(m);
  if (work.rows() < work.cols()) {
    CMatrix padded = CMatrix::Zero(work.cols(), work.cols());
    padded.topRows(work.rows()) = work;
    work = std::move(padded);
  }
  Eigen::JacobiSVD<CMatrix> svd(work, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int rank = 0;
  while (rank < s.size() && s[0] > 0.0 && s[rank] > tol * s[0]) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

double condition_number(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  const double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Complex Rng::gaussian() {
  std::normal_distribution<double> d(0.0, std::sqrt(0.5));
  const double re = d(engine_);
  const double im = d(engine_);
  return {re, im};
}

Complex Rng::uniform_box() {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const double re = d(engine_);
  const double im = d(engine_);
  return {re, im};
}

Complex Rng::unit() {
  std::uniform_real_distribution<double> d(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, d(engine_));
}

CVector Rng::gaussian_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = gaussian();
  return v;
}

CVector Rng::uniform_box_vector(Eigen::Index n) {
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform_box();
  return v;
}

CMatrix Rng::unitary(Eigen::Index n) {
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = gaussian();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix the phases so the distribution is Haar
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace waring
