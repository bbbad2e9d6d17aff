#include "waring/terracini.hpp"

#include <cmath>

#include "waring/error.hpp"
#include "waring/parallel.hpp"

namespace waring {

namespace {

Eigen::RowVectorXcd bombieri_scaled(const HomogeneousPoly& p) {
  const auto& b = p.basis();
  Eigen::RowVectorXcd out(p.coeffs().size());
  for (std::size_t i = 0; i < b.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = p.coeffs()[static_cast<Eigen::Index>(i)] / std::sqrt(b.multinomial(i));
  return out;
}

}  // namespace

TangentFrame tangent_frame(const LinearForm& form, const CVector& lambdas, const CaseSpec& spec) {
  const int r = spec.r();
  const int nv = spec.num_vars();
  if (form.num_vars() != nv) throw Error(ErrorKind::Validation, "linear form has wrong number of variables");
  if (lambdas.size() != r) throw Error(ErrorKind::Validation, "need one scalar per part");
  const auto N = static_cast<Eigen::Index>(spec.ambient_dimension());
  CMatrix gen = CMatrix::Zero(r + nv, N);
  Eigen::Index offset = 0;
  for (int j = 0; j < r; ++j) {
    const int a = spec.degrees()[j];
    const auto len = static_cast<Eigen::Index>(num_monomials(a, nv));
    gen.row(j).segment(offset, len) = bombieri_scaled(power_of_linear(form, a));
    const HomogeneousPoly lower = (lambdas[j] * static_cast<double>(a)) * power_of_linear(form, a - 1);
    for (int h = 0; h < nv; ++h) gen.row(r + h).segment(offset, len) = bombieri_scaled(lower.times_variable(h));
    offset += len;
  }
  return TangentFrame{form, lambdas, std::move(gen)};
}

CMatrix tangent_span_matrix(const CaseSpec& spec, int k, std::uint64_t seed, int workers) {
  if (k < 1) throw Error(ErrorKind::Validation, "k must be >= 1");
  const int rows_per = spec.r() + spec.num_vars();
  const auto N = static_cast<Eigen::Index>(spec.ambient_dimension());
  // Draw all points up front from one stream so the result is independent of `workers`.
  Rng rng(seed);
  std::vector<std::pair<CVector, CVector>> points;
  points.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    CVector l = rng.uniform_box_vector(spec.num_vars());
    CVector lam = rng.uniform_box_vector(spec.r());
    points.emplace_back(std::move(l), std::move(lam));
  }
  CMatrix stacked(static_cast<Eigen::Index>(k) * rows_per, N);
  parallel_for(static_cast<std::size_t>(k), workers, [&](std::size_t i) {
    const auto frame = tangent_frame(LinearForm(points[i].first), points[i].second, spec);
    stacked.middleRows(static_cast<Eigen::Index>(i) * rows_per, rows_per) = frame.generators;
  });
  return stacked;
}

DefectResult secant_defect(const CaseSpec& spec, int k, std::uint64_t seed, const DefectOptions& options) {
  DefectResult out;
  const auto N = spec.ambient_dimension();
  out.expected = static_cast<int>(std::min<std::int64_t>(static_cast<std::int64_t>(k) * (spec.r() + spec.n()), N));
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : mix_seed(seed, static_cast<std::uint64_t>(attempt));
    const RankInfo info = numerical_rank(tangent_span_matrix(spec, k, s, options.workers), options.tolerance);
    out.dim = info.rank;
    out.defect = out.expected - info.rank;
    out.gap = info.gap;
    out.attempts = attempt + 1;
    out.seed = s;
    if (!info.ambiguous()) {
      out.conclusive = true;
      return out;
    }
  }
  out.conclusive = false;
  return out;
}

}  // namespace waring
