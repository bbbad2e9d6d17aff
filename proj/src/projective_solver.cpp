#include "waring/projective_solver.hpp"

#include <cmath>
#include <numbers>

#include "waring/error.hpp"

namespace waring {

namespace {

// gamma-scaled total-degree homotopy (1 - t) gamma G(y) + t F(y), G_i = y_i^{d_i} - 1,
// F_i(y) = eq_i(chart * (1, y)).
class TotalDegreeHomotopy final : public Homotopy {
 public:
  TotalDegreeHomotopy(const std::vector<HomogeneousPoly>& eqs, CMatrix chart, Complex gamma)
      : eqs_(eqs), chart_(std::move(chart)), gamma_(gamma) {
    for (const auto& e : eqs_) {
      std::vector<HomogeneousPoly> g;
      for (int h = 0; h < e.num_vars(); ++h) g.push_back(e.partial(h));
      gradients_.push_back(std::move(g));
    }
  }

  Eigen::Index dimension() const override { return static_cast<Eigen::Index>(eqs_.size()); }

  CVector evaluate(const CVector& y, double t) const override {
    return (1.0 - t) * gamma_ * start(y) + t * target(y);
  }

  CMatrix jacobian(const CVector& y, double t) const override {
    const Eigen::Index m = dimension();
    CMatrix js = CMatrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const int d = eqs_[static_cast<std::size_t>(i)].degree();
      js(i, i) = static_cast<double>(d) * std::pow(y[i], d - 1);
    }
    return (1.0 - t) * gamma_ * js + t * target_jacobian(y);
  }

  CVector time_derivative(const CVector& y, double) const override { return target(y) - gamma_ * start(y); }

  CVector lift(const CVector& y) const {
    CVector affine(y.size() + 1);
    affine[0] = 1.0;
    affine.tail(y.size()) = y;
    return chart_ * affine;
  }

 private:
  CVector start(const CVector& y) const {
    CVector g(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) g[i] = std::pow(y[i], eqs_[static_cast<std::size_t>(i)].degree()) - 1.0;
    return g;
  }

  CVector target(const CVector& y) const {
    const CVector x = lift(y);
    CVector f(dimension());
    for (Eigen::Index i = 0; i < dimension(); ++i) f[i] = eqs_[static_cast<std::size_t>(i)].eval(x);
    return f;
  }

  CMatrix target_jacobian(const CVector& y) const {
    const CVector x = lift(y);
    const Eigen::Index m = dimension();
    CMatrix jf(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::RowVectorXcd grad(x.size());
      for (Eigen::Index h = 0; h < x.size(); ++h) grad[h] = gradients_[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)].eval(x);
      jf.row(i) = grad * chart_.rightCols(m);
    }
    return jf;
  }

  std::vector<HomogeneousPoly> eqs_;
  std::vector<std::vector<HomogeneousPoly>> gradients_;
  CMatrix chart_;
  Complex gamma_;
};

void enumerate_starts(const std::vector<int>& degrees, std::size_t i, CVector& current, std::vector<CVector>& out) {
  if (i == degrees.size()) {
    out.push_back(current);
    return;
  }
  for (int m = 0; m < degrees[i]; ++m) {
    current[static_cast<Eigen::Index>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * m / degrees[i]);
    enumerate_starts(degrees, i + 1, current, out);
  }
}

}  // namespace

CVector normalize_last_nonzero(const CVector& p, double tol) {
  const double scale = p.norm();
  for (Eigen::Index h = p.size() - 1; h >= 0; --h) {
    if (std::abs(p[h]) > tol * scale) {
      CVector out = p / p[h];
      out[h] = 1.0;
      return out;
    }
  }
  throw Error(ErrorKind::Validation, "zero vector is not a projective point");
}

ProjectiveSolveResult solve_projective(const std::vector<HomogeneousPoly>& equations, std::uint64_t seed,
                                       const TrackerOptions& options) {
  if (equations.empty()) throw Error(ErrorKind::Validation, "no equations");
  const int nv = equations.front().num_vars();
  if (static_cast<int>(equations.size()) != nv - 1) {
    throw Error(ErrorKind::Validation, "need exactly num_vars - 1 homogeneous equations");
  }
  std::vector<HomogeneousPoly> eqs;
  std::vector<int> degrees;
  for (const auto& e : equations) {
    if (e.num_vars() != nv) throw Error(ErrorKind::Validation, "equations in different variables");
    if (e.degree() < 1) throw Error(ErrorKind::Validation, "equations must have positive degree");
    const double nrm = e.norm();
    if (nrm == 0.0) throw Error(ErrorKind::Validation, "zero equation");
    eqs.push_back((1.0 / nrm) * e);
    degrees.push_back(e.degree());
  }

  Rng rng(seed);
  const CMatrix chart = rng.unitary(nv);
  const TotalDegreeHomotopy homotopy(eqs, chart, rng.unit());

  std::vector<CVector> starts;
  CVector current(nv - 1);
  enumerate_starts(degrees, 0, current, starts);

  ProjectiveSolveResult out;
  out.paths = static_cast<int>(starts.size());
  for (const auto& s : starts) {
    const PathResult pr = track(homotopy, s, options);
    if (!pr.ok() || pr.residual > 1e-8) {
      ++out.failures;
      continue;
    }
    const CVector p = normalize_last_nonzero(homotopy.lift(pr.solution));
    bool duplicate = false;
    for (const auto& q : out.points) {
      if ((q - p).norm() <= 1e-8 * std::max(1.0, p.norm())) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.points.push_back(p);
  }
  return out;
}

}  // namespace waring
