#include "waring/apolarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "waring/error.hpp"
#include "waring/projective_solver.hpp"

namespace waring {

// ---------------------------------------------------------------------------
// bundles

BundleSpec BundleSpec::line_bundle(int twist, int kernel_dim) {
  if (twist < 1 || kernel_dim < 1) throw Error(ErrorKind::Validation, "line bundle needs twist >= 1 and kernel >= 1");
  BundleSpec b;
  b.kind = BundleKind::LineBundle;
  b.twist = twist;
  b.expected_kernel_dim = kernel_dim;
  int points = 1;
  for (int i = 0; i < kernel_dim; ++i) points *= twist;
  b.expected_points = points;
  return b;
}

BundleSpec BundleSpec::quotient_twist(int twist, int kernel_dim) {
  if (twist < 0 || kernel_dim < 1) throw Error(ErrorKind::Validation, "quotient twist needs e >= 0 and kernel >= 1");
  BundleSpec b;
  b.kind = BundleKind::QuotientTwist;
  b.twist = twist;
  b.expected_kernel_dim = kernel_dim;
  const int c2 = twist * twist + twist + 1;
  int points = 1;
  for (int i = 0; i < kernel_dim; ++i) points *= c2;
  b.expected_points = points;
  return b;
}

std::string BundleSpec::name() const {
  std::ostringstream os;
  os << (kind == BundleKind::LineBundle ? "line:" : "quotient:") << twist << ":" << expected_kernel_dim;
  return os.str();
}

BundleSpec BundleSpec::parse(const std::string& text) {
  std::vector<std::string> fields;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) fields.push_back(item);
  if (fields.size() < 2 || fields.size() > 3) {
    throw Error(ErrorKind::Validation, "bundle must look like line:<e>[:<kernel>] or quotient:<e>[:<kernel>]");
  }
  int twist = 0;
  int kernel = 1;
  try {
    twist = std::stoi(fields[1]);
    if (fields.size() == 3) kernel = std::stoi(fields[2]);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Validation, "bundle twist and kernel dimension must be integers");
  }
  if (fields[0] == "line") return line_bundle(twist, kernel);
  if (fields[0] == "quotient") return quotient_twist(twist, kernel);
  throw Error(ErrorKind::Validation, "unknown bundle kind '" + fields[0] + "'");
}

std::optional<BundleSpec> bundle_for_case(const CaseSpec& spec) {
  const auto& a = spec.degrees();
  if (spec.n() == 1) {
    if (binary_identifiable(1, a)) return BundleSpec::line_bundle(*spec.k(), 1);
    return std::nullopt;
  }
  if (spec.n() != 2) return std::nullopt;
  if (a == std::vector<int>{2, 2, 2, 2} || a == std::vector<int>{2, 3}) return BundleSpec::line_bundle(2, 2);
  if (a == std::vector<int>{3, 3, 4}) return BundleSpec::quotient_twist(2, 1);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// contraction matrices

RankInfo ContractionMatrix::rank(double tol) const { return numerical_rank(entries, tol); }

CMatrix ContractionMatrix::kernel(double tol) const {
  if (rows_are_source) return null_space(entries.transpose(), tol);
  return null_space(entries, tol);
}

ContractionMatrix catalecticant(const PolyVector& f, int e) {
  const auto& a = f.degrees();
  if (e < 1 || e > a.back()) {
    throw Error(ErrorKind::OutOfRange, "catalecticant order e=" + std::to_string(e) + " outside [1, " +
                                           std::to_string(a.back()) + "]");
  }
  const int nv = f.num_vars();
  const auto& source = MonomialBasis::get(e, nv);
  Eigen::Index rows = 0;
  for (int d : a)
    if (d >= e) rows += static_cast<Eigen::Index>(num_monomials(d - e, nv));
  CMatrix m = CMatrix::Zero(rows, static_cast<Eigen::Index>(source.size()));
  for (std::size_t c = 0; c < source.size(); ++c) {
    Eigen::Index offset = 0;
    for (const auto& part : f.parts()) {
      if (part.degree() < e) continue;
      const HomogeneousPoly img = apolar_contract(part, source[c]);
      m.col(static_cast<Eigen::Index>(c)).segment(offset, img.coeffs().size()) = img.coeffs();
      offset += img.coeffs().size();
    }
  }
  std::ostringstream target;
  target << "sum of Sym^{a_j-" << e << "} (dim " << rows << ")";
  const Eigen::Index kernel_guess = std::max<Eigen::Index>(1, m.cols() - m.rows());
  return ContractionMatrix{std::move(m),
                           "Sym^" + std::to_string(e) + " dual (dim " + std::to_string(source.size()) + ")",
                           target.str(),
                           CaseSpec(std::max(1, f.n()), f.degrees()),
                           BundleSpec::line_bundle(e, static_cast<int>(kernel_guess)),
                           false};
}

// ---------------------------------------------------------------------------
// quotient bundle sections

QuotientSection QuotientSection::euler(const HomogeneousPoly& h) {
  if (h.num_vars() != 3) throw Error(ErrorKind::Validation, "quotient sections live on P^2");
  return QuotientSection{{h.times_variable(0), h.times_variable(1), h.times_variable(2)}};
}

QuotientSection QuotientSection::operator+(const QuotientSection& o) const {
  return QuotientSection{{lift[0] + o.lift[0], lift[1] + o.lift[1], lift[2] + o.lift[2]}};
}

QuotientSection operator*(Complex s, const QuotientSection& q) {
  return QuotientSection{{s * q.lift[0], s * q.lift[1], s * q.lift[2]}};
}

std::array<HomogeneousPoly, 3> QuotientSection::minors() const {
  const auto& g = lift;
  return {g[2].times_variable(1) - g[1].times_variable(2),
          g[0].times_variable(2) - g[2].times_variable(0),
          g[1].times_variable(0) - g[0].times_variable(1)};
}

std::size_t quotient_section_dim(int e) {
  if (e < 0) return 0;
  return 3 * num_monomials(e, 3) - num_monomials(e - 1, 3);
}

std::vector<QuotientSection> quotient_basis(int e) {
  if (e < 0) throw Error(ErrorKind::Validation, "negative twist");
  const auto& b = MonomialBasis::get(e, 3);
  const HomogeneousPoly zero(3, e);
  std::vector<QuotientSection> out;
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back({{HomogeneousPoly::monomial(b[i]), zero, zero}});
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back({{zero, HomogeneousPoly::monomial(b[i]), zero}});
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i].exponents[2] == 0) out.push_back({{zero, zero, HomogeneousPoly::monomial(b[i])}});
  return out;
}

HomogeneousPoly quotient_pairing(const QuotientSection& g, const QuotientSection& h) {
  const auto& G = g.lift;
  const auto& H = h.lift;
  // x0 (g1 h2 - g2 h1) - x1 (g0 h2 - g2 h0) + x2 (g0 h1 - g1 h0)
  return (G[1] * H[2] - G[2] * H[1]).times_variable(0) - (G[0] * H[2] - G[2] * H[0]).times_variable(1) +
         (G[0] * H[1] - G[1] * H[0]).times_variable(2);
}

QuotientSection section_from_coordinates(const CVector& coords, int e) {
  const auto basis = quotient_basis(e);
  if (static_cast<std::size_t>(coords.size()) != basis.size()) {
    throw Error(ErrorKind::Validation, "section coordinates have wrong length");
  }
  QuotientSection s{{HomogeneousPoly(3, e), HomogeneousPoly(3, e), HomogeneousPoly(3, e)}};
  for (std::size_t i = 0; i < basis.size(); ++i) s = s + coords[static_cast<Eigen::Index>(i)] * basis[i];
  return s;
}

ContractionMatrix nonabelian_matrix(const PolyVector& f, const BundleSpec& bundle) {
  if (bundle.kind == BundleKind::LineBundle) {
    ContractionMatrix m = catalecticant(f, bundle.twist);
    m.bundle = bundle;
    return m;
  }
  const int e = bundle.twist;
  if (f.num_vars() != 3) throw Error(ErrorKind::Validation, "quotient bundle matrices need forms on P^2");
  if (e > f.degrees().front() - 1) {
    throw Error(ErrorKind::Validation, "quotient twist " + std::to_string(e) + " needs every degree >= " +
                                           std::to_string(e + 1));
  }
  const auto source = quotient_basis(e);
  std::vector<std::vector<QuotientSection>> targets;
  Eigen::Index cols = 0;
  for (int a : f.degrees()) {
    targets.push_back(quotient_basis(a - e - 1));
    cols += static_cast<Eigen::Index>(targets.back().size());
  }
  CMatrix m(static_cast<Eigen::Index>(source.size()), cols);
  for (std::size_t s = 0; s < source.size(); ++s) {
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      for (const auto& h : targets[j]) {
        m(static_cast<Eigen::Index>(s), col++) = apolar_pairing(f[j], quotient_pairing(source[s], h));
      }
    }
  }
  std::ostringstream target;
  target << "sum of H0(Q(a_j-" << e + 1 << ")) Euler-presented (dim " << cols << ")";
  return ContractionMatrix{std::move(m),
                           "H0(Q(" + std::to_string(e) + ")) Euler-presented (dim " + std::to_string(source.size()) + ")",
                           target.str(),
                           CaseSpec(2, f.degrees()),
                           bundle,
                           true};
}

// ---------------------------------------------------------------------------
// base loci

namespace {

double relative_value(const HomogeneousPoly& p, const CVector& point) {
  const double pn = p.norm();
  if (pn == 0.0) return 0.0;
  const CVector unit = point / point.norm();
  return std::abs(p.eval(unit)) / pn;
}

// Newton polish of a root of a binary form in the chart where the largest coordinate is 1.
CVector polish_binary_root(const HomogeneousPoly& g, CVector p) {
  const int free = std::abs(p[0]) >= std::abs(p[1]) ? 1 : 0;
  const int fixed = 1 - free;
  p /= p[fixed];
  const HomogeneousPoly dg = g.partial(free);
  for (int it = 0; it < 4; ++it) {
    const Complex d = dg.eval(p);
    if (std::abs(d) == 0.0) break;
    const Complex step = g.eval(p) / d;
    p[free] -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(p[free]))) break;
  }
  return normalize_last_nonzero(p);
}

}  // namespace

std::vector<CVector> binary_roots(const HomogeneousPoly& g) {
  if (g.num_vars() != 2) throw Error(ErrorKind::Validation, "binary_roots needs a form in two variables");
  const int k = g.degree();
  const CVector& c = g.coeffs();  // c[m] multiplies x0^{k-m} x1^m
  const double scale = c.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw Error(ErrorKind::Validation, "zero binary form has no isolated roots");
  std::vector<CVector> roots;
  int lead = 0;
  while (lead < k && std::abs(c[lead]) <= 1e-12 * scale) ++lead;
  if (lead > 0) roots.push_back((CVector(2) << 1.0, 0.0).finished());
  const int deg = k - lead;
  if (deg > 0) {
    // p(z) = sum_m c[m] z^{k-m}, monic after dividing by c[lead]
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[k - i] / c[lead];
    Eigen::ComplexEigenSolver<CMatrix> eig(companion, false);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
      CVector p(2);
      p << eig.eigenvalues()[i], 1.0;
      roots.push_back(polish_binary_root(g, p));
    }
  }
  return roots;
}

std::vector<CVector> base_locus(const std::vector<HomogeneousPoly>& kernel, const BundleSpec& bundle,
                                const BaseLocusOptions& options) {
  if (static_cast<int>(kernel.size()) != bundle.expected_kernel_dim) {
    throw Error(ErrorKind::Numerical, "kernel dimension " + std::to_string(kernel.size()) + " != expected " +
                                          std::to_string(bundle.expected_kernel_dim) + " (degenerate f; resample)");
  }
  if (kernel.empty()) throw Error(ErrorKind::Validation, "empty kernel");
  const int nv = kernel.front().num_vars();
  std::vector<CVector> candidates;
  if (nv == 2) {
    if (kernel.size() != 1) throw Error(ErrorKind::Validation, "binary base locus takes a single kernel form");
    candidates = binary_roots(kernel.front());
  } else {
    if (static_cast<int>(kernel.size()) != nv - 1) {
      throw Error(ErrorKind::Validation, "line-bundle base locus needs exactly n kernel forms");
    }
    candidates = solve_projective(kernel, options.seed).points;
  }
  std::vector<CVector> points;
  for (const auto& p : candidates) {
    double worst = 0.0;
    for (const auto& q : kernel) worst = std::max(worst, relative_value(q, p));
    if (worst < options.residual_tolerance) points.push_back(p);
  }
  if (static_cast<int>(points.size()) != bundle.expected_points) {
    throw Error(ErrorKind::Numerical, "base locus has " + std::to_string(points.size()) + " points, expected " +
                                          std::to_string(bundle.expected_points) +
                                          " (positive-dimensional base locus or special f)");
  }
  return points;
}

std::vector<CVector> base_locus(const std::vector<QuotientSection>& kernel, const BundleSpec& bundle,
                                const BaseLocusOptions& options) {
  if (bundle.kind != BundleKind::QuotientTwist) throw Error(ErrorKind::Validation, "expected a quotient bundle");
  if (static_cast<int>(kernel.size()) != bundle.expected_kernel_dim) {
    throw Error(ErrorKind::Numerical, "kernel dimension " + std::to_string(kernel.size()) + " != expected " +
                                          std::to_string(bundle.expected_kernel_dim) + " (degenerate f; resample)");
  }
  std::vector<HomogeneousPoly> minors;
  for (const auto& s : kernel)
    for (auto& m : s.minors()) {
      const double nrm = m.norm();
      if (nrm > 0.0) minors.push_back((1.0 / nrm) * m);
    }
  if (minors.size() < 2) throw Error(ErrorKind::Numerical, "kernel section is an Euler lift");
  Rng rng(mix_seed(options.seed, 5));
  std::vector<HomogeneousPoly> system;
  for (int c = 0; c < 2; ++c) {
    HomogeneousPoly comb(3, minors.front().degree());
    for (const auto& m : minors) comb += rng.gaussian() * m;
    system.push_back(std::move(comb));
  }
  const auto candidates = solve_projective(system, mix_seed(options.seed, 6)).points;
  std::vector<CVector> points;
  for (const auto& p : candidates) {
    double worst = 0.0;
    for (const auto& m : minors) worst = std::max(worst, relative_value(m, p));
    if (worst < options.residual_tolerance) points.push_back(p);
  }
  if (static_cast<int>(points.size()) != bundle.expected_points) {
    throw Error(ErrorKind::Numerical, "base locus has " + std::to_string(points.size()) + " points, expected " +
                                          std::to_string(bundle.expected_points) +
                                          " (positive-dimensional base locus or special f)");
  }
  return points;
}

// ---------------------------------------------------------------------------
// recovery

CMatrix solve_lambdas(const PolyVector& f, const std::vector<LinearForm>& forms) {
  const auto k = static_cast<Eigen::Index>(forms.size());
  CMatrix lambdas(k, static_cast<Eigen::Index>(f.size()));
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& basis = f[j].basis();
    const auto len = static_cast<Eigen::Index>(basis.size());
    Eigen::VectorXd weight(len);
    for (Eigen::Index i = 0; i < len; ++i) weight[i] = 1.0 / std::sqrt(basis.multinomial(static_cast<std::size_t>(i)));
    CMatrix a(len, k);
    for (Eigen::Index i = 0; i < k; ++i)
      a.col(i) = weight.cwiseProduct(power_of_linear(forms[static_cast<std::size_t>(i)], f[j].degree()).coeffs());
    const CVector b = weight.cwiseProduct(f[j].coeffs());
    Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cond = s[s.size() - 1] > 0.0 ? s[0] / s[s.size() - 1] : std::numeric_limits<double>::infinity();
    if (len < k || cond > kLambdaConditionLimit) {
      throw Error(ErrorKind::Numerical, "lambda solve for part " + std::to_string(j + 1) +
                                            " is ill-conditioned (condition number " + std::to_string(cond) + ")");
    }
    lambdas.col(static_cast<Eigen::Index>(j)) = svd.solve(b);
  }
  return lambdas;
}

WaringDecomposition decompose(const PolyVector& f, const BundleSpec& bundle, const DecomposeOptions& options) {
  const ContractionMatrix m = nonabelian_matrix(f, bundle);
  const RankInfo info = m.rank(options.tolerance);
  if (info.ambiguous()) {
    throw Error(ErrorKind::Numerical, "ambiguous numerical rank of the contraction matrix (gap " +
                                          std::to_string(info.gap) + ")");
  }
  const CMatrix ker = m.kernel(options.tolerance);
  if (ker.cols() != bundle.expected_kernel_dim) {
    throw Error(ErrorKind::Numerical, "kernel dimension " + std::to_string(ker.cols()) + " != expected " +
                                          std::to_string(bundle.expected_kernel_dim) + " (degenerate f; resample)");
  }
  const BaseLocusOptions bl{options.seed, 1e-8};
  std::vector<CVector> points;
  if (bundle.kind == BundleKind::LineBundle) {
    std::vector<HomogeneousPoly> forms;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) forms.emplace_back(f.num_vars(), bundle.twist, CVector(ker.col(c)));
    points = base_locus(forms, bundle, bl);
  } else {
    std::vector<QuotientSection> sections;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) sections.push_back(section_from_coordinates(ker.col(c), bundle.twist));
    points = base_locus(sections, bundle, bl);
  }
  WaringDecomposition dec;
  for (const auto& p : points) dec.forms.emplace_back(p);
  dec.lambdas = solve_lambdas(f, dec.forms);
  dec = canonicalize(dec, f.degrees());
  dec.residual = reconstruction_residual(dec, f);
  return dec;
}

ForwardSample forward_construct(int n, const std::vector<int>& degrees, int k, std::uint64_t seed) {
  Rng rng(seed);
  WaringDecomposition truth;
  truth.lambdas.resize(k, static_cast<Eigen::Index>(degrees.size()));
  for (int i = 0; i < k; ++i) {
    truth.forms.emplace_back(rng.gaussian_vector(n + 1));
    for (std::size_t j = 0; j < degrees.size(); ++j) truth.lambdas(i, static_cast<Eigen::Index>(j)) = rng.gaussian();
  }
  std::vector<int> sorted = degrees;
  std::sort(sorted.begin(), sorted.end());
  PolyVector f = reconstruct(truth, n + 1, sorted);
  truth = canonicalize(truth, sorted);
  truth.residual = 0.0;
  return ForwardSample{std::move(f), std::move(truth)};
}

}  // namespace waring
