#include "waring/polycore.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "waring/error.hpp"

namespace waring {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Validation: return "validation";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::DegenerateCase: return "degenerate-case";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Budget: return "budget";
  }
  return "unknown";
}

namespace {

double factorial(int m) {
  double r = 1.0;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

void enumerate(int remaining, int var, std::vector<int>& current, std::vector<MultiIndex>& out) {
  const int num_vars = static_cast<int>(current.size());
  if (var == num_vars - 1) {
    current[var] = remaining;
    out.push_back(MultiIndex{current});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate(remaining - e, var + 1, current, out);
  }
}

}  // namespace

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

std::size_t num_monomials(int degree, int num_vars) {
  if (degree < 0 || num_vars <= 0) return 0;
  // binom(degree + num_vars - 1, num_vars - 1)
  std::size_t r = 1;
  for (int i = 1; i < num_vars; ++i) r = r * static_cast<std::size_t>(degree + i) / static_cast<std::size_t>(i);
  return r;
}

MonomialBasis::MonomialBasis(int degree, int num_vars) : degree_(degree), num_vars_(num_vars) {
  if (degree < 0 || num_vars <= 0) {
    throw Error(ErrorKind::Validation, "monomial basis needs degree >= 0 and at least one variable");
  }
  std::vector<int> current(num_vars, 0);
  enumerate(degree, 0, current, monomials_);
  multinomials_.reserve(monomials_.size());
  factorial_products_.reserve(monomials_.size());
  const double dfact = factorial(degree);
  for (const auto& m : monomials_) {
    double fp = 1.0;
    for (int e : m.exponents) fp *= factorial(e);
    factorial_products_.push_back(fp);
    multinomials_.push_back(dfact / fp);
  }
  count_.assign(num_vars + 1, std::vector<std::size_t>(degree + 1, 0));
  for (int v = 1; v <= num_vars; ++v)
    for (int d = 0; d <= degree; ++d) count_[v][d] = num_monomials(d, v);
}

const MonomialBasis& MonomialBasis::get(int degree, int num_vars) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<const MonomialBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{degree, num_vars}];
  if (!slot) slot = std::make_unique<const MonomialBasis>(degree, num_vars);
  return *slot;
}

std::size_t MonomialBasis::rank_of(std::span<const int> e) const {
  std::size_t pos = 0;
  int remaining = degree_;
  for (int var = 0; var + 1 < num_vars_; ++var) {
    const int vars_left = num_vars_ - var - 1;
    // monomials whose exponent at `var` exceeds e[var] come first
    for (int larger = remaining; larger > e[var]; --larger) pos += count_[vars_left][remaining - larger];
    remaining -= e[var];
  }
  return pos;
}

std::size_t MonomialBasis::position(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != num_vars_) {
    throw Error(ErrorKind::Validation, "monomial has wrong number of variables");
  }
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw Error(ErrorKind::Validation, "negative exponent");
    total += e;
  }
  if (total != degree_) throw Error(ErrorKind::Validation, "monomial degree does not match basis degree");
  return rank_of(exponents);
}

std::size_t MonomialBasis::position(const MultiIndex& m) const { return position(std::span<const int>(m.exponents)); }

std::vector<MultiIndex> monomial_basis(int degree, int n) { return MonomialBasis::get(degree, n + 1).monomials(); }

Complex monomial_value(const MultiIndex& m, std::span<const Complex> c) {
  Complex r = 1.0;
  for (std::size_t h = 0; h < m.exponents.size(); ++h)
    for (int p = 0; p < m.exponents[h]; ++p) r *= c[h];
  return r;
}

// ---------------------------------------------------------------------------

HomogeneousPoly::HomogeneousPoly(int num_vars, int degree)
    : num_vars_(num_vars), degree_(degree), coeffs_(CVector::Zero(static_cast<Eigen::Index>(num_monomials(degree, num_vars)))) {
  if (num_vars <= 0 || degree < 0) throw Error(ErrorKind::Validation, "polynomial needs degree >= 0 and num_vars >= 1");
}

HomogeneousPoly::HomogeneousPoly(int num_vars, int degree, CVector coeffs)
    : num_vars_(num_vars), degree_(degree), coeffs_(std::move(coeffs)) {
  if (num_vars <= 0 || degree < 0) throw Error(ErrorKind::Validation, "polynomial needs degree >= 0 and num_vars >= 1");
  if (static_cast<std::size_t>(coeffs_.size()) != num_monomials(degree, num_vars)) {
    throw Error(ErrorKind::Validation, "coefficient vector length " + std::to_string(coeffs_.size()) +
                                           " does not match binom(d+n, n) = " +
                                           std::to_string(num_monomials(degree, num_vars)));
  }
}

HomogeneousPoly HomogeneousPoly::monomial(const MultiIndex& m, Complex c) {
  HomogeneousPoly p(m.num_vars(), m.degree());
  p.coeffs_[static_cast<Eigen::Index>(p.basis().position(m))] = c;
  return p;
}

HomogeneousPoly HomogeneousPoly::variable(int num_vars, int index) {
  MultiIndex m{std::vector<int>(num_vars, 0)};
  m.exponents[index] = 1;
  return monomial(m);
}

HomogeneousPoly HomogeneousPoly::constant(int num_vars, Complex c) {
  HomogeneousPoly p(num_vars, 0);
  p.coeffs_[0] = c;
  return p;
}

Complex HomogeneousPoly::coeff(const MultiIndex& m) const {
  return coeffs_[static_cast<Eigen::Index>(basis().position(m))];
}

Complex HomogeneousPoly::eval(std::span<const Complex> x) const {
  if (static_cast<int>(x.size()) != num_vars_) throw Error(ErrorKind::Validation, "point has wrong length");
  // powers[h][p] = x_h^p
  std::vector<std::vector<Complex>> powers(num_vars_, std::vector<Complex>(degree_ + 1, 1.0));
  for (int h = 0; h < num_vars_; ++h)
    for (int p = 1; p <= degree_; ++p) powers[h][p] = powers[h][p - 1] * x[h];
  const auto& b = basis();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (coeffs_[static_cast<Eigen::Index>(i)] == Complex(0.0)) continue;
    Complex term = coeffs_[static_cast<Eigen::Index>(i)];
    const auto& e = b[i].exponents;
    for (int h = 0; h < num_vars_; ++h) term *= powers[h][e[h]];
    sum += term;
  }
  return sum;
}

bool HomogeneousPoly::is_zero(double tol) const { return coeffs_.cwiseAbs().maxCoeff() <= tol; }

namespace {
void require_same_space(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.num_vars() != b.num_vars() || a.degree() != b.degree()) {
    throw Error(ErrorKind::Validation, "polynomials live in different spaces");
  }
}
}  // namespace

HomogeneousPoly HomogeneousPoly::operator+(const HomogeneousPoly& o) const {
  require_same_space(*this, o);
  return HomogeneousPoly(num_vars_, degree_, coeffs_ + o.coeffs_);
}

HomogeneousPoly HomogeneousPoly::operator-(const HomogeneousPoly& o) const {
  require_same_space(*this, o);
  return HomogeneousPoly(num_vars_, degree_, coeffs_ - o.coeffs_);
}

HomogeneousPoly HomogeneousPoly::operator-() const { return HomogeneousPoly(num_vars_, degree_, -coeffs_); }

HomogeneousPoly& HomogeneousPoly::operator+=(const HomogeneousPoly& o) {
  require_same_space(*this, o);
  coeffs_ += o.coeffs_;
  return *this;
}

HomogeneousPoly& HomogeneousPoly::operator-=(const HomogeneousPoly& o) {
  require_same_space(*this, o);
  coeffs_ -= o.coeffs_;
  return *this;
}

HomogeneousPoly operator*(Complex s, const HomogeneousPoly& p) {
  return HomogeneousPoly(p.num_vars_, p.degree_, s * p.coeffs_);
}

HomogeneousPoly operator*(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.num_vars_ != q.num_vars_) throw Error(ErrorKind::Validation, "product of polynomials in different variables");
  HomogeneousPoly out(p.num_vars_, p.degree_ + q.degree_);
  const auto& bp = p.basis();
  const auto& bq = q.basis();
  const auto& bo = out.basis();
  std::vector<int> e(p.num_vars_);
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const Complex a = p.coeffs_[static_cast<Eigen::Index>(i)];
    if (a == Complex(0.0)) continue;
    for (std::size_t j = 0; j < bq.size(); ++j) {
      const Complex b = q.coeffs_[static_cast<Eigen::Index>(j)];
      if (b == Complex(0.0)) continue;
      for (int h = 0; h < p.num_vars_; ++h) e[h] = bp[i].exponents[h] + bq[j].exponents[h];
      out.coeffs_[static_cast<Eigen::Index>(bo.position(std::span<const int>(e)))] += a * b;
    }
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::times_variable(int h) const {
  HomogeneousPoly out(num_vars_, degree_ + 1);
  const auto& b = basis();
  const auto& bo = out.basis();
  std::vector<int> e(num_vars_);
  for (std::size_t i = 0; i < b.size(); ++i) {
    e = b[i].exponents;
    ++e[h];
    out.coeffs_[static_cast<Eigen::Index>(bo.position(std::span<const int>(e)))] = coeffs_[static_cast<Eigen::Index>(i)];
  }
  return out;
}

HomogeneousPoly HomogeneousPoly::partial(int h) const {
  MultiIndex g{std::vector<int>(num_vars_, 0)};
  g.exponents[h] = 1;
  if (degree_ == 0) return HomogeneousPoly(num_vars_, 0);
  return apolar_contract(*this, g);
}

HomogeneousPoly HomogeneousPoly::substitute(const CMatrix& change) const {
  if (change.rows() != num_vars_ || change.cols() != num_vars_) {
    throw Error(ErrorKind::Validation, "change of variables has wrong shape");
  }
  std::vector<HomogeneousPoly> images;
  images.reserve(num_vars_);
  for (int h = 0; h < num_vars_; ++h) {
    HomogeneousPoly img(num_vars_, 1);
    for (int m = 0; m < num_vars_; ++m) img.coeffs_[m] = change(h, m);
    images.push_back(std::move(img));
  }
  // powers[h][p] = image_h^p
  std::vector<std::vector<HomogeneousPoly>> powers(num_vars_);
  for (int h = 0; h < num_vars_; ++h) {
    powers[h].push_back(constant(num_vars_, 1.0));
    for (int p = 1; p <= degree_; ++p) powers[h].push_back(powers[h].back() * images[h]);
  }
  HomogeneousPoly out(num_vars_, degree_);
  const auto& b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex c = coeffs_[static_cast<Eigen::Index>(i)];
    if (c == Complex(0.0)) continue;
    HomogeneousPoly term = constant(num_vars_, c);
    for (int h = 0; h < num_vars_; ++h)
      if (b[i].exponents[h] > 0) term = term * powers[h][b[i].exponents[h]];
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------

LinearForm::LinearForm(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw Error(ErrorKind::Validation, "linear form needs at least one variable");
}

LinearForm LinearForm::affine(std::span<const Complex> tail) {
  CVector c(static_cast<Eigen::Index>(tail.size() + 1));
  c[0] = 1.0;
  for (std::size_t h = 0; h < tail.size(); ++h) c[static_cast<Eigen::Index>(h + 1)] = tail[h];
  return LinearForm(std::move(c));
}

Complex LinearForm::eval(std::span<const Complex> x) const {
  if (static_cast<Eigen::Index>(x.size()) != coeffs_.size()) throw Error(ErrorKind::Validation, "point has wrong length");
  Complex s = 0.0;
  for (Eigen::Index h = 0; h < coeffs_.size(); ++h) s += coeffs_[h] * x[static_cast<std::size_t>(h)];
  return s;
}

HomogeneousPoly LinearForm::as_poly() const {
  return HomogeneousPoly(num_vars(), 1, coeffs_);
}

// ---------------------------------------------------------------------------

PolyVector::PolyVector(int num_vars, std::vector<HomogeneousPoly> parts) : num_vars_(num_vars), parts_(std::move(parts)) {
  if (parts_.empty()) throw Error(ErrorKind::Validation, "polynomial vector needs at least one part");
  for (const auto& p : parts_) {
    if (p.num_vars() != num_vars_) throw Error(ErrorKind::Validation, "parts do not share the same variables");
    degrees_.push_back(p.degree());
  }
  if (!std::is_sorted(degrees_.begin(), degrees_.end())) {
    throw Error(ErrorKind::Validation, "part degrees must be non-decreasing");
  }
}

std::size_t PolyVector::ambient_dimension() const {
  std::size_t n = 0;
  for (const auto& p : parts_) n += static_cast<std::size_t>(p.coeffs().size());
  return n;
}

CVector PolyVector::flatten() const {
  CVector flat(static_cast<Eigen::Index>(ambient_dimension()));
  Eigen::Index offset = 0;
  for (const auto& p : parts_) {
    flat.segment(offset, p.coeffs().size()) = p.coeffs();
    offset += p.coeffs().size();
  }
  return flat;
}

PolyVector PolyVector::unflatten(int num_vars, const std::vector<int>& degrees, const CVector& flat) {
  std::vector<HomogeneousPoly> parts;
  Eigen::Index offset = 0;
  for (int d : degrees) {
    const auto len = static_cast<Eigen::Index>(num_monomials(d, num_vars));
    if (offset + len > flat.size()) throw Error(ErrorKind::Validation, "flat coefficient vector too short");
    parts.emplace_back(num_vars, d, CVector(flat.segment(offset, len)));
    offset += len;
  }
  if (offset != flat.size()) throw Error(ErrorKind::Validation, "flat coefficient vector too long");
  return PolyVector(num_vars, std::move(parts));
}

PolyVector PolyVector::substitute(const CMatrix& change) const {
  std::vector<HomogeneousPoly> parts;
  parts.reserve(parts_.size());
  for (const auto& p : parts_) parts.push_back(p.substitute(change));
  return PolyVector(num_vars_, std::move(parts));
}

// ---------------------------------------------------------------------------

HomogeneousPoly power_of_linear(const LinearForm& form, int degree) {
  if (degree < 0) throw Error(ErrorKind::Validation, "negative power");
  const int nv = form.num_vars();
  HomogeneousPoly out(nv, degree);
  const auto& b = out.basis();
  const auto& c = form.coeffs();
  std::vector<std::vector<Complex>> powers(nv, std::vector<Complex>(degree + 1, 1.0));
  for (int h = 0; h < nv; ++h)
    for (int p = 1; p <= degree; ++p) powers[h][p] = powers[h][p - 1] * c[h];
  for (std::size_t i = 0; i < b.size(); ++i) {
    Complex v = b.multinomial(i);
    for (int h = 0; h < nv; ++h) v *= powers[h][b[i].exponents[h]];
    out.coeffs()[static_cast<Eigen::Index>(i)] = v;
  }
  return out;
}

HomogeneousPoly apolar_contract(const HomogeneousPoly& f, const MultiIndex& g) {
  if (g.num_vars() != f.num_vars()) throw Error(ErrorKind::Validation, "dual monomial has wrong number of variables");
  const int e = g.degree();
  if (e > f.degree()) {
    throw Error(ErrorKind::Validation, "cannot contract a degree-" + std::to_string(f.degree()) +
                                           " form by a degree-" + std::to_string(e) + " operator");
  }
  const int nv = f.num_vars();
  HomogeneousPoly out(nv, f.degree() - e);
  const auto& bf = f.basis();
  const auto& bo = out.basis();
  std::vector<int> rest(nv);
  for (std::size_t i = 0; i < bf.size(); ++i) {
    const Complex c = f.coeffs()[static_cast<Eigen::Index>(i)];
    if (c == Complex(0.0)) continue;
    const auto& beta = bf[i].exponents;
    double falling = 1.0;
    bool divisible = true;
    for (int h = 0; h < nv && divisible; ++h) {
      if (g.exponents[h] > beta[h]) {
        divisible = false;
        break;
      }
      for (int p = 0; p < g.exponents[h]; ++p) falling *= beta[h] - p;
      rest[h] = beta[h] - g.exponents[h];
    }
    if (!divisible) continue;
    out.coeffs()[static_cast<Eigen::Index>(bo.position(std::span<const int>(rest)))] += falling * c;
  }
  return out;
}

HomogeneousPoly apolar_contract(const HomogeneousPoly& f, const HomogeneousPoly& op) {
  if (op.num_vars() != f.num_vars()) throw Error(ErrorKind::Validation, "operator has wrong number of variables");
  if (op.degree() > f.degree()) throw Error(ErrorKind::Validation, "operator degree exceeds form degree");
  HomogeneousPoly out(f.num_vars(), f.degree() - op.degree());
  const auto& b = op.basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Complex c = op.coeffs()[static_cast<Eigen::Index>(i)];
    if (c == Complex(0.0)) continue;
    out += c * apolar_contract(f, b[i]);
  }
  return out;
}

Complex apolar_pairing(const HomogeneousPoly& f, const HomogeneousPoly& op) {
  require_same_space(f, op);
  const auto& b = f.basis();
  Complex s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    s += f.coeffs()[static_cast<Eigen::Index>(i)] * op.coeffs()[static_cast<Eigen::Index>(i)] * b.factorial_product(i);
  return s;
}

}  // namespace waring
