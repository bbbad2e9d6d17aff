#pragma once

// Dense homogeneous polynomials over C, stored in graded-lex order
// (x0 > x1 > ... > xn), together with the apolar contraction action.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace waring {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  int num_vars() const { return static_cast<int>(exponents.size()); }
  bool operator==(const MultiIndex&) const = default;
};

/// Monomials of a fixed degree in a fixed number of variables.
///
/// Instances are shared and immutable; `get` caches one basis per (degree, num_vars)
/// so repeated lookups during matrix assembly are cheap.
class MonomialBasis {
 public:
  static const MonomialBasis& get(int degree, int num_vars);

  int degree() const { return degree_; }
  int num_vars() const { return num_vars_; }
  std::size_t size() const { return monomials_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }

  /// Position of a monomial of this basis' degree. Throws on mismatch.
  std::size_t position(const MultiIndex& m) const;
  std::size_t position(std::span<const int> exponents) const;

  /// d! / prod(alpha_h!) for monomial i.
  double multinomial(std::size_t i) const { return multinomials_[i]; }
  /// prod(alpha_h!) for monomial i.
  double factorial_product(std::size_t i) const { return factorial_products_[i]; }

  MonomialBasis(int degree, int num_vars);

 private:
  std::size_t rank_of(std::span<const int> exponents) const;

  int degree_;
  int num_vars_;
  std::vector<MultiIndex> monomials_;
  std::vector<double> multinomials_;
  std::vector<double> factorial_products_;
  // binom_[v][d] = number of monomials of degree d in v variables
  std::vector<std::vector<std::size_t>> count_;
};

/// Graded-lex list of the binom(d+n, n) exponent vectors of degree d in n+1 variables.
std::vector<MultiIndex> monomial_basis(int degree, int n);

std::size_t num_monomials(int degree, int num_vars);

class HomogeneousPoly {
 public:
  HomogeneousPoly(int num_vars, int degree);
  HomogeneousPoly(int num_vars, int degree, CVector coeffs);

  static HomogeneousPoly monomial(const MultiIndex& m, Complex c = 1.0);
  static HomogeneousPoly variable(int num_vars, int index);
  static HomogeneousPoly constant(int num_vars, Complex c);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  const CVector& coeffs() const { return coeffs_; }
  CVector& coeffs() { return coeffs_; }
  const MonomialBasis& basis() const { return MonomialBasis::get(degree_, num_vars_); }

  Complex coeff(const MultiIndex& m) const;
  Complex eval(std::span<const Complex> x) const;
  Complex eval(const CVector& x) const { return eval(std::span<const Complex>(x.data(), x.size())); }

  double norm() const { return coeffs_.norm(); }
  bool is_zero(double tol = 0.0) const;

  HomogeneousPoly operator+(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-(const HomogeneousPoly& o) const;
  HomogeneousPoly operator-() const;
  HomogeneousPoly& operator+=(const HomogeneousPoly& o);
  HomogeneousPoly& operator-=(const HomogeneousPoly& o);
  friend HomogeneousPoly operator*(Complex s, const HomogeneousPoly& p);
  friend HomogeneousPoly operator*(const HomogeneousPoly& p, const HomogeneousPoly& q);

  HomogeneousPoly times_variable(int h) const;
  /// d/dx_h.
  HomogeneousPoly partial(int h) const;
  /// p(M y): substitute x_h = sum_m M(h, m) y_m.
  HomogeneousPoly substitute(const CMatrix& change) const;

 private:
  int num_vars_;
  int degree_;
  CVector coeffs_;
};

class LinearForm {
 public:
  explicit LinearForm(CVector coeffs);
  /// x0 + sum_h l_h x_h.
  static LinearForm affine(std::span<const Complex> tail);

  int num_vars() const { return static_cast<int>(coeffs_.size()); }
  const CVector& coeffs() const { return coeffs_; }
  bool is_affine_normalized() const { return coeffs_.size() > 0 && coeffs_[0] == Complex(1.0, 0.0); }
  bool is_zero() const { return coeffs_.isZero(0.0); }
  Complex eval(std::span<const Complex> x) const;
  HomogeneousPoly as_poly() const;

 private:
  CVector coeffs_;
};

/// Vector (f_1, ..., f_r) with non-decreasing degrees, all in the same variables.
class PolyVector {
 public:
  PolyVector(int num_vars, std::vector<HomogeneousPoly> parts);

  int num_vars() const { return num_vars_; }
  int n() const { return num_vars_ - 1; }
  std::size_t size() const { return parts_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<HomogeneousPoly>& parts() const { return parts_; }
  const HomogeneousPoly& operator[](std::size_t j) const { return parts_[j]; }

  /// Sum of part lengths.
  std::size_t ambient_dimension() const;
  /// All coefficients concatenated in part order.
  CVector flatten() const;
  static PolyVector unflatten(int num_vars, const std::vector<int>& degrees, const CVector& flat);
  PolyVector substitute(const CMatrix& change) const;

 private:
  int num_vars_;
  std::vector<int> degrees_;
  std::vector<HomogeneousPoly> parts_;
};

/// Coefficients of l^d: multinomial(d; alpha) * prod c_h^alpha_h.
HomogeneousPoly power_of_linear(const LinearForm& form, int degree);

/// Derivative action of the dual monomial g on f: x^beta -> beta!/(beta-g)! x^(beta-g).
/// Throws Error(Validation) if deg g > deg f.
HomogeneousPoly apolar_contract(const HomogeneousPoly& f, const MultiIndex& g);
/// Bilinear extension to a full dual form: sum_g op_g * d^g f.
HomogeneousPoly apolar_contract(const HomogeneousPoly& f, const HomogeneousPoly& op);

/// Scalar pairing <f, op> for equal degrees: sum_alpha f_alpha op_alpha alpha!.
Complex apolar_pairing(const HomogeneousPoly& f, const HomogeneousPoly& op);

inline Complex eval(const HomogeneousPoly& p, std::span<const Complex> x) { return p.eval(x); }

/// prod c_h^alpha_h.
Complex monomial_value(const MultiIndex& m, std::span<const Complex> c);

}  // namespace waring
