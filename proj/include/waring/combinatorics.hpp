#pragma once

// Exact counting for perfect cases: the square-system condition, closed-form
// decomposition counts for vectors of equal-degree forms, and the lower bound
// for pairs of ternary forms of degrees (2t, 2t+1).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace waring {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::int64_t n, std::int64_t k);

/// Degree signature on P^n. Degrees are sorted ascending on construction.
class CaseSpec {
 public:
  CaseSpec(int n, std::vector<int> degrees);

  int n() const { return n_; }
  int num_vars() const { return n_ + 1; }
  int r() const { return static_cast<int>(degrees_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  /// sum binom(a_i + n, n)
  std::int64_t ambient_dimension() const { return ambient_; }
  /// N / (r + n) when it divides exactly.
  std::optional<int> k() const { return k_; }
  bool is_perfect() const { return k_.has_value(); }
  /// k, or Error(Validation) for non-perfect cases.
  int require_k() const;

  std::string label() const;
  bool operator==(const CaseSpec&) const = default;

 private:
  int n_;
  std::vector<int> degrees_;
  std::int64_t ambient_;
  std::optional<int> k_;
};

std::optional<int> is_perfect(int n, const std::vector<int>& degrees);

/// (3t-2)(t-1)/2 + 1
std::int64_t pair_lower_bound(int t);

struct VeroneseCount {
  BigInt count;  // binom(d^n, s)
  int s;         // binom(d+n, n) - n; also the number of forms r and the rank k
  BigInt points; // d^n
};

/// Number of decompositions of a general s-tuple of degree-d forms in n+1
/// variables, s = binom(d+n, n) - n. Throws Error(OutOfRange) when d^n < s.
VeroneseCount veronese_count(int d, int n);

/// Binary perfect case with k <= a_1 + 1 (unique decomposition for generic f).
bool binary_identifiable(int n, const std::vector<int>& degrees);

}  // namespace waring
