#include "waring/combinatorics.hpp"

#include <algorithm>
#include <sstream>

#include "waring/error.hpp"

namespace waring {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is binom(n-k+i, i) here
  }
  return r;
}

CaseSpec::CaseSpec(int n, std::vector<int> degrees) : n_(n), degrees_(std::move(degrees)), ambient_(0) {
  if (n_ < 1) throw Error(ErrorKind::Validation, "projective dimension n must be >= 1");
  if (degrees_.empty()) throw Error(ErrorKind::Validation, "at least one degree is required");
  std::sort(degrees_.begin(), degrees_.end());
  if (degrees_.front() < 2) throw Error(ErrorKind::Validation, "all degrees must be >= 2");
  for (int a : degrees_) ambient_ += binomial(a + n_, n_).convert_to<std::int64_t>();
  const std::int64_t denom = r() + n_;
  if (ambient_ % denom == 0) k_ = static_cast<int>(ambient_ / denom);
}

int CaseSpec::require_k() const {
  if (!k_) throw Error(ErrorKind::Validation, "case " + label() + " is not perfect");
  return *k_;
}

std::string CaseSpec::label() const {
  std::ostringstream os;
  os << "n=" << n_ << " (";
  for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
  os << ")";
  return os.str();
}

std::optional<int> is_perfect(int n, const std::vector<int>& degrees) { return CaseSpec(n, degrees).k(); }

std::int64_t pair_lower_bound(int t) {
  if (t < 1) throw Error(ErrorKind::Validation, "t must be >= 1");
  const std::int64_t tt = t;
  return (3 * tt - 2) * (tt - 1) / 2 + 1;
}

VeroneseCount veronese_count(int d, int n) {
  if (d < 2 || n < 1) throw Error(ErrorKind::Validation, "veronese_count needs d >= 2 and n >= 1");
  VeroneseCount out;
  out.s = binomial(d + n, n).convert_to<int>() - n;
  out.points = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(n));
  if (out.points < out.s) {
    throw Error(ErrorKind::OutOfRange, "d^n < s: fewer intersection points than forms");
  }
  out.count = binomial(out.points.convert_to<std::int64_t>(), out.s);
  return out;
}

bool binary_identifiable(int n, const std::vector<int>& degrees) {
  if (n != 1) return false;
  const CaseSpec c(n, degrees);
  return c.k() && *c.k() <= c.degrees().front() + 1;
}

}  // namespace waring
