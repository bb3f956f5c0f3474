#include "spectile/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <map>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace spectile {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1);
  v[degree] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::x_pow_minus_one(std::size_t n) {
  std::vector<BigInt> v(n + 1);
  v[0] = -1;
  v[n] += 1;
  return IntPolynomial(std::move(v));
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  std::vector<BigInt> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] -= o.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<BigInt> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return IntPolynomial(std::move(v));
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod_monic(
    const IntPolynomial& divisor) const {
  if (!divisor.is_monic()) throw std::invalid_argument("divmod_monic: divisor must be monic");
  const std::size_t m = divisor.coeffs_.size() - 1;
  if (coeffs_.size() <= m) return {IntPolynomial{}, *this};
  std::vector<BigInt> rem = coeffs_;
  std::vector<BigInt> quot(coeffs_.size() - m);
  for (std::size_t i = coeffs_.size(); i-- > m;) {
    if (rem[i] == 0) continue;
    BigInt c = rem[i];
    quot[i - m] = c;
    for (std::size_t j = 0; j <= m; ++j) rem[i - m + j] -= c * divisor.coeffs_[j];
  }
  rem.resize(m);
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial IntPolynomial::mod_monic(const IntPolynomial& divisor) const {
  return divmod_monic(divisor).second;
}

IntPolynomial IntPolynomial::reduce_cyclic(std::size_t m) const {
  if (m == 0) throw std::invalid_argument("reduce_cyclic: m must be positive");
  std::vector<BigInt> v(std::min(m, coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i % m] += coeffs_[i];
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i] << "*x^" << i;
    first = false;
  }
  return os.str();
}

namespace {

struct CyclotomicCache {
  std::shared_mutex mu;
  std::map<std::uint32_t, IntPolynomial> exact;
  std::map<std::uint32_t, std::optional<std::vector<std::int64_t>>> small;
};

CyclotomicCache& cache() {
  static CyclotomicCache c;
  return c;
}

}  // namespace

const IntPolynomial& cyclotomic_poly(std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("cyclotomic_poly: d must be positive");
  auto& c = cache();
  {
    std::shared_lock lock(c.mu);
    auto it = c.exact.find(d);
    if (it != c.exact.end()) return it->second;
  }
  // Recursion happens outside the lock; concurrent duplicates compute the same value.
  IntPolynomial denom{1};
  for (std::uint32_t e = 1; e < d; ++e)
    if (d % e == 0) denom = denom * cyclotomic_poly(e);
  auto [q, r] = IntPolynomial::x_pow_minus_one(d).divmod_monic(denom);
  if (!r.is_zero()) throw std::logic_error("cyclotomic_poly: inexact division");
  std::unique_lock lock(c.mu);
  return c.exact.emplace(d, std::move(q)).first->second;
}

const std::optional<std::vector<std::int64_t>>& cyclotomic_coeffs64(std::uint32_t d) {
  auto& c = cache();
  {
    std::shared_lock lock(c.mu);
    auto it = c.small.find(d);
    if (it != c.small.end()) return it->second;
  }
  const IntPolynomial& phi = cyclotomic_poly(d);
  std::optional<std::vector<std::int64_t>> v(std::in_place);
  for (const BigInt& x : phi.coefficients()) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
      v.reset();
      break;
    }
    v->push_back(static_cast<std::int64_t>(x));
  }
  std::unique_lock lock(c.mu);
  return c.small.emplace(d, std::move(v)).first->second;
}

namespace {

// Remainder of residues by phi in int64; nullopt on overflow.
std::optional<bool> divides_machine(std::span<const std::int64_t> phi,
                                    std::span<const std::int64_t> residues) {
  const std::size_t m = phi.size() - 1;
  std::vector<std::int64_t> rem(residues.begin(), residues.end());
  for (std::size_t i = rem.size(); i-- > m;) {
    const std::int64_t c = rem[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= m; ++j) {
      std::int64_t prod;
      if (__builtin_mul_overflow(c, phi[j], &prod)) return std::nullopt;
      if (__builtin_sub_overflow(rem[i - m + j], prod, &rem[i - m + j])) return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < std::min(m, rem.size()); ++i)
    if (rem[i] != 0) return false;
  return true;
}

}  // namespace

bool cyclotomic_divides_reduced(std::uint32_t d, std::span<const std::int64_t> residues) {
  if (residues.size() != d)
    throw std::invalid_argument("cyclotomic_divides_reduced: expected d residues");
  const auto& small = cyclotomic_coeffs64(d);
  if (small) {
    if (auto r = divides_machine(*small, residues)) return *r;
  }
  std::vector<BigInt> v(residues.begin(), residues.end());
  return IntPolynomial(std::move(v)).mod_monic(cyclotomic_poly(d)).is_zero();
}

}  // namespace spectile
