#include "spectile/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace spectile {

Elem gcd(Elem a, Elem b) noexcept { return std::gcd(a, b); }

std::vector<std::pair<Elem, unsigned>> factorize(Elem n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<Elem, unsigned>> out;
  for (Elem p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

bool is_prime(Elem n) noexcept {
  if (n < 2) return false;
  for (Elem p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

bool is_prime_power(Elem n) noexcept {
  if (n < 2) return false;
  return factorize(n).size() == 1;
}

bool is_square_free(Elem n) {
  for (const auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

Elem radical(Elem n) {
  Elem r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

CyclicGroupCtx::CyclicGroupCtx(Elem n) : n_(n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be positive");
  for (Elem d = 1; d <= n; ++d)
    if (n % d == 0) divisors_.push_back(d);
  factorization_ = factorize(n);
  for (Elem a = 0; a < n; ++a)
    if (std::gcd(a, n) == 1) units_.push_back(a);
}

std::shared_ptr<const CyclicGroupCtx> CyclicGroupCtx::of(Elem n) {
  static std::mutex mu;
  static std::map<Elem, std::shared_ptr<const CyclicGroupCtx>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto ctx = std::make_shared<const CyclicGroupCtx>(n);
  cache.emplace(n, ctx);
  return ctx;
}

std::size_t CyclicGroupCtx::divisor_index(Elem d) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
  if (it == divisors_.end() || *it != d)
    throw std::invalid_argument(std::to_string(d) + " does not divide " + std::to_string(n_));
  return static_cast<std::size_t>(it - divisors_.begin());
}

Elem CyclicGroupCtx::reduce(std::int64_t x) const noexcept {
  std::int64_t r = x % static_cast<std::int64_t>(n_);
  if (r < 0) r += n_;
  return static_cast<Elem>(r);
}

}  // namespace spectile
