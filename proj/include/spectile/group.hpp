#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace spectile {

using Elem = std::uint32_t;

Elem gcd(Elem a, Elem b) noexcept;

/// Prime factorization as (prime, exponent) pairs with ascending primes.
std::vector<std::pair<Elem, unsigned>> factorize(Elem n);

bool is_prime(Elem n) noexcept;
bool is_prime_power(Elem n) noexcept;
bool is_square_free(Elem n);
/// Product of the distinct primes dividing n.
Elem radical(Elem n);

/// The cyclic group Z_n with its divisor lattice and unit group.
///
/// Contexts are immutable and shared; obtain them through of(), which
/// memoizes one instance per order.
class CyclicGroupCtx {
 public:
  static std::shared_ptr<const CyclicGroupCtx> of(Elem n);

  explicit CyclicGroupCtx(Elem n);

  Elem order() const noexcept { return n_; }
  const std::vector<Elem>& divisors() const noexcept { return divisors_; }
  const std::vector<std::pair<Elem, unsigned>>& factorization() const noexcept {
    return factorization_;
  }
  /// Units a (gcd(a, n) = 1) in ascending order.
  const std::vector<Elem>& units() const noexcept { return units_; }

  bool divides(Elem d) const noexcept { return d != 0 && n_ % d == 0; }
  /// Position of d in divisors(); throws std::invalid_argument if d does not divide n.
  std::size_t divisor_index(Elem d) const;

  Elem reduce(std::int64_t x) const noexcept;
  /// n / gcd(n, x), the divisor class containing x.
  Elem class_of(Elem x) const noexcept { return n_ / gcd(n_, x % n_); }

 private:
  Elem n_;
  std::vector<Elem> divisors_;
  std::vector<std::pair<Elem, unsigned>> factorization_;
  std::vector<Elem> units_;
};

using CtxPtr = std::shared_ptr<const CyclicGroupCtx>;

}  // namespace spectile
