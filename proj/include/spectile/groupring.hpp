#pragma once

// Exact arithmetic on multisets over Z_n and their mask polynomials.

#include "spectile/group.hpp"
#include "spectile/multiset.hpp"
#include "spectile/polynomial.hpp"

#include <string>
#include <vector>

namespace spectile {

/// A set D of divisors of n, standing for the union of divisor classes
/// {x in Z_n : n / gcd(n, x) in D}.
class DivisorClassSet {
 public:
  explicit DivisorClassSet(CtxPtr ctx);
  /// Throws std::invalid_argument if a member does not divide n.
  DivisorClassSet(CtxPtr ctx, std::vector<Elem> members);

  static DivisorClassSet all(CtxPtr ctx);
  /// Bit i of mask selects ctx->divisors()[i].
  static DivisorClassSet from_mask(CtxPtr ctx, std::uint64_t mask);

  const CyclicGroupCtx& ctx() const noexcept { return *ctx_; }
  const CtxPtr& ctx_ptr() const noexcept { return ctx_; }
  const std::vector<Elem>& members() const noexcept { return members_; }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Elem d) const;
  bool contains_element(Elem x) const { return contains(ctx_->class_of(x)); }
  bool is_subset_of(const DivisorClassSet& o) const;
  std::uint64_t mask() const;

  /// The elements of Z_n covered by the member classes, ascending.
  std::vector<Elem> expand() const;

  std::string to_string() const;
  bool operator==(const DivisorClassSet& o) const {
    return ctx_->order() == o.ctx_->order() && members_ == o.members_;
  }

 private:
  CtxPtr ctx_;
  std::vector<Elem> members_;
};

/// Sum over x of mult[x] * X^x.
IntPolynomial mask_polynomial(const CyclicMultiset& a);

/// Phi_d | m_A, decided by exact remainder. Requires d | n.
bool phi_divides(Elem d, const CyclicMultiset& a);

/// {d | n : d > 1, Phi_d | m_A}. Requires A nonempty.
DivisorClassSet zero_divisor_set(const CyclicMultiset& a);

/// Image under the natural map Z_n -> Z_m. Requires m | n.
CyclicMultiset project(const CyclicMultiset& a, Elem m);

/// Representative of the orbit of A under x -> a*x + b, gcd(a, n) = 1.
///
/// The representative maximizes the multiplicity array lexicographically with
/// element 0 compared first; for sets this is the image whose ascending
/// element list is lexicographically least (so it always contains 0).
CyclicMultiset affine_canonical(const CyclicMultiset& a);

/// True if x precedes y in the canonical order used by affine_canonical.
bool canonical_precedes(const CyclicMultiset& x, const CyclicMultiset& y);

/// mult[x] = #{(a, b) in A x A : a - b = x}. Requires A to be a set.
CyclicMultiset difference_multiset(const CyclicMultiset& a);

}  // namespace spectile
