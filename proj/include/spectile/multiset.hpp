#pragma once

#include "spectile/group.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spectile {

/// An element of the group ring Z[Z_n] with nonnegative coefficients, stored
/// densely as one count per group element. Sets are the 0/1 case.
class CyclicMultiset {
 public:
  explicit CyclicMultiset(CtxPtr ctx);
  CyclicMultiset(CtxPtr ctx, std::vector<std::uint32_t> mult);

  /// Each listed element adds one to its multiplicity; elements must lie in [0, n).
  static CyclicMultiset from_elements(Elem n, std::span<const Elem> elems);
  static CyclicMultiset from_elements(Elem n, std::initializer_list<Elem> elems);
  static CyclicMultiset full_group(Elem n);

  /// Parses "n=<int>:<e>,<e>,..." or with multiplicities "n=<int>:<e>^<m>,...".
  /// Throws std::invalid_argument on malformed input.
  static CyclicMultiset parse(std::string_view literal);

  Elem order() const noexcept { return ctx_->order(); }
  const CyclicGroupCtx& ctx() const noexcept { return *ctx_; }
  const CtxPtr& ctx_ptr() const noexcept { return ctx_; }

  std::uint32_t operator[](Elem x) const { return mult_[x]; }
  std::span<const std::uint32_t> multiplicities() const noexcept { return mult_; }

  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return total() == 0; }
  bool is_set() const noexcept;
  /// Elements with positive multiplicity, ascending.
  std::vector<Elem> support() const;

  /// Image under x -> a*x + b (any a; gcd(a, n) = 1 gives an automorphism).
  CyclicMultiset affine_image(Elem a, Elem b) const;

  std::string to_string() const;

  bool operator==(const CyclicMultiset& o) const {
    return order() == o.order() && mult_ == o.mult_;
  }

 private:
  CtxPtr ctx_;
  std::vector<std::uint32_t> mult_;
};

}  // namespace spectile
