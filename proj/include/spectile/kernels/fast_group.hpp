#pragma once

// Per-order lookup tables for the bitset kernels: divisor classes, unit
// multiplication, exact zero-set evaluation and affine canonical forms.

#include "spectile/group.hpp"
#include "spectile/kernels/bits.hpp"
#include "spectile/polynomial.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace spectile::kernels {

template <std::size_t W>
class FastGroup {
 public:
  static const FastGroup& of(Elem n) {
    static std::mutex mu;
    static std::map<Elem, std::unique_ptr<FastGroup>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FastGroup>(n);
    return *slot;
  }

  explicit FastGroup(Elem n)
      : n_(n), ctx_(CyclicGroupCtx::of(n)), divisors_(ctx_->divisors()), units_(ctx_->units()) {
    if (n > 64 * W) throw std::invalid_argument("FastGroup: order exceeds bitset width");
    if (divisors_.size() > 64) throw std::invalid_argument("FastGroup: too many divisors");
    full_ = low_bits<W>(n);
    class_index_.resize(n);
    class_bits_.resize(divisors_.size());
    for (Elem x = 0; x < n; ++x) {
      const auto idx = static_cast<std::uint8_t>(ctx_->divisor_index(ctx_->class_of(x)));
      class_index_[x] = idx;
      class_bits_[idx].set(x);
    }
    unit_mul_.resize(units_.size());
    for (std::size_t i = 0; i < units_.size(); ++i) {
      unit_mul_[i].resize(n);
      for (Elem x = 0; x < n; ++x)
        unit_mul_[i][x] = static_cast<std::uint16_t>(std::uint64_t{units_[i]} * x % n);
    }
    mod_.resize(divisors_.size());
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      mod_[i].resize(n);
      for (Elem x = 0; x < n; ++x) mod_[i][x] = static_cast<std::uint16_t>(x % divisors_[i]);
    }
    phi_.resize(divisors_.size());
    prime_of_.assign(divisors_.size(), 0);
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
      const Elem d = divisors_[i];
      phi_[i] = cyclotomic_coeffs64(d);
      if (d > 1) nontrivial_mask_ |= std::uint64_t{1} << i;
      if (is_prime_power(d)) {
        prime_power_mask_ |= std::uint64_t{1} << i;
        prime_of_[i] = factorize(d).front().first;
      }
    }
  }

  Elem order() const noexcept { return n_; }
  const CtxPtr& ctx() const noexcept { return ctx_; }
  const std::vector<Elem>& divisors() const noexcept { return divisors_; }
  const std::vector<Elem>& units() const noexcept { return units_; }
  const Bits<W>& full() const noexcept { return full_; }
  std::uint64_t nontrivial_mask() const noexcept { return nontrivial_mask_; }
  std::uint64_t prime_power_mask() const noexcept { return prime_power_mask_; }
  /// Prime p for a prime-power divisor index, 0 otherwise.
  Elem prime_of(std::size_t idx) const noexcept { return prime_of_[idx]; }
  std::size_t class_index(Elem x) const noexcept { return class_index_[x]; }
  const Bits<W>& class_bits(std::size_t idx) const noexcept { return class_bits_[idx]; }

  Bits<W> rot_down(const Bits<W>& b, unsigned t) const noexcept { return rotate_down(b, t, n_); }
  Bits<W> rot_up(const Bits<W>& b, unsigned t) const noexcept { return rotate_up(b, t, n_); }

  /// Union of the divisor classes selected by mask.
  Bits<W> expand(std::uint64_t class_mask) const noexcept {
    Bits<W> out;
    for (std::size_t i = 0; i < divisors_.size(); ++i)
      if (class_mask >> i & 1) out |= class_bits_[i];
    return out;
  }

  /// Divisor-index mask of {d | n : d > 1, Phi_d | m_S}.
  std::uint64_t zero_mask(const Bits<W>& s) const {
    std::array<unsigned, 64 * W> el;
    unsigned k = 0;
    s.for_each([&](unsigned x) { el[k++] = x; });
    std::uint64_t mask = 0;
    std::array<std::int64_t, 64 * W> rem;
    for (std::size_t i = 1; i < divisors_.size(); ++i) {
      const Elem d = divisors_[i];
      std::fill(rem.begin(), rem.begin() + d, 0);
      const auto& md = mod_[i];
      for (unsigned j = 0; j < k; ++j) ++rem[md[el[j]]];
      if (divides_reduced(i, std::span<std::int64_t>(rem.data(), d))) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

  /// Divisor-index mask of {d | n : Phi_d | m_w} for a multiplicity vector of length n.
  std::uint64_t zero_mask(std::span<const std::uint32_t> mult) const {
    std::uint64_t mask = 0;
    std::array<std::int64_t, 64 * W> rem;
    for (std::size_t i = 1; i < divisors_.size(); ++i) {
      const Elem d = divisors_[i];
      std::fill(rem.begin(), rem.begin() + d, 0);
      for (Elem x = 0; x < n_; ++x) rem[x % d] += mult[x];
      if (divides_reduced(i, std::span<std::int64_t>(rem.data(), d))) mask |= std::uint64_t{1} << i;
    }
    return mask;
  }

  /// Divisor-index mask of the classes met by nonzero differences of S.
  std::uint64_t difference_mask(const Bits<W>& s) const {
    std::uint64_t mask = 0;
    std::array<unsigned, 64 * W> el;
    unsigned k = 0;
    s.for_each([&](unsigned x) { el[k++] = x; });
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = i + 1; j < k; ++j) mask |= std::uint64_t{1} << class_index_[el[j] - el[i]];
    return mask;
  }

  Bits<W> image(std::size_t unit_idx, const Bits<W>& s) const noexcept {
    Bits<W> out;
    const auto& mul = unit_mul_[unit_idx];
    s.for_each([&](unsigned x) { out.set(mul[x]); });
    return out;
  }

  /// True if S (which must contain 0) is its own affine canonical form.
  bool is_canonical(const Bits<W>& s) const noexcept {
    const int second = s.next(1);
    if (second < 0) return true;
    // A canonical set's second element is the least gcd(x - y, n) over its differences.
    const std::uint64_t dm = difference_mask(s);
    const Elem top = divisors_[63 - std::countl_zero(dm)];
    if (n_ / top != static_cast<Elem>(second)) return false;
    return is_canonical_given_gap(s);
  }

  /// is_canonical for S containing 0 whose differences x - y all satisfy
  /// gcd(x - y, n) >= g, g its second element. Only rotations of an image
  /// bringing a pair at distance g to the front can tie with S there.
  bool is_canonical_given_gap(const Bits<W>& s) const noexcept {
    const int second = s.next(1);
    if (second < 0) return true;
    const unsigned g = static_cast<unsigned>(second);
    for (std::size_t u = 0; u < units_.size(); ++u) {
      const Bits<W> img = u == 0 ? s : image(u, s);
      if (u != 0 && canonical_compare(img, s) < 0) return false;
      const Bits<W> starts = img & rot_down(img, g);
      bool smaller = false;
      starts.for_each([&](unsigned e) {
        if (!smaller && e != 0 && canonical_compare(rot_down(img, e), s) < 0) smaller = true;
      });
      if (smaller) return false;
    }
    return true;
  }

  Bits<W> canonical(const Bits<W>& s) const noexcept {
    if (s.none()) return s;
    Bits<W> best = rot_down(s, static_cast<unsigned>(s.first()));
    for (std::size_t u = 0; u < units_.size(); ++u) {
      const Bits<W> img = image(u, s);
      img.for_each([&](unsigned e) {
        Bits<W> r = rot_down(img, e);
        if (canonical_compare(r, best) < 0) best = r;
      });
    }
    return best;
  }

 private:
  bool divides_reduced(std::size_t idx, std::span<std::int64_t> rem) const {
    const Elem d = divisors_[idx];
    if (const Elem p = prime_of_[idx]) {
      // Phi_{p^a}(x) = Phi_p(x^h), h = p^(a-1): divisibility means the
      // residues are constant along each fiber j, j + h, ..., j + (p-1)h.
      const Elem h = d / p;
      for (Elem j = 0; j < h; ++j)
        for (Elem i = 1; i < p; ++i)
          if (rem[j + i * h] != rem[j]) return false;
      return true;
    }
    const auto& phi = phi_[idx];
    if (phi) {
      const std::size_t m = phi->size() - 1;
      const std::int64_t* p = phi->data();
      bool overflow = false;
      std::array<std::int64_t, 64 * W> work;
      std::copy(rem.begin(), rem.end(), work.begin());
      for (std::size_t i = d; i-- > m && !overflow;) {
        const std::int64_t c = work[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= m; ++j) {
          std::int64_t prod;
          if (__builtin_mul_overflow(c, p[j], &prod) ||
              __builtin_sub_overflow(work[i - m + j], prod, &work[i - m + j])) {
            overflow = true;
            break;
          }
        }
      }
      if (!overflow) {
        for (std::size_t i = 0; i < m; ++i)
          if (work[i] != 0) return false;
        return true;
      }
    }
    return cyclotomic_divides_reduced(d, rem);
  }

  Elem n_;
  CtxPtr ctx_;
  std::vector<Elem> divisors_;
  std::vector<Elem> units_;
  Bits<W> full_;
  std::vector<std::uint8_t> class_index_;
  std::vector<Bits<W>> class_bits_;
  std::vector<std::vector<std::uint16_t>> unit_mul_;
  std::vector<std::vector<std::uint16_t>> mod_;
  std::vector<std::optional<std::vector<std::int64_t>>> phi_;
  std::vector<Elem> prime_of_;
  std::uint64_t nontrivial_mask_ = 0;
  std::uint64_t prime_power_mask_ = 0;
};

template <std::size_t W>
Bits<W> to_bits(std::span<const Elem> elems) noexcept {
  Bits<W> b;
  for (Elem x : elems) b.set(x);
  return b;
}

template <std::size_t W>
std::vector<Elem> to_elems(const Bits<W>& b) {
  std::vector<Elem> out;
  b.for_each([&](unsigned x) { out.push_back(x); });
  return out;
}

}  // namespace spectile::kernels
