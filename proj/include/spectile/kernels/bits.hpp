#pragma once

// Fixed-width bitsets over Z_n (n <= 64 * W) used by every search kernel.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace spectile::kernels {

inline constexpr unsigned kMaxSearchOrder = 512;

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(unsigned i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(unsigned i) noexcept { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(unsigned i) const noexcept { return (w[i >> 6] >> (i & 63)) & 1; }

  bool none() const noexcept {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  unsigned count() const noexcept {
    unsigned c = 0;
    for (auto x : w) c += static_cast<unsigned>(std::popcount(x));
    return c;
  }
  /// Lowest set bit, or -1.
  int first() const noexcept {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i]) return static_cast<int>(i * 64 + std::countr_zero(w[i]));
    return -1;
  }
  /// Lowest set bit >= from, or -1.
  int next(unsigned from) const noexcept {
    std::size_t i = from >> 6;
    if (i >= W) return -1;
    std::uint64_t cur = w[i] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return static_cast<int>(i * 64 + std::countr_zero(cur));
      if (++i >= W) return -1;
      cur = w[i];
    }
  }
  /// Lowest clear bit below n, or -1.
  int first_zero(unsigned n) const noexcept {
    for (std::size_t i = 0; i < W && i * 64 < n; ++i) {
      std::uint64_t inv = ~w[i];
      if (inv) {
        unsigned b = static_cast<unsigned>(i * 64 + std::countr_zero(inv));
        return b < n ? static_cast<int>(b) : -1;
      }
    }
    return -1;
  }

  Bits& operator&=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] &= o.w[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] |= o.w[i];
    return *this;
  }
  Bits& and_not(const Bits& o) noexcept {
    for (std::size_t i = 0; i < W; ++i) w[i] &= ~o.w[i];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) noexcept { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) noexcept { return a |= b; }
  bool intersects(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  bool operator==(const Bits&) const = default;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i) {
      std::uint64_t x = w[i];
      while (x) {
        f(static_cast<unsigned>(i * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }
};

/// Bits 0..n-1 set.
template <std::size_t W>
Bits<W> low_bits(unsigned n) noexcept {
  Bits<W> b;
  for (std::size_t i = 0; i < W; ++i) {
    if (n >= (i + 1) * 64)
      b.w[i] = ~std::uint64_t{0};
    else if (n > i * 64)
      b.w[i] = (std::uint64_t{1} << (n - i * 64)) - 1;
  }
  return b;
}

namespace detail {

template <std::size_t W>
Bits<W> shr(const Bits<W>& b, unsigned s) noexcept {
  Bits<W> r;
  const unsigned ws = s >> 6, bs = s & 63;
  for (std::size_t i = 0; i + ws < W; ++i) {
    std::uint64_t v = b.w[i + ws] >> bs;
    if (bs && i + ws + 1 < W) v |= b.w[i + ws + 1] << (64 - bs);
    r.w[i] = v;
  }
  return r;
}

template <std::size_t W>
Bits<W> shl(const Bits<W>& b, unsigned s) noexcept {
  Bits<W> r;
  const unsigned ws = s >> 6, bs = s & 63;
  for (std::size_t i = W; i-- > ws;) {
    std::uint64_t v = b.w[i - ws] << bs;
    if (bs && i >= ws + 1) v |= b.w[i - ws - 1] >> (64 - bs);
    r.w[i] = v;
  }
  return r;
}

}  // namespace detail

/// Translate every element by -t in Z_n (element e moves to e - t).
template <std::size_t W>
Bits<W> rotate_down(const Bits<W>& b, unsigned t, unsigned n) noexcept {
  if (t == 0) return b;
  if constexpr (W == 1) {
    const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    Bits<1> r;
    r.w[0] = ((b.w[0] >> t) | (b.w[0] << (n - t))) & mask;
    return r;
  } else {
    Bits<W> r = detail::shr(b, t) | detail::shl(b, n - t);
    return r &= low_bits<W>(n);
  }
}

/// Translate every element by +t in Z_n.
template <std::size_t W>
Bits<W> rotate_up(const Bits<W>& b, unsigned t, unsigned n) noexcept {
  return t == 0 ? b : rotate_down(b, n - t, n);
}

/// Three-way comparison in canonical order: the set whose ascending element
/// list is lexicographically smaller (equivalently, whose indicator wins at
/// the lowest differing element) comes first. Returns <0 if a precedes b.
template <std::size_t W>
int canonical_compare(const Bits<W>& a, const Bits<W>& b) noexcept {
  for (std::size_t i = 0; i < W; ++i) {
    const std::uint64_t d = a.w[i] ^ b.w[i];
    if (d) return (a.w[i] & (d & (~d + 1))) ? -1 : 1;
  }
  return 0;
}

/// Invokes f.template operator()<W>() with the smallest supported word count for n.
template <class F>
decltype(auto) dispatch_width(unsigned n, F&& f) {
  if (n == 0 || n > kMaxSearchOrder)
    throw std::invalid_argument("search kernels support 1 <= n <= 512");
  if (n <= 64) return std::forward<F>(f).template operator()<1>();
  if (n <= 128) return std::forward<F>(f).template operator()<2>();
  if (n <= 256) return std::forward<F>(f).template operator()<4>();
  return std::forward<F>(f).template operator()<8>();
}

}  // namespace spectile::kernels
