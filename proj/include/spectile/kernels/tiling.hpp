#pragma once

// Exact-cover search for tiling complements on the cyclic board Z_n.

#include "spectile/kernels/clique.hpp"
#include "spectile/kernels/fast_group.hpp"

#include <cstdint>
#include <vector>

namespace spectile::kernels {

struct TileSearchResult {
  SearchStatus status = SearchStatus::none;
  std::vector<Elem> complement;  // ascending, contains 0 when found
  std::uint64_t nodes = 0;
};

/// Finds T with 0 in T and S + T = Z_n. Each step covers the least uncovered
/// element u by some translate S + (u - s).
///
/// With cyclotomic pruning on, every prime power q | n with Phi_q not dividing
/// m_S must divide m_T, which forces the counts of T mod q to be constant on
/// each fiber {j + i q / p : 0 <= i < p}; a branch is cut once the fibers need
/// more elements than T has left.
template <std::size_t W>
class ComplementSearch {
 public:
  ComplementSearch(const FastGroup<W>& g, const Bits<W>& s, std::uint64_t budget,
                   bool cyclotomic_prune)
      : g_(g), s_(s), budget_(budget) {
    s.for_each([&](unsigned x) { elems_.push_back(x); });
    if (cyclotomic_prune && !elems_.empty()) {
      const std::uint64_t zs = g_.zero_mask(s);
      const auto& divs = g_.divisors();
      for (std::size_t i = 1; i < divs.size(); ++i) {
        if (!(g_.prime_power_mask() >> i & 1) || (zs >> i & 1)) continue;
        Fiber f;
        f.q = divs[i];
        f.h = divs[i] / g_.prime_of(i);
        f.p = g_.prime_of(i);
        f.count.assign(f.q, 0);
        fibers_.push_back(std::move(f));
      }
    }
  }

  TileSearchResult run() {
    TileSearchResult res;
    const unsigned n = g_.order();
    const unsigned k = static_cast<unsigned>(elems_.size());
    if (k == 0 || n % k != 0) {
      res.status = SearchStatus::none;
      return res;
    }
    need_ = n / k;
    Bits<W> covered = s_;
    place(0);
    bool found = false;
    if (feasible()) {
      try {
        found = extend(covered);
      } catch (const BudgetHit&) {
        res.status = SearchStatus::budget_exhausted;
        res.nodes = nodes_;
        return res;
      }
    }
    res.nodes = nodes_ == 0 ? 1 : nodes_;
    if (found) {
      res.status = SearchStatus::found;
      res.complement = t_;
      std::sort(res.complement.begin(), res.complement.end());
    } else {
      res.status = SearchStatus::none;
    }
    return res;
  }

 private:
  struct BudgetHit {};
  struct Fiber {
    unsigned q = 0, h = 0, p = 0;
    std::vector<unsigned> count;
  };

  void place(unsigned t) {
    t_.push_back(t);
    for (auto& f : fibers_) ++f.count[t % f.q];
  }
  void unplace() {
    const unsigned t = t_.back();
    t_.pop_back();
    for (auto& f : fibers_) --f.count[t % f.q];
  }

  bool feasible() const {
    const unsigned left = need_ - static_cast<unsigned>(t_.size());
    for (const auto& f : fibers_) {
      unsigned deficit = 0;
      for (unsigned j = 0; j < f.h; ++j) {
        unsigned mx = 0, sum = 0;
        for (unsigned i = 0; i < f.p; ++i) {
          const unsigned c = f.count[j + i * f.h];
          mx = std::max(mx, c);
          sum += c;
        }
        deficit += mx * f.p - sum;
        if (deficit > left) return false;
      }
    }
    return true;
  }

  bool extend(const Bits<W>& covered) {
    if (nodes_ >= budget_) throw BudgetHit{};
    ++nodes_;
    const int iu = covered.first_zero(g_.order());
    if (iu < 0) return true;
    const unsigned u = static_cast<unsigned>(iu);
    const unsigned n = g_.order();
    for (unsigned s : elems_) {
      const unsigned t = (u + n - s) % n;
      const Bits<W> shifted = g_.rot_up(s_, t);
      if (shifted.intersects(covered)) continue;
      place(t);
      if (feasible() && extend(covered | shifted)) return true;
      unplace();
    }
    return false;
  }

  const FastGroup<W>& g_;
  Bits<W> s_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  unsigned need_ = 0;
  std::vector<unsigned> elems_;
  std::vector<Fiber> fibers_;
  std::vector<Elem> t_;
};

template <std::size_t W>
TileSearchResult find_complement(const FastGroup<W>& g, const Bits<W>& s, std::uint64_t budget,
                                 bool cyclotomic_prune = true) {
  return ComplementSearch<W>(g, s, budget, cyclotomic_prune).run();
}

}  // namespace spectile::kernels
