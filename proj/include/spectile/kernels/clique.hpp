#pragma once

// Clique kernels on Cayley graphs Cay(Z_n, E): vertices Z_n, x ~ y iff y - x in E.
// E is always a union of divisor classes, so it is symmetric and avoids 0.

#include "spectile/kernels/fast_group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace spectile::kernels {

enum class SearchStatus { found, none, budget_exhausted };

struct CliqueSearchResult {
  SearchStatus status = SearchStatus::none;
  std::vector<Elem> clique;  // ascending, contains 0 when found
  std::uint64_t nodes = 0;
};

/// Branch and bound for a k-clique through 0, with a greedy colouring bound.
/// Vertices adjacent to 0 are relabelled in degeneracy order (highest core
/// first, ties towards higher degree) and coloured greedily in that order; the
/// search branches on the highest colour class first and stops at size k.
template <std::size_t W>
class ZeroCliqueSearch {
 public:
  ZeroCliqueSearch(const FastGroup<W>& g, const Bits<W>& connection, unsigned k,
                   std::uint64_t budget)
      : g_(g), k_(k), budget_(budget) {
    connection.for_each([&](unsigned x) { verts_.push_back(x); });
    conn_ = connection;
  }

  CliqueSearchResult run() {
    CliqueSearchResult res;
    if (k_ <= 1) {
      res.status = SearchStatus::found;
      res.clique = {0};
      res.nodes = 1;
      return res;
    }
    target_ = k_ - 1;
    if (verts_.size() < target_) {
      res.status = SearchStatus::none;
      res.nodes = 1;
      return res;
    }
    order_vertices();
    Bits<W> all;
    for (unsigned i = 0; i < order_.size(); ++i) all.set(i);
    bool found = false;
    try {
      found = expand(all, 0);
    } catch (const BudgetHit&) {
      res.status = SearchStatus::budget_exhausted;
      res.nodes = nodes_;
      return res;
    }
    res.nodes = nodes_;
    if (found) {
      res.status = SearchStatus::found;
      res.clique.push_back(0);
      for (unsigned i : stack_) res.clique.push_back(order_[i]);
      std::sort(res.clique.begin(), res.clique.end());
    } else {
      res.status = SearchStatus::none;
    }
    return res;
  }

 private:
  struct BudgetHit {};

  void order_vertices() {
    const unsigned m = static_cast<unsigned>(verts_.size());
    // Adjacency among the neighbours of 0, in original labels.
    std::vector<Bits<W>> nb(m);
    Bits<W> vset = conn_;
    std::vector<unsigned> deg(m);
    for (unsigned i = 0; i < m; ++i) {
      nb[i] = g_.rot_up(conn_, verts_[i]) & vset;
      deg[i] = nb[i].count();
    }
    const std::vector<unsigned> full_deg = deg;
    std::vector<unsigned> removal;
    std::vector<char> gone(m, 0);
    std::vector<unsigned> pos(g_.order(), 0);
    for (unsigned i = 0; i < m; ++i) pos[verts_[i]] = i;
    for (unsigned step = 0; step < m; ++step) {
      unsigned best = m;
      for (unsigned i = 0; i < m; ++i) {
        if (gone[i]) continue;
        if (best == m || deg[i] < deg[best] ||
            (deg[i] == deg[best] && full_deg[i] < full_deg[best]))
          best = i;
      }
      gone[best] = 1;
      removal.push_back(best);
      nb[best].for_each([&](unsigned x) {
        const unsigned j = pos[x];
        if (!gone[j]) --deg[j];
      });
    }
    std::reverse(removal.begin(), removal.end());
    order_.resize(m);
    std::vector<unsigned> local(m);
    for (unsigned i = 0; i < m; ++i) {
      order_[i] = verts_[removal[i]];
      local[removal[i]] = i;
    }
    adj_.assign(m, Bits<W>{});
    for (unsigned i = 0; i < m; ++i) {
      const unsigned orig = removal[i];
      nb[orig].for_each([&](unsigned x) { adj_[i].set(local[pos[x]]); });
    }
  }

  bool expand(Bits<W> p, unsigned depth) {
    if (nodes_ >= budget_) throw BudgetHit{};
    ++nodes_;
    std::vector<unsigned> verts;
    std::vector<unsigned> colors;
    Bits<W> uncolored = p;
    unsigned color = 0;
    while (!uncolored.none()) {
      ++color;
      Bits<W> q = uncolored;
      for (int v = q.first(); v != -1; v = q.first()) {
        q.reset(v);
        q.and_not(adj_[v]);
        uncolored.reset(v);
        verts.push_back(static_cast<unsigned>(v));
        colors.push_back(color);
      }
    }
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (depth + colors[i] < target_) return false;
      const unsigned v = verts[i];
      stack_.push_back(v);
      if (depth + 1 == target_) return true;
      Bits<W> np = p & adj_[v];
      if (!np.none() && expand(np, depth + 1)) return true;
      stack_.pop_back();
      p.reset(v);
    }
    return false;
  }

  const FastGroup<W>& g_;
  unsigned k_;
  unsigned target_ = 0;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Bits<W> conn_;
  std::vector<unsigned> verts_;
  std::vector<unsigned> order_;
  std::vector<Bits<W>> adj_;
  std::vector<unsigned> stack_;
};

template <std::size_t W>
CliqueSearchResult find_clique_through_zero(const FastGroup<W>& g, const Bits<W>& connection,
                                            unsigned k, std::uint64_t budget) {
  return ZeroCliqueSearch<W>(g, connection, k, budget).run();
}

enum class WalkStatus { finished, paused };

/// Resumable depth-first enumeration of cliques through 0, visiting every
/// clique exactly once as an ascending element list in lexicographic
/// (pre-)order. Each visited clique costs one node. The walk can pause at any
/// node entry once the node counter reaches a cap; the returned token is the
/// path of the next unvisited node and resuming from it continues the same
/// traversal.
///
/// In canonical mode only affine canonical cliques are reported, and the
/// search uses that such a clique has the divisor g = min gcd(x - y, n) as its
/// second element, so every difference lies in {z : gcd(z, n) >= g}.
template <std::size_t W>
class CliqueWalker {
 public:
  struct Spec {
    Bits<W> connection;
    std::vector<unsigned> sizes;  // clique sizes to report
    bool canonical_only = false;
    int second = -1;  // -1 any; 0 root only; g > 0 second element fixed to g
  };

  CliqueWalker(const FastGroup<W>& g, Spec spec) : g_(g), spec_(std::move(spec)) {
    const unsigned n = g_.order();
    emit_.assign(n + 2, 0);
    for (unsigned s : spec_.sizes)
      if (s >= 1 && s <= n) emit_[s] = 1;
    next_emit_.assign(n + 2, 0);
    unsigned next = 0;
    for (unsigned s = n + 1; s-- > 0;) {
      next_emit_[s] = next;  // smallest reported size > s, 0 if none
      if (emit_[s]) next = s;
    }
    above_.resize(n);
    for (unsigned v = 0; v < n; ++v) {
      above_[v] = g_.full();
      above_[v].and_not(low_bits<W>(v + 1));
    }
  }

  template <class OnClique>
  WalkStatus run(std::uint64_t& nodes, std::uint64_t cap, std::vector<Elem>& token,
                 OnClique&& on_clique) {
    nodes_ = &nodes;
    cap_ = cap;
    paused_ = false;
    resume_ = token;
    resuming_ = !resume_.empty();
    if (resuming_ && resume_.front() != 0) throw std::invalid_argument("CliqueWalker: bad token");
    std::vector<Elem> path{0};
    Bits<W> set;
    set.set(0);
    visit(path, set, spec_.connection, spec_.connection, on_clique);
    if (paused_) {
      token = pause_path_;
      return WalkStatus::paused;
    }
    token.clear();
    return WalkStatus::finished;
  }

 private:
  Bits<W> restricted_by_gcd(const Bits<W>& conn, unsigned g) const {
    // Keep classes d = n / gcd with gcd >= g.
    Bits<W> keep;
    const auto& divs = g_.divisors();
    for (std::size_t i = 0; i < divs.size(); ++i)
      if (g_.order() / divs[i] >= g) keep |= g_.class_bits(i);
    return conn & keep;
  }

  template <class OnClique>
  void visit(std::vector<Elem>& path, const Bits<W>& set, const Bits<W>& cand,
             const Bits<W>& conn, OnClique& on_clique) {
    const unsigned size = static_cast<unsigned>(path.size());
    bool fresh = true;
    if (resuming_) {
      if (path.size() == resume_.size())
        resuming_ = false;
      else
        fresh = false;
    }
    if (fresh) {
      if (*nodes_ >= cap_) {
        paused_ = true;
        pause_path_ = path;
        return;
      }
      ++*nodes_;
      const bool skip_root = size == 1 && spec_.second > 0;
      if (!skip_root && emit_[size] && (!spec_.canonical_only || g_.is_canonical_given_gap(set)))
        on_clique(set, size);
      const unsigned want = next_emit_[size];
      if (want == 0) return;
      if (size + cand.count() < want) return;
    }
    if (size == 1 && spec_.second == 0) return;
    unsigned start = fresh ? 0 : resume_[size];
    for (int iv = cand.next(start); iv != -1; iv = cand.next(static_cast<unsigned>(iv) + 1)) {
      const unsigned v = static_cast<unsigned>(iv);
      Bits<W> child_conn = conn;
      if (size == 1) {
        if (spec_.second > 0 && v != static_cast<unsigned>(spec_.second)) continue;
        if (spec_.canonical_only) {
          if (g_.order() % v != 0) continue;
          child_conn = restricted_by_gcd(conn, v);
        }
      }
      Bits<W> child_cand = cand & child_conn;
      child_cand &= g_.rot_up(child_conn, v);
      child_cand &= above_[v];
      Bits<W> child_set = set;
      child_set.set(v);
      path.push_back(v);
      visit(path, child_set, child_cand, child_conn, on_clique);
      path.pop_back();
      if (paused_) return;
    }
  }

  const FastGroup<W>& g_;
  Spec spec_;
  std::vector<char> emit_;
  std::vector<unsigned> next_emit_;
  std::vector<Bits<W>> above_;
  std::uint64_t* nodes_ = nullptr;
  std::uint64_t cap_ = 0;
  bool paused_ = false;
  bool resuming_ = false;
  std::vector<Elem> resume_;
  std::vector<Elem> pause_path_;
};

}  // namespace spectile::kernels
