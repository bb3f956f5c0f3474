#include "spectile/spectral.hpp"

#include "spectile/kernels/fast_group.hpp"

#include <algorithm>
#include <stdexcept>

namespace spectile {

const char* to_string(SearchStatus s) noexcept {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
  }
  return "?";
}

CayleyGraph::CayleyGraph(DivisorClassSet connection) : connection_(std::move(connection)) {
  std::vector<Elem> members;
  for (Elem d : connection_.members())
    if (d != 1) members.push_back(d);
  connection_ = DivisorClassSet(connection_.ctx_ptr(), std::move(members));
  connection_set_ = connection_.expand();
  in_connection_.assign(order(), 0);
  for (Elem x : connection_set_) in_connection_[x] = 1;
}

bool CayleyGraph::adjacent(Elem x, Elem y) const {
  const Elem n = order();
  return in_connection_[(x % n + n - y % n) % n];
}

std::vector<Elem> CayleyGraph::neighbors(Elem x) const {
  const Elem n = order();
  std::vector<Elem> out;
  out.reserve(connection_set_.size());
  for (Elem e : connection_set_) out.push_back((x + e) % n);
  std::sort(out.begin(), out.end());
  return out;
}

bool verify_spectral_pair(const CyclicMultiset& s, const CyclicMultiset& lambda) {
  if (s.order() != lambda.order())
    throw std::invalid_argument("verify_spectral_pair: group orders differ");
  if (!s.is_set() || !lambda.is_set())
    throw std::invalid_argument("verify_spectral_pair: inputs must be sets");
  if (s.empty() || lambda.empty())
    throw std::invalid_argument("verify_spectral_pair: inputs must be nonempty");
  if (s.total() != lambda.total()) return false;
  const auto elems = lambda.support();
  if (elems.size() == 1) return true;
  const DivisorClassSet z = zero_divisor_set(s);
  const auto& ctx = s.ctx();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!z.contains(ctx.class_of(elems[j] - elems[i]))) return false;
  return true;
}

SpectrumResult find_spectrum(const CyclicMultiset& s, std::uint64_t budget) {
  if (!s.is_set() || s.empty())
    throw std::invalid_argument("find_spectrum: S must be a nonempty set");
  const auto elems = s.support();
  return kernels::dispatch_width(s.order(), [&]<std::size_t W>() {
    const auto& fg = kernels::FastGroup<W>::of(s.order());
    const auto bits = kernels::to_bits<W>(elems);
    const std::uint64_t zmask = fg.zero_mask(bits);
    auto res = kernels::find_clique_through_zero(fg, fg.expand(zmask), static_cast<unsigned>(elems.size()),
                                                 budget);
    SpectrumResult out;
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.status == SearchStatus::found) {
      out.certificate = SpectralCertificate{
          s, CyclicMultiset::from_elements(s.order(), res.clique),
          DivisorClassSet::from_mask(s.ctx_ptr(), zmask)};
    }
    return out;
  });
}

bool spectra_are_dual(const SpectralCertificate& cert) {
  return verify_spectral_pair(cert.Lambda, cert.S);
}

CliqueEnumeration enumerate_cliques(const CayleyGraph& g, unsigned k, CliqueMode mode,
                                    std::uint64_t budget) {
  if (k == 0) throw std::invalid_argument("enumerate_cliques: k must be positive");
  const Elem n = g.order();
  return kernels::dispatch_width(n, [&]<std::size_t W>() {
    const auto& fg = kernels::FastGroup<W>::of(n);
    typename kernels::CliqueWalker<W>::Spec spec;
    spec.connection = fg.expand(g.connection().mask());
    spec.sizes = {k};
    spec.canonical_only = mode == CliqueMode::canonical_only;
    kernels::CliqueWalker<W> walker(fg, spec);
    CliqueEnumeration out;
    std::vector<Elem> token;
    const auto status = walker.run(out.nodes, budget, token, [&](const kernels::Bits<W>& set, unsigned) {
      out.cliques.push_back(CyclicMultiset::from_elements(n, kernels::to_elems(set)));
    });
    out.exhaustive = status == kernels::WalkStatus::finished;
    std::sort(out.cliques.begin(), out.cliques.end(), [](const auto& a, const auto& b) {
      const auto x = a.support(), y = b.support();
      return x < y;
    });
    return out;
  });
}

}  // namespace spectile
