#pragma once

// Spectral pairs in Z_n: verification by pairwise orthogonality and spectrum
// search as a clique problem in divisor-class Cayley graphs.

#include "spectile/groupring.hpp"
#include "spectile/kernels/clique.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace spectile {

using kernels::SearchStatus;

const char* to_string(SearchStatus s) noexcept;

/// Cay(Z_n, E) with E the expansion of a divisor-class set; x ~ y iff x - y in E.
class CayleyGraph {
 public:
  /// The class d = 1 (the element 0) is dropped from the connection.
  explicit CayleyGraph(DivisorClassSet connection);

  const CyclicGroupCtx& ctx() const noexcept { return connection_.ctx(); }
  const DivisorClassSet& connection() const noexcept { return connection_; }
  Elem order() const noexcept { return connection_.ctx().order(); }
  bool adjacent(Elem x, Elem y) const;
  /// Neighbours of x, ascending.
  std::vector<Elem> neighbors(Elem x) const;
  std::size_t degree() const noexcept { return connection_set_.size(); }

 private:
  DivisorClassSet connection_;
  std::vector<Elem> connection_set_;
  std::vector<char> in_connection_;
};

struct SpectralCertificate {
  CyclicMultiset S;
  CyclicMultiset Lambda;
  DivisorClassSet zero_set;
};

struct SpectrumResult {
  SearchStatus status = SearchStatus::none;
  std::optional<SpectralCertificate> certificate;
  std::uint64_t nodes = 0;
};

/// |Lambda| = |S| and every difference of distinct elements of Lambda lies in
/// the expansion of zero_divisor_set(S).
bool verify_spectral_pair(const CyclicMultiset& s, const CyclicMultiset& lambda);

/// Searches for a spectrum containing 0. Requires S a nonempty set and n <= 512.
SpectrumResult find_spectrum(const CyclicMultiset& s, std::uint64_t budget);

/// verify_spectral_pair(Lambda, S).
bool spectra_are_dual(const SpectralCertificate& cert);

enum class CliqueMode { all_through_zero, canonical_only };

struct CliqueEnumeration {
  std::vector<CyclicMultiset> cliques;  // ascending by element list
  bool exhaustive = true;
  std::uint64_t nodes = 0;
};

/// All k-cliques through 0, or one affine-canonical representative per class
/// of k-cliques through 0 in canonical mode. Requires n <= 512.
CliqueEnumeration enumerate_cliques(const CayleyGraph& g, unsigned k, CliqueMode mode,
                                    std::uint64_t budget);

}  // namespace spectile
