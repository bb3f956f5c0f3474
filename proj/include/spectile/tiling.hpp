#pragma once

// Tiling of Z_n: complement search and verification, the (T1)/(T2)
// conditions, and checkers for the structural lemmas on cyclotomic divisibility.

#include "spectile/groupring.hpp"
#include "spectile/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spectile {

struct TilingCertificate {
  CyclicMultiset S;
  CyclicMultiset T;
  Elem n() const noexcept { return S.order(); }
};

struct TilingResult {
  SearchStatus status = SearchStatus::none;
  std::optional<TilingCertificate> certificate;
  std::uint64_t nodes = 0;
};

/// S + T covers every element of Z_n exactly once (which forces |S||T| = n).
bool verify_tiling(const CyclicMultiset& s, const CyclicMultiset& t);

/// Exact-cover search for T with 0 in T. Requires S a nonempty set and n <= 512.
TilingResult find_tiling_complement(const CyclicMultiset& s, std::uint64_t budget,
                                    bool cyclotomic_prune = true);

struct T1Result {
  bool holds = false;
  DivisorClassSet h_s;  // prime powers d | n with Phi_d | m_S
  std::uint64_t product = 1;
};

T1Result t1_check(const CyclicMultiset& s);

/// Phi of the product divides m_S for every pairwise coprime subset of H_S
/// with at least two members.
bool t2_check(const CyclicMultiset& s);

/// A product of 2-element coordinate sets in Z_m = Z_{p_1} x ... x Z_{p_d}
/// (m square-free), with a chosen anchor vertex.
class Cuboid {
 public:
  /// pairs[i] are two distinct residues mod the i-th prime of m; anchor bit i
  /// selects pairs[i][1] as the anchor's i-th coordinate.
  Cuboid(Elem m, std::vector<std::pair<Elem, Elem>> pairs, std::uint32_t anchor = 0);

  Elem modulus() const noexcept { return m_; }
  const std::vector<Elem>& primes() const noexcept { return primes_; }
  const std::vector<std::pair<Elem, Elem>>& pairs() const noexcept { return pairs_; }
  std::uint32_t anchor_bits() const noexcept { return anchor_; }
  Elem anchor() const { return vertex(anchor_); }
  /// The vertex whose i-th coordinate is pairs[i][bit i of choice].
  Elem vertex(std::uint32_t choice) const;
  /// All 2^d vertices, indexed by choice bits.
  std::vector<Elem> vertices() const;
  /// Number of CRT coordinates in which x and y differ.
  unsigned hamming(Elem x, Elem y) const;
  std::string to_string() const;

 private:
  Elem m_;
  std::vector<Elem> primes_;
  std::vector<std::pair<Elem, Elem>> pairs_;
  std::vector<Elem> idempotents_;
  std::uint32_t anchor_;
};

struct CubeRuleResult {
  bool holds = true;
  std::optional<Cuboid> counterexample;
};

/// Every cuboid of Z_m (m square-free) with anchor bits 0, coordinate pairs in
/// lexicographic order, last prime fastest.
std::vector<Cuboid> all_cuboids(Elem m);

/// Alternating vertex sums of w over every cuboid of Z_m, m square-free.
CubeRuleResult cube_rule_check(const CyclicMultiset& w);

struct CosetCubeResult {
  bool hypothesis = false;  // Phi_n | m_w
  bool holds = true;        // cube rule on every coset of the subgroup of order m'
};

/// Requires m' square-free and m' | n.
CosetCubeResult cube_rule_on_cosets(const CyclicMultiset& w, Elem m_prime);

struct CorollaryResult {
  bool applicable = false;
  bool conclusion_holds = false;
  bool small_prime = false;  // one of the two other primes is 2
};

/// T on Z_n with n a product of three distinct primes, p one of them.
CorollaryResult coset_structure_corollary(const CyclicMultiset& t, Elem p);

struct ProjectionResult {
  bool applicable = false;
  bool congruent = false;  // multiplicities of T_m agree mod r
  std::uint64_t c = 0;
  std::optional<CyclicMultiset> D;  // present when congruent
  CyclicMultiset projection;
};

/// Requires m | N, r | N, gcd(m, r) = 1.
ProjectionResult projection_decomposition(const CyclicMultiset& t, Elem m, Elem r);

/// First pair t1 < t2 of T (ascending order) with x and y both not dividing
/// t1 - t2. Requires x != y primes dividing N and 0 in T.
std::optional<std::pair<Elem, Elem>> generating_pair_witness(const CyclicMultiset& t, Elem x,
                                                             Elem y);

/// True if the elements of T generate Z_n.
bool generates(const CyclicMultiset& t);

/// n = p^2 q r with q < r; throws std::invalid_argument otherwise.
struct P2QR {
  Elem p, q, r;
};
P2QR p2qr_shape(Elem n);
bool is_p2qr(Elem n) noexcept;

/// Case label by the largest divisor of n dividing |S|: one of "p2q", "p2r",
/// "pqr", "p2", "pq", "pr", "qr", "p", "q", "r", "1", "other".
std::string case_classify(const CyclicMultiset& s);
std::string case_classify(Elem n, std::uint64_t size);

}  // namespace spectile
