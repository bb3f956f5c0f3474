#include "spectile/tiling.hpp"

#include "spectile/kernels/tiling.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spectile {

bool verify_tiling(const CyclicMultiset& s, const CyclicMultiset& t) {
  if (s.order() != t.order()) throw std::invalid_argument("verify_tiling: group orders differ");
  const Elem n = s.order();
  if (s.total() * t.total() != n) return false;
  std::vector<std::uint64_t> conv(n, 0);
  const auto se = s.support(), te = t.support();
  for (Elem a : se)
    for (Elem b : te) conv[(a + b) % n] += std::uint64_t{s[a]} * t[b];
  return std::all_of(conv.begin(), conv.end(), [](std::uint64_t c) { return c == 1; });
}

TilingResult find_tiling_complement(const CyclicMultiset& s, std::uint64_t budget,
                                    bool cyclotomic_prune) {
  if (!s.is_set() || s.empty())
    throw std::invalid_argument("find_tiling_complement: S must be a nonempty set");
  const auto elems = s.support();
  return kernels::dispatch_width(s.order(), [&]<std::size_t W>() {
    const auto& fg = kernels::FastGroup<W>::of(s.order());
    auto res = kernels::find_complement(fg, kernels::to_bits<W>(elems), budget, cyclotomic_prune);
    TilingResult out;
    out.status = res.status;
    out.nodes = res.nodes;
    if (res.status == SearchStatus::found)
      out.certificate = TilingCertificate{s, CyclicMultiset::from_elements(s.order(), res.complement)};
    return out;
  });
}

T1Result t1_check(const CyclicMultiset& s) {
  T1Result out{false, DivisorClassSet(s.ctx_ptr()), 1};
  std::vector<Elem> h;
  for (Elem d : s.ctx().divisors()) {
    if (d == 1 || !is_prime_power(d) || !phi_divides(d, s)) continue;
    h.push_back(d);
    out.product *= factorize(d).front().first;
  }
  out.h_s = DivisorClassSet(s.ctx_ptr(), std::move(h));
  out.holds = out.product == s.total();
  return out;
}

bool t2_check(const CyclicMultiset& s) {
  const auto h = t1_check(s).h_s.members();
  std::vector<Elem> prime(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) prime[i] = factorize(h[i]).front().first;
  const std::size_t k = h.size();
  if (k > 20) throw std::invalid_argument("t2_check: too many prime powers");
  for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << k); ++sub) {
    if (std::popcount(sub) < 2) continue;
    bool coprime = true;
    Elem prod = 1;
    for (std::size_t i = 0; i < k && coprime; ++i) {
      if (!(sub >> i & 1)) continue;
      for (std::size_t j = i + 1; j < k; ++j)
        if ((sub >> j & 1) && prime[i] == prime[j]) coprime = false;
      prod *= h[i];
    }
    if (coprime && !phi_divides(prod, s)) return false;
  }
  return true;
}

namespace {

Elem mod_inverse(Elem a, Elem p) {
  for (Elem x = 1; x < p; ++x)
    if (std::uint64_t{a} * x % p == 1) return x;
  throw std::invalid_argument("mod_inverse: not invertible");
}

void require_square_free(Elem m, const char* who) {
  if (m == 0 || !is_square_free(m)) throw std::invalid_argument(std::string(who) + ": modulus must be square-free");
}

}  // namespace

Cuboid::Cuboid(Elem m, std::vector<std::pair<Elem, Elem>> pairs, std::uint32_t anchor)
    : m_(m), pairs_(std::move(pairs)), anchor_(anchor) {
  require_square_free(m, "Cuboid");
  for (const auto& [p, e] : factorize(m)) primes_.push_back(p);
  if (pairs_.size() != primes_.size())
    throw std::invalid_argument("Cuboid: need one coordinate pair per prime");
  if (primes_.size() > 31 || anchor_ >> primes_.size())
    throw std::invalid_argument("Cuboid: bad anchor");
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const Elem p = primes_[i];
    auto [a, b] = pairs_[i];
    if (a >= p || b >= p || a == b) throw std::invalid_argument("Cuboid: bad coordinate pair");
    const Elem rest = m / p;
    idempotents_.push_back(static_cast<Elem>(std::uint64_t{rest} * mod_inverse(rest % p, p) % m));
  }
}

Elem Cuboid::vertex(std::uint32_t choice) const {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const Elem c = (choice >> i & 1) ? pairs_[i].second : pairs_[i].first;
    x = (x + std::uint64_t{c} * idempotents_[i]) % m_;
  }
  return static_cast<Elem>(x);
}

std::vector<Elem> Cuboid::vertices() const {
  std::vector<Elem> out;
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << primes_.size()); ++c) out.push_back(vertex(c));
  return out;
}

unsigned Cuboid::hamming(Elem x, Elem y) const {
  unsigned d = 0;
  for (Elem p : primes_) d += (x % p) != (y % p);
  return d;
}

std::string Cuboid::to_string() const {
  std::ostringstream os;
  os << "Z_" << m_ << " cuboid";
  for (std::size_t i = 0; i < primes_.size(); ++i)
    os << " {" << pairs_[i].first << "," << pairs_[i].second << "} mod " << primes_[i];
  os << " anchor " << anchor();
  return os.str();
}

std::vector<Cuboid> all_cuboids(Elem m) {
  require_square_free(m, "all_cuboids");
  std::vector<Elem> primes;
  for (const auto& [p, e] : factorize(m)) primes.push_back(p);
  const std::size_t d = primes.size();
  std::vector<std::pair<Elem, Elem>> pairs(d, {0, 1});
  std::vector<Cuboid> out;
  while (true) {
    out.emplace_back(m, pairs);
    std::size_t i = d;
    bool advanced = false;
    while (i > 0 && !advanced) {
      --i;
      auto& [a, b] = pairs[i];
      if (b + 1 < primes[i]) {
        ++b;
        advanced = true;
      } else if (a + 2 < primes[i]) {
        ++a;
        b = a + 1;
        advanced = true;
      } else {
        pairs[i] = {0, 1};
      }
    }
    if (!advanced) return out;
  }
}

CubeRuleResult cube_rule_check(const CyclicMultiset& w) {
  CubeRuleResult out;
  for (const auto& cube : all_cuboids(w.order())) {
    std::int64_t sum = 0;
    const auto verts = cube.vertices();
    for (std::uint32_t c = 0; c < verts.size(); ++c) {
      const std::int64_t v = w[verts[c]];
      sum += (std::popcount(c) & 1) ? -v : v;
    }
    if (sum != 0) {
      out.holds = false;
      out.counterexample = cube;
      return out;
    }
  }
  return out;
}

CosetCubeResult cube_rule_on_cosets(const CyclicMultiset& w, Elem m_prime) {
  const Elem n = w.order();
  require_square_free(m_prime, "cube_rule_on_cosets");
  if (n % m_prime != 0) throw std::invalid_argument("cube_rule_on_cosets: m' must divide n");
  CosetCubeResult out;
  out.hypothesis = phi_divides(n, w);
  const Elem step = n / m_prime;
  const auto sub = CyclicGroupCtx::of(m_prime);
  for (Elem a = 0; a < step && out.holds; ++a) {
    std::vector<std::uint32_t> r(m_prime);
    for (Elem j = 0; j < m_prime; ++j) r[j] = w[a + j * step];
    out.holds = cube_rule_check(CyclicMultiset(sub, std::move(r))).holds;
  }
  return out;
}

CorollaryResult coset_structure_corollary(const CyclicMultiset& t, Elem p) {
  const Elem n = t.order();
  const auto f = factorize(n);
  if (f.size() != 3 || !is_square_free(n))
    throw std::invalid_argument("coset_structure_corollary: n must be a product of three distinct primes");
  std::vector<Elem> others;
  bool has_p = false;
  for (const auto& [prime, e] : f) {
    if (prime == p)
      has_p = true;
    else
      others.push_back(prime);
  }
  if (!has_p) throw std::invalid_argument("coset_structure_corollary: p must divide n");
  if (!t.is_set()) throw std::invalid_argument("coset_structure_corollary: T must be a set");
  CorollaryResult out;
  out.small_prime = others[0] == 2 || others[1] == 2;
  const auto elems = t.support();
  bool isolated = true;
  for (Elem x : elems) {
    for (Elem q : others) {
      const Elem step = n / q;
      for (Elem j = 1; j < q && isolated; ++j)
        if (t[(x + j * step) % n]) isolated = false;
    }
  }
  out.applicable = isolated && phi_divides(n, t);
  const Elem step = n / p;
  out.conclusion_holds = std::all_of(elems.begin(), elems.end(),
                                     [&](Elem x) { return t[(x + step) % n] != 0; });
  return out;
}

ProjectionResult projection_decomposition(const CyclicMultiset& t, Elem m, Elem r) {
  const Elem n = t.order();
  if (m == 0 || r == 0 || n % m != 0 || n % r != 0)
    throw std::invalid_argument("projection_decomposition: m and r must divide N");
  if (gcd(m, r) != 1) throw std::invalid_argument("projection_decomposition: gcd(m, r) != 1");
  const auto& mask = mask_polynomial(t);
  auto divides = [&](Elem k) {
    if (n % k == 0) return phi_divides(k, t);
    return mask.mod_monic(cyclotomic_poly(k)).is_zero();
  };
  ProjectionResult out{false, false, 0, std::nullopt, project(t, m)};
  out.applicable = true;
  for (Elem d : CyclicGroupCtx::of(m)->divisors()) {
    if (d == 1) continue;
    if (!divides(d) && !divides(d * r)) {
      out.applicable = false;
      break;
    }
  }
  const auto mult = out.projection.multiplicities();
  out.c = *std::min_element(mult.begin(), mult.end());
  out.congruent = std::all_of(mult.begin(), mult.end(),
                              [&](std::uint32_t v) { return (v - out.c) % r == 0; });
  if (out.congruent) {
    std::vector<std::uint32_t> dm(m);
    for (Elem x = 0; x < m; ++x) dm[x] = static_cast<std::uint32_t>((mult[x] - out.c) / r);
    out.D = CyclicMultiset(CyclicGroupCtx::of(m), std::move(dm));
  }
  return out;
}

std::optional<std::pair<Elem, Elem>> generating_pair_witness(const CyclicMultiset& t, Elem x,
                                                             Elem y) {
  const Elem n = t.order();
  if (x == y || !is_prime(x) || !is_prime(y) || n % x != 0 || n % y != 0)
    throw std::invalid_argument("generating_pair_witness: x, y must be distinct primes dividing N");
  if (!t.is_set() || t[0] == 0)
    throw std::invalid_argument("generating_pair_witness: T must be a set containing 0");
  const auto elems = t.support();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const Elem diff = elems[j] - elems[i];
      if (diff % x != 0 && diff % y != 0) return std::pair{elems[i], elems[j]};
    }
  return std::nullopt;
}

bool generates(const CyclicMultiset& t) {
  const auto elems = t.support();
  if (elems.empty()) return t.order() == 1;
  Elem g = t.order();
  for (Elem e : elems) g = gcd(g, e - elems.front());
  return g == 1;
}

bool is_p2qr(Elem n) noexcept {
  const auto f = factorize(n);
  if (f.size() != 3) return false;
  int squares = 0, simple = 0;
  for (const auto& [p, e] : f) {
    squares += e == 2;
    simple += e == 1;
  }
  return squares == 1 && simple == 2;
}

P2QR p2qr_shape(Elem n) {
  if (!is_p2qr(n)) throw std::invalid_argument("n is not of the form p^2 q r");
  P2QR out{0, 0, 0};
  for (const auto& [p, e] : factorize(n)) {
    if (e == 2)
      out.p = p;
    else if (out.q == 0)
      out.q = p;
    else
      out.r = p;
  }
  return out;
}

std::string case_classify(Elem n, std::uint64_t size) {
  const auto [p, q, r] = p2qr_shape(n);
  const Elem g = static_cast<Elem>(std::gcd(std::uint64_t{n}, size));
  if (g == n) return "other";
  std::string label;
  if (g % (p * p) == 0)
    label += "p2";
  else if (g % p == 0)
    label += "p";
  if (g % q == 0) label += "q";
  if (g % r == 0) label += "r";
  return label.empty() ? "1" : label;
}

std::string case_classify(const CyclicMultiset& s) { return case_classify(s.order(), s.total()); }

}  // namespace spectile
