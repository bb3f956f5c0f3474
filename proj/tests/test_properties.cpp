#include <doctest.h>

#include "oracles.hpp"
#include "spectile/tiling.hpp"

#include <random>

using namespace spectile;

namespace {

constexpr std::uint64_t kBudget = 10'000'000;

std::mt19937_64& rng() {
  static std::mt19937_64 g(20261017);
  return g;
}

std::vector<Elem> random_set(Elem n, double density, bool with_zero = false) {
  std::bernoulli_distribution coin(density);
  std::vector<Elem> s;
  for (Elem x = 0; x < n; ++x)
    if ((with_zero && x == 0) || coin(rng())) s.push_back(x);
  if (s.empty()) s.push_back(0);
  return s;
}

Elem random_unit(Elem n) {
  const auto& u = CyclicGroupCtx::of(n)->units();
  return u[std::uniform_int_distribution<std::size_t>(0, u.size() - 1)(rng())];
}

Elem random_below(Elem n) { return std::uniform_int_distribution<Elem>(0, n - 1)(rng()); }

std::vector<Elem> primes_of(Elem n) {
  std::vector<Elem> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("phi_divides agrees with evaluation at roots of unity") {
  for (Elem n : {12u, 18u, 30u, 36u, 64u}) {
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<std::uint32_t> m(n);
      std::uniform_int_distribution<std::uint32_t> w(0, trial % 3 == 0 ? 3 : 1);
      for (auto& v : m) v = w(rng());
      const CyclicMultiset a(CyclicGroupCtx::of(n), m);
      for (Elem d : a.ctx().divisors()) CHECK(phi_divides(d, a) == oracle::phi_divides(m, d));
    }
  }
}

TEST_CASE("affine maps preserve zero sets, spectrality and tiling") {
  for (Elem n : {12u, 15u, 16u, 20u, 24u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto s = CyclicMultiset::from_elements(n, random_set(n, 0.3));
      const auto img = s.affine_image(random_unit(n), random_below(n));
      CHECK(zero_divisor_set(img) == zero_divisor_set(s));
      CHECK(affine_canonical(img) == affine_canonical(s));
      CHECK(affine_canonical(affine_canonical(s)) == affine_canonical(s));
      CHECK((find_spectrum(img, kBudget).status == SearchStatus::found) ==
            (find_spectrum(s, kBudget).status == SearchStatus::found));
      CHECK((find_tiling_complement(img, kBudget).status == SearchStatus::found) ==
            (find_tiling_complement(s, kBudget).status == SearchStatus::found));
    }
  }
}

TEST_CASE("tiling is symmetric and forces |S||T| = n") {
  for (Elem n : {12u, 16u, 18u, 24u, 30u}) {
    for (int trial = 0; trial < 80; ++trial) {
      const auto s = CyclicMultiset::from_elements(n, random_set(n, 0.25, true));
      const auto r = find_tiling_complement(s, kBudget);
      if (r.status != SearchStatus::found) continue;
      const auto& t = r.certificate->T;
      CHECK(verify_tiling(s, t));
      CHECK(verify_tiling(t, s));
      CHECK(s.total() * t.total() == n);
      CHECK(t1_check(s).holds);
      CHECK(t1_check(t).holds);
    }
  }
}

TEST_CASE("spectral certificates verify in both directions") {
  for (Elem n : {12u, 18u, 24u, 36u}) {
    for (int trial = 0; trial < 80; ++trial) {
      const auto s = CyclicMultiset::from_elements(n, random_set(n, 0.3, true));
      const auto r = find_spectrum(s, kBudget);
      if (r.status != SearchStatus::found) continue;
      CHECK(verify_spectral_pair(s, r.certificate->Lambda));
      CHECK(spectra_are_dual(*r.certificate));
      CHECK(oracle::is_spectral_pair(n, s.support(), r.certificate->Lambda.support()));
    }
  }
}

TEST_CASE("difference multisets and projections") {
  for (Elem n : {10u, 12u, 30u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto s = CyclicMultiset::from_elements(n, random_set(n, 0.4));
      const auto d = difference_multiset(s);
      CHECK(d.total() == s.total() * s.total());
      CHECK(d[0] == s.total());
      for (Elem x = 1; x < n; ++x) CHECK(d[x] == d[n - x]);
      for (Elem m : s.ctx().divisors())
        for (Elem k : CyclicGroupCtx::of(m)->divisors())
          CHECK(project(project(s, m), k) == project(s, k));
    }
  }
}

TEST_CASE("cube rule holds for nonnegative combinations of prime cosets") {
  for (Elem m : {30u, 42u}) {
    const auto primes = primes_of(m);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::uint32_t> w(m, 0);
      std::uniform_int_distribution<std::uint32_t> coef(0, 4);
      for (Elem p : primes)
        for (Elem shift = 0; shift < m / p; ++shift) {
          if (random_below(3) != 0) continue;
          const std::uint32_t c = coef(rng());
          for (Elem j = 0; j < p; ++j) w[(shift + j * (m / p)) % m] += c;
        }
      const CyclicMultiset a(CyclicGroupCtx::of(m), w);
      CHECK(phi_divides(m, a));
      CHECK(cube_rule_check(a).holds);
      CHECK(oracle::cube_rule(w));
    }
  }
}

TEST_CASE("cube rule checker agrees with the vertex-search oracle") {
  for (Elem m : {6u, 10u, 30u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint32_t> w(m);
      for (auto& v : w) v = random_below(2);
      CHECK(cube_rule_check(CyclicMultiset(CyclicGroupCtx::of(m), w)).holds == oracle::cube_rule(w));
    }
  }
}

TEST_CASE("projection decomposition reconstructs the projection for prime r") {
  for (Elem n : {24u, 36u, 60u}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto t = CyclicMultiset::from_elements(n, random_set(n, 0.5));
      for (Elem m : t.ctx().divisors())
        for (Elem r : t.ctx().divisors()) {
          if (m == 1 || !is_prime(r) || gcd(m, r) != 1) continue;
          const auto res = projection_decomposition(t, m, r);
          if (!res.applicable) continue;
          INFO(t.to_string(), " m=", m, " r=", r);
          CHECK(res.congruent);
          REQUIRE(res.D);
          for (Elem x = 0; x < m; ++x) CHECK(res.projection[x] == res.c + r * (*res.D)[x]);
        }
    }
  }
}
