// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   spectile_acceptance [--cli PATH] [--scratch DIR] [--only N]

#include "oracles.hpp"
#include "spectile/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace spectile;
namespace fs = std::filesystem;

namespace {

// Pinned parameters.
constexpr Elem kProductMaxN = 1000;
constexpr int kRandomSetsPerOrder = 100'000;
constexpr Elem kSpectrumOracleMaxN = 16;
constexpr Elem kTileOracleMaxN = 20;
constexpr std::uint64_t kSearchBudget = 100'000'000;
constexpr std::uint64_t kCampaignBudget = 1'000'000'000;
constexpr unsigned kMinExhaustiveSize = 6;
constexpr unsigned kAlwaysTileSize = 5;
constexpr int kCubeInstances = 1000;
constexpr int kCorollaryInstances = 200;
constexpr int kProjectionInstances = 500;
constexpr int kGeneratingSets = 1000;
constexpr unsigned kParallelWorkers = 8;
constexpr std::uint64_t kResumeStopSteps = 40;
constexpr int kKillAfterSeconds = 8;
constexpr std::uint64_t kSeed = 0x5eed2026;

std::mt19937_64 rng(kSeed);

Elem below(Elem n) { return std::uniform_int_distribution<Elem>(0, n - 1)(rng); }

std::vector<Elem> bits_to_set(std::uint64_t bits, Elem n) {
  std::vector<Elem> s;
  for (Elem x = 0; x < n; ++x)
    if (bits >> x & 1) s.push_back(x);
  return s;
}

std::vector<Elem> primes_of(Elem n) { return oracle::prime_factors(n); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

// Evidence shared between criteria.
struct Ledger {
  std::uint64_t certificates = 0, dual_failures = 0;
  std::uint64_t tiles = 0, t1_failures = 0;
  std::uint64_t t1t2_sets = 0, t1t2_non_tiles = 0, t1t2_undecided = 0;
  std::optional<CampaignReport> n60;
} evidence;

bool oracle_t1(Elem n, const std::vector<Elem>& s, bool* t2 = nullptr) {
  const auto m = oracle::indicator(n, s);
  std::vector<Elem> h;
  std::uint64_t prod = 1;
  for (Elem p : primes_of(n))
    for (Elem q = p; n % q == 0; q *= p)
      if (oracle::phi_divides(m, q)) {
        h.push_back(q);
        prod *= p;
      }
  if (t2) {
    *t2 = true;
    for (std::uint32_t sub = 0; sub < (1u << h.size()) && *t2; ++sub) {
      if (std::popcount(sub) < 2) continue;
      std::uint64_t d = 1;
      std::set<Elem> ps;
      bool coprime = true;
      for (std::size_t i = 0; i < h.size(); ++i)
        if (sub >> i & 1) {
          const Elem p = primes_of(h[i]).front();
          coprime = coprime && ps.insert(p).second;
          d *= h[i];
        }
      if (coprime && !oracle::phi_divides(m, static_cast<Elem>(d))) *t2 = false;
    }
  }
  return prod == s.size();
}

void note_spectral(Elem n, const std::vector<Elem>& s, const std::vector<Elem>& lam, bool lib_dual) {
  ++evidence.certificates;
  if (!lib_dual || !oracle::is_spectral_pair(n, lam, s)) ++evidence.dual_failures;
}

void note_tile(Elem n, const std::vector<Elem>& s) {
  ++evidence.tiles;
  if (!oracle_t1(n, s)) ++evidence.t1_failures;
}

void note_records(const CampaignReport& r) {
  const Elem n = r.config.n;
  for (const auto& rec : r.records) {
    if (rec.spectral == Tri::yes) note_spectral(n, rec.set, rec.spectrum, rec.dual.value_or(false));
    if (rec.tile == Tri::yes) {
      note_tile(n, rec.set);
      if (!rec.t1) ++evidence.t1_failures;
    }
    if (rec.t1 && rec.t2) {
      ++evidence.t1t2_sets;
      if (rec.tile == Tri::no) ++evidence.t1t2_non_tiles;
      if (rec.tile == Tri::unknown) ++evidence.t1t2_undecided;
    }
  }
  evidence.t1_failures += r.summary.t1_violations;
  evidence.t1t2_non_tiles += r.summary.t1t2_non_tiles;
  evidence.dual_failures += r.summary.dual_violations;
}

// 1. Cyclotomic core.
void criterion1(Outcome& o) {
  for (Elem n = 1; n <= kProductMaxN; ++n) {
    IntPolynomial prod{1};
    for (Elem d : CyclicGroupCtx::of(n)->divisors()) prod = prod * cyclotomic_poly(d);
    if (!(prod == IntPolynomial::x_pow_minus_one(n))) o.fail("product identity at n=" + std::to_string(n));
  }
  std::uint64_t pairs = 0, disagreements = 0;
  for (Elem n : {12u, 30u, 60u}) {
    const auto ctx = CyclicGroupCtx::of(n);
    for (int i = 0; i < kRandomSetsPerOrder; ++i) {
      const std::uint64_t bits = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << n) - 1)(rng);
      const auto s = bits_to_set(bits, n);
      const auto a = CyclicMultiset::from_elements(n, s);
      const auto m = oracle::indicator(n, s);
      for (Elem d : ctx->divisors()) {
        ++pairs;
        if (phi_divides(d, a) != oracle::phi_divides(m, d)) ++disagreements;
      }
    }
  }
  if (disagreements) o.fail(std::to_string(disagreements) + " phi_divides disagreements");
  o.detail << "product identity n<=" << kProductMaxN << "; " << pairs << " (d,S) pairs vs character sums";
}

// 2. Spectra against brute force.
void criterion2(Outcome& o) {
  std::uint64_t sets = 0, spectral = 0;
  for (Elem n = 1; n <= kSpectrumOracleMaxN; ++n) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); bits += 2) {
      const auto s = bits_to_set(bits, n);
      const auto a = CyclicMultiset::from_elements(n, s);
      const auto r = find_spectrum(a, kSearchBudget);
      const auto want = oracle::spectrum(n, s);
      ++sets;
      if (r.status == SearchStatus::budget_exhausted) {
        o.fail("budget exhausted on " + a.to_string());
        continue;
      }
      if ((r.status == SearchStatus::found) != want.has_value()) o.fail("disagreement on " + a.to_string());
      if (r.certificate) {
        ++spectral;
        const auto lam = r.certificate->Lambda.support();
        if (!oracle::is_spectral_pair(n, s, lam)) o.fail("bad certificate for " + a.to_string());
        note_spectral(n, s, lam, spectra_are_dual(*r.certificate));
      }
    }
  }
  o.detail << sets << " sets containing 0, n<=" << kSpectrumOracleMaxN << ", " << spectral << " spectral";
}

// 3. Tiles against brute force, pruned and unpruned.
void criterion3(Outcome& o) {
  std::uint64_t sets = 0, tiles = 0;
  for (Elem n = 1; n <= kTileOracleMaxN; ++n) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); bits += 2) {
      const auto s = bits_to_set(bits, n);
      const auto a = CyclicMultiset::from_elements(n, s);
      const auto want = oracle::complement(n, s);
      ++sets;
      for (bool prune : {true, false}) {
        const auto r = find_tiling_complement(a, kSearchBudget, prune);
        if (r.status == SearchStatus::budget_exhausted) {
          o.fail("budget exhausted on " + a.to_string());
          continue;
        }
        if ((r.status == SearchStatus::found) != want.has_value())
          o.fail(std::string(prune ? "pruned" : "unpruned") + " disagreement on " + a.to_string());
        if (r.certificate && !oracle::is_tiling(n, s, r.certificate->T.support()))
          o.fail("bad complement for " + a.to_string());
      }
      bool t2 = false;
      const bool t1 = oracle_t1(n, s, &t2);
      if (want) {
        ++tiles;
        note_tile(n, s);
        if (!t1_check(a).holds) ++evidence.t1_failures;
      }
      if (t1 && t2) {
        ++evidence.t1t2_sets;
        if (!want) ++evidence.t1t2_non_tiles;
      }
      if (t1_check(a).holds != t1 || t2_check(a) != t2) o.fail("t1/t2 disagreement on " + a.to_string());
    }
  }
  o.detail << sets << " sets containing 0, n<=" << kTileOracleMaxN << ", " << tiles << " tiles";
}

// 4. Spectral <=> tile on small orders.
void criterion4(Outcome& o) {
  const std::vector<Elem> ns{8, 12, 16, 18, 20, 24, 30};
  const auto x = crosscheck_small(ns);
  for (const auto& d : x.diagnostics) std::cout << "    " << d << '\n';
  if (!x.ok) o.fail("crosscheck mismatch");
  std::uint64_t classes = 0;
  for (const auto& r : x.reports) {
    classes += r.summary.classes;
    if (r.summary.spectral_tile_mismatches) o.fail("mismatch at n=" + std::to_string(r.config.n));
    note_records(r);
  }
  o.detail << classes << " affine classes over n in {8,12,16,18,20,24,30}";
}

// 5. n = 60 campaign.
void criterion5(Outcome& o) {
  CampaignConfig cfg;
  cfg.n = 60;
  cfg.sizes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  cfg.budget = kCampaignBudget;
  cfg.workers = 1;
  auto rep = run_campaign(cfg);
  for (const auto& st : rep.sizes)
    std::cout << "    size " << st.size << ": classes=" << st.classes << " spectral=" << st.spectral
              << " tiles=" << st.tiles << " undecided=" << st.unknown
              << (st.exhaustive ? " exhaustive" : " budget-limited") << '\n';
  if (rep.summary.failures) o.fail(std::to_string(rep.summary.failures) + " FAILURE records");
  const auto ex = rep.exhaustive_sizes();
  for (unsigned k = 1; k <= kMinExhaustiveSize; ++k)
    if (std::find(ex.begin(), ex.end(), k) == ex.end()) o.fail("size " + std::to_string(k) + " not exhaustive");
  std::uint64_t small = 0;
  for (const auto& rec : rep.records)
    if (rec.spectral == Tri::yes && rec.set.size() <= kAlwaysTileSize) {
      ++small;
      if (rec.tile != Tri::yes) o.fail("small spectral record does not tile");
    }
  for (const auto& row : classify_report(rep))
    if (row.violations) o.fail("case " + row.label + " has structural violations");
  note_records(rep);
  o.detail << rep.summary.spectral << " spectral classes, failures=" << rep.summary.failures
           << ", exhaustive sizes " << nlohmann::json(ex).dump() << ", budget-limited "
           << nlohmann::json(rep.budget_limited_sizes()).dump() << ", " << small
           << " spectral records with |S|<=" << kAlwaysTileSize << ", " << rep.wall_seconds << " s";
  evidence.n60 = std::move(rep);
}

// 6. Duality over every certificate from 2-5.
void criterion6(Outcome& o) {
  if (evidence.dual_failures) o.fail(std::to_string(evidence.dual_failures) + " duality failures");
  if (evidence.certificates == 0) o.fail("no certificates collected");
  o.detail << evidence.certificates << " spectral certificates";
}

CyclicMultiset multiset(Elem n, const std::vector<std::uint32_t>& w) {
  return CyclicMultiset(CyclicGroupCtx::of(n), w);
}

void criterion7a(Outcome& o) {
  for (Elem m : {30u, 42u}) {
    const auto primes = primes_of(m);
    for (int i = 0; i < kCubeInstances; ++i) {
      std::vector<std::uint32_t> w(m, 0);
      // Rational coefficients a/den on each coset, scaled by the common denominator.
      for (Elem p : primes)
        for (Elem shift = 0; shift < m / p; ++shift) {
          if (below(2)) continue;
          const std::uint32_t c = below(7);
          for (Elem j = 0; j < p; ++j) w[(shift + j * (m / p)) % m] += c;
        }
      const auto a = multiset(m, w);
      if (!phi_divides(m, a) || !oracle::phi_divides(w, m)) o.fail("Phi_m does not divide a coset combination");
      if (!cube_rule_check(a).holds) o.fail("cube rule fails on " + a.to_string());
      if (!oracle::cube_rule(w)) o.fail("oracle cube rule fails on " + a.to_string());
    }
  }
  o.detail << "(a) " << 2 * kCubeInstances << " coset combinations on Z_30, Z_42; ";
}

void criterion7b(Outcome& o) {
  int applicable = 0, small = 0, small_ok = 0;
  for (Elem n : {30u, 105u}) {
    const auto primes = primes_of(n);
    for (int i = 0; i < kCorollaryInstances / 2; ++i) {
      const Elem p = primes[i % 3];
      std::vector<Elem> others;
      for (Elem x : primes)
        if (x != p) others.push_back(x);
      const Elem q = others[0], r = others[1];
      // A partial matching between residues mod q and mod r, lifted to Z_p-cosets.
      std::vector<Elem> rq(q), rr(r);
      std::iota(rq.begin(), rq.end(), 0);
      std::iota(rr.begin(), rr.end(), 0);
      std::shuffle(rq.begin(), rq.end(), rng);
      std::shuffle(rr.begin(), rr.end(), rng);
      const Elem k = 1 + below(std::min(q, r));
      std::vector<Elem> t;
      for (Elem j = 0; j < k; ++j)
        for (Elem x = 0; x < n; ++x)
          if (x % q == rq[j] && x % r == rr[j]) t.push_back(x);
      const auto img = CyclicMultiset::from_elements(n, t).affine_image(
          CyclicGroupCtx::of(n)->units()[below(static_cast<Elem>(CyclicGroupCtx::of(n)->units().size()))], below(n));
      const auto elems = img.support();
      const auto m = oracle::indicator(n, elems);
      bool isolated = true;
      for (Elem x : elems)
        for (Elem y : elems)
          if (x != y && ((x + n - y) % (n / q) == 0 || (x + n - y) % (n / r) == 0)) isolated = false;
      if (!isolated || !oracle::phi_divides(m, n)) {
        o.fail("construction not applicable");
        continue;
      }
      const auto res = coset_structure_corollary(img, p);
      if (!res.applicable) o.fail("checker rejects applicable instance " + img.to_string());
      ++applicable;
      if (res.small_prime) {
        ++small;
        small_ok += res.conclusion_holds;
      } else if (!res.conclusion_holds) {
        o.fail("conclusion fails on " + img.to_string());
      }
    }
  }
  if (small_ok != small) o.fail("conclusion fails on a small-prime instance");
  o.detail << "(b) " << applicable << " applicable instances on Z_30, Z_105, of which " << small
           << " with a small prime (" << small_ok << " satisfy the conclusion); ";
}

void criterion7c(Outcome& o) {
  struct Shape {
    Elem n, m, r;
  };
  const std::vector<Shape> shapes{{48, 4, 3}, {60, 4, 3}, {60, 4, 5}, {60, 3, 5},
                                  {84, 4, 7}, {90, 9, 2}, {120, 8, 3}, {105, 5, 3}};
  int done = 0, attempts = 0;
  auto check = [&](Elem n, Elem m, Elem r, const std::vector<Elem>& t, std::uint64_t uniform,
                   const std::vector<std::uint32_t>& raw) {
    const auto a = CyclicMultiset::from_elements(n, t);
    const auto w = oracle::indicator(n, t);
    for (Elem d = 2; d <= m; ++d)
      if (m % d == 0 && !oracle::phi_divides(w, d) && !oracle::phi_divides(w, d * r)) return false;
    const auto res = projection_decomposition(a, m, r);
    const auto lo = *std::min_element(raw.begin(), raw.end());
    bool ok = res.applicable && res.congruent && res.D && res.c == uniform + r * lo;
    for (Elem x = 0; ok && x < m; ++x) {
      const std::uint32_t direct = static_cast<std::uint32_t>(
          std::count_if(t.begin(), t.end(), [&](Elem e) { return e % m == x; }));
      ok = res.projection[x] == direct && (*res.D)[x] == raw[x] - lo && direct == res.c + r * (*res.D)[x];
    }
    if (!ok) o.fail("projection round trip fails on " + a.to_string());
    return true;
  };
  {
    std::vector<Elem> t;
    for (Elem j = 0; j < 8; ++j) t.push_back(3 * j);
    for (Elem x : {1u, 17u, 33u, 7u, 23u, 39u}) t.push_back(x);
    const auto res = projection_decomposition(CyclicMultiset::from_elements(48, t), 4, 3);
    if (!(res.applicable && res.c == 2 && res.D && *res.D == CyclicMultiset::from_elements(4, {1, 3})))
      o.fail("Z_48 lifted instance");
    check(48, 4, 3, t, 2, {0, 1, 0, 1});
    ++done;
  }
  while (done < kProjectionInstances && attempts < 100 * kProjectionInstances) {
    ++attempts;
    const auto [n, m, r] = shapes[below(static_cast<Elem>(shapes.size()))];
    std::vector<char> used(n, 0);
    std::vector<Elem> t;
    std::uint64_t uniform = 0;
    std::vector<std::uint32_t> raw(m, 0);
    bool clash = false;
    auto place = [&](const std::vector<Elem>& block) {
      for (Elem x : block)
        if (used[x]) return false;
      for (Elem x : block) {
        used[x] = 1;
        t.push_back(x);
      }
      return true;
    };
    const int blocks = 1 + static_cast<int>(below(4));
    for (int b = 0; b < blocks && !clash; ++b) {
      std::vector<Elem> block;
      const Elem x0 = below(n);
      if (below(2)) {
        for (Elem j = 0; j < r; ++j) block.push_back((x0 + j * (n / r)) % n);
        if (place(block)) raw[x0 % m] += 1;
        else clash = true;
      } else {
        const Elem max_u = n / (r * m);
        const Elem u = 1 + below(max_u);
        for (Elem j = 0; j < u * m; ++j) block.push_back((x0 + r * j) % n);
        if (place(block)) uniform += u;
        else clash = true;
      }
    }
    if (clash) continue;
    std::sort(t.begin(), t.end());
    if (check(n, m, r, t, uniform, raw)) ++done;
  }
  if (done < kProjectionInstances) o.fail("could only construct " + std::to_string(done) + " instances");
  o.detail << "(c) " << done << " constructed instances round-trip; ";
}

void criterion7d(Outcome& o) {
  std::uint64_t witnesses = 0;
  for (Elem n : {60u, 210u}) {
    const auto primes = primes_of(n);
    int made = 0;
    while (made < kGeneratingSets) {
      const double density = 0.02 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
      std::bernoulli_distribution coin(density);
      std::vector<Elem> t{0};
      Elem g = n;
      for (Elem x = 1; x < n; ++x)
        if (coin(rng)) {
          t.push_back(x);
          g = std::gcd(g, x);
        }
      if (g != 1) continue;
      ++made;
      const auto a = CyclicMultiset::from_elements(n, t);
      if (!generates(a)) o.fail("generates() rejects " + a.to_string());
      for (Elem x : primes)
        for (Elem y : primes) {
          if (x == y) continue;
          const auto w = generating_pair_witness(a, x, y);
          if (!w) {
            o.fail("no witness for " + a.to_string());
            continue;
          }
          const Elem diff = (w->second + n - w->first) % n;
          if (!a[w->first] || !a[w->second] || diff % x == 0 || diff % y == 0)
            o.fail("invalid witness for " + a.to_string());
          ++witnesses;
        }
    }
  }
  o.detail << "(d) " << 2 * kGeneratingSets << " generating sets of Z_60, Z_210, " << witnesses << " witnesses";
}

void criterion7(Outcome& o) {
  criterion7a(o);
  criterion7b(o);
  criterion7c(o);
  criterion7d(o);
}

// 8. (T1)/(T2) implications.
void criterion8(Outcome& o) {
  if (evidence.t1_failures) o.fail(std::to_string(evidence.t1_failures) + " tiles without (T1)");
  if (evidence.t1t2_non_tiles) o.fail(std::to_string(evidence.t1t2_non_tiles) + " (T1)&(T2) sets that do not tile");
  if (evidence.t1t2_undecided) o.fail(std::to_string(evidence.t1t2_undecided) + " (T1)&(T2) sets undecided");
  o.detail << evidence.tiles << " tiles checked for (T1); " << evidence.t1t2_sets << " (T1)&(T2) sets all tile";
}

std::string text(const CampaignReport& r) {
  std::ostringstream os;
  write_report_json(r, os, false);
  return os.str();
}

std::string stripped_file(const std::string& path, bool& resumed) {
  std::ifstream in(path, std::ios::binary);
  auto j = nlohmann::json::parse(in);
  resumed = j.at("runtime").at("resumed").get<bool>();
  j.erase("runtime");
  return j.dump();
}

// 9. Determinism and resume.
void criterion9(Outcome& o, const std::string& cli, const fs::path& scratch) {
  CampaignConfig cfg;
  cfg.n = 60;
  cfg.sizes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  cfg.budget = kCampaignBudget;
  const auto serial_text = evidence.n60 ? text(*evidence.n60) : text(run_campaign(cfg));
  evidence.n60.reset();

  cfg.workers = kParallelWorkers;
  if (text(run_campaign(cfg)) != serial_text) o.fail("workers=8 report differs from workers=1");

  const auto ck = (scratch / "resume_checkpoint.json").string();
  fs::remove(ck);
  cfg.checkpoint_path = ck;
  cfg.checkpoint_seconds = 0;
  cfg.stop_after_steps = kResumeStopSteps;
  bool interrupted = false;
  try {
    run_campaign(cfg);
  } catch (const CampaignInterrupted&) {
    interrupted = true;
  }
  if (!interrupted) o.fail("campaign was not interrupted");
  cfg.stop_after_steps.reset();
  cfg.checkpoint_seconds = 30;
  {
    const auto resumed = run_campaign(cfg);
    if (!resumed.resumed) o.fail("in-process resume did not load the checkpoint");
    if (text(resumed) != serial_text) o.fail("resumed report differs");
  }
  fs::remove(ck);
  o.detail << "workers 1 vs " << kParallelWorkers << " identical; in-process stop after " << kResumeStopSteps
           << " unit steps and resume identical";

  if (cli.empty()) {
    o.detail << "; process kill skipped (no --cli)";
    return;
  }
  const auto kill_ck = (scratch / "kill_checkpoint.json").string();
  const auto out = (scratch / "kill_report.json").string();
  fs::remove(kill_ck);
  fs::remove(out);
  const std::string base = "\"" + cli + "\" campaign --n 60 --sizes 1-12 --budget 1e9 --workers " +
                           std::to_string(kParallelWorkers) + " --checkpoint \"" + kill_ck +
                           "\" --checkpoint-seconds 1 --json \"" + out + "\" > /dev/null 2>&1";
  const int killed = std::system(("timeout -s KILL " + std::to_string(kKillAfterSeconds) + " " + base).c_str());
  const bool had_checkpoint = fs::exists(kill_ck);
  const int rc = std::system(base.c_str());
  if (rc != 0) o.fail("resumed CLI run exited with " + std::to_string(rc));
  if (!fs::exists(out)) {
    o.fail("resumed CLI run wrote no report");
    return;
  }
  bool cli_resumed = false;
  if (stripped_file(out, cli_resumed) != serial_text) o.fail("killed-and-resumed CLI report differs");
  if (!cli_resumed) o.fail("CLI run did not resume");
  o.detail << "; SIGKILL after " << kKillAfterSeconds << " s (status " << killed << ", checkpoint "
           << (had_checkpoint ? "present" : "absent") << ") and CLI resume identical";
  fs::remove(kill_ck);
  fs::remove(out);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  fs::path scratch = fs::temp_directory_path() / "spectile_acceptance";
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cli" && i + 1 < argc) cli = argv[++i];
    else if (a == "--scratch" && i + 1 < argc) scratch = argv[++i];
    else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    else {
      std::cerr << "usage: spectile_acceptance [--cli PATH] [--scratch DIR] [--only N]\n";
      return 1;
    }
  }
  fs::create_directories(scratch);

  const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, [&](Outcome& o) { criterion9(o, cli, scratch); }}};

  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    if (only && id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
