// spectile: command-line front end for spectral/tiling analysis on Z_n.
//
// Exit codes: 0 decided, 1 usage error, 2 budget exhausted,
// 3 FAILURE record or crosscheck mismatch.

#include "spectile/spectral.hpp"
#include "spectile/tiling.hpp"
#include "spectile/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace spectile;
using json = nlohmann::json;

namespace {

constexpr int kDecided = 0;
constexpr int kUsage = 1;
constexpr int kBudget = 2;
constexpr int kFailure = 3;

std::uint64_t parse_count(const std::string& s) {
  std::size_t pos = 0;
  const long double v = std::stold(s, &pos);
  if (pos != s.size() || !(v >= 0) || v > 1.8e19L || std::floor(v) != v)
    throw std::invalid_argument("not a node count: " + s);
  return static_cast<std::uint64_t>(v);
}

std::vector<unsigned> parse_sizes(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(static_cast<unsigned>(std::stoul(part)));
    } else {
      const unsigned lo = static_cast<unsigned>(std::stoul(part.substr(0, dash)));
      const unsigned hi = static_cast<unsigned>(std::stoul(part.substr(dash + 1)));
      if (lo > hi) throw std::invalid_argument("bad size range " + part);
      for (unsigned k = lo; k <= hi; ++k) out.push_back(k);
    }
  }
  return out;
}

std::vector<Elem> parse_list(const std::string& s) {
  std::vector<Elem> out;
  for (unsigned v : parse_sizes(s)) out.push_back(v);
  return out;
}

std::uint64_t budget_with_env(std::uint64_t b) {
  if (const char* env = std::getenv("SPECTILE_BUDGET"); env && *env) return parse_count(env);
  return b;
}

json tri(SearchStatus s) {
  if (s == SearchStatus::budget_exhausted) return "unknown";
  return s == SearchStatus::found;
}

void emit(const json& j, bool as_json, const std::string& text) {
  if (as_json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

json divisor_list(const DivisorClassSet& d) { return d.members(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectile: spectral sets and tiles of cyclic groups"};
  app.require_subcommand(1);

  std::string set_lit, ms_lit;
  std::string budget_s = "1e8";
  bool as_json = false, no_prune = false;

  auto* spectrum = app.add_subcommand("spectrum", "search for a spectrum of S");
  spectrum->add_option("--set", set_lit, "set literal, e.g. n=12:0,1,6,7")->required();
  spectrum->add_option("--budget", budget_s, "node budget");
  spectrum->add_flag("--json", as_json);

  auto* tile = app.add_subcommand("tile", "search for a tiling complement of S");
  tile->add_option("--set", set_lit)->required();
  tile->add_option("--budget", budget_s);
  tile->add_flag("--no-prune", no_prune, "disable cyclotomic pruning");
  tile->add_flag("--json", as_json);

  auto* t1t2 = app.add_subcommand("t1t2", "check (T1) and (T2)");
  t1t2->add_option("--set", set_lit)->required();
  t1t2->add_flag("--json", as_json);

  Elem m = 0;
  auto* cube = app.add_subcommand("cube", "cube rule on Z_m, or on Z_m-cosets when m < n");
  cube->add_option("--multiset", ms_lit, "multiset literal, e.g. n=6:0^2,3")->required();
  cube->add_option("--m", m, "square-free modulus")->required();
  cube->add_flag("--json", as_json);

  std::string which;
  Elem r = 0, x = 0, y = 0, p = 0;
  auto* lemma = app.add_subcommand("lemma", "structural lemma checkers");
  lemma->add_option("--which", which)
      ->required()
      ->check(CLI::IsMember({"cube-coset", "proj", "genpair", "corollary"}));
  lemma->add_option("--set", set_lit, "set T (proj, genpair, corollary)");
  lemma->add_option("--multiset", ms_lit, "multiset w (cube-coset)");
  lemma->add_option("--m", m);
  lemma->add_option("--r", r);
  lemma->add_option("--x", x);
  lemma->add_option("--y", y);
  lemma->add_option("--p", p, "prime playing the role of p (corollary)");
  lemma->add_flag("--json", as_json);

  CampaignConfig cfg;
  std::string strategy = "clique", sizes_s, json_path, csv_path, bundle_path = "failure_bundle.json";
  std::string leaf_s = "1e7";
  std::string campaign_budget_s = "1e9";
  auto* campaign = app.add_subcommand("campaign", "enumerate spectral sets and check they tile");
  campaign->add_option("--n", cfg.n)->required();
  campaign->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"clique", "clique-per-divisor-set", "exhaustive", "exhaustive-subsets"}));
  campaign->add_option("--sizes", sizes_s, "e.g. 1-12 or 2,4,6");
  campaign->add_option("--budget", campaign_budget_s, "global node budget (SPECTILE_BUDGET overrides)");
  campaign->add_option("--leaf-budget", leaf_s, "node budget per spectrum/complement search");
  campaign->add_option("--workers", cfg.workers);
  campaign->add_option("--seed", cfg.seed);
  campaign->add_option("--checkpoint", cfg.checkpoint_path);
  campaign->add_option("--checkpoint-seconds", cfg.checkpoint_seconds, "minimum seconds between checkpoint writes");
  campaign->add_option("--json", json_path, "write the report here");
  campaign->add_option("--csv", csv_path, "write the per-size summary here");
  campaign->add_option("--bundle", bundle_path, "FAILURE re-verification bundle path");

  std::string n_list_s;
  std::string cross_budget_s = "2e10";
  unsigned cross_workers = 1;
  auto* cross = app.add_subcommand("crosscheck", "exhaustive spectral <=> tile check for small n");
  cross->add_option("--n", n_list_s, "comma-separated orders, each <= 30")->required();
  cross->add_option("--budget", cross_budget_s);
  cross->add_option("--workers", cross_workers);
  cross->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kDecided : kUsage;
  }

  try {
    if (*spectrum) {
      const auto s = CyclicMultiset::parse(set_lit);
      const auto res = find_spectrum(s, parse_count(budget_s));
      json j{{"n", s.order()},
             {"S", s.support()},
             {"spectral", tri(res.status)},
             {"lambda", res.certificate ? json(res.certificate->Lambda.support()) : json(nullptr)},
             {"zero_set", divisor_list(zero_divisor_set(s))},
             {"nodes_visited", res.nodes},
             {"exhaustive", res.status != SearchStatus::budget_exhausted}};
      std::ostringstream os;
      os << "S = " << s.to_string() << "\nzero set = " << zero_divisor_set(s).to_string()
         << "\nspectral: " << to_string(res.status);
      if (res.certificate) os << "\nspectrum = " << res.certificate->Lambda.to_string();
      os << "\nnodes: " << res.nodes << '\n';
      emit(j, as_json, os.str());
      return res.status == SearchStatus::budget_exhausted ? kBudget : kDecided;
    }
    if (*tile) {
      const auto s = CyclicMultiset::parse(set_lit);
      const auto res = find_tiling_complement(s, parse_count(budget_s), !no_prune);
      json j{{"n", s.order()},
             {"S", s.support()},
             {"tile", tri(res.status)},
             {"complement", res.certificate ? json(res.certificate->T.support()) : json(nullptr)},
             {"nodes_visited", res.nodes},
             {"exhaustive", res.status != SearchStatus::budget_exhausted},
             {"pruned", !no_prune}};
      std::ostringstream os;
      os << "S = " << s.to_string() << "\ntile: " << to_string(res.status);
      if (res.certificate) os << "\ncomplement = " << res.certificate->T.to_string();
      os << "\nnodes: " << res.nodes << '\n';
      emit(j, as_json, os.str());
      return res.status == SearchStatus::budget_exhausted ? kBudget : kDecided;
    }
    if (*t1t2) {
      const auto s = CyclicMultiset::parse(set_lit);
      const auto a = t1_check(s);
      const bool b = t2_check(s);
      json j{{"n", s.order()},
             {"S", s.support()},
             {"t1", json{{"holds", a.holds}, {"H_S", divisor_list(a.h_s)}, {"product", a.product}}},
             {"t2", b}};
      std::ostringstream os;
      os << "H_S = " << a.h_s.to_string() << ", product " << a.product << ", |S| = " << s.total()
         << "\nT1: " << (a.holds ? "holds" : "fails") << "\nT2: " << (b ? "holds" : "fails") << '\n';
      emit(j, as_json, os.str());
      return kDecided;
    }
    if (*cube || (*lemma && which == "cube-coset")) {
      if (ms_lit.empty() || m == 0) throw CLI::ValidationError("--multiset and --m are required");
      const auto w = CyclicMultiset::parse(ms_lit);
      if (w.order() == m && *cube) {
        const auto res = cube_rule_check(w);
        json j{{"m", m}, {"holds", res.holds},
               {"counterexample", res.counterexample ? json(res.counterexample->vertices()) : json(nullptr)}};
        std::ostringstream os;
        os << "cube rule on Z_" << m << ": " << (res.holds ? "holds" : "fails");
        if (res.counterexample) os << "\ncounterexample: " << res.counterexample->to_string();
        os << '\n';
        emit(j, as_json, os.str());
      } else {
        const auto res = cube_rule_on_cosets(w, m);
        json j{{"n", w.order()}, {"m_prime", m}, {"hypothesis", res.hypothesis}, {"holds", res.holds}};
        std::ostringstream os;
        os << "Phi_" << w.order() << " | m_w: " << (res.hypothesis ? "yes" : "no") << "\ncube rule on Z_" << m
           << "-cosets: " << (res.holds ? "holds" : "fails") << '\n';
        emit(j, as_json, os.str());
      }
      return kDecided;
    }
    if (*lemma) {
      if (set_lit.empty()) throw CLI::ValidationError("--set is required");
      const auto t = CyclicMultiset::parse(set_lit);
      if (which == "proj") {
        if (m == 0 || r == 0) throw CLI::ValidationError("--m and --r are required");
        const auto res = projection_decomposition(t, m, r);
        json j{{"applicable", res.applicable},
               {"congruent", res.congruent},
               {"c", res.c},
               {"D", res.D ? json(res.D->multiplicities()) : json(nullptr)},
               {"projection", res.projection.multiplicities()}};
        std::ostringstream os;
        os << "applicable: " << (res.applicable ? "yes" : "no") << "\nT_m = " << res.projection.to_string()
           << "\nc = " << res.c;
        if (res.D) os << "\nD = " << res.D->to_string();
        os << '\n';
        emit(j, as_json, os.str());
      } else if (which == "genpair") {
        if (x == 0 || y == 0) throw CLI::ValidationError("--x and --y are required");
        const auto res = generating_pair_witness(t, x, y);
        json j{{"generates", generates(t)},
               {"witness", res ? json{res->first, res->second} : json(nullptr)}};
        std::ostringstream os;
        if (res)
          os << "witness (" << res->first << ", " << res->second << ")\n";
        else
          os << "no witness\n";
        emit(j, as_json, os.str());
      } else {
        if (p == 0) throw CLI::ValidationError("--p is required");
        const auto res = coset_structure_corollary(t, p);
        json j{{"applicable", res.applicable},
               {"conclusion_holds", res.conclusion_holds},
               {"small_prime", res.small_prime}};
        std::ostringstream os;
        os << "applicable: " << (res.applicable ? "yes" : "no")
           << "\nunion of Z_" << p << "-cosets: " << (res.conclusion_holds ? "yes" : "no")
           << (res.small_prime ? "\n(one of the other primes is 2)" : "") << '\n';
        emit(j, as_json, os.str());
      }
      return kDecided;
    }
    if (*campaign) {
      cfg.strategy = parse_strategy(strategy);
      if (!sizes_s.empty()) cfg.sizes = parse_sizes(sizes_s);
      cfg.budget = budget_with_env(parse_count(campaign_budget_s));
      cfg.leaf_budget = parse_count(leaf_s);
      cfg.validate();
      const auto rep = run_campaign(cfg);
      if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
        write_report_json(rep, out);
        out << '\n';
      }
      if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        out << report_to_csv(rep);
      }
      const auto& s = rep.summary;
      std::cout << "n=" << cfg.n << " strategy=" << to_string(cfg.strategy) << " nodes=" << s.nodes
                << " wall=" << rep.wall_seconds << "s" << (rep.resumed ? " (resumed)" : "") << '\n';
      std::cout << report_to_csv(rep);
      std::cout << "classes=" << s.classes << " spectral=" << s.spectral << " tiles=" << s.tiles
                << " undecided=" << s.unknown << " failures=" << s.failures << '\n';
      std::cout << "exhaustive sizes: " << json(rep.exhaustive_sizes()).dump()
                << "\nbudget-limited sizes: " << json(rep.budget_limited_sizes()).dump() << '\n';
      if (rep.has_failure()) {
        const auto path = write_failure_bundle(rep, bundle_path);
        std::cerr << "FAILURE: spectral set that does not tile; bundle written to " << path << '\n';
        return kFailure;
      }
      return rep.budget_exhausted() ? kBudget : kDecided;
    }
    if (*cross) {
      const auto ns = parse_list(n_list_s);
      const auto res = crosscheck_small(ns, budget_with_env(parse_count(cross_budget_s)), cross_workers);
      json j{{"ok", res.ok}, {"diagnostics", res.diagnostics}};
      std::ostringstream os;
      for (const auto& d : res.diagnostics) os << d << '\n';
      os << (res.ok ? "crosscheck passed" : "crosscheck FAILED") << '\n';
      emit(j, as_json, os.str());
      return res.ok ? kDecided : kFailure;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CampaignInterrupted& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
