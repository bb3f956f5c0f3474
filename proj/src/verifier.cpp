#include "spectile/verifier.hpp"

#include "spectile/kernels/clique.hpp"
#include "spectile/kernels/fast_group.hpp"
#include "spectile/kernels/tiling.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace spectile {

using json = nlohmann::json;

const char* to_string(Strategy s) noexcept {
  return s == Strategy::exhaustive_subsets ? "exhaustive-subsets" : "clique-per-divisor-set";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "exhaustive" || s == "exhaustive-subsets") return Strategy::exhaustive_subsets;
  if (s == "clique" || s == "clique-per-divisor-set") return Strategy::clique_per_divisor_set;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

void CampaignConfig::validate() const {
  if (n == 0 || n > kernels::kMaxSearchOrder)
    throw std::invalid_argument("campaign: n must be in [1, 512]");
  if (strategy == Strategy::exhaustive_subsets && n > 30)
    throw std::invalid_argument("campaign: exhaustive-subsets is limited to n <= 30");
  for (unsigned s : sizes)
    if (s == 0 || s > n) throw std::invalid_argument("campaign: sizes must lie in [1, n]");
  if (workers == 0) throw std::invalid_argument("campaign: workers must be positive");
}

std::vector<unsigned> CampaignConfig::effective_sizes() const {
  std::vector<unsigned> out = sizes;
  if (out.empty())
    for (unsigned s = 1; s <= n; ++s) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<unsigned> CampaignReport::exhaustive_sizes() const {
  std::vector<unsigned> out;
  for (const auto& s : sizes)
    if (s.exhaustive) out.push_back(s.size);
  return out;
}

std::vector<unsigned> CampaignReport::budget_limited_sizes() const {
  std::vector<unsigned> out;
  for (const auto& s : sizes)
    if (!s.exhaustive) out.push_back(s.size);
  return out;
}

bool CampaignReport::budget_exhausted() const {
  return !budget_exhausted_regions.empty() || summary.unknown > 0;
}

namespace {

json tri_json(Tri t) {
  if (t == Tri::unknown) return "unknown";
  return t == Tri::yes;
}

Tri tri_from_json(const json& j) {
  if (j.is_string()) return Tri::unknown;
  return j.get<bool>() ? Tri::yes : Tri::no;
}

json record_json(const CampaignRecord& r) {
  json j;
  j["set"] = r.set;
  j["size"] = r.set.size();
  j["case"] = r.case_label.empty() ? json(nullptr) : json(r.case_label);
  j["spectral"] = tri_json(r.spectral);
  j["spectrum"] = r.spectral == Tri::yes ? json(r.spectrum) : json(nullptr);
  j["zero_set"] = r.zero_set;
  j["tile"] = tri_json(r.tile);
  j["complement"] = r.tile == Tri::yes ? json(r.complement) : json(nullptr);
  j["t1"] = r.t1;
  j["t2"] = r.t2;
  j["dual"] = r.dual ? json(*r.dual) : json(nullptr);
  j["cube_rule"] = r.cube_rule ? json(*r.cube_rule) : json(nullptr);
  j["failure"] = r.failure;
  j["spectrum_nodes"] = r.spectrum_nodes;
  j["tile_nodes"] = r.tile_nodes;
  return j;
}

CampaignRecord record_from_json(const json& j) {
  CampaignRecord r;
  r.set = j.at("set").get<std::vector<Elem>>();
  if (!j.at("case").is_null()) r.case_label = j.at("case").get<std::string>();
  r.spectral = tri_from_json(j.at("spectral"));
  if (!j.at("spectrum").is_null()) r.spectrum = j.at("spectrum").get<std::vector<Elem>>();
  r.zero_set = j.at("zero_set").get<std::vector<Elem>>();
  r.tile = tri_from_json(j.at("tile"));
  if (!j.at("complement").is_null()) r.complement = j.at("complement").get<std::vector<Elem>>();
  r.t1 = j.at("t1").get<bool>();
  r.t2 = j.at("t2").get<bool>();
  if (!j.at("dual").is_null()) r.dual = j.at("dual").get<bool>();
  if (!j.at("cube_rule").is_null()) r.cube_rule = j.at("cube_rule").get<bool>();
  r.failure = j.at("failure").get<bool>();
  r.spectrum_nodes = j.at("spectrum_nodes").get<std::uint64_t>();
  r.tile_nodes = j.at("tile_nodes").get<std::uint64_t>();
  return r;
}

json config_json(const CampaignConfig& c) {
  return json{{"n", c.n},
              {"strategy", to_string(c.strategy)},
              {"sizes", c.effective_sizes()},
              {"budget", c.budget},
              {"leaf_budget", c.leaf_budget},
              {"seed", c.seed}};
}

struct SizeCounts {
  std::uint64_t classes = 0, spectral = 0, tiles = 0, unknown = 0;
};

/// One work unit: a walk of canonical cliques for a connection set and a
/// fixed second element, plus everything found so far.
struct Unit {
  std::vector<unsigned> sizes;
  std::uint64_t dmask = 0;
  int second = 0;
  std::size_t rank = 0;  // index among the maximal connection sets of its size

  std::uint64_t nodes = 0;
  std::vector<Elem> token;
  bool finished = false;
  std::uint64_t round_done = 0;
  std::map<unsigned, SizeCounts> counts;
  std::vector<CampaignRecord> records;
};

json unit_progress_json(const Unit& u) {
  json counts = json::array();
  for (const auto& [size, c] : u.counts)
    counts.push_back({size, c.classes, c.spectral, c.tiles, c.unknown});
  return json{{"nodes", u.nodes},         {"token", u.token},  {"finished", u.finished},
              {"round_done", u.round_done}, {"counts", counts}, {"records", u.records.size()}};
}

void unit_progress_from_json(Unit& u, const json& j) {
  u.nodes = j.at("nodes").get<std::uint64_t>();
  u.token = j.at("token").get<std::vector<Elem>>();
  u.finished = j.at("finished").get<bool>();
  u.round_done = j.at("round_done").get<std::uint64_t>();
  u.counts.clear();
  for (const auto& c : j.at("counts")) {
    SizeCounts sc{c[1].get<std::uint64_t>(), c[2].get<std::uint64_t>(), c[3].get<std::uint64_t>(),
                  c[4].get<std::uint64_t>()};
    u.counts[c[0].get<unsigned>()] = sc;
  }
  u.records.clear();
  u.records.reserve(j.at("records").get<std::size_t>());
}

template <class Writer>
void write_atomically(const std::string& path, Writer&& write) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    write(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

// Dumps `skeleton`, streaming `items` into the empty array stored under `key`.
// Keeps peak memory at one item's tree instead of the whole document.
template <class Items, class ToJson>
void stream_with_array(std::ostream& out, const json& skeleton, const std::string& key, const Items& items,
                       ToJson&& to_json) {
  const std::string text = skeleton.dump();
  const std::string marker = "\"" + key + "\":[]";
  const auto pos = text.find(marker);
  if (pos == std::string::npos) throw std::logic_error("stream_with_array: missing " + key);
  const auto split = pos + marker.size() - 1;
  out.write(text.data(), static_cast<std::streamsize>(split));
  bool first = true;
  for (const auto& item : items) {
    if (!first) out << ',';
    first = false;
    out << to_json(item).dump();
  }
  out.write(text.data() + split, static_cast<std::streamsize>(text.size() - split));
}

bool lambda_is_dual(std::uint64_t lambda_zero, std::uint64_t s_difference) {
  return (s_difference & ~lambda_zero) == 0;
}

template <std::size_t W>
class Engine {
 public:
  explicit Engine(const CampaignConfig& cfg)
      : cfg_(cfg), fg_(kernels::FastGroup<W>::of(cfg.n)), sizes_(cfg.effective_sizes()) {
    const auto& divs = fg_.divisors();
    top_index_ = divs.size() - 1;
    p2qr_ = is_p2qr(cfg.n);
    rad_ = radical(cfg.n);
    for (const auto& cube : all_cuboids(rad_)) cube_vertices_.push_back(cube.vertices());
    if (p2qr_) {
      case_labels_.resize(cfg.n + 1);
      for (unsigned k = 1; k <= cfg.n; ++k) case_labels_[k] = case_classify(cfg.n, k);
    }
    build_units();
  }

  CampaignReport run() {
    const auto t0 = std::chrono::steady_clock::now();
    CampaignReport rep;
    rep.config = cfg_;
    rep.resumed = load_checkpoint();
    rounds();
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    assemble(rep);
    return rep;
  }

 private:
  // Prime-power classes p^j in the zero set of a spectrum force prod p | k,
  // so every spectral k-set is a clique for one of these maximal connections.
  std::vector<std::uint64_t> maximal_connections(unsigned k) const {
    const auto& divs = fg_.divisors();
    std::vector<std::size_t> pp;
    for (std::size_t i = 1; i < divs.size(); ++i)
      if (fg_.prime_power_mask() >> i & 1) pp.push_back(i);
    const std::uint64_t np = fg_.nontrivial_mask() & ~fg_.prime_power_mask();
    auto admissible = [&](std::uint32_t sub) {
      std::uint64_t prod = 1;
      for (std::size_t b = 0; b < pp.size(); ++b)
        if (sub >> b & 1) prod *= fg_.prime_of(pp[b]);
      return k % prod == 0;
    };
    std::vector<std::uint64_t> out;
    for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << pp.size()); ++sub) {
      if (!admissible(sub)) continue;
      bool maximal = true;
      for (std::size_t b = 0; b < pp.size() && maximal; ++b)
        if (!(sub >> b & 1) && admissible(sub | (std::uint32_t{1} << b))) maximal = false;
      if (!maximal) continue;
      std::uint64_t mask = np;
      for (std::size_t b = 0; b < pp.size(); ++b)
        if (sub >> b & 1) mask |= std::uint64_t{1} << pp[b];
      out.push_back(mask);
    }
    std::sort(out.begin(), out.end(), [&](std::uint64_t a, std::uint64_t b) {
      const unsigned ca = fg_.expand(a).count(), cb = fg_.expand(b).count();
      return ca != cb ? ca > cb : a < b;
    });
    return out;
  }

  void build_units() {
    const auto& divs = fg_.divisors();
    const Elem n = cfg_.n;
    const bool want_one = std::binary_search(sizes_.begin(), sizes_.end(), 1u);
    if (want_one) {
      Unit u;
      u.sizes = {1};
      u.second = 0;
      units_.push_back(std::move(u));
    }
    if (cfg_.strategy == Strategy::exhaustive_subsets) {
      std::vector<unsigned> rest;
      for (unsigned s : sizes_)
        if (s >= 2) rest.push_back(s);
      if (rest.empty()) return;
      for (Elem g : divs) {
        if (g == n) continue;
        Unit u;
        u.sizes = rest;
        u.dmask = fg_.nontrivial_mask();
        u.second = static_cast<int>(g);
        units_.push_back(std::move(u));
      }
      return;
    }
    for (unsigned k : sizes_) {
      if (k < 2) continue;
      auto& conns = connections_[k];
      conns = maximal_connections(k);
      for (std::size_t rank = 0; rank < conns.size(); ++rank) {
        for (Elem g : divs) {
          if (g == n || !(conns[rank] >> fg_.ctx()->divisor_index(n / g) & 1)) continue;
          Unit u;
          u.sizes = {k};
          u.dmask = conns[rank];
          u.second = static_cast<int>(g);
          u.rank = rank;
          units_.push_back(std::move(u));
        }
      }
    }
  }

  // (T1) and (T2) read off a zero-set mask.
  std::pair<bool, bool> t1t2(std::uint64_t zmask, unsigned k) const {
    const auto& divs = fg_.divisors();
    std::vector<std::size_t> h;
    std::uint64_t prod = 1;
    for (std::size_t i = 1; i < divs.size(); ++i)
      if ((fg_.prime_power_mask() & zmask) >> i & 1) {
        h.push_back(i);
        prod *= fg_.prime_of(i);
      }
    const bool t1 = prod == k;
    bool t2 = true;
    for (std::uint32_t sub = 1; sub < (std::uint32_t{1} << h.size()) && t2; ++sub) {
      if (std::popcount(sub) < 2) continue;
      Elem d = 1;
      bool coprime = true;
      for (std::size_t b = 0; b < h.size(); ++b) {
        if (!(sub >> b & 1)) continue;
        const Elem p = fg_.prime_of(h[b]);
        for (std::size_t c = 0; c < b; ++c)
          if ((sub >> c & 1) && fg_.prime_of(h[c]) == p) coprime = false;
        d *= divs[h[b]];
      }
      if (coprime && !(zmask >> fg_.ctx()->divisor_index(d) & 1)) t2 = false;
    }
    return {t1, t2};
  }

  // Cube rule on every coset of the subgroup of order rad(n); callers only
  // ask when Phi_n divides the mask.
  bool cube_rule_ok(const kernels::Bits<W>& s) const {
    const Elem step = cfg_.n / rad_;
    for (Elem a = 0; a < step; ++a) {
      for (const auto& cube : cube_vertices_) {
        int sum = 0;
        for (std::size_t c = 0; c < cube.size(); ++c)
          if (s.test(a + cube[c] * step)) sum += (std::popcount(c) & 1) ? -1 : 1;
        if (sum != 0) return false;
      }
    }
    return true;
  }

  // Spectrum, complement and invariant checks for one canonical class.
  std::uint64_t examine(const kernels::Bits<W>& s, unsigned k, Unit& u) const {
    const bool exhaustive = cfg_.strategy == Strategy::exhaustive_subsets;
    CampaignRecord rec;
    rec.set = kernels::to_elems(s);
    const std::uint64_t zmask = fg_.zero_mask(s);
    for (std::size_t i = 1; i < fg_.divisors().size(); ++i)
      if (zmask >> i & 1) rec.zero_set.push_back(fg_.divisors()[i]);
    std::tie(rec.t1, rec.t2) = t1t2(zmask, k);

    const auto sp = kernels::find_clique_through_zero(fg_, fg_.expand(zmask), k, cfg_.leaf_budget);
    rec.spectrum_nodes = sp.nodes;
    rec.spectral = sp.status == kernels::SearchStatus::found ? Tri::yes
                   : sp.status == kernels::SearchStatus::none ? Tri::no
                                                              : Tri::unknown;
    bool tile_searched = false;
    if (exhaustive || rec.spectral != Tri::no || (rec.t1 && rec.t2)) {
      tile_searched = true;
      const auto tl = kernels::find_complement(fg_, s, cfg_.leaf_budget, true);
      rec.tile_nodes = tl.nodes;
      rec.tile = tl.status == kernels::SearchStatus::found ? Tri::yes
                 : tl.status == kernels::SearchStatus::none ? Tri::no
                                                            : Tri::unknown;
      if (rec.tile == Tri::yes) rec.complement = tl.complement;
    } else {
      rec.tile = Tri::no;
    }
    const bool top = zmask >> top_index_ & 1;
    if (rec.spectral == Tri::yes) {
      rec.spectrum = sp.clique;
      const auto lam = kernels::to_bits<W>(rec.spectrum);
      const std::uint64_t lz = fg_.zero_mask(lam);
      rec.dual = lambda_is_dual(lz, fg_.difference_mask(s));
      const bool lam_top = lz >> top_index_ & 1;
      if (top || lam_top)
        rec.cube_rule = (!top || cube_rule_ok(s)) && (!lam_top || cube_rule_ok(lam));
    } else if (top && rec.tile == Tri::yes) {
      rec.cube_rule = cube_rule_ok(s);
    }
    rec.failure = rec.spectral == Tri::yes && rec.tile == Tri::no;
    if (p2qr_) rec.case_label = case_labels_[k];

    auto& c = u.counts[k];
    ++c.classes;
    if (rec.spectral == Tri::yes) ++c.spectral;
    if (rec.tile == Tri::yes) ++c.tiles;
    const bool unknown = rec.spectral == Tri::unknown || (tile_searched && rec.tile == Tri::unknown &&
                                                          (exhaustive || rec.spectral == Tri::yes));
    if (unknown) ++c.unknown;
    const std::uint64_t cost = rec.spectrum_nodes + rec.tile_nodes;
    if (rec.spectral != Tri::no || (tile_searched && rec.tile != Tri::no) || (rec.t1 && rec.t2))
      u.records.push_back(std::move(rec));
    return cost;
  }

  void step(Unit& u, std::uint64_t cap) const {
    typename kernels::CliqueWalker<W>::Spec spec;
    spec.connection = fg_.expand(u.dmask);
    spec.sizes = u.sizes;
    spec.canonical_only = true;
    spec.second = u.second;
    kernels::CliqueWalker<W> walker(fg_, std::move(spec));
    const std::vector<std::uint64_t>* earlier = nullptr;
    if (cfg_.strategy == Strategy::clique_per_divisor_set && u.rank > 0)
      earlier = &connections_.at(u.sizes.front());
    const auto status = walker.run(u.nodes, cap, u.token, [&](const kernels::Bits<W>& set, unsigned size) {
      if (earlier) {
        const std::uint64_t dm = fg_.difference_mask(set);
        for (std::size_t j = 0; j < u.rank; ++j)
          if ((dm & ~(*earlier)[j]) == 0) return;
      }
      u.nodes += examine(set, size, u);
    });
    u.finished = status == kernels::WalkStatus::finished;
  }

  // JSON Lines: a header, then per unit its progress line followed by one
  // line per record, so neither saving nor loading holds the whole document.
  void save_checkpoint() {
    if (cfg_.checkpoint_path.empty()) return;
    const json head{{"schema_version", kReportSchemaVersion},
                    {"kind", "spectile-checkpoint"},
                    {"config", config_json(cfg_)},
                    {"round", round_},
                    {"allot", allot_},
                    {"units", units_.size()}};
    write_atomically(cfg_.checkpoint_path, [&](std::ostream& out) {
      out << head.dump() << '\n';
      for (const auto& u : units_) {
        out << unit_progress_json(u).dump() << '\n';
        for (const auto& r : u.records) out << record_json(r).dump() << '\n';
      }
    });
    last_save_ = std::chrono::steady_clock::now();
  }

  bool load_checkpoint() {
    if (cfg_.checkpoint_path.empty() || !std::filesystem::exists(cfg_.checkpoint_path)) return false;
    std::ifstream in(cfg_.checkpoint_path, std::ios::binary);
    std::string line;
    auto next = [&] {
      if (!std::getline(in, line)) throw std::runtime_error("checkpoint: truncated file");
      return json::parse(line);
    };
    const json head = next();
    if (head.at("kind") != "spectile-checkpoint" || head.at("schema_version") != kReportSchemaVersion)
      throw std::runtime_error("checkpoint: unrecognized format");
    if (head.at("config") != config_json(cfg_))
      throw std::runtime_error("checkpoint: configuration does not match this campaign");
    if (head.at("units").get<std::size_t>() != units_.size())
      throw std::runtime_error("checkpoint: unit count mismatch");
    for (auto& u : units_) {
      const json j = next();
      unit_progress_from_json(u, j);
      for (std::size_t k = j.at("records").get<std::size_t>(); k > 0; --k) u.records.push_back(record_from_json(next()));
    }
    round_ = head.at("round").get<std::uint64_t>();
    allot_ = head.at("allot").get<std::uint64_t>();
    return true;
  }

  // Budget is shared by water-filling: each round every unfinished unit may
  // spend an equal share of what is left. Round boundaries depend only on
  // node counts, so results do not depend on worker count or timing.
  void rounds() {
    std::atomic<std::uint64_t> steps{0};
    std::atomic<bool> abort{false};
    std::mutex mu;
    while (true) {
      std::vector<std::size_t> todo;
      if (round_ > 0)
        for (std::size_t i = 0; i < units_.size(); ++i)
          if (!units_[i].finished && units_[i].round_done < round_) todo.push_back(i);
      if (todo.empty()) {
        std::uint64_t used = 0, unfinished = 0;
        for (const auto& u : units_) {
          used += u.nodes;
          unfinished += !u.finished;
        }
        if (unfinished == 0) break;
        const std::uint64_t remaining = cfg_.budget > used ? cfg_.budget - used : 0;
        if (remaining / unfinished == 0) break;
        allot_ = remaining / unfinished;
        ++round_;
        for (std::size_t i = 0; i < units_.size(); ++i)
          if (!units_[i].finished) todo.push_back(i);
        save_checkpoint();
      }
      std::mt19937_64 rng(cfg_.seed ^ (round_ * 0x9E3779B97F4A7C15ULL));
      std::shuffle(todo.begin(), todo.end(), rng);

      std::exception_ptr error;
      auto run_one = [&](std::size_t idx) {
        if (abort.load()) return;
        Unit local;
        {
          std::lock_guard lock(mu);
          local = units_[idx];
        }
        step(local, local.nodes + allot_);
        local.round_done = round_;
        std::lock_guard lock(mu);
        units_[idx] = std::move(local);
        const std::uint64_t done = ++steps;
        if (cfg_.stop_after_steps && done >= *cfg_.stop_after_steps) abort = true;
        if (std::chrono::duration<double>(std::chrono::steady_clock::now() - last_save_).count() >=
            cfg_.checkpoint_seconds)
          save_checkpoint();
      };
      if (cfg_.workers <= 1) {
        for (std::size_t idx : todo) run_one(idx);
      } else {
        const long count = static_cast<long>(todo.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg_.workers)
        for (long t = 0; t < count; ++t) {
          try {
            run_one(todo[static_cast<std::size_t>(t)]);
          } catch (...) {
            std::lock_guard lock(mu);
            if (!error) error = std::current_exception();
            abort = true;
          }
        }
      }
      if (error) std::rethrow_exception(error);
      save_checkpoint();
      if (abort) throw CampaignInterrupted("campaign interrupted after " + std::to_string(steps.load()) + " unit steps");
    }
    save_checkpoint();
  }

  void assemble(CampaignReport& rep) const {
    for (const auto& u : units_)
      rep.records.insert(rep.records.end(), u.records.begin(), u.records.end());
    std::sort(rep.records.begin(), rep.records.end(), [](const auto& a, const auto& b) {
      return a.set.size() != b.set.size() ? a.set.size() < b.set.size() : a.set < b.set;
    });
    for (unsigned k : sizes_) {
      SizeStats st;
      st.size = k;
      bool finished = true;
      for (const auto& u : units_) {
        if (!std::binary_search(u.sizes.begin(), u.sizes.end(), k)) continue;
        finished = finished && u.finished;
        if (auto it = u.counts.find(k); it != u.counts.end()) {
          st.classes += it->second.classes;
          st.spectral += it->second.spectral;
          st.tiles += it->second.tiles;
          st.unknown += it->second.unknown;
        }
      }
      st.exhaustive = finished && st.unknown == 0;
      rep.sizes.push_back(st);
    }
    auto& sm = rep.summary;
    for (const auto& st : rep.sizes) {
      sm.classes += st.classes;
      sm.spectral += st.spectral;
      sm.tiles += st.tiles;
      sm.unknown += st.unknown;
    }
    const bool exhaustive = cfg_.strategy == Strategy::exhaustive_subsets;
    for (const auto& r : rep.records) {
      sm.failures += r.failure;
      sm.dual_violations += r.dual && !*r.dual;
      sm.t1_violations += r.tile == Tri::yes && !r.t1;
      sm.t1t2_non_tiles += r.t1 && r.t2 && r.tile == Tri::no;
      sm.cube_rule_violations += r.cube_rule && !*r.cube_rule;
      if (exhaustive && r.spectral != Tri::unknown && r.tile != Tri::unknown)
        sm.spectral_tile_mismatches += (r.spectral == Tri::yes) != (r.tile == Tri::yes);
    }
    for (const auto& u : units_) {
      sm.nodes += u.nodes;
      if (u.finished) continue;
      RegionReport reg;
      reg.sizes = u.sizes;
      for (std::size_t i = 0; i < fg_.divisors().size(); ++i)
        if (u.dmask >> i & 1) reg.connection.push_back(fg_.divisors()[i]);
      reg.second = u.second;
      reg.nodes = u.nodes;
      rep.budget_exhausted_regions.push_back(std::move(reg));
    }
  }

  const CampaignConfig& cfg_;
  const kernels::FastGroup<W>& fg_;
  std::vector<unsigned> sizes_;
  std::size_t top_index_ = 0;
  bool p2qr_ = false;
  Elem rad_ = 1;
  std::vector<std::vector<Elem>> cube_vertices_;
  std::vector<std::string> case_labels_;
  std::map<unsigned, std::vector<std::uint64_t>> connections_;
  std::vector<Unit> units_;
  std::uint64_t round_ = 0;
  std::uint64_t allot_ = 0;
  std::chrono::steady_clock::time_point last_save_ = std::chrono::steady_clock::now();
};

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  return kernels::dispatch_width(cfg.n, [&]<std::size_t W>() { return Engine<W>(cfg).run(); });
}

namespace {

json report_skeleton(const CampaignReport& r, bool include_runtime) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = config_json(r.config);
  const auto& s = r.summary;
  j["summary"] = json{{"classes_examined", s.classes},
                      {"spectral_classes", s.spectral},
                      {"tile_classes", s.tiles},
                      {"undecided_classes", s.unknown},
                      {"failures", s.failures},
                      {"dual_violations", s.dual_violations},
                      {"t1_violations", s.t1_violations},
                      {"t1t2_non_tiles", s.t1t2_non_tiles},
                      {"cube_rule_violations", s.cube_rule_violations},
                      {"spectral_tile_mismatches", s.spectral_tile_mismatches},
                      {"nodes", s.nodes}};
  json sizes = json::array();
  for (const auto& st : r.sizes)
    sizes.push_back(json{{"size", st.size},
                         {"classes", st.classes},
                         {"spectral", st.spectral},
                         {"tiles", st.tiles},
                         {"undecided", st.unknown},
                         {"exhaustive", st.exhaustive}});
  j["sizes"] = sizes;
  j["exhaustive_sizes"] = r.exhaustive_sizes();
  j["budget_limited_sizes"] = r.budget_limited_sizes();
  j["records"] = json::array();
  json regions = json::array();
  for (const auto& reg : r.budget_exhausted_regions)
    regions.push_back(json{{"sizes", reg.sizes},
                           {"connection", reg.connection},
                           {"second", reg.second},
                           {"nodes", reg.nodes}});
  j["budget_exhausted_regions"] = regions;
  if (is_p2qr(r.config.n)) {
    json cases = json::array();
    for (const auto& row : classify_report(r))
      cases.push_back(json{{"case", row.label},
                           {"records", row.records},
                           {"spectral", row.spectral},
                           {"tiles", row.tiles},
                           {"checks", row.checks},
                           {"violations", row.violations}});
    j["cases"] = cases;
  }
  if (include_runtime)
    j["runtime"] = json{{"workers", r.config.workers},
                        {"wall_seconds", r.wall_seconds},
                        {"resumed", r.resumed}};
  return j;
}

}  // namespace

nlohmann::json report_to_json(const CampaignReport& r, bool include_runtime) {
  json j = report_skeleton(r, include_runtime);
  auto& records = j["records"];
  for (const auto& rec : r.records) records.push_back(record_json(rec));
  return j;
}

void write_report_json(const CampaignReport& r, std::ostream& out, bool include_runtime) {
  stream_with_array(out, report_skeleton(r, include_runtime), "records", r.records, record_json);
}

std::string report_to_csv(const CampaignReport& r) {
  std::ostringstream os;
  os << "n,strategy,size,classes,spectral,tiles,undecided,exhaustive\n";
  for (const auto& st : r.sizes)
    os << r.config.n << ',' << to_string(r.config.strategy) << ',' << st.size << ',' << st.classes
       << ',' << st.spectral << ',' << st.tiles << ',' << st.unknown << ','
       << (st.exhaustive ? "true" : "false") << '\n';
  return os.str();
}

namespace {

bool complete_residues(const std::vector<Elem>& set, Elem mod) {
  if (set.size() != mod) return false;
  std::vector<char> seen(mod, 0);
  for (Elem x : set) {
    if (seen[x % mod]) return false;
    seen[x % mod] = 1;
  }
  return true;
}

}  // namespace

std::vector<CaseRow> classify_report(const CampaignReport& r) {
  const auto [p, q, rr] = p2qr_shape(r.config.n);
  static const char* const kOrder[] = {"1", "p", "q", "r", "p2", "pq", "pr", "qr",
                                       "p2q", "p2r", "pqr", "other"};
  std::map<std::string, CaseRow> rows;
  for (const char* l : kOrder) rows[l].label = l;
  for (const auto& rec : r.records) {
    if (rec.spectral != Tri::yes) continue;
    auto& row = rows[case_classify(r.config.n, rec.set.size())];
    ++row.records;
    ++row.spectral;
    if (rec.tile == Tri::yes) ++row.tiles;
    // Every spectral record tiles; for |S| <= 5 this is the small-size theorem.
    if (rec.tile != Tri::unknown) {
      ++row.checks;
      if (rec.tile != Tri::yes) ++row.violations;
    }
    if (row.label == "p2q" || row.label == "p2r" || row.label == "qr") {
      const Elem mod = row.label == "p2q" ? p * p * q : row.label == "p2r" ? p * p * rr : q * rr;
      ++row.checks;
      if (!complete_residues(rec.set, mod)) ++row.violations;
    }
  }
  std::vector<CaseRow> out;
  for (const char* l : kOrder) out.push_back(rows[l]);
  return out;
}

CrosscheckResult crosscheck_small(std::span<const Elem> n_list, std::uint64_t budget, unsigned workers) {
  CrosscheckResult out;
  for (Elem n : n_list) {
    if (n > 30) throw std::invalid_argument("crosscheck: n must be at most 30");
    CampaignConfig cfg;
    cfg.n = n;
    cfg.strategy = Strategy::exhaustive_subsets;
    cfg.budget = budget;
    cfg.workers = workers;
    auto rep = run_campaign(cfg);
    const auto& s = rep.summary;
    std::ostringstream d;
    d << "n=" << n << ": classes=" << s.classes << " spectral=" << s.spectral << " tiles=" << s.tiles
      << " mismatches=" << s.spectral_tile_mismatches << " undecided=" << s.unknown
      << " dual_violations=" << s.dual_violations;
    const bool ok = s.spectral_tile_mismatches == 0 && !rep.budget_exhausted() &&
                    s.dual_violations == 0 && s.failures == 0;
    if (!ok) {
      d << " MISMATCH";
      for (const auto& rec : rep.records)
        if (rec.spectral != Tri::unknown && rec.tile != Tri::unknown &&
            (rec.spectral == Tri::yes) != (rec.tile == Tri::yes)) {
          d << " [";
          for (std::size_t i = 0; i < rec.set.size(); ++i) d << (i ? "," : "") << rec.set[i];
          d << "]";
        }
    }
    out.diagnostics.push_back(d.str());
    out.ok = out.ok && ok;
    out.reports.push_back(std::move(rep));
  }
  return out;
}

std::string write_failure_bundle(const CampaignReport& r, const std::string& path) {
  json failures = json::array();
  for (const auto& rec : r.records) {
    if (!rec.failure) continue;
    const auto s = CyclicMultiset::from_elements(r.config.n, rec.set);
    const auto lam = CyclicMultiset::from_elements(r.config.n, rec.spectrum);
    const auto pruned = find_tiling_complement(s, r.config.leaf_budget, true);
    const auto plain = find_tiling_complement(s, r.config.leaf_budget, false);
    failures.push_back(json{
        {"set", s.to_string()},
        {"spectrum", lam.to_string()},
        {"zero_set", zero_divisor_set(s).to_string()},
        {"spectral_pair_verified", verify_spectral_pair(s, lam)},
        {"dual_verified", verify_spectral_pair(lam, s)},
        {"t1", t1_check(s).holds},
        {"t2", t2_check(s)},
        {"complement_search",
         json{{"pruned", json{{"status", to_string(pruned.status)}, {"nodes", pruned.nodes}}},
              {"unpruned", json{{"status", to_string(plain.status)}, {"nodes", plain.nodes}}}}},
        {"record", record_json(rec)}});
  }
  if (failures.empty()) return {};
  json bundle{{"schema_version", kReportSchemaVersion},
              {"kind", "spectile-failure-bundle"},
              {"config", config_json(r.config)},
              {"failures", failures}};
  write_atomically(path, [&](std::ostream& out) { out << bundle.dump(2); });
  return path;
}

}  // namespace spectile
