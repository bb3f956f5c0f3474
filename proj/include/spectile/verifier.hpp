#pragma once

// Enumeration campaigns: spectral sets of Z_n up to affine equivalence, each
// checked for tiling, with deterministic budgeting, checkpoints and reports.

#include "spectile/tiling.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectile {

inline constexpr int kReportSchemaVersion = 1;

enum class Strategy { exhaustive_subsets, clique_per_divisor_set };

const char* to_string(Strategy s) noexcept;
/// Accepts "exhaustive", "exhaustive-subsets", "clique", "clique-per-divisor-set".
Strategy parse_strategy(const std::string& s);

struct CampaignConfig {
  Elem n = 0;
  Strategy strategy = Strategy::clique_per_divisor_set;
  std::vector<unsigned> sizes;  // empty: every size 1..n
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t leaf_budget = 10'000'000;  // per spectrum or complement search
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string checkpoint_path;
  /// Minimum wall time between checkpoint writes inside a round; a checkpoint
  /// is always written at the end of each round.
  double checkpoint_seconds = 30.0;
  /// Abort (as if killed) after this many unit steps; the checkpoint is kept.
  std::optional<std::uint64_t> stop_after_steps;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;
  std::vector<unsigned> effective_sizes() const;
};

/// Thrown by run_campaign when stop_after_steps is reached.
struct CampaignInterrupted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Tri { no, yes, unknown };

struct CampaignRecord {
  std::vector<Elem> set;  // affine canonical form
  std::string case_label;  // empty unless n = p^2 q r
  Tri spectral = Tri::unknown;
  std::vector<Elem> spectrum;
  std::vector<Elem> zero_set;
  Tri tile = Tri::unknown;
  std::vector<Elem> complement;
  bool t1 = false;
  bool t2 = false;
  std::optional<bool> dual;
  std::optional<bool> cube_rule;  // set when Phi_n divides m_S or m_Lambda
  bool failure = false;  // spectral, and exhaustively not a tile
  std::uint64_t spectrum_nodes = 0;
  std::uint64_t tile_nodes = 0;
};

struct SizeStats {
  unsigned size = 0;
  std::uint64_t classes = 0;  // canonical classes examined
  std::uint64_t spectral = 0;
  std::uint64_t tiles = 0;
  std::uint64_t unknown = 0;
  bool exhaustive = false;
};

struct RegionReport {
  std::vector<unsigned> sizes;
  std::vector<Elem> connection;  // divisor classes
  int second = 0;
  std::uint64_t nodes = 0;
};

struct CampaignSummary {
  std::uint64_t classes = 0;
  std::uint64_t spectral = 0;
  std::uint64_t tiles = 0;
  std::uint64_t unknown = 0;
  std::uint64_t failures = 0;
  std::uint64_t dual_violations = 0;
  std::uint64_t t1_violations = 0;       // tiles without (T1)
  std::uint64_t t1t2_non_tiles = 0;      // (T1) and (T2) but exhaustively not a tile
  std::uint64_t cube_rule_violations = 0;
  std::uint64_t spectral_tile_mismatches = 0;  // decided classes with spectral != tile
  std::uint64_t nodes = 0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CampaignRecord> records;
  std::vector<SizeStats> sizes;
  CampaignSummary summary;
  std::vector<RegionReport> budget_exhausted_regions;
  double wall_seconds = 0;
  bool resumed = false;

  std::vector<unsigned> exhaustive_sizes() const;
  std::vector<unsigned> budget_limited_sizes() const;
  bool budget_exhausted() const;
  bool has_failure() const noexcept { return summary.failures > 0; }
};

CampaignReport run_campaign(const CampaignConfig& cfg);

/// Everything except the runtime block is a pure function of the
/// configuration minus workers; keys are sorted.
nlohmann::json report_to_json(const CampaignReport& r, bool include_runtime = true);
/// Writes report_to_json(r, include_runtime).dump() without building the
/// whole document in memory.
void write_report_json(const CampaignReport& r, std::ostream& out, bool include_runtime = true);
std::string report_to_csv(const CampaignReport& r);

struct CaseRow {
  std::string label;
  std::uint64_t records = 0;
  std::uint64_t spectral = 0;
  std::uint64_t tiles = 0;
  std::uint64_t checks = 0;      // structural conclusions tested
  std::uint64_t violations = 0;  // structural conclusions that failed
};

/// Groups spectral records by case label (n must be p^2 q r) and tests the
/// structural conclusions: case p2q records are complete residue systems mod
/// p^2 q, case qr records complete residue systems mod qr, every record of
/// size at most 5 tiles, and every record tiles.
std::vector<CaseRow> classify_report(const CampaignReport& r);

struct CrosscheckResult {
  bool ok = true;
  std::vector<std::string> diagnostics;
  std::vector<CampaignReport> reports;
};

/// Exhaustive campaigns, requiring spectral <=> tile on every class.
CrosscheckResult crosscheck_small(std::span<const Elem> n_list, std::uint64_t budget = 20'000'000'000ULL,
                                  unsigned workers = 1);

/// Writes a standalone JSON bundle for every FAILURE record; returns the path
/// written or an empty string when there is nothing to write.
std::string write_failure_bundle(const CampaignReport& r, const std::string& path);

}  // namespace spectile
