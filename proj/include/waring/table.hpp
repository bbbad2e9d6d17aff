#pragma once

// Reference table of decomposition counts and the runners behind the `table`
// and `pair` subcommands.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waring/combinatorics.hpp"
#include "waring/json_io.hpp"

namespace waring {

enum class RowKind { Defect, Count, Bound, Formula, Open };
const char* to_string(RowKind k);
RowKind row_kind_from_string(const std::string& s);

struct TableRow {
  int index = 0;  // 1-based position in the registry
  int n = 0;
  std::vector<int> degrees;
  int k = 0;
  int delta = 0;
  std::optional<BigInt> count;
  std::string relation;  // "=", ">=", "?" or "" for defective rows
  RowKind kind = RowKind::Count;
  bool bold = false;
  std::string tier;  // "desk" or "extended"

  CaseSpec spec() const { return CaseSpec(n, degrees); }
  std::string label() const;
};

std::string default_table_path();
std::vector<TableRow> load_table(const std::string& path = default_table_path());
std::vector<TableRow> parse_table(const Json& j);

/// Which homotopy rows run: none, desk-scale ones, or everything including
/// extended and open rows.
enum class HomotopyTier { None, Desk, Extended };
HomotopyTier tier_from_string(const std::string& s);
const char* to_string(HomotopyTier t);

struct RunConfig {
  std::string subcommand;
  int n = 0;
  std::vector<int> degrees;
  std::optional<int> k_override;
  std::uint64_t seed = 1;
  int budget_loops = 200;
  int stall_loops = 15;
  double time_budget_seconds = 0.0;
  int workers = 1;
  HomotopyTier tier = HomotopyTier::None;
  std::string output_path;
  int verbosity = 0;

  /// Case from (n, degrees), rejecting non-perfect signatures and k overrides
  /// that differ from the perfect k.
  CaseSpec case_spec() const;
  Json header() const;
};

enum class Verdict { Pass, Fail, LowerBound, Mismatch, Inconclusive, Skipped, Open };
const char* to_string(Verdict v);

struct RowReport {
  TableRow row;
  std::optional<int> observed_delta;
  std::optional<BigInt> observed_count;
  std::string method;  // "defect", "veronese", "apolarity", "monodromy", "none"
  std::string status;  // count status, or "" when no homotopy ran
  Verdict verdict = Verdict::Skipped;
  std::string detail;
  double seconds = 0.0;  // wall clock; human output only

  Json to_json() const;
};

std::vector<RowReport> run_table(const std::vector<TableRow>& rows, const RunConfig& config);
/// Aligned expected/observed table.
std::string format_table(const std::vector<RowReport>& reports);
/// 0 if nothing failed; 3 for defect mismatches or inconclusive ranks; 4 for
/// count mismatches.
int table_exit_code(const std::vector<RowReport>& reports);

struct PairReport {
  int t = 0;
  std::vector<int> degrees;
  bool perfect = false;
  int k = 0;
  std::int64_t bound = 0;
  std::optional<int> count;
  std::string status;  // count status, or "not run"
  bool meets_bound = true;

  Json to_json() const;
};

/// Degrees (2t, 2t+1) on P^2. Counts by monodromy only when t <= max_count_t.
PairReport run_pair_analysis(int t, const RunConfig& config, int max_count_t = 2);

}  // namespace waring
