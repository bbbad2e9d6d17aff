#include "waring/table.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "waring/apolarity.hpp"
#include "waring/error.hpp"
#include "waring/homotopy.hpp"
#include "waring/parallel.hpp"
#include "waring/terracini.hpp"

namespace waring {

const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Defect: return "defect";
    case RowKind::Count: return "count";
    case RowKind::Bound: return "bound";
    case RowKind::Formula: return "formula";
    case RowKind::Open: return "open";
  }
  return "?";
}

RowKind row_kind_from_string(const std::string& s) {
  for (RowKind k : {RowKind::Defect, RowKind::Count, RowKind::Bound, RowKind::Formula, RowKind::Open})
    if (s == to_string(k)) return k;
  throw Error(ErrorKind::Validation, "unknown row kind '" + s + "'");
}

std::string TableRow::label() const { return spec().label() + " k=" + std::to_string(k); }

std::string default_table_path() { return std::string(WARING_DATA_DIR) + "/decomposition_table.json"; }

std::vector<TableRow> parse_table(const Json& j) {
  std::vector<TableRow> rows;
  try {
    int index = 0;
    for (const auto& e : j.at("rows")) {
      TableRow r;
      r.index = ++index;
      r.n = e.at("n").get<int>();
      r.degrees = e.at("degrees").get<std::vector<int>>();
      r.k = e.at("k").get<int>();
      r.delta = e.at("delta").get<int>();
      if (!e.at("count").is_null()) r.count = BigInt(e.at("count").get<std::int64_t>());
      r.relation = e.value("relation", "");
      r.kind = row_kind_from_string(e.at("kind").get<std::string>());
      r.bold = e.value("bold", false);
      r.tier = e.value("tier", "desk");
      if (static_cast<int>(r.degrees.size()) != e.at("r").get<int>()) {
        throw Error(ErrorKind::Validation, "row " + std::to_string(index) + ": r does not match the degree list");
      }
      rows.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed table: ") + e.what());
  }
  return rows;
}

std::vector<TableRow> load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open table file " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("table file is not JSON: ") + e.what());
  }
  return parse_table(j);
}

HomotopyTier tier_from_string(const std::string& s) {
  if (s == "none") return HomotopyTier::None;
  if (s == "desk") return HomotopyTier::Desk;
  if (s == "extended") return HomotopyTier::Extended;
  throw Error(ErrorKind::Validation, "tier must be none, desk or extended");
}

const char* to_string(HomotopyTier t) {
  switch (t) {
    case HomotopyTier::None: return "none";
    case HomotopyTier::Desk: return "desk";
    case HomotopyTier::Extended: return "extended";
  }
  return "?";
}

CaseSpec RunConfig::case_spec() const {
  CaseSpec spec(n, degrees);
  const int k = spec.require_k();
  if (k_override && *k_override != k) {
    throw Error(ErrorKind::Validation, "k=" + std::to_string(*k_override) + " does not match the perfect k=" +
                                           std::to_string(k) + " for " + spec.label());
  }
  return spec;
}

Json RunConfig::header() const {
  Json h{{"subcommand", subcommand},
         {"seed", seed},
         {"budget_loops", budget_loops},
         {"stall", stall_loops},
         {"workers", workers},
         {"tier", to_string(tier)}};
  if (!degrees.empty()) {
    h["n"] = n;
    h["degrees"] = degrees;
  }
  if (k_override) h["k"] = *k_override;
  if (time_budget_seconds > 0.0) h["time_budget_seconds"] = time_budget_seconds;
  return h;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "FAIL";
    case Verdict::LowerBound: return "lower bound only";
    case Verdict::Mismatch: return "MISMATCH";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Skipped: return "skipped";
    case Verdict::Open: return "open";
  }
  return "?";
}

namespace {

std::string big_to_string(const BigInt& b) { return b.str(); }

Json big_to_json(const BigInt& b) {
  if (b <= BigInt(std::numeric_limits<std::int64_t>::max())) return Json(static_cast<std::int64_t>(b));
  return Json(b.str());
}

// Runs of four or more equal degrees print as d^count.
std::string degrees_string(const std::vector<int>& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size();) {
    std::size_t j = i;
    while (j < d.size() && d[j] == d[i]) ++j;
    if (i > 0) os << ",";
    if (j - i >= 4) {
      os << d[i] << "^" << j - i;
    } else {
      for (std::size_t m = i; m < j; ++m) os << (m > i ? "," : "") << d[m];
    }
    i = j;
  }
  os << ")";
  return os.str();
}

bool is_veronese_row(const TableRow& row) {
  const int d = row.degrees.front();
  for (int a : row.degrees)
    if (a != d) return false;
  const BigInt s = binomial(d + row.n, row.n) - row.n;
  return s == BigInt(static_cast<int>(row.degrees.size())) && row.k == static_cast<int>(row.degrees.size());
}

CountOptions count_options(const RunConfig& config) {
  CountOptions o;
  o.stall_loops = config.stall_loops;
  o.budget_loops = config.budget_loops;
  o.time_budget_seconds = config.time_budget_seconds;
  o.check_defect = false;  // the table runner checks the defect itself
  o.monodromy.workers = 1;
  return o;
}

bool homotopy_enabled(const TableRow& row, HomotopyTier tier) {
  if (tier == HomotopyTier::Extended) return true;
  return tier == HomotopyTier::Desk && row.tier == "desk";
}

void verify_formula(const TableRow& row, std::uint64_t seed, RowReport& rep) {
  if (is_veronese_row(row)) {
    const VeroneseCount vc = veronese_count(row.degrees.front(), row.n);
    rep.method = "veronese";
    rep.observed_count = vc.count;
    rep.detail = "binom(" + big_to_string(vc.points) + ", " + std::to_string(vc.s) + ")";
    rep.verdict = row.count && vc.count == *row.count ? Verdict::Pass : Verdict::Mismatch;
    return;
  }
  const auto bundle = bundle_for_case(row.spec());
  if (!bundle) {
    rep.method = "none";
    rep.verdict = Verdict::Skipped;
    rep.detail = "no closed form or apolarity route for this row";
    return;
  }
  rep.method = "apolarity";
  const ForwardSample sample = forward_construct(row.n, row.degrees, row.k, seed);
  const WaringDecomposition dec = decompose(sample.f, *bundle, DecomposeOptions{seed});
  const bool recovered = dec.residual < 1e-8 && equivalent(dec, sample.truth, sample.f.degrees());
  rep.observed_count = BigInt(recovered ? 1 : 0);
  std::ostringstream os;
  os << bundle->name() << " residual " << std::scientific << std::setprecision(2) << dec.residual;
  rep.detail = os.str();
  rep.verdict = recovered && row.count && *row.count == 1 ? Verdict::Pass : Verdict::Mismatch;
}

void count_row(const TableRow& row, const RunConfig& config, std::uint64_t seed, RowReport& rep) {
  rep.method = "monodromy";
  const CountResult res = count_decompositions(row.spec(), seed, count_options(config));
  rep.observed_count = BigInt(res.count);
  rep.status = res.status;
  rep.detail = std::to_string(res.loops) + " loops, " + std::to_string(res.path_failures) + " failed paths";
  const bool stabilized = res.status == "stabilized";
  if (row.kind == RowKind::Open) {
    rep.verdict = Verdict::Open;
    return;
  }
  if (!row.count) {
    rep.verdict = Verdict::Skipped;
    return;
  }
  const BigInt observed(res.count);
  if (row.relation == ">=") {
    rep.verdict = observed >= *row.count ? Verdict::Pass : Verdict::LowerBound;
    return;
  }
  if (observed == *row.count) {
    rep.verdict = stabilized ? Verdict::Pass : Verdict::LowerBound;
  } else {
    rep.verdict = Verdict::Mismatch;
  }
}

RowReport run_row(const TableRow& row, const RunConfig& config) {
  RowReport rep;
  rep.row = row;
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t seed = mix_seed(config.seed, static_cast<std::uint64_t>(row.index));
  try {
    const DefectResult d = secant_defect(row.spec(), row.k, seed);
    rep.observed_delta = d.defect;
    rep.method = "defect";
    if (!d.conclusive) {
      rep.verdict = Verdict::Inconclusive;
      rep.detail = "rank gap " + std::to_string(d.gap);
    } else if (d.defect != row.delta) {
      rep.verdict = Verdict::Fail;
      rep.detail = "defect differs";
    } else if (d.defect > 0) {
      rep.verdict = Verdict::Pass;
    } else if (row.kind == RowKind::Formula) {
      verify_formula(row, seed, rep);
    } else if (homotopy_enabled(row, config.tier)) {
      count_row(row, config, seed, rep);
    } else {
      rep.verdict = row.kind == RowKind::Open ? Verdict::Open : Verdict::Skipped;
      rep.detail = "homotopy tier '" + row.tier + "' not enabled";
    }
  } catch (const Error& e) {
    rep.verdict = e.kind() == ErrorKind::Budget ? Verdict::LowerBound : Verdict::Inconclusive;
    rep.detail = e.what();
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

}  // namespace

Json RowReport::to_json() const {
  Json j{{"row", row.index},
         {"case", row.label()},
         {"n", row.n},
         {"degrees", row.degrees},
         {"k", row.k},
         {"kind", waring::to_string(row.kind)},
         {"expected_delta", row.delta},
         {"method", method},
         {"verdict", waring::to_string(verdict)}};
  j["expected_count"] = row.count ? big_to_json(*row.count) : Json(nullptr);
  j["relation"] = row.relation;
  j["observed_delta"] = observed_delta ? Json(*observed_delta) : Json(nullptr);
  j["observed_count"] = observed_count ? big_to_json(*observed_count) : Json(nullptr);
  if (!status.empty()) j["status"] = status;
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

std::vector<RowReport> run_table(const std::vector<TableRow>& rows, const RunConfig& config) {
  std::vector<RowReport> reports(rows.size());
  parallel_for(rows.size(), config.workers, [&](std::size_t i) { reports[i] = run_row(rows[i], config); });
  return reports;
}

std::string format_table(const std::vector<RowReport>& reports) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"#", "r", "n", "degrees", "k", "delta exp", "delta obs", "count exp", "count obs", "method",
                   "verdict", "time"});
  for (const auto& rep : reports) {
    const auto& r = rep.row;
    std::string exp_count = r.relation == "?" ? "?" : "";
    if (r.count) exp_count = (r.relation == ">=" ? ">= " : "") + big_to_string(*r.count);
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << rep.seconds << "s";
    cells.push_back({std::to_string(r.index), std::to_string(r.degrees.size()), std::to_string(r.n),
                     degrees_string(r.degrees), std::to_string(r.k), std::to_string(r.delta),
                     rep.observed_delta ? std::to_string(*rep.observed_delta) : "-", exp_count,
                     rep.observed_count ? big_to_string(*rep.observed_count) : "-", rep.method,
                     to_string(rep.verdict), t.str()});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << row[c] << (c + 1 < row.size() ? "  " : "\n");
    }
  }
  return os.str();
}

int table_exit_code(const std::vector<RowReport>& reports) {
  int code = 0;
  for (const auto& rep : reports) {
    if (rep.verdict == Verdict::Mismatch) code = 4;
    if ((rep.verdict == Verdict::Fail || rep.verdict == Verdict::Inconclusive) && code == 0) code = 3;
  }
  return code;
}

Json PairReport::to_json() const {
  Json j{{"t", t}, {"degrees", degrees}, {"perfect", perfect}, {"k", k}, {"lower_bound", bound},
         {"status", status}, {"meets_bound", meets_bound}};
  j["count"] = count ? Json(*count) : Json(nullptr);
  return j;
}

PairReport run_pair_analysis(int t, const RunConfig& config, int max_count_t) {
  if (t < 1) throw Error(ErrorKind::Validation, "t must be at least 1");
  PairReport rep;
  rep.t = t;
  rep.degrees = {2 * t, 2 * t + 1};
  const auto k = is_perfect(2, rep.degrees);
  rep.perfect = k.has_value();
  if (!k) throw Error(ErrorKind::Validation, "degrees (2t, 2t+1) should always be perfect on P^2");
  rep.k = *k;
  rep.bound = pair_lower_bound(t);
  rep.status = "not run";
  if (t <= max_count_t) {
    CountOptions o = count_options(config);
    o.check_defect = true;
    o.monodromy.workers = config.workers;
    const CountResult res = count_decompositions(CaseSpec(2, rep.degrees), config.seed, o);
    rep.count = res.count;
    rep.status = res.status;
    rep.meets_bound = res.count >= rep.bound;
  }
  return rep;
}

}  // namespace waring
