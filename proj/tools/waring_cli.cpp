// waring: perfectness screening, defect checks, decomposition counts,
// explicit decompositions and the reference table.
//
// Exit codes: 0 ok, 2 validation error, 3 numerically inconclusive,
// 4 budget exhausted with a count that disagrees with the reference.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "waring/apolarity.hpp"
#include "waring/error.hpp"
#include "waring/homotopy.hpp"
#include "waring/json_io.hpp"
#include "waring/table.hpp"
#include "waring/terracini.hpp"

using namespace waring;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitBudget = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation:
    case ErrorKind::OutOfRange:
    case ErrorKind::DegenerateCase: return kExitValidation;
    case ErrorKind::Numerical: return kExitNumerical;
    case ErrorKind::Budget: return kExitBudget;
  }
  return kExitNumerical;
}

// Collects output for stdout and the optional --output file.
class Sink {
 public:
  Sink(const RunConfig& config, bool json) : config_(config), json_(json) {
    if (json_) {
      line(Json{{"config", config_.header()}});
    } else {
      text_ << "# config " << config_.header().dump() << "\n";
    }
  }

  bool json() const { return json_; }
  void line(const Json& j) { text_ << j.dump() << "\n"; }
  std::ostream& text() { return text_; }

  void flush() {
    std::cout << text_.str() << std::flush;
    if (!config_.output_path.empty()) {
      std::ofstream out(config_.output_path);
      if (!out) throw Error(ErrorKind::Validation, "cannot write " + config_.output_path);
      out << text_.str();
    }
  }

 private:
  const RunConfig& config_;
  bool json_;
  std::ostringstream text_;
};

std::vector<int> parse_degrees(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    // "4x13" means thirteen copies of 4
    const auto x = item.find('x');
    try {
      if (x == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int d = std::stoi(item.substr(0, x));
        const int c = std::stoi(item.substr(x + 1));
        if (c < 1) throw Error(ErrorKind::Validation, "repeat count must be positive");
        out.insert(out.end(), static_cast<std::size_t>(c), d);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Validation, "cannot parse degree list '" + s + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::Validation, "empty degree list");
  return out;
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(10) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

void print_decomposition(std::ostream& os, const WaringDecomposition& dec) {
  for (int i = 0; i < dec.k(); ++i) {
    const auto& c = dec.forms[static_cast<std::size_t>(i)].coeffs();
    os << "  l" << i + 1 << " = [";
    for (Eigen::Index h = 0; h < c.size(); ++h) os << (h ? ", " : "") << format_complex(c[h]);
    os << "]  lambda = [";
    for (int j = 0; j < dec.r(); ++j) os << (j ? ", " : "") << format_complex(dec.lambdas(i, j));
    os << "]\n";
  }
  os << "  residual " << std::scientific << std::setprecision(3) << dec.residual << std::defaultfloat << "\n";
}

std::optional<TableRow> reference_row(const CaseSpec& spec, int k) {
  for (const auto& row : load_table()) {
    if (row.spec() == spec && row.k == k) return row;
  }
  return std::nullopt;
}

int cmd_perfect(RunConfig& config, Sink& out) {
  const CaseSpec spec(config.n, config.degrees);
  const std::int64_t per_summand = spec.r() + spec.n();
  if (out.json()) {
    Json j{{"case", spec.label()}, {"ambient_dimension", spec.ambient_dimension()}, {"r_plus_n", per_summand},
           {"perfect", spec.is_perfect()}};
    j["k"] = spec.k() ? Json(*spec.k()) : Json(nullptr);
    out.line(j);
  } else {
    out.text() << spec.label() << ": N = " << spec.ambient_dimension() << ", r + n = " << per_summand;
    if (spec.k()) {
      out.text() << ", perfect with k = " << *spec.k() << "\n";
    } else {
      out.text() << ", not perfect\n";
    }
  }
  if (config.k_override && spec.k() != config.k_override) {
    throw Error(ErrorKind::Validation, "k=" + std::to_string(*config.k_override) + " is not the perfect k");
  }
  return 0;
}

int cmd_defect(RunConfig& config, Sink& out) {
  const CaseSpec spec(config.n, config.degrees);
  int k = 0;
  if (config.k_override) {
    k = *config.k_override;
    if (k < 1) throw Error(ErrorKind::Validation, "k must be positive");
  } else {
    k = spec.require_k();
  }
  DefectOptions opts;
  opts.workers = config.workers;
  const DefectResult d = secant_defect(spec, k, config.seed, opts);
  if (out.json()) {
    out.line(Json{{"case", spec.label()}, {"k", k}, {"dim", d.dim}, {"expected", d.expected}, {"defect", d.defect},
                  {"gap", std::isfinite(d.gap) ? Json(d.gap) : Json("inf")}, {"conclusive", d.conclusive},
                  {"attempts", d.attempts}, {"probabilistic", true}});
  } else {
    out.text() << spec.label() << " k=" << k << " (probabilistic): tangent span dim " << d.dim << " of expected " << d.expected
               << ", defect " << d.defect << " (rank gap " << std::scientific << std::setprecision(2) << d.gap
               << std::defaultfloat << ", " << d.attempts << " attempt" << (d.attempts == 1 ? "" : "s") << ")"
               << (d.conclusive ? "" : " INCONCLUSIVE") << "\n";
  }
  return d.conclusive ? 0 : kExitNumerical;
}

CountOptions count_options(const RunConfig& config) {
  CountOptions o;
  o.stall_loops = config.stall_loops;
  o.budget_loops = config.budget_loops;
  o.time_budget_seconds = config.time_budget_seconds;
  o.monodromy.workers = config.workers;
  return o;
}

void dump_solutions(const std::string& path, const RunConfig& config, const CountResult& res) {
  Json sols = Json::array();
  for (const auto& s : res.solutions) sols.push_back(to_json(s));
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Validation, "cannot write " + path);
  f << Json{{"config", config.header()}, {"solutions", sols}}.dump(1) << "\n";
}

int cmd_count(RunConfig& config, Sink& out, const std::string& dump_path) {
  const CaseSpec spec = config.case_spec();
  const CountResult res = count_decompositions(spec, config.seed, count_options(config));
  if (!dump_path.empty()) dump_solutions(dump_path, config, res);

  int code = 0;
  std::string reference;
  if (const auto row = reference_row(spec, res.k); row && row->count) {
    reference = (row->relation == ">=" ? ">= " : "") + row->count->str();
    if (res.status != "stabilized" && row->relation == "=" && BigInt(res.count) != *row->count) code = kExitBudget;
  }
  if (out.json()) {
    Json j{{"case", spec.label()}, {"k", res.k}, {"count", res.count}, {"status", res.status}, {"loops", res.loops},
           {"path_failures", res.path_failures}};
    if (!reference.empty()) j["reference"] = reference;
    out.line(j);
  } else {
    out.text() << spec.label() << " k=" << res.k << ": " << res.count << " decomposition"
               << (res.count == 1 ? "" : "s") << " (" << res.status << " after " << res.loops << " loops, "
               << res.path_failures << " failed paths)";
    if (!reference.empty()) out.text() << "; reference " << reference;
    out.text() << "\n";
  }
  return code;
}

int cmd_decompose(RunConfig& config, Sink& out, const std::string& input, const std::string& bundle_text,
                  const std::string& method) {
  PolyVector f = [&] {
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw Error(ErrorKind::Validation, "cannot open " + input);
      Json j;
      try {
        in >> j;
      } catch (const Json::exception& e) {
        throw Error(ErrorKind::Validation, std::string("input is not JSON: ") + e.what());
      }
      return poly_vector_from_json(j);
    }
    const CaseSpec spec = config.case_spec();
    return forward_construct(spec.n(), spec.degrees(), *spec.k(), config.seed).f;
  }();
  const CaseSpec spec(f.n(), f.degrees());
  spec.require_k();

  std::optional<BundleSpec> bundle;
  if (bundle_text == "auto") {
    bundle = bundle_for_case(spec);
  } else if (!bundle_text.empty()) {
    bundle = BundleSpec::parse(bundle_text);
  }
  const bool use_apolarity = method == "apolarity" || (method == "auto" && bundle);
  if (use_apolarity && !bundle) {
    throw Error(ErrorKind::Validation, "no apolarity bundle is known for " + spec.label() + "; pass --bundle");
  }

  std::vector<WaringDecomposition> decs;
  std::string used;
  if (use_apolarity) {
    decs.push_back(decompose(f, *bundle, DecomposeOptions{config.seed}));
    used = "apolarity " + bundle->name();
  } else {
    SolveOptions so;
    so.count = count_options(config);
    decs = solve_by_monodromy(f, config.seed, so).solutions;
    used = "monodromy";
  }
  if (out.json()) {
    Json sols = Json::array();
    for (const auto& d : decs) sols.push_back(to_json(d));
    out.line(Json{{"case", spec.label()}, {"method", used}, {"input", to_json(f)}, {"decompositions", sols}});
  } else {
    out.text() << spec.label() << " via " << used << ": " << decs.size() << " decomposition"
               << (decs.size() == 1 ? "" : "s") << "\n";
    for (std::size_t i = 0; i < decs.size(); ++i) {
      out.text() << "decomposition " << i + 1 << "\n";
      print_decomposition(out.text(), decs[i]);
    }
  }
  return 0;
}

int cmd_pair(RunConfig& config, Sink& out, int t, int max_count_t) {
  const PairReport rep = run_pair_analysis(t, config, max_count_t);
  if (out.json()) {
    out.line(rep.to_json());
  } else {
    out.text() << "t=" << t << " degrees (" << rep.degrees[0] << "," << rep.degrees[1] << ") on P^2: k = " << rep.k
               << ", lower bound " << rep.bound;
    if (rep.count) {
      out.text() << ", monodromy count " << *rep.count << " (" << rep.status << ")"
                 << (rep.meets_bound ? "" : " BELOW BOUND");
    } else {
      out.text() << ", count not run";
    }
    out.text() << "\n";
  }
  if (!rep.meets_bound) return rep.status == "stabilized" ? kExitNumerical : kExitBudget;
  return 0;
}

int cmd_table(RunConfig& config, Sink& out, const std::string& table_path, const std::vector<int>& selection) {
  const auto all = load_table(table_path.empty() ? default_table_path() : table_path);
  std::vector<TableRow> rows;
  if (selection.empty()) {
    rows = all;
  } else {
    for (int i : selection) {
      if (i < 1 || i > static_cast<int>(all.size())) {
        throw Error(ErrorKind::Validation, "row " + std::to_string(i) + " is not in the table (1.." +
                                               std::to_string(all.size()) + ")");
      }
      rows.push_back(all[static_cast<std::size_t>(i - 1)]);
    }
  }
  const auto reports = run_table(rows, config);
  if (out.json()) {
    for (const auto& r : reports) out.line(r.to_json());
  } else {
    out.text() << format_table(reports);
  }
  return table_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simultaneous Waring decompositions of vectors of forms"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  bool json = false;
  app.add_option("--seed", config.seed, "Seed for all randomness")->capture_default_str();
  app.add_flag("--json", json, "Emit JSON lines");
  app.add_option("--workers", config.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--budget-loops", config.budget_loops, "Maximum monodromy loops")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--stall", config.stall_loops, "Loops without new solutions before stopping")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--time-budget", config.time_budget_seconds, "Wall-clock limit per count in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("-o,--output", config.output_path, "Also write the output to this file");
  app.add_flag("-v,--verbose", config.verbosity, "More output");

  std::string degrees_text;
  int k_value = 0;
  std::vector<CLI::Option*> k_options;
  auto add_case = [&](CLI::App* sub, bool required) {
    auto* n = sub->add_option("-n,--n", config.n, "Projective dimension n (forms in n+1 variables)");
    auto* d = sub->add_option("-d,--degrees", degrees_text, "Degrees a_1..a_r, e.g. 3,3,4 or 4x13");
    if (required) {
      n->required();
      d->required();
    }
    k_options.push_back(sub->add_option("-k,--k", k_value, "Number of summands (must equal the perfect k)"));
  };

  auto* perfect = app.add_subcommand("perfect", "Check whether a degree signature is perfect and report k");
  add_case(perfect, true);
  auto* defect = app.add_subcommand("defect", "Probabilistic secant defect via tangent spans");
  add_case(defect, true);
  auto* count = app.add_subcommand("count", "Count decompositions of a random vector by monodromy");
  add_case(count, true);
  std::string dump_path;
  count->add_option("--dump-solutions", dump_path, "Write the canonical solutions as JSON");

  auto* decomp = app.add_subcommand("decompose", "Decompose a vector of forms");
  add_case(decomp, false);
  std::string input;
  std::string bundle_text = "auto";
  std::string method = "auto";
  decomp->add_option("-i,--input", input, "JSON file with the forms (default: random forward construction)");
  decomp->add_option("--bundle", bundle_text, "auto, line:<e>[:<kernel>] or quotient:<e>[:<kernel>]");
  decomp->add_option("--method", method, "auto, apolarity or monodromy")
      ->check(CLI::IsMember({"auto", "apolarity", "monodromy"}));

  auto* pair = app.add_subcommand("pair", "Pairs of ternary forms of degrees (2t, 2t+1)");
  int t = 1;
  int max_count_t = 2;
  pair->add_option("-t,--t", t, "t >= 1")->required();
  pair->add_option("--count-max-t", max_count_t, "Run the monodromy count only for t up to this")->capture_default_str();

  auto* table = app.add_subcommand("table", "Re-derive the reference table of defects and counts");
  std::string table_path;
  std::vector<int> selection;
  std::string tier = "none";
  table->add_option("--rows", selection, "1-based row numbers (default: all)")->delimiter(',');
  table->add_option("--tier", tier, "Homotopy rows to run: none, desk or extended")
      ->check(CLI::IsMember({"none", "desk", "extended"}))
      ->capture_default_str();
  table->add_option("--table", table_path, "Registry JSON (default: bundled)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    auto* sub = app.get_subcommands().front();
    config.subcommand = sub->get_name();
    if (!degrees_text.empty()) config.degrees = parse_degrees(degrees_text);
    for (auto* opt : k_options)
      if (opt->count() > 0) config.k_override = k_value;
    config.tier = tier_from_string(tier);
    Sink out(config, json);
    int code = 0;
    if (sub == perfect) code = cmd_perfect(config, out);
    else if (sub == defect) code = cmd_defect(config, out);
    else if (sub == count) code = cmd_count(config, out, dump_path);
    else if (sub == decomp) code = cmd_decompose(config, out, input, bundle_text, method);
    else if (sub == pair) code = cmd_pair(config, out, t, max_count_t);
    else if (sub == table) code = cmd_table(config, out, table_path, selection);
    out.flush();
    return code;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
