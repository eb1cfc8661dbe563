#include "setfam/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "setfam/constructions.hpp"
#include "setfam/explore.hpp"
#include "setfam/family.hpp"
#include "setfam/family_io.hpp"
#include "setfam/search.hpp"

namespace setfam {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Context {
  std::vector<std::string> argv;
  bool structured = false;
  std::ostream* out = nullptr;
};

ordered_json sets_json(const SetFamily& f) {
  ordered_json arr = ordered_json::array();
  for (Subset s : f.members()) arr.push_back(s.elements());
  return arr;
}

std::string set_text(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : s.elements()) {
    out += (first ? "" : ",") + std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::string family_text(const SetFamily& f) {
  std::string out;
  for (Subset s : f.members()) out += (out.empty() ? "" : " ") + set_text(s);
  return out;
}

ordered_json base_report(const Context& ctx, const std::string& digest_input) {
  ordered_json r;
  r["tool"] = "setfam";
  r["version"] = kToolVersion;
  r["command"] = ctx.argv;
  r["input_digest"] = "fnv1a64:" + fnv1a64_hex(digest_input);
  return r;
}

std::string joined_args(const Context& ctx) {
  std::string s;
  for (const auto& a : ctx.argv) s += a + '\n';
  return s;
}

// Text mode prints "key: value" lines for the scalar results; structured
// mode prints the whole report as JSON.
void print_report(const Context& ctx, const ordered_json& report) {
  if (ctx.structured) {
    *ctx.out << report.dump(2) << "\n";
    return;
  }
  const auto& res = report["results"];
  for (auto it = res.begin(); it != res.end(); ++it) {
    if (it->is_object() || (it->is_array() && !it->empty() && it->front().is_object()))
      continue;
    *ctx.out << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump())
             << "\n";
  }
  if (report.contains("nodes")) *ctx.out << "nodes: " << report["nodes"].dump() << "\n";
  if (report.contains("seed")) *ctx.out << "seed: " << report["seed"].dump() << "\n";
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const Context& ctx, const std::string& path) {
  const auto start = Clock::now();
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const FamilyFile file = parse_family_file(text);
  const SetFamily f = file.to_family();
  const int n = f.ground().size();

  ordered_json res;
  res["ground_size"] = n;
  res["size"] = f.size();
  if (!file.name.empty()) res["name"] = file.name;
  if (f.empty()) {
    res["vc_dimension"] = nullptr;
    res["index"] = nullptr;
  } else {
    const int vc = vc_dimension(f);
    res["vc_dimension"] = vc;
    res["index"] = index_of(f);
    const BigInt bound = sauer_bound(vc, n);
    res["sauer_bound_at_vc"] = bound.str();
    res["within_sauer_bound"] = BigInt(f.size()) <= bound;
  }
  res["is_sperner"] = is_sperner(f);
  res["lym_sum"] = to_fraction_string(lym_sum(f));

  if (!f.empty() && f.size() <= static_cast<std::size_t>(kMaxDualRows)) {
    const DualFamily dual = dualize(f);
    std::uint64_t violations = 0;
    ordered_json listed = ordered_json::array();
    bool distinct = true;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (dual.columns[a] == dual.columns[b]) distinct = false;
        if (!pairwise_ok(dual.columns[a], dual.columns[b], dual.family_size)) {
          ++violations;
          if (listed.size() < 100) listed.push_back({a, b});
        }
      }
    }
    const SetFamily columns = columns_as_family(dual);
    res["dual_columns_distinct"] = distinct;
    res["dual_sperner"] = distinct && is_sperner(columns);
    res["dual_lym_sum"] = to_fraction_string(lym_sum(columns));
    res["pair_cell_violations"] = violations;
    res["pair_cell_violation_examples"] = listed;
  } else {
    res["dual_sperner"] = nullptr;
  }

  ordered_json report = base_report(ctx, text);
  report["results"] = res;
  report["wall_seconds"] = seconds_since(start);
  if (ctx.structured) {
    print_report(ctx, report);
  } else {
    print_report(ctx, report);
    if (res.contains("pair_cell_violation_examples") && !res["pair_cell_violation_examples"].empty())
      *ctx.out << "pair_cell_violation_examples: " << res["pair_cell_violation_examples"].dump()
               << "\n";
  }
  return kExitOk;
}

// ---- construct -------------------------------------------------------------

int cmd_construct(const Context& ctx, const std::string& kind, int l, int n, int d,
                  const std::string& out_path) {
  const auto start = Clock::now();
  ConstructionReport r;
  std::string params;
  if (kind == "prop2") {
    r = construct_prop2(l);
    params = "l=" + std::to_string(l);
  } else if (kind == "corollary") {
    r = construct_corollary_upper(n);
    params = "n=" + std::to_string(n);
  } else if (kind == "sep") {
    r = construct_separating(n);
    params = "n=" + std::to_string(n);
  } else if (kind == "prop4") {
    r = construct_prop4(n, d);
    params = "n=" + std::to_string(n) + " d=" + std::to_string(d);
  } else {
    fail(ErrorKind::InvalidInput, "unknown construction '" + kind + "'");
  }

  const FamilyFile file =
      FamilyFile::from_family(r.family, kind + " " + params, "setfam construct " + kind);
  const std::string emitted = emit_family_file(file);

  ordered_json res;
  res["kind"] = kind;
  res["parameters"] = params;
  res["ground_size"] = r.family.ground().size();
  res["size"] = r.family.size();
  res["claimed_d"] = r.claimed_d;
  res["size_bound"] = to_fraction_string(r.size_bound);
  res["verified"] = r.verified;
  res["bound_holds"] = r.bound_holds;
  if (r.separating_size) res["separating_size"] = r.separating_size;
  if (r.asymptotic_bound > 0) res["asymptotic_bound_informational"] = r.asymptotic_bound;
  if (!out_path.empty()) {
    write_family_file(out_path, file);
    res["family_path"] = out_path;
  } else if (ctx.structured) {
    res["family_file"] = emitted;
  }

  ordered_json report = base_report(ctx, joined_args(ctx));
  report["results"] = res;
  report["wall_seconds"] = seconds_since(start);
  print_report(ctx, report);
  if (out_path.empty() && !ctx.structured) *ctx.out << emitted;
  return r.verified && r.bound_holds ? kExitOk : kExitCheckFailed;
}

// ---- search ----------------------------------------------------------------

struct SearchArgs {
  int d = 0, n = 0;
  std::optional<int> k, kmax;
  std::uint64_t budget = 0;
  int threads = 1;
  bool no_symmetry = false;
  bool confirm_lower = false;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

ordered_json bounds_json(const CdnBounds& b) {
  ordered_json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  auto terms = [](const std::vector<BoundTerm>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : v) arr.push_back({{"value", t.value}, {"source", t.source}});
    return arr;
  };
  j["lower_terms"] = terms(b.lower_terms);
  j["upper_terms"] = terms(b.upper_terms);
  j["conjectural"] = terms(b.conjectural);
  j["notes"] = b.notes;
  return j;
}

int cmd_search(const Context& ctx, const SearchArgs& a) {
  const auto start = Clock::now();
  SearchOptions opt;
  opt.use_symmetry = !a.no_symmetry;
  opt.node_budget = a.budget;
  opt.threads = a.threads;

  ordered_json report = base_report(ctx, joined_args(ctx));
  ordered_json res;
  res["d"] = a.d;
  res["n"] = a.n;
  int code = kExitOk;
  std::optional<SetFamily> witness;
  std::uint64_t nodes = 0;

  if (a.k) {
    const SearchOutcome o = feasible(a.d, a.n, *a.k, opt);
    res["k"] = *a.k;
    res["status"] = to_string(o.status);
    res["symmetry"] = o.certificate.symmetry_config;
    res["candidates"] = o.certificate.candidates;
    nodes = o.certificate.nodes;
    if (o.witness) {
      witness = o.witness;
      res["witness_index"] = o.witness_index;
      res["witness_index_exact"] = o.witness_index == a.d;
      res["witness"] = family_text(*o.witness);
    }
    if (o.status == SearchStatus::BudgetExhausted) code = kExitBudget;
  } else {
    CdnOptions copt;
    copt.search = opt;
    copt.kmax = a.kmax;
    copt.confirm_lower = a.confirm_lower;
    const CdnResult r = exact_cdn(a.d, a.n, copt);
    res["resolved"] = r.resolved;
    if (r.resolved) {
      res["value"] = r.value;
      res["lower_certified"] = r.lower_certified;
      res["lower_source"] = r.lower_source;
      res["witness_index"] = r.witness_index;
      res["witness_index_exact"] = r.witness_index == a.d;
      res["witness"] = family_text(*r.witness);
      witness = r.witness;
    }
    res["bounds"] = bounds_json(r.bounds);
    ordered_json steps = ordered_json::array();
    for (const auto& s : r.steps) {
      steps.push_back({{"k", s.k},
                       {"status", to_string(s.status)},
                       {"nodes", s.nodes},
                       {"wall_seconds", s.wall_seconds}});
      nodes += s.nodes;
    }
    res["steps"] = steps;
    if (!r.resolved) {
      const bool budget = !r.steps.empty() &&
                          r.steps.back().status == SearchStatus::BudgetExhausted;
      res["partial"] = "searched k up to " +
                       std::to_string(r.steps.empty() ? 0 : r.steps.back().k) +
                       (budget ? " before the node budget ran out" : " without a witness");
      code = budget ? kExitBudget : kExitCheckFailed;
    }
  }
  if (witness && !a.out_path.empty()) {
    write_family_file(a.out_path,
                      FamilyFile::from_family(*witness, "witness d=" + std::to_string(a.d) +
                                                            " n=" + std::to_string(a.n),
                                              "setfam search"));
    res["witness_path"] = a.out_path;
  }
  report["results"] = res;
  report["nodes"] = nodes;
  report["threads"] = a.threads;
  if (a.seed) report["seed"] = *a.seed;
  report["wall_seconds"] = seconds_since(start);
  print_report(ctx, report);
  if (!ctx.structured && res.contains("steps")) {
    for (const auto& s : res["steps"])
      *ctx.out << "  k=" << s["k"].get<int>() << " " << s["status"].get<std::string>()
               << " nodes=" << s["nodes"].get<std::uint64_t>() << "\n";
  }
  return code;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify_q3(const Context& ctx, int nmax, std::uint64_t budget, int threads) {
  const auto start = Clock::now();
  SearchOptions opt;
  opt.node_budget = budget;
  opt.threads = threads;
  const auto rows = verify_q3(nmax, opt);
  ordered_json table = ordered_json::array();
  bool all_agree = true;
  bool budget_hit = false;
  std::uint64_t nodes = 0;
  for (const auto& r : rows) {
    std::uint64_t row_nodes = 0;
    for (const auto& s : r.exact.steps) row_nodes += s.nodes;
    nodes += row_nodes;
    ordered_json j{{"n", r.n}, {"predicted", r.predicted}};
    j["exact"] = r.exact.resolved ? ordered_json(r.exact.value) : ordered_json(nullptr);
    j["verdict"] = r.exact.resolved ? (r.agree ? "agree" : "disagree") : "unresolved";
    j["nodes"] = row_nodes;
    table.push_back(j);
    all_agree = all_agree && r.agree;
    if (!r.exact.resolved) budget_hit = true;
  }
  ordered_json report = base_report(ctx, joined_args(ctx));
  report["results"] = {{"question", "threshold formula for d=2"},
                       {"rows", table.size()},
                       {"all_agree", all_agree},
                       {"table", table}};
  report["nodes"] = nodes;
  report["wall_seconds"] = seconds_since(start);
  print_report(ctx, report);
  if (!ctx.structured) {
    for (const auto& j : table)
      *ctx.out << "  n=" << j["n"].dump() << " predicted=" << j["predicted"].dump()
               << " exact=" << j["exact"].dump() << " " << j["verdict"].get<std::string>()
               << "\n";
  }
  if (budget_hit) return kExitBudget;
  return all_agree ? kExitOk : kExitCheckFailed;
}

int cmd_verify_q1(const Context& ctx, int d, int n, const std::string& mode,
                  std::uint64_t budget, std::optional<std::uint64_t> seed) {
  const auto start = Clock::now();
  MaximalOptions opt;
  if (mode == "exhaustive") {
    opt.mode = ExploreMode::Exhaustive;
  } else if (mode == "random") {
    opt.mode = ExploreMode::Random;
  } else {
    fail(ErrorKind::InvalidInput, "mode must be exhaustive or random");
  }
  opt.node_budget = budget;
  opt.seed = seed.value_or(opt.mode == ExploreMode::Random ? fresh_seed() : 0);
  const MaximalCensus c = explore_maximal(d, n, opt);

  ordered_json hist = ordered_json::object();
  for (const auto& [size, count] : c.size_histogram) hist[std::to_string(size)] = count;
  ordered_json records = ordered_json::array();
  for (const auto& r : c.records) {
    records.push_back({{"size", r.size},
                       {"is_maximum", r.is_maximum},
                       {"verified", r.verified},
                       {"family", sets_json(r.family)}});
  }
  ordered_json report = base_report(ctx, joined_args(ctx));
  report["results"] = {{"d", d},
                       {"n", n},
                       {"mode", mode},
                       {"complete", c.complete},
                       {"sauer_bound", c.sauer.str()},
                       {"maximal_families_found", c.families_found},
                       {"size_histogram", hist},
                       {"counterexample_candidates", c.counterexample_candidates},
                       {"inconsistencies", c.inconsistencies},
                       {"records", records}};
  report["nodes"] = c.nodes;
  report["seed"] = c.seed;
  report["wall_seconds"] = seconds_since(start);
  print_report(ctx, report);
  if (!ctx.structured) *ctx.out << "size_histogram: " << hist.dump() << "\n";
  if (c.inconsistencies) return kExitCheckFailed;
  if (opt.mode == ExploreMode::Exhaustive && !c.complete) return kExitBudget;
  return kExitOk;
}

int cmd_verify_q5(const Context& ctx, int k, const std::string& mode, std::uint64_t budget,
                  std::optional<std::uint64_t> seed) {
  const auto start = Clock::now();
  Q5Options opt;
  if (mode == "exact") {
    opt.exact = true;
  } else if (mode == "heuristic") {
    opt.exact = false;
  } else {
    fail(ErrorKind::InvalidInput, "mode must be exact or heuristic");
  }
  opt.node_budget = budget;
  opt.seed = seed.value_or(opt.exact ? 0 : fresh_seed());
  const Q5Record r = explore_q5(k, opt);
  ordered_json report = base_report(ctx, joined_args(ctx));
  report["results"] = {{"k", k},
                       {"mode", mode},
                       {"size", r.size},
                       {"certified_maximum", r.exact},
                       {"complete", r.complete},
                       {"interpretation", r.interpretation},
                       {"condition_rechecked", q5_condition_holds(r.best)},
                       {"witness", family_text(r.best)}};
  report["nodes"] = r.nodes;
  report["seed"] = r.seed;
  report["wall_seconds"] = seconds_since(start);
  print_report(ctx, report);
  if (!r.complete) return kExitBudget;
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::Parse:
    case ErrorKind::UndefinedInvariant: return kExitUsage;
    case ErrorKind::Capacity: return kExitCapacity;
    case ErrorKind::BudgetExhausted: return kExitBudget;
    case ErrorKind::Internal: return kExitCheckFailed;
  }
  return kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"setfam: shattering, VC-dimension and minimal d-shattering families"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}));

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "Report invariants of a family file");
  analyze->add_option("path", analyze_path, "Family file")->required();

  std::string kind, out_path;
  int l = 0, cn = 0, cd = 0;
  auto* construct = app.add_subcommand("construct", "Emit an explicit family");
  construct->add_option("kind", kind, "prop2 | corollary | sep | prop4")
      ->required()
      ->check(CLI::IsMember({"prop2", "corollary", "sep", "prop4"}));
  construct->add_option("--l", l, "Half the family size for prop2");
  construct->add_option("--n", cn, "Ground size");
  construct->add_option("--d", cd, "Shattering order for prop4");
  construct->add_option("--out", out_path, "Write the family file here");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Feasibility at k, or the least feasible k");
  search->add_option("--d", sa.d)->required();
  search->add_option("--n", sa.n)->required();
  search->add_option("--k", sa.k, "Decide feasibility for this k only");
  search->add_option("--kmax", sa.kmax, "Stop the scan at this k");
  search->add_option("--budget", sa.budget, "Node budget per feasibility call (0 = none)");
  search->add_option("--threads", sa.threads)->check(CLI::Range(1, 256));
  search->add_flag("--no-symmetry", sa.no_symmetry, "Disable symmetry breaking");
  search->add_flag("--confirm-lower", sa.confirm_lower,
                   "Refute lower-1 by search even when a closed form covers it");
  search->add_option("--seed", sa.seed, "Recorded in the report");
  search->add_option("--out", sa.out_path, "Write the witness family file here");

  auto* verify = app.add_subcommand("verify", "Check conjectures on small instances");
  verify->require_subcommand(1);
  int nmax = 0, vd = 0, vn = 0, vk = 0;
  std::uint64_t vbudget = 0;
  int vthreads = 1;
  std::optional<std::uint64_t> vseed;
  std::string q1_mode = "exhaustive", q5_mode = "exact";
  auto* q3 = verify->add_subcommand("q3", "Threshold formula for d=2 against exact values");
  q3->add_option("--nmax", nmax)->required();
  q3->add_option("--budget", vbudget);
  q3->add_option("--threads", vthreads)->check(CLI::Range(1, 256));
  auto* q1 = verify->add_subcommand("q1", "Inclusion-maximal families of VC-dimension <= d");
  q1->add_option("--d", vd)->required();
  q1->add_option("--n", vn)->required();
  q1->add_option("--mode", q1_mode)->check(CLI::IsMember({"exhaustive", "random"}));
  q1->add_option("--budget", vbudget);
  q1->add_option("--seed", vseed);
  auto* q5 = verify->add_subcommand("q5", "Largest family with A∩B ⊄ C");
  q5->add_option("--k", vk)->required();
  q5->add_option("--mode", q5_mode)->check(CLI::IsMember({"exact", "heuristic"}));
  q5->add_option("--budget", vbudget);
  q5->add_option("--seed", vseed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Context ctx;
  for (int i = 1; i < argc; ++i) ctx.argv.emplace_back(argv[i]);
  ctx.structured = format == "structured";
  ctx.out = &out;

  try {
    if (*analyze) return cmd_analyze(ctx, analyze_path);
    if (*construct) return cmd_construct(ctx, kind, l, cn, cd, out_path);
    if (*search) return cmd_search(ctx, sa);
    if (*q3) return cmd_verify_q3(ctx, nmax, vbudget, vthreads);
    if (*q1) return cmd_verify_q1(ctx, vd, vn, q1_mode, vbudget ? vbudget : 1'000'000, vseed);
    if (*q5) return cmd_verify_q5(ctx, vk, q5_mode, vbudget ? vbudget : 5'000'000, vseed);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace setfam
