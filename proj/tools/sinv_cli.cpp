// sinv: command-line front end for synthesis, bounds, traces, the depth-2
// oracle and cycle-space instances.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sinv/selftest.hpp"
#include "sinv/sinv.hpp"

namespace {

using sinv::json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

// Bad input files and violated preconditions; reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

// Runs a parser on a file and prefixes its errors with the path.
template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  const std::string text = slurp(path);
  try {
    return parse(text);
  } catch (const sinv::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

sinv::Subspace load_subspace(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return sinv::Subspace::from_text(t); });
}

sinv::Formula load_formula(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return sinv::read_formula(t); });
}

sinv::Graph load_graph(const std::string& path) {
  return parse_file(path, [](const std::string& t) { return sinv::Graph::from_text(t); });
}

json load_json(const std::string& path) {
  return parse_file(path, [](const std::string& t) {
    try {
      return json::parse(t);
    } catch (const json::parse_error& e) {
      throw sinv::ParseError(std::string("invalid JSON: ") + e.what());
    }
  });
}

sinv::Gate parse_gate(const std::string& s) { return s == "and" ? sinv::Gate::And : sinv::Gate::Or; }

std::string big(const sinv::BigInt& x) { return x.str(); }

struct Options {
  unsigned jobs = 1;
  std::string format = "text";

  // synth
  std::size_t depth = 2, n = 1;
  std::string gate = "or", strategy = "exact-dp";
  // common file arguments
  std::string formula, subspace, a, b, u, v, graph, trace, out, report;
  // eval
  std::string point;
  // invariant
  bool semantic = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  // oracle
  bool polarity = false, invariant = false;
  // random-regular
  std::size_t vertices = 0, degree = 3;
  // subspace
  std::string kind = "even";
};

sinv::Exec exec_of(const Options& o) { return sinv::Exec{o.jobs}; }

int cmd_synth(const Options& o) {
  const auto strategy = o.strategy == "closed-form" ? sinv::SynthStrategy::ClosedForm : sinv::SynthStrategy::ExactDp;
  sinv::BetaTable table(std::max<std::size_t>(6, o.depth), std::max<std::size_t>(64, o.n));
  const sinv::Formula f = sinv::synth_parity(o.depth, o.n, parse_gate(o.gate), strategy, &table);
  const sinv::SynthReport r = sinv::synth_report(f, o.depth, parse_gate(o.gate), strategy, table);
  if (!o.out.empty()) emit(o.out, sinv::write_formula(f));
  if (o.format == "json") {
    json doc{{"format", "synth-report/1"},
             {"depth", r.depth},
             {"n", r.n},
             {"gate", sinv::gate_name(r.output_gate)},
             {"strategy", sinv::strategy_name(r.strategy)},
             {"size", r.size},
             {"leafsize", r.leafsize},
             {"beta", r.beta.to_string()},
             {"composition", r.composition},
             {"p_invariant", r.invariant}};
    if (o.out.empty()) doc["formula"] = sinv::formula_document(f);
    emit(o.report, doc.dump(2) + "\n");
  } else {
    std::ostringstream s;
    s << "depth=" << r.depth << " n=" << r.n << " gate=" << sinv::gate_name(r.output_gate)
      << " strategy=" << sinv::strategy_name(r.strategy) << "\n"
      << "size=" << r.size << " leafsize=" << r.leafsize << " beta=" << r.beta.to_string() << "\n"
      << "composition=";
    for (std::size_t i = 0; i < r.composition.size(); ++i) s << (i ? "," : "") << r.composition[i];
    s << "\np_invariant=" << (r.invariant ? "true" : "false") << "\n";
    if (o.out.empty() && o.report.empty()) s << sinv::write_formula(f);
    emit(o.report, s.str());
  }
  return kOk;
}

int cmd_eval(const Options& o) {
  const sinv::Formula f = load_formula(o.formula);
  if (!o.point.empty()) {
    const sinv::BitVec x = sinv::BitVec::from_string(o.point);
    std::cout << (sinv::evaluate_checked(f, x) ? 1 : 0) << "\n";
    return kOk;
  }
  if (!o.subspace.empty()) {
    std::cout << sinv::constancy_name(sinv::evaluate_on(f, load_subspace(o.subspace))) << "\n";
    return kOk;
  }
  const sinv::TruthTable t = sinv::truth_table(f);
  std::string bits;
  for (std::uint64_t x = 0; x < t.points(); ++x) bits += t.get(x) ? '1' : '0';
  std::cout << bits << "\n";
  return kOk;
}

int cmd_invariant(const Options& o) {
  const sinv::Formula f = load_formula(o.formula);
  const sinv::Subspace u = load_subspace(o.subspace);
  std::cout << "syntactic: " << (sinv::is_invariant(f, u) ? "true" : "false") << "\n";
  if (o.samples > 0) {
    const auto s = sinv::sample_semantic_invariance(f, u, o.samples, o.seed);
    std::cout << "semantic (sampled, " << s.samples << " points, seed " << o.seed << "): "
              << (s.counterexample_found ? "false at x=" + s.point.to_string() + " shift=" + s.shift.to_string()
                                         : std::string("no counterexample"))
              << "\n";
  } else if (o.semantic) {
    std::cout << "semantic: " << (sinv::is_semantically_invariant(f, u) ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_minweight(const Options& o) {
  const sinv::MinWeight mw = sinv::min_weight_in_difference(load_subspace(o.a), load_subspace(o.b), exec_of(o));
  std::cout << "m=" << mw.weight << " witness=" << mw.witness.to_string() << "\n";
  return kOk;
}

json bound_json(const sinv::BoundReport& r) {
  return {{"format", "bound/1"},
          {"m", r.m},
          {"witness", r.witness.to_string()},
          {"d", r.d},
          {"theorem_bound", r.theorem_bound},
          {"base_case_size", big(r.base_case_size)},
          {"base_case_leafsize", big(r.base_case_leafsize)},
          {"search_game_bound", r.search_game_bound},
          {"unbounded_depth_bound", r.unbounded_depth_bound}};
}

int cmd_bound(const Options& o) {
  const auto r = sinv::lower_bound_certificate(load_subspace(o.u), load_subspace(o.v), o.depth, exec_of(o));
  if (o.format == "json") {
    std::cout << bound_json(r).dump(2) << "\n";
  } else {
    std::cout << "m=" << r.m << " witness=" << r.witness.to_string() << "\n"
              << "depth " << r.d + 1 << " size >= 2^(d(m^(1/d)-1)) = " << r.theorem_bound << "\n"
              << "depth 2: size >= " << big(r.base_case_size) << ", leafsize >= " << big(r.base_case_leafsize) << "\n"
              << "search game rounds bound: " << r.search_game_bound << "\n"
              << "unbounded depth limit m^ln2: " << r.unbounded_depth_bound << "\n";
  }
  return kOk;
}

int cmd_trace(const Options& o) {
  const sinv::Formula f = load_formula(o.formula);
  const sinv::TraceNode tr = sinv::trace_lower_bound(f, load_subspace(o.u), load_subspace(o.v), exec_of(o));
  emit(o.out, sinv::trace_to_json(tr).dump(2) + "\n");
  if (!o.out.empty()) {
    std::cout << "levels=" << tr.height() << " m=" << tr.m << " size=" << tr.size << " bound=" << tr.claimed_bound
              << "\n";
  }
  return kOk;
}

int cmd_verify_trace(const Options& o) {
  const json doc = load_json(o.trace);
  const sinv::TraceNode tr = parse_file(o.trace, [&](const std::string&) { return sinv::trace_from_json(doc); });
  const sinv::Formula f = load_formula(o.formula);
  const sinv::Subspace u = o.u.empty() ? tr.u : load_subspace(o.u);
  const sinv::Subspace v = o.v.empty() ? tr.v : load_subspace(o.v);
  const sinv::TraceVerdict verdict = sinv::verify_trace(tr, f, u, v);
  for (const auto& msg : verdict.failures) std::cout << "FAIL " << msg << "\n";
  std::cout << (verdict.ok ? "verified" : "rejected") << ": " << verdict.nodes_checked << " nodes, size "
            << verdict.root_size << " >= " << verdict.root_bound << " "
            << (verdict.final_inequality ? "holds" : "fails") << "\n";
  return verdict.ok ? kOk : kVerifyFailed;
}

int cmd_oracle(const Options& o) {
  const sinv::SeparatorSpec spec{load_subspace(o.u), load_subspace(o.v), o.polarity};
  const sinv::OracleResult r = sinv::min_invariant_depth2_size(spec, o.invariant, exec_of(o));
  const auto base = sinv::base_case_bounds(r.m);
  if (o.format == "json") {
    const json doc{{"format", "oracle/1"},
                   {"m", r.m},
                   {"require_invariant", o.invariant},
                   {"polarity", o.polarity},
                   {"min_size", r.min_size},
                   {"size_witness_leafsize", r.size_witness_leafsize},
                   {"min_leafsize", r.min_leafsize},
                   {"lower_bound_size", big(base.size)},
                   {"lower_bound_leafsize", big(base.leafsize)},
                   {"witness", sinv::formula_document(r.witness)},
                   {"leafsize_witness", sinv::formula_document(r.leafsize_witness)}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "m=" << r.m << "\n"
              << "min size=" << r.min_size << " (lower bound " << big(base.size) << ", "
              << (r.witness_is_cnf ? "cnf" : "dnf") << ")\n"
              << "min leafsize=" << r.min_leafsize << " (lower bound " << big(base.leafsize) << ", "
              << (r.leafsize_witness_is_cnf ? "cnf" : "dnf") << ")\n";
  }
  return kOk;
}

int cmd_cycle_space(const Options& o) {
  const sinv::Graph g = load_graph(o.graph);
  const sinv::Subspace z = sinv::cycle_space(g);
  const auto ew = sinv::even_weight_sub(z);
  if (!o.out.empty()) {
    emit(o.out + ".z.txt", z.to_text());
    emit(o.out + ".z0.txt", ew.z0.to_text());
  }
  if (o.format == "json") {
    const json doc{{"format", "cycle-space/1"},
                   {"edges", g.edge_count()},
                   {"dim_z", z.dim()},
                   {"codim_z0", ew.codim},
                   {"z", sinv::subspace_to_json(z)},
                   {"z0", sinv::subspace_to_json(ew.z0)}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "# Z, dim " << z.dim() << "\n" << z.to_text() << "# Z0, codim " << ew.codim << "\n" << ew.z0.to_text();
  }
  return kOk;
}

int cmd_maxcut(const Options& o) {
  const sinv::Graph g = load_graph(o.graph);
  const std::size_t cut = sinv::max_cut(g, exec_of(o));
  const bool bip = sinv::is_bipartite(g);
  std::cout << "maxcut=" << cut << " edges=" << g.edge_count();
  if (!bip) std::cout << " m=" << g.edge_count() - cut;
  std::cout << (bip ? " bipartite" : "") << "\n";
  return kOk;
}

int cmd_random_regular(const Options& o) {
  const sinv::RegularSample s = sinv::random_regular(o.vertices, o.degree, o.seed);
  std::string text = "# rng=" + std::string(sinv::kRegularGraphRng) + " seed=" + std::to_string(s.seed) +
                     " attempts=" + std::to_string(s.attempts) + "\n" + s.graph.to_text();
  emit(o.out, text);
  return kOk;
}

int cmd_selftest(const Options& o) {
  const auto report = sinv::run_selftest(exec_of(o), [](const sinv::CriterionResult& c) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", c.pass() ? "PASS" : "FAIL", c.id, c.name.c_str(), c.seconds);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  });
  if (!o.report.empty()) emit(o.report, report.to_json().dump(2) + "\n");
  return report.all_pass() ? kOk : kVerifyFailed;
}

int cmd_subspace(const Options& o) {
  sinv::Subspace s(o.n);
  if (o.kind == "even") {
    s = sinv::even_weight_subspace(o.n);
  } else if (o.kind == "full") {
    s = sinv::Subspace::full(o.n);
  } else if (o.kind == "zero") {
    s = sinv::Subspace(o.n);
  } else if (o.kind == "dual") {
    s = sinv::dual(load_subspace(o.subspace));
  } else {
    throw UsageError("unknown subspace kind '" + o.kind + "'");
  }
  emit(o.out, s.to_text());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace-invariant bounded-depth formulas: synthesis, bounds and certificates"};
  app.set_version_flag("--version", std::string("sinv ") + sinv::kVersion +
                                        " (formats: formula/1, trace/1, selftest/1, synth-report/1, bound/1, "
                                        "oracle/1, cycle-space/1)");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--jobs", o.jobs, "Worker threads for parallel searches; results do not depend on it")
      ->check(CLI::Range(1u, 256u));

  auto fmt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* synth = app.add_subcommand("synth", "Build a P-invariant parity formula");
  synth->add_option("--depth", o.depth, "Total depth")->required()->check(CLI::Range(1, 64));
  synth->add_option("--n", o.n, "Number of variables")->required()->check(CLI::Range(1, 256));
  synth->add_option("--gate", o.gate, "Output gate")->check(CLI::IsMember({"or", "and"}));
  synth->add_option("--strategy", o.strategy, "Block sizes")->check(CLI::IsMember({"exact-dp", "closed-form"}));
  synth->add_option("--out", o.out, "Formula JSON output");
  synth->add_option("--report", o.report, "Report output (default stdout)");
  fmt(synth);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula at a point, on a subspace, or print its truth table");
  eval->add_option("--formula", o.formula)->required();
  auto* at = eval->add_option("--x", o.point, "Input bit string, coordinate 1 first");
  eval->add_option("--subspace", o.subspace, "Report constancy on a subspace")->excludes(at);

  auto* inv = app.add_subcommand("invariant", "Check U-invariance of a formula");
  inv->add_option("--formula", o.formula)->required();
  inv->add_option("--subspace", o.subspace)->required();
  inv->add_flag("--semantic", o.semantic, "Also check truth-table invariance");
  inv->add_option("--samples", o.samples, "Sample this many points instead of the full truth table");
  inv->add_option("--seed", o.seed, "Seed for sampling");

  auto* mw = app.add_subcommand("minweight", "Minimum weight over A \\ B");
  mw->add_option("--a", o.a)->required();
  mw->add_option("--b", o.b)->required();

  auto* bound = app.add_subcommand("bound", "Lower-bound certificate for (U,V)");
  bound->add_option("--u", o.u)->required();
  bound->add_option("--v", o.v)->required();
  bound->add_option("--d", o.depth, "d, for formulas of depth d+1")->check(CLI::Range(1, 1 << 20));
  fmt(bound);

  auto* trace = app.add_subcommand("trace", "Trace the lower-bound proof on a formula");
  trace->add_option("--formula", o.formula)->required();
  trace->add_option("--u", o.u)->required();
  trace->add_option("--v", o.v)->required();
  trace->add_option("--out", o.out, "Trace JSON output (default stdout)");

  auto* verify = app.add_subcommand("verify-trace", "Check every step of a trace independently");
  verify->add_option("--trace", o.trace)->required();
  verify->add_option("--formula", o.formula)->required();
  verify->add_option("--u", o.u, "Defaults to the trace root's U");
  verify->add_option("--v", o.v, "Defaults to the trace root's V");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum depth-2 separator");
  oracle->add_option("--u", o.u)->required();
  oracle->add_option("--v", o.v)->required();
  oracle->add_flag("--polarity", o.polarity, "Separator is 1 on U and 0 on V \\ U");
  oracle->add_flag("--invariant", o.invariant, "Restrict to syntactically U-invariant formulas");
  fmt(oracle);

  auto* cs = app.add_subcommand("cycle-space", "Cycle space Z and its even-weight part Z0");
  cs->add_option("--graph", o.graph)->required();
  cs->add_option("--out", o.out, "Write <out>.z.txt and <out>.z0.txt");
  fmt(cs);

  auto* mc = app.add_subcommand("maxcut", "Exact max cut and m = edges - maxcut");
  mc->add_option("--graph", o.graph)->required();

  auto* rr = app.add_subcommand("random-regular", "Seeded random regular graph");
  rr->add_option("--v", o.vertices, "Vertices")->required();
  rr->add_option("--degree", o.degree, "Degree");
  rr->add_option("--seed", o.seed, "Seed")->required();
  rr->add_option("--out", o.out, "Graph text output (default stdout)");

  auto* st = app.add_subcommand("selftest", "Run every acceptance criterion");
  st->add_option("--report", o.report, "Write the JSON report here");

  auto* sub = app.add_subcommand("subspace", "Write a standard subspace in text format");
  sub->add_option("--kind", o.kind, "even, full, zero or dual")->check(CLI::IsMember({"even", "full", "zero", "dual"}));
  sub->add_option("--n", o.n, "Ambient dimension")->check(CLI::Range(1, 256));
  sub->add_option("--of", o.subspace, "Input subspace for --kind dual");
  sub->add_option("--out", o.out, "Output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "synth") return cmd_synth(o);
    if (name == "eval") return cmd_eval(o);
    if (name == "invariant") return cmd_invariant(o);
    if (name == "minweight") return cmd_minweight(o);
    if (name == "bound") return cmd_bound(o);
    if (name == "trace") return cmd_trace(o);
    if (name == "verify-trace") return cmd_verify_trace(o);
    if (name == "oracle") return cmd_oracle(o);
    if (name == "cycle-space") return cmd_cycle_space(o);
    if (name == "maxcut") return cmd_maxcut(o);
    if (name == "random-regular") return cmd_random_regular(o);
    if (name == "selftest") return cmd_selftest(o);
    if (name == "subspace") return cmd_subspace(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const sinv::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const sinv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
