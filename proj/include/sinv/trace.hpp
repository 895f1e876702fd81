#pragma once

// Executable lower-bound induction. trace_lower_bound() walks a concrete
// invariant formula down the induction and records every choice it makes;
// verify_trace() re-checks such a record against the formula using only the
// naive set routines in reference.hpp.

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "sinv/bounds.hpp"
#include "sinv/formula.hpp"
#include "sinv/lattice.hpp"
#include "sinv/min_weight.hpp"
#include "sinv/reference.hpp"
#include "sinv/semantics.hpp"

namespace sinv {

using json = nlohmann::json;

inline constexpr const char* kTraceFormat = "trace/1";

/// Largest dim(V) for which the trace evaluates F on every point of V.
inline constexpr std::size_t kMaxTraceDim = 20;

enum class TraceStep { BaseCase, Reduction, OrbitStep };

inline const char* step_name(TraceStep s) {
  switch (s) {
    case TraceStep::BaseCase:
      return "base";
    case TraceStep::Reduction:
      return "reduction";
    case TraceStep::OrbitStep:
      return "orbit";
  }
  return "?";
}

struct TraceNode {
  TraceStep step = TraceStep::BaseCase;
  Subspace u;  // pair in force
  Subspace v;
  std::size_t depth = 0;
  Gate gate = Gate::Or;
  std::size_t m = 0;
  BitVec witness;
  double claimed_bound = 0;
  std::uint64_t size = 0;
  std::uint64_t leafsize = 0;

  // BaseCase
  bool value_on_u = false;
  std::size_t clauses = 0;

  // Reduction
  BitVec coset_rep;
  Subspace w;

  // OrbitStep
  std::size_t orbit_count = 0;
  std::size_t child_index = 0;  // G among the root's canonical children
  Subspace s;
  Subspace t;
  std::size_t a = 0;
  int case_no = 0;
  BitVec w_vec;
  BitVec shift;  // the u with child formula G^u

  std::unique_ptr<TraceNode> child;

  TraceNode() = default;
  TraceNode(TraceNode&&) = default;
  TraceNode& operator=(TraceNode&&) = default;

  std::size_t height() const { return child ? 1 + child->height() : 1; }
};

namespace detail {

inline void require_trace_dim(const Subspace& v) {
  if (v.dim() > kMaxTraceDim) {
    throw CapExceeded("trace needs exhaustive evaluation over V of dimension " + std::to_string(v.dim()) + " (cap " +
                      std::to_string(kMaxTraceDim) + ")");
  }
}

inline bool lex_first_into(std::optional<BitVec>& best, const BitVec& x) {
  if (!best || lex_less(x, *best)) {
    best = x;
    return true;
  }
  return false;
}

inline TraceNode trace_node(const Formula& f, const Subspace& u, const Subspace& v, Exec exec) {
  require_trace_dim(v);
  TraceNode node;
  node.u = u;
  node.v = v;
  node.depth = f.depth();
  node.gate = f.gate_type();
  node.size = f.size();
  node.leafsize = f.leafsize();
  const MinWeight mw = min_weight_in_difference(dual(u), dual(v), exec);
  node.m = mw.weight;
  node.witness = mw.witness;
  node.claimed_bound = theorem_bound(static_cast<double>(node.depth - 1), static_cast<double>(node.m));

  const std::vector<BitVec> v_elems = v.elements();

  if (!is_codim1_pair(u, v)) {
    node.step = TraceStep::Reduction;
    std::vector<BitVec> reps;
    std::unordered_set<BitVec> seen;
    for (const auto& x : v_elems) {
      BitVec r = u.reduce(x);
      if (!r.is_zero() && seen.insert(r).second) reps.push_back(r);
    }
    std::sort(reps.begin(), reps.end(), [](const BitVec& a, const BitVec& b) { return lex_less(a, b); });
    for (const auto& r : reps) {
      Subspace w = sum(u, Subspace::span({r}, u.ambient_dim()));
      if (evaluate_on(f, w) != Constancy::NonConstant) continue;
      node.coset_rep = r;
      node.w = w;
      node.child = std::make_unique<TraceNode>(trace_node(f, u, w, exec));
      return node;
    }
    throw Error("trace: no codimension-1 overspace with F non-constant (F cannot be U-invariant)");
  }

  node.value_on_u = evaluate(f, BitVec(u.ambient_dim()));
  if (node.depth == 2) {
    node.step = TraceStep::BaseCase;
    node.clauses = f.children().size();
    if (BigInt(node.size) < pow2(node.m - 1)) {
      throw Error("trace: base case violates size >= 2^(m-1); the formula does not separate U from V \\ U");
    }
    return node;
  }

  node.step = TraceStep::OrbitStep;
  const bool z = f.gate_type() == Gate::Or;  // value that decides the root gate
  node.case_no = node.value_on_u == z ? 2 : 1;

  // U-orbits of the root's children, in order of first appearance.
  const auto& kids = f.children();
  std::unordered_set<Formula> assigned;
  std::optional<OrbitDecomposition> chosen;
  std::uint64_t chosen_hash = 0;
  for (const auto& c : kids) {
    if (assigned.count(c)) continue;
    OrbitDecomposition od = orbit_stabilizer(c, u);
    for (const auto& h : od.orbit) assigned.insert(h);
    ++node.orbit_count;
    const Formula fi = Formula::gate(f.gate_type(), od.orbit);
    bool agrees = true;
    for (const auto& x : v_elems) {
      if (evaluate(fi, x) != evaluate(f, x)) {
        agrees = false;
        break;
      }
    }
    if (agrees && (!chosen || fi.hash() < chosen_hash)) {
      chosen_hash = fi.hash();
      chosen = std::move(od);
    }
  }
  if (!chosen) throw Error("trace: no orbit agrees with F on V");

  const Formula g = chosen->orbit.front();
  const OrbitDecomposition og = orbit_stabilizer(g, u);
  node.child_index = static_cast<std::size_t>(std::lower_bound(kids.begin(), kids.end(), g) - kids.begin());
  node.s = og.stabilizer;
  node.a = og.a;
  node.t = descend_pair(node.s, u, v, exec);

  std::optional<BitVec> w;
  for (const auto& x : node.t.elements())
    if (!u.contains(x)) lex_first_into(w, x);
  if (!w) throw Error("trace: T \\ U is empty");
  node.w_vec = *w;

  std::optional<BitVec> shift;
  if (node.case_no == 1) {
    std::optional<BitVec> pick;
    for (const auto& x : v_elems)
      if (!u.contains(x) && evaluate(g, x) == z) lex_first_into(pick, x);
    if (!pick) throw Error("trace: case 1 found no v in V \\ U with G(v) = z");
    shift = *pick ^ *w;
  } else {
    for (const auto& x : u.elements())
      if (evaluate(g, x) == z) lex_first_into(shift, x);
    if (!shift) throw Error("trace: case 2 found no u in U with G(u) = z");
  }
  node.shift = *shift;
  node.child = std::make_unique<TraceNode>(trace_node(act(g, node.shift), node.s, node.t, exec));
  return node;
}

}  // namespace detail

/// Runs the induction on F for the pair U ⊂ V. F must be leveled, syntactically
/// U-invariant, of depth >= 2 and non-constant on V.
inline TraceNode trace_lower_bound(const Formula& f, const Subspace& u, const Subspace& v, Exec exec = {}) {
  require_same_ambient(u, v);
  if (f.ambient_dim() != u.ambient_dim()) throw DimensionMismatch("trace: formula and subspace dimensions differ");
  if (!u.is_subspace_of(v) || u == v) throw PreconditionError("trace: U must be a proper subspace of V");
  if (f.kind() != NodeKind::Gate || f.depth() < 2) throw PreconditionError("trace: formula depth must be at least 2");
  if (!f.leveled()) throw PreconditionError("trace: formula must be leveled (all leaves at the same depth)");
  if (!is_invariant(f, u)) throw PreconditionError("trace: formula is not syntactically U-invariant");
  detail::require_trace_dim(v);
  if (evaluate_on(f, v) != Constancy::NonConstant) throw PreconditionError("trace: formula is constant on V");
  return detail::trace_node(f, u, v, exec);
}

// ---- serialization --------------------------------------------------------

inline json subspace_to_json(const Subspace& s) {
  json rows = json::array();
  for (const auto& r : s.basis()) rows.push_back(r.to_string());
  return {{"n", s.ambient_dim()}, {"basis", rows}};
}

inline Subspace subspace_from_json(const json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<BitVec> rows;
    for (const auto& r : j.at("basis")) {
      BitVec b = BitVec::from_string(r.get<std::string>());
      if (b.size() != n) throw ParseError("basis row length differs from n", 0);
      rows.push_back(b);
    }
    return Subspace::span(rows, n);
  } catch (const json::exception& e) {
    throw ParseError(std::string("subspace: ") + e.what(), 0);
  }
}

inline json trace_node_to_json(const TraceNode& nd) {
  json j{{"step", step_name(nd.step)},
         {"depth", nd.depth},
         {"gate", gate_name(nd.gate)},
         {"u", subspace_to_json(nd.u)},
         {"v", subspace_to_json(nd.v)},
         {"m", nd.m},
         {"witness", nd.witness.to_string()},
         {"claimed_bound", nd.claimed_bound},
         {"size", nd.size},
         {"leafsize", nd.leafsize}};
  switch (nd.step) {
    case TraceStep::BaseCase:
      j["value_on_u"] = nd.value_on_u ? 1 : 0;
      j["clauses"] = nd.clauses;
      break;
    case TraceStep::Reduction:
      j["coset_rep"] = nd.coset_rep.to_string();
      j["w"] = subspace_to_json(nd.w);
      break;
    case TraceStep::OrbitStep:
      j["value_on_u"] = nd.value_on_u ? 1 : 0;
      j["case"] = nd.case_no;
      j["orbit_count"] = nd.orbit_count;
      j["child_index"] = nd.child_index;
      j["s"] = subspace_to_json(nd.s);
      j["t"] = subspace_to_json(nd.t);
      j["a"] = nd.a;
      j["w_vec"] = nd.w_vec.to_string();
      j["shift"] = nd.shift.to_string();
      break;
  }
  if (nd.child) j["child"] = trace_node_to_json(*nd.child);
  return j;
}

inline json trace_to_json(const TraceNode& root) {
  return {{"format", kTraceFormat}, {"levels", root.height()}, {"root", trace_node_to_json(root)}};
}

inline TraceNode trace_node_from_json(const json& j) {
  TraceNode nd;
  try {
    const std::string step = j.at("step").get<std::string>();
    if (step == "base") {
      nd.step = TraceStep::BaseCase;
    } else if (step == "reduction") {
      nd.step = TraceStep::Reduction;
    } else if (step == "orbit") {
      nd.step = TraceStep::OrbitStep;
    } else {
      throw ParseError("unknown trace step '" + step + "'", 0);
    }
    nd.depth = j.at("depth").get<std::size_t>();
    const std::string gate = j.at("gate").get<std::string>();
    if (gate != "and" && gate != "or") throw ParseError("unknown gate '" + gate + "'", 0);
    nd.gate = gate == "and" ? Gate::And : Gate::Or;
    nd.u = subspace_from_json(j.at("u"));
    nd.v = subspace_from_json(j.at("v"));
    nd.m = j.at("m").get<std::size_t>();
    nd.witness = BitVec::from_string(j.at("witness").get<std::string>());
    nd.claimed_bound = j.at("claimed_bound").get<double>();
    nd.size = j.at("size").get<std::uint64_t>();
    nd.leafsize = j.at("leafsize").get<std::uint64_t>();
    switch (nd.step) {
      case TraceStep::BaseCase:
        nd.value_on_u = j.at("value_on_u").get<int>() != 0;
        nd.clauses = j.at("clauses").get<std::size_t>();
        break;
      case TraceStep::Reduction:
        nd.coset_rep = BitVec::from_string(j.at("coset_rep").get<std::string>());
        nd.w = subspace_from_json(j.at("w"));
        break;
      case TraceStep::OrbitStep:
        nd.value_on_u = j.at("value_on_u").get<int>() != 0;
        nd.case_no = j.at("case").get<int>();
        nd.orbit_count = j.at("orbit_count").get<std::size_t>();
        nd.child_index = j.at("child_index").get<std::size_t>();
        nd.s = subspace_from_json(j.at("s"));
        nd.t = subspace_from_json(j.at("t"));
        nd.a = j.at("a").get<std::size_t>();
        nd.w_vec = BitVec::from_string(j.at("w_vec").get<std::string>());
        nd.shift = BitVec::from_string(j.at("shift").get<std::string>());
        break;
    }
    if (j.contains("child")) nd.child = std::make_unique<TraceNode>(trace_node_from_json(j.at("child")));
  } catch (const json::exception& e) {
    throw ParseError(std::string("trace: ") + e.what(), 0);
  }
  return nd;
}

inline TraceNode trace_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("format") || doc["format"] != kTraceFormat) {
    throw ParseError(std::string("trace: expected \"format\": \"") + kTraceFormat + "\"", 0);
  }
  if (!doc.contains("root")) throw ParseError("trace: missing root", 0);
  return trace_node_from_json(doc["root"]);
}

// ---- verification ---------------------------------------------------------

struct TraceVerdict {
  bool ok = true;
  std::size_t nodes_checked = 0;
  std::vector<std::string> failures;
  /// size >= claimed bound at the root, checked independently of the chain.
  bool final_inequality = false;
  std::uint64_t root_size = 0;
  double root_bound = 0;

  void fail(const std::string& where, const std::string& what) {
    ok = false;
    failures.push_back(where + ": " + what);
  }
};

namespace detail {

struct NaiveCounts {
  std::uint64_t size = 0;
  std::uint64_t leafsize = 0;
  std::size_t depth = 0;
};

// Counts by walking the tree, ignoring the cached node fields.
inline NaiveCounts naive_counts(const Formula& f) {
  if (f.kind() != NodeKind::Gate) return {0, 1, 0};
  NaiveCounts out;
  bool all_leaves = true;
  for (const auto& c : f.children()) {
    const NaiveCounts k = naive_counts(c);
    out.size += k.size;
    out.leafsize += k.leafsize;
    out.depth = std::max(out.depth, k.depth);
    all_leaves = all_leaves && c.kind() != NodeKind::Gate;
  }
  out.depth += 1;
  if (all_leaves) out.size += 1;
  return out;
}

inline std::vector<BitVec> sorted_elements(const ref::VecSet& s) {
  std::vector<BitVec> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](const BitVec& a, const BitVec& b) { return lex_less(a, b); });
  return out;
}

/// Constant value of f on `pts`, or nullopt when it takes both values.
inline std::optional<bool> constant_value(const Formula& f, const ref::VecSet& pts) {
  std::optional<bool> val;
  for (const auto& x : pts) {
    const bool y = evaluate(f, x);
    if (!val) {
      val = y;
    } else if (*val != y) {
      return std::nullopt;
    }
  }
  return val;
}

inline ref::VecSet set_minus(const ref::VecSet& a, const ref::VecSet& b) {
  ref::VecSet out;
  for (const auto& x : a)
    if (!b.count(x)) out.insert(x);
  return out;
}

// 2^(d(x^(1/d) - 1)) for any real x > 0.
inline double bound_real(double d, double x) { return std::exp2(d * std::expm1(std::log(x) / d)); }

inline bool same_set(const Subspace& a, const ref::VecSet& b) { return ref::elements(a) == b; }

inline void verify_node(const TraceNode& nd, const Formula& f, const Subspace& u_in, const Subspace& v_in,
                        const std::string& where, TraceVerdict& out) {
  ++out.nodes_checked;
  auto fail = [&](const std::string& what) { out.fail(where, what); };

  if (!(nd.u == u_in) || !(nd.v == v_in)) fail("recorded pair differs from the pair in force");
  const std::size_t n = f.ambient_dim();
  if (u_in.ambient_dim() != n || v_in.ambient_dim() != n) {
    fail("dimension mismatch");
    return;
  }
  const ref::VecSet eu = ref::elements(u_in);
  const ref::VecSet ev = ref::elements(v_in);
  if (!ref::subset(eu, ev) || eu.size() == ev.size()) {
    fail("U is not a proper subspace of V");
    return;
  }

  // Syntactic invariance under every element of U.
  for (const auto& x : eu) {
    if (!(act(f, x) == f)) {
      fail("formula is not U-invariant (fails at " + x.to_string() + ")");
      return;
    }
  }
  if (constant_value(f, ev)) fail("formula is constant on V");

  const NaiveCounts counts = naive_counts(f);
  if (nd.size != counts.size) fail("size " + std::to_string(nd.size) + " != recount " + std::to_string(counts.size));
  if (nd.leafsize != counts.leafsize) fail("leafsize differs from recount");
  if (nd.depth != counts.depth) fail("depth differs from recount");
  if (f.kind() == NodeKind::Gate && nd.gate != f.gate_type()) fail("root gate differs");
  if (nd.depth < 2) {
    fail("depth below 2");
    return;
  }

  const auto m = ref::min_weight_perp_difference(u_in, v_in);
  if (!m || *m != nd.m) fail("m differs from full-space rescan");
  if (nd.witness.size() != n || nd.witness.weight() != nd.m) {
    fail("witness has the wrong weight");
  } else {
    bool perp_u = true, perp_v = true;
    for (const auto& x : eu) perp_u = perp_u && !dot(x, nd.witness);
    for (const auto& x : ev) perp_v = perp_v && !dot(x, nd.witness);
    if (!perp_u || perp_v) fail("witness is not in U^perp \\ V^perp");
  }
  const double d = static_cast<double>(nd.depth - 1);
  const double want_bound = bound_real(d, static_cast<double>(nd.m));
  if (std::abs(nd.claimed_bound - want_bound) > kRealTol * want_bound) fail("claimed bound is not 2^(d(m^(1/d)-1))");
  if (static_cast<double>(counts.size) < nd.claimed_bound * (1 - kRealTol)) fail("size below the claimed bound");

  const bool codim1 = ref::is_codim1(eu, ev);
  switch (nd.step) {
    case TraceStep::Reduction: {
      if (codim1) fail("reduction applied to a codimension-1 pair");
      if (nd.coset_rep.size() != n || eu.count(nd.coset_rep) || !ev.count(nd.coset_rep)) {
        fail("coset representative is not in V \\ U");
        return;
      }
      ref::VecSet ew = ref::sumset(eu, ref::closure({nd.coset_rep}, n));
      if (!same_set(nd.w, ew)) fail("W != U + span{rep}");
      if (!ref::is_codim1(eu, ew) || !ref::subset(ew, ev)) fail("W is not a codimension-1 overspace of U inside V");
      if (constant_value(f, ew)) fail("formula is constant on W");
      if (!nd.child) {
        fail("missing child");
        return;
      }
      if (nd.child->claimed_bound < nd.claimed_bound * (1 - kRealTol)) fail("child bound weaker than parent");
      verify_node(*nd.child, f, u_in, nd.w, where + ".child", out);
      return;
    }
    case TraceStep::BaseCase: {
      if (!codim1) fail("base case on a pair that is not codimension 1");
      if (nd.depth != 2) fail("base case above depth 2");
      const auto on_u = constant_value(f, eu);
      const auto off_u = constant_value(f, set_minus(ev, eu));
      if (!on_u || !off_u || *on_u == *off_u) {
        fail("formula does not separate U from V \\ U");
      } else if (*on_u != nd.value_on_u) {
        fail("recorded value on U is wrong");
      }
      if (nd.clauses != f.children().size()) fail("clause count differs");
      if (BigInt(counts.size) < pow2(nd.m - 1)) fail("size < 2^(m-1)");
      if (nd.child) fail("base case has a child");
      return;
    }
    case TraceStep::OrbitStep:
      break;
  }

  if (!codim1) fail("orbit step on a pair that is not codimension 1");
  if (nd.depth < 3) fail("orbit step below depth 3");
  if (nd.child_index >= f.children().size()) {
    fail("child index out of range");
    return;
  }
  const Formula g = f.children()[nd.child_index];
  const bool z = f.gate_type() == Gate::Or;

  // Orbit of G and its stabilizer, by running over all of U.
  std::unordered_set<Formula> orbit;
  ref::VecSet stab;
  for (const auto& x : eu) {
    const Formula h = act(g, x);
    orbit.insert(h);
    if (h == g) stab.insert(x);
  }
  std::unordered_set<Formula> kids(f.children().begin(), f.children().end());
  for (const auto& h : orbit)
    if (!kids.count(h)) fail("orbit element missing from the root's children");
  if (!same_set(nd.s, stab)) fail("S differs from the brute-force stabilizer");
  const std::size_t a = ref::log2_size(eu) - ref::log2_size(stab) + 1;
  if (nd.a != a) fail("a != dim U - dim S + 1");
  if (orbit.size() != (std::size_t{1} << (a - 1))) fail("orbit size != 2^(a-1)");

  const Formula fi = Formula::gate(f.gate_type(), std::vector<Formula>(orbit.begin(), orbit.end()));
  for (const auto& x : ev) {
    if (evaluate(fi, x) != evaluate(f, x)) {
      fail("chosen orbit does not agree with F on V");
      break;
    }
  }
  const NaiveCounts gc = naive_counts(g);
  const NaiveCounts fic = naive_counts(fi);
  if (BigInt(fic.size) != BigInt(gc.size) * orbit.size()) fail("size(F_i) != 2^(a-1) size(G)");
  if (counts.size < fic.size) fail("size(F) < size(F_i)");

  const ref::VecSet es = ref::elements(nd.s);
  const ref::VecSet et = ref::elements(nd.t);
  if (!ref::is_quad(es, et, eu, ev)) fail("((S,T),(U,V)) is not a quadruple");

  const auto on_u = constant_value(f, eu);
  const auto off_u = constant_value(f, set_minus(ev, eu));
  if (!on_u || !off_u || *on_u == *off_u) {
    fail("formula is not constant on U and on V \\ U");
    return;
  }
  if (*on_u != nd.value_on_u) fail("recorded value on U is wrong");
  const int want_case = *on_u == z ? 2 : 1;
  if (nd.case_no != want_case) fail("case number does not match F(U)");

  if (!et.count(nd.w_vec) || eu.count(nd.w_vec)) fail("w is not in T \\ U");
  if (!eu.count(nd.shift)) {
    fail("shift is not in U");
    return;
  }
  if (want_case == 1) {
    const BitVec vv = nd.shift ^ nd.w_vec;
    if (!ev.count(vv) || eu.count(vv) || evaluate(g, vv) != z) fail("case 1: G(u + w) != z");
  } else if (evaluate(g, nd.shift) != z) {
    fail("case 2: G(u) != z");
  }

  // G^u on T: constant c on S and 1-c on T \ S.
  const Formula child_f = act(g, nd.shift);
  const bool c = want_case == 1 ? !z : z;
  const auto on_s = constant_value(child_f, es);
  const auto off_s = constant_value(child_f, set_minus(et, es));
  if (!on_s || !off_s || *on_s != c || *off_s == c) fail("G^u does not have the required pattern on T");

  // m' a >= m, the weight inequality across the descent.
  const auto m_child = ref::min_weight_perp_difference(nd.s, nd.t);
  if (!m_child || !m) {
    fail("empty difference in a codimension-1 pair");
  } else if (*m_child * a < *m) {
    fail("m_child * a < m");
  }

  // Chain of size estimates, one level down.
  if (m) {
    const double mm = static_cast<double>(*m);
    const double ma = mm / static_cast<double>(a);
    const double lhs = static_cast<double>(a) + (d - 1) * std::pow(ma, 1.0 / (d - 1));
    const double rhs = d * std::pow(mm, 1.0 / d);
    if (lhs < rhs * (1 - kRealTol)) fail("a + (d-1)(m/a)^(1/(d-1)) < d m^(1/d)");
    const double via_child = std::exp2(static_cast<double>(a - 1)) * bound_real(d - 1, ma);
    if (via_child < want_bound * (1 - kRealTol)) fail("2^(a-1) 2^((d-1)((m/a)^(1/(d-1))-1)) below the claimed bound");
  }

  if (!nd.child) {
    fail("missing child");
    return;
  }
  if (nd.child->depth + 1 != nd.depth) fail("child depth is not depth - 1");
  verify_node(*nd.child, child_f, nd.s, nd.t, where + ".child", out);
  if (static_cast<double>(counts.size) <
      std::exp2(static_cast<double>(a - 1)) * static_cast<double>(naive_counts(child_f).size) * (1 - kRealTol)) {
    fail("size(F) < 2^(a-1) size(G)");
  }
}

}  // namespace detail

/// Re-checks every node of `root` against F, U and V.
inline TraceVerdict verify_trace(const TraceNode& root, const Formula& f, const Subspace& u, const Subspace& v) {
  TraceVerdict out;
  if (v.dim() > kMaxTraceDim || f.ambient_dim() > ref::kMaxRefDim) {
    out.fail("root", "verification exceeds the exhaustive cap");
    return out;
  }
  try {
    detail::verify_node(root, f, u, v, "root", out);
  } catch (const Error& e) {
    out.fail("root", e.what());
  }
  out.root_size = detail::naive_counts(f).size;
  out.root_bound = root.claimed_bound;
  out.final_inequality = static_cast<double>(out.root_size) >= root.claimed_bound * (1 - kRealTol);
  if (!out.final_inequality) out.fail("root", "size(F) < 2^(d(m^(1/d)-1))");
  return out;
}

}  // namespace sinv
