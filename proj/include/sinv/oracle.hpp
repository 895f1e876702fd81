#pragma once

// Exhaustive minimum depth-2 separators for tiny n. Every candidate clause is
// a subcube term (positions, pattern); a separator is a set of terms whose
// union covers one side of the pair and misses the other.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sinv/exec.hpp"
#include "sinv/formula.hpp"
#include "sinv/lattice.hpp"
#include "sinv/min_weight.hpp"
#include "sinv/semantics.hpp"

namespace sinv {

inline constexpr std::size_t kMaxOracleDim = 4;

/// Target behaviour F(U) = b, F(V \ U) = 1 - b.
struct SeparatorSpec {
  Subspace u;
  Subspace v;
  bool polarity = false;
};

inline void check_spec(const SeparatorSpec& spec) {
  require_same_ambient(spec.u, spec.v);
  if (!is_codim1_pair(spec.u, spec.v)) throw PreconditionError("separator spec: (U,V) must be a codimension-1 pair");
}

/// Exhaustive check of both halves of the spec.
inline bool verify_separator(const Formula& f, const SeparatorSpec& spec) {
  check_spec(spec);
  if (f.ambient_dim() != spec.u.ambient_dim()) throw DimensionMismatch("verify_separator: dimensions differ");
  if (spec.v.dim() > kMaxSemanticDim) throw CapExceeded("verify_separator: V too large to enumerate");
  for (const auto& x : spec.v.elements()) {
    const bool want = spec.u.contains(x) ? spec.polarity : !spec.polarity;
    if (evaluate(f, x) != want) return false;
  }
  return true;
}

/// A subcube {x : x_i = pattern_i for i in positions}.
struct Term {
  std::uint32_t positions = 0;
  std::uint32_t pattern = 0;

  std::size_t width() const { return static_cast<std::size_t>(std::popcount(positions)); }
  bool contains(std::uint64_t x) const { return ((x ^ pattern) & positions) == 0; }
  Term shifted(std::uint64_t u) const { return {positions, static_cast<std::uint32_t>((pattern ^ u) & positions)}; }
  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term& a, const Term& b) {
    if (a.width() != b.width()) return a.width() <=> b.width();
    if (a.positions != b.positions) return a.positions <=> b.positions;
    return a.pattern <=> b.pattern;
  }
};

/// All 3^n - 1 nonempty terms in (width, positions, pattern) order.
inline std::vector<Term> all_terms(std::size_t n) {
  std::vector<Term> out;
  for (std::uint32_t pos = 1; pos < (1u << n); ++pos) {
    // Enumerate the patterns inside pos as submasks.
    std::uint32_t p = pos;
    for (;;) {
      out.push_back({pos, p});
      if (p == 0) break;
      p = (p - 1) & pos;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct OracleResult {
  std::size_t m = 0;
  /// Fewest depth-1 subformulas (clauses) of any separator; ties by literal count.
  std::uint64_t min_size = 0;
  std::uint64_t size_witness_leafsize = 0;
  /// Fewest leaves of any separator, searched separately.
  std::uint64_t min_leafsize = 0;
  Formula witness;
  Formula leafsize_witness;
  bool witness_is_cnf = false;
  bool leafsize_witness_is_cnf = false;
};

namespace detail {

using Cost = std::pair<std::uint64_t, std::uint64_t>;
inline constexpr Cost kNoCost{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max()};

inline Cost add(Cost a, Cost b) { return {a.first + b.first, a.second + b.second}; }

struct CoverItem {
  std::uint32_t cover = 0;  // bits over the target points
  std::uint64_t clauses = 0;
  std::uint64_t literals = 0;
  std::vector<Term> terms;
};

struct CoverSolution {
  Cost cost = kNoCost;
  std::vector<std::size_t> picks;
};

// Exact minimum cover of `need` by the items, by DP over uncovered masks.
// `leaf_first` orders costs by literal count before clause count.
class CoverSolver {
 public:
  CoverSolver(const std::vector<CoverItem>& items, bool leaf_first)
      : items_(items), leaf_first_(leaf_first) {}

  Cost item_cost(const CoverItem& it) const {
    return leaf_first_ ? Cost{it.literals, it.clauses} : Cost{it.clauses, it.literals};
  }

  Cost solve(std::uint32_t need) {
    if (need == 0) return {0, 0};
    if (auto it = memo_.find(need); it != memo_.end()) return it->second.first;
    const std::uint32_t low = need & (~need + 1);
    Cost best = kNoCost;
    std::size_t pick = items_.size();
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (!(items_[i].cover & low)) continue;
      const Cost rest = solve(need & ~items_[i].cover);
      if (rest == kNoCost) continue;
      const Cost c = add(item_cost(items_[i]), rest);
      if (c < best) {
        best = c;
        pick = i;
      }
    }
    memo_.emplace(need, std::make_pair(best, pick));
    return best;
  }

  std::vector<std::size_t> picks(std::uint32_t need) {
    std::vector<std::size_t> out;
    while (need) {
      solve(need);
      const std::size_t i = memo_.at(need).second;
      out.push_back(i);
      need &= ~items_[i].cover;
    }
    return out;
  }

 private:
  const std::vector<CoverItem>& items_;
  bool leaf_first_;
  std::unordered_map<std::uint32_t, std::pair<Cost, std::size_t>> memo_;
};

// The first choice (items covering the lowest target point) is split across
// workers; each branch is solved independently and the best branch wins,
// ties to the lower branch index.
inline CoverSolution solve_cover(const std::vector<CoverItem>& items, std::uint32_t target, bool leaf_first,
                                 Exec exec) {
  CoverSolution out;
  if (target == 0) {
    out.cost = {0, 0};
    return out;
  }
  const std::uint32_t low = target & (~target + 1);
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i].cover & low) first.push_back(i);
  auto partials = run_chunks(first.size(), exec, [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<CoverSolution> sols;
    CoverSolver solver(items, leaf_first);
    for (std::uint64_t b = lo; b < hi; ++b) {
      const CoverItem& it = items[first[b]];
      CoverSolution s;
      const std::uint32_t rest = target & ~it.cover;
      const Cost r = solver.solve(rest);
      if (r != kNoCost) {
        s.cost = add(solver.item_cost(it), r);
        s.picks = solver.picks(rest);
        s.picks.insert(s.picks.begin(), first[b]);
      }
      sols.push_back(std::move(s));
    }
    return sols;
  });
  for (auto& chunk : partials)
    for (auto& s : chunk)
      if (s.cost < out.cost) out = std::move(s);
  return out;
}

inline Formula term_formula(const Term& t, std::size_t n, bool as_clause) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < n; ++i) {
    if (!((t.positions >> i) & 1u)) continue;
    const bool one = (t.pattern >> i) & 1u;
    // Term: x_i when pattern bit is 1. Clause (negated term): the opposite literal.
    lits.push_back(Formula::literal(n, i, as_clause ? one : !one));
  }
  return Formula::gate(as_clause ? Gate::Or : Gate::And, std::move(lits));
}

// Items for a DNF equal to 1 exactly on `target` among V's points.
inline std::vector<CoverItem> cover_items(std::size_t n, const std::vector<std::uint64_t>& points,
                                          const std::vector<bool>& is_target, const Subspace& u,
                                          bool require_invariant) {
  std::vector<std::uint64_t> shifts{0};
  if (require_invariant) {
    shifts.clear();
    for (const auto& x : u.elements()) shifts.push_back(x.word(0));
  }
  std::vector<CoverItem> items;
  std::vector<Term> done;
  for (const Term& t : all_terms(n)) {
    if (std::find(done.begin(), done.end(), t) != done.end()) continue;
    std::vector<Term> orbit;
    for (auto s : shifts) {
      const Term ts = t.shifted(s);
      if (std::find(orbit.begin(), orbit.end(), ts) == orbit.end()) orbit.push_back(ts);
    }
    std::sort(orbit.begin(), orbit.end());
    done.insert(done.end(), orbit.begin(), orbit.end());
    CoverItem it;
    bool ok = true;
    std::size_t tb = 0;  // bit index among target points
    for (std::size_t k = 0; k < points.size() && ok; ++k) {
      bool hit = false;
      for (const auto& o : orbit) hit = hit || o.contains(points[k]);
      if (is_target[k]) {
        if (hit) it.cover |= 1u << tb;
        ++tb;
      } else if (hit) {
        ok = false;
      }
    }
    if (!ok) continue;
    if (it.cover == 0) continue;
    it.clauses = orbit.size();
    it.literals = orbit.size() * t.width();
    it.terms = std::move(orbit);
    items.push_back(std::move(it));
  }
  return items;
}

}  // namespace detail

/// Minimum depth-2 separators for the spec: fewest clauses (then fewest
/// literals), and separately fewest literals. DNFs and CNFs are both
/// searched; with require_invariant the clause set must be closed under U.
inline OracleResult min_invariant_depth2_size(const SeparatorSpec& spec, bool require_invariant, Exec exec = {}) {
  check_spec(spec);
  const std::size_t n = spec.u.ambient_dim();
  if (n > kMaxOracleDim) {
    throw CapExceeded("oracle search over n=" + std::to_string(n) + " (cap " + std::to_string(kMaxOracleDim) + ")");
  }
  std::vector<std::uint64_t> points;
  std::vector<bool> in_u;
  for (const auto& x : spec.v.elements()) {
    points.push_back(x.word(0));
    in_u.push_back(spec.u.contains(x));
  }

  OracleResult out;
  out.m = min_weight_in_difference(dual(spec.u), dual(spec.v)).weight;

  struct Route {
    bool cnf;
    std::vector<detail::CoverItem> items;
    std::uint32_t target;
  };
  std::vector<Route> routes;
  for (bool cnf : {false, true}) {
    // A DNF is 1 on its cover; a CNF is the negation of the DNF of its negated
    // clauses, so it is 0 on that cover.
    const bool cover_value = cnf ? false : true;
    std::vector<bool> is_target(points.size());
    std::size_t count = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const bool want = in_u[k] ? spec.polarity : !spec.polarity;
      is_target[k] = want == cover_value;
      count += is_target[k];
    }
    Route r{cnf, detail::cover_items(n, points, is_target, spec.u, require_invariant),
            (1u << count) - 1};
    routes.push_back(std::move(r));
  }

  auto build = [&](const Route& r, const std::vector<std::size_t>& picks) {
    std::vector<Formula> clauses;
    for (auto i : picks)
      for (const auto& t : r.items[i].terms) clauses.push_back(detail::term_formula(t, n, r.cnf));
    return Formula::gate(r.cnf ? Gate::And : Gate::Or, std::move(clauses));
  };

  for (bool leaf_first : {false, true}) {
    std::optional<std::pair<detail::Cost, Formula>> best;
    bool best_cnf = false;
    for (const auto& r : routes) {
      const detail::CoverSolution s = detail::solve_cover(r.items, r.target, leaf_first, exec);
      if (s.cost == detail::kNoCost) continue;
      if (s.picks.empty()) continue;  // empty cover: only possible with an empty target
      if (!best || s.cost < best->first) {
        best.emplace(s.cost, build(r, s.picks));
        best_cnf = r.cnf;
      }
    }
    if (!best) throw Error("oracle: no depth-2 separator found (internal error for a codimension-1 pair)");
    const Formula& f = best->second;
    if (!leaf_first) {
      out.min_size = f.size();
      out.size_witness_leafsize = f.leafsize();
      out.witness = f;
      out.witness_is_cnf = best_cnf;
    } else {
      out.min_leafsize = f.leafsize();
      out.leafsize_witness = f;
      out.leafsize_witness_is_cnf = best_cnf;
    }
  }
  return out;
}

}  // namespace sinv
