#pragma once

// The acceptance suite. Shared by `sinv selftest` and the acceptance test
// binary; the JSON report holds only deterministic content, timings are
// reported separately.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sinv/bounds.hpp"
#include "sinv/formula_io.hpp"
#include "sinv/graph.hpp"
#include "sinv/lattice.hpp"
#include "sinv/oracle.hpp"
#include "sinv/reference.hpp"
#include "sinv/semantics.hpp"
#include "sinv/synthesis.hpp"
#include "sinv/trace.hpp"

namespace sinv {

inline constexpr const char* kSelftestFormat = "selftest/1";

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_passed = false;
  std::uint64_t checks = 0;
  std::vector<std::string> failures;  // first few only
  double seconds = 0;
  double limit_seconds = 0;  // 0 means untimed
  json data;

  bool within_limit() const noexcept { return limit_seconds <= 0 || seconds < limit_seconds; }
  bool pass() const noexcept { return checks_passed && within_limit(); }
};

struct SelftestReport {
  std::vector<CriterionResult> criteria;

  bool all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass(); });
  }

  json to_json() const {
    json out;
    out["format"] = kSelftestFormat;
    out["all_pass"] = all_pass();
    json list = json::array();
    for (const auto& c : criteria) {
      list.push_back({{"id", c.id},
                      {"name", c.name},
                      {"pass", c.pass()},
                      {"checks", c.checks},
                      {"failures", c.failures},
                      {"limit_seconds", c.limit_seconds},
                      {"data", c.data}});
    }
    out["criteria"] = std::move(list);
    return out;
  }
};

namespace detail {

class Checker {
 public:
  template <class Describe>
  bool expect(bool ok, Describe&& describe) {
    ++checks_;
    if (!ok) {
      ++failed_;
      if (messages_.size() < 8) messages_.push_back(describe());
    }
    return ok;
  }

  bool expect(bool ok, const char* what) {
    return expect(ok, [what] { return std::string(what); });
  }

  void merge(const Checker& other) {
    checks_ += other.checks_;
    failed_ += other.failed_;
    for (const auto& m : other.messages_)
      if (messages_.size() < 8) messages_.push_back(m);
  }

  void finish(CriterionResult& r) const {
    r.checks = checks_;
    r.checks_passed = failed_ == 0 && checks_ > 0;
    r.failures = messages_;
  }

 private:
  std::uint64_t checks_ = 0;
  std::uint64_t failed_ = 0;
  std::vector<std::string> messages_;
};

// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double unit_real(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

inline std::vector<Subspace> all_subspaces_cached(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<Subspace>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, ref::all_subspaces(n)).first;
  return it->second;
}

// Subspaces of {0,1}^n with n <= 6 as 64-bit membership masks.
struct MaskSpace {
  std::size_t n;
  std::vector<std::uint64_t> orth;  // orth[x]: mask of all y with <x,y> = 0

  explicit MaskSpace(std::size_t dim) : n(dim), orth(std::size_t{1} << dim, 0) {
    for (std::uint64_t x = 0; x < orth.size(); ++x)
      for (std::uint64_t y = 0; y < orth.size(); ++y)
        if (std::popcount(x & y) % 2 == 0) orth[x] |= std::uint64_t{1} << y;
  }

  std::uint64_t members(const Subspace& s) const {
    std::uint64_t out = 0;
    const auto& b = s.basis();
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << b.size()); ++c) {
      std::uint64_t x = 0;
      for (std::size_t i = 0; i < b.size(); ++i)
        if ((c >> i) & 1u) x ^= b[i].word(0);
      out |= std::uint64_t{1} << x;
    }
    return out;
  }

  std::uint64_t perp(std::uint64_t s) const {
    std::uint64_t out = 0;
    for (std::uint64_t x = 0; x < orth.size(); ++x)
      if ((s & ~orth[x]) == 0) out |= std::uint64_t{1} << x;
    return out;
  }

  static std::size_t count(std::uint64_t s) { return static_cast<std::size_t>(std::popcount(s)); }

  static bool codim1(std::uint64_t sub, std::uint64_t sup) { return (sub & ~sup) == 0 && count(sup) == 2 * count(sub); }

  // T, U inside V with |T||U| / |T∩U| = |V| forces T + U = V.
  static bool quad(std::uint64_t s, std::uint64_t t, std::uint64_t u, std::uint64_t v) {
    return codim1(s, t) && codim1(u, v) && (t & u) == s && (t & ~v) == 0 &&
           count(t) * count(u) == count(s) * count(v);
  }

  // Minimum weight over a \ b; n + 1 when empty.
  static std::size_t min_weight(std::uint64_t a, std::uint64_t b) {
    std::size_t best = 65;
    for (std::uint64_t d = a & ~b; d; d &= d - 1)
      best = std::min(best, static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(std::countr_zero(d)))));
    return best;
  }
};

inline std::uint64_t set_bits_weight_min(const ref::VecSet& a, const ref::VecSet& b) {
  std::uint64_t best = ~std::uint64_t{0};
  for (const auto& x : a)
    if (!b.count(x)) best = std::min<std::uint64_t>(best, x.weight());
  return best;
}

inline Subspace parity_p(std::size_t n) { return even_weight_subspace(n); }

// 1. Parity upper bound at perfect powers.
inline void criterion_upper_bound(CriterionResult& r, Exec) {
  Checker ck;
  json rows = json::array();
  BetaTable table(6, 64);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t k = 2; k <= 3; ++k) {
      std::size_t n = 1;
      for (std::size_t i = 0; i < d; ++i) n *= k;
      if (n > 16) continue;
      const std::uint64_t want = std::uint64_t{n} << (d * (k - 1));
      const Subspace p = parity_p(n);
      for (Gate g : {Gate::Or, Gate::And}) {
        const Formula f = synth_parity(d + 1, n, g, SynthStrategy::ClosedForm, &table);
        const Formula dp = synth_parity(d + 1, n, g, SynthStrategy::ExactDp, &table);
        ck.expect(f.leafsize() == want, [&] {
          return "leafsize " + std::to_string(f.leafsize()) + " != " + std::to_string(want) + " at d=" +
                 std::to_string(d) + " n=" + std::to_string(n);
        });
        ck.expect(dp.leafsize() <= want, "exact-dp leafsize above the closed form");
        ck.expect(f.depth() == d + 1 && dp.depth() == d + 1, "wrong depth");
        bool computes = true;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
          const BitVec bx = BitVec::from_word(n, x);
          const bool par = std::popcount(x) % 2 == 1;
          computes = computes && evaluate(f, bx) == par && evaluate(dp, bx) == par;
        }
        ck.expect(computes, [&] { return "not parity at d=" + std::to_string(d) + " n=" + std::to_string(n); });
        ck.expect(is_invariant(f, p) && is_invariant(dp, p), "not syntactically P-invariant");
        rows.push_back({{"d", d},
                        {"n", n},
                        {"gate", gate_name(g)},
                        {"leafsize", f.leafsize()},
                        {"expected", want},
                        {"exact_dp_leafsize", dp.leafsize()},
                        {"size", f.size()}});
      }
    }
  }
  r.data = {{"instances", rows}};
  ck.finish(r);
}

// 2. Beta table identities.
inline void criterion_beta(CriterionResult& r, Exec) {
  Checker ck;
  BetaTable t(6, 64);
  json two = json::array();
  for (std::size_t n = 1; n <= 12; ++n) {
    const BetaValue b = t.beta(2, n);
    const BigInt want = BigInt(n) << (n - 1);
    ck.expect(b.finite() && *b.value == want, [&] { return "beta(2," + std::to_string(n) + ") = " + b.to_string(); });
    two.push_back(b.to_string());
  }
  ck.expect(t.beta(1, 1).finite() && *t.beta(1, 1).value == 1, "beta(1,1) != 1");
  for (std::size_t n = 2; n <= 64; ++n) ck.expect(!t.beta(1, n).finite(), "beta(1,n>1) finite");
  std::uint64_t compared = 0;
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t n = 1; n <= 64; ++n) {
      const BetaValue b = t.beta(d, n);
      ck.expect(b.finite() && *b.value <= closed_form_leafsize(d, n), [&] {
        return "beta(" + std::to_string(d) + "," + std::to_string(n) + ") above the closed form";
      });
      if (auto exact = parity_leafsize_bound_exact(d - 1, n)) {
        ck.expect(b.finite() && *b.value <= *exact, "beta above n*2^(d(k-1))");
      }
      ++compared;
    }
  }
  r.data = {{"beta_2", two}, {"tabulated", compared}};
  ck.finish(r);
}

// 3. Depth-2 oracle meets the base-case bound on parity.
inline void criterion_base_case(CriterionResult& r, Exec exec) {
  Checker ck;
  json rows = json::array();
  for (std::size_t n = 2; n <= 3; ++n) {
    for (bool polarity : {false, true}) {
      for (bool inv : {false, true}) {
        const SeparatorSpec spec{parity_p(n), Subspace::full(n), polarity};
        const OracleResult o = min_invariant_depth2_size(spec, inv, exec);
        const auto base = base_case_bounds(n);
        ck.expect(o.m == n, "m != n for parity");
        ck.expect(BigInt(o.min_size) == base.size, [&] {
          return "n=" + std::to_string(n) + " min size " + std::to_string(o.min_size);
        });
        ck.expect(BigInt(o.min_leafsize) == base.leafsize, [&] {
          return "n=" + std::to_string(n) + " min leafsize " + std::to_string(o.min_leafsize);
        });
        ck.expect(verify_separator(o.witness, spec) && verify_separator(o.leafsize_witness, spec),
                  "witness does not separate");
        if (inv) ck.expect(is_invariant(o.witness, spec.u), "witness not invariant");
        rows.push_back({{"n", n},
                        {"polarity", polarity},
                        {"invariant", inv},
                        {"min_size", o.min_size},
                        {"min_leafsize", o.min_leafsize},
                        {"witness", formula_to_json(o.witness)}});
      }
    }
  }
  r.data = {{"instances", rows}};
  ck.finish(r);
}

// Random (S ⊆ U ⊂ V) with (U,V) codimension 1.
struct Triple {
  Subspace s, u, v;
};

inline Triple random_triple(std::size_t n, std::size_t max_dim, std::mt19937_64& rng) {
  for (;;) {
    const Subspace v = ref::random_subspace(n, 1 + uniform_below(rng, std::min(n, max_dim)), rng);
    BitVec f(n);
    for (std::size_t i = 0; i < n; ++i) f.set(i, rng() & 1u);
    std::vector<BitVec> kernel;
    std::optional<BitVec> odd;
    for (const auto& b : v.basis()) {
      if (!dot(f, b)) {
        kernel.push_back(b);
      } else if (!odd) {
        odd = b;
      } else {
        kernel.push_back(b ^ *odd);
      }
    }
    if (!odd) continue;
    const Subspace u = Subspace::span(kernel, n);
    std::vector<BitVec> sub;
    for (const auto& b : u.basis())
      if (rng() & 1u) sub.push_back(b);
    return {Subspace::span(sub, n), u, v};
  }
}

// 4. Lattice lemmas and the real inequality.
inline void criterion_lemmas(CriterionResult& r, Exec exec) {
  Checker ck;
  std::uint64_t stretch_pairs = 0, quad_triples = 0;

  // Exhaustive for n <= 6 over every nested pair and every S below a codim-1 pair.
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto all = all_subspaces_cached(n);
    const MaskSpace ms(n);
    std::vector<std::uint64_t> mask(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) mask[i] = ms.members(all[i]);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (u, v) with U ⊆ V
    for (std::size_t iv = 0; iv < all.size(); ++iv)
      for (std::size_t iu = 0; iu < all.size(); ++iu)
        if ((mask[iu] & ~mask[iv]) == 0) pairs.emplace_back(iu, iv);

    struct Partial {
      Checker ck;
      std::uint64_t pairs = 0, triples = 0;
    };
    auto parts = run_chunks(pairs.size(), exec, [&](std::uint64_t lo, std::uint64_t hi) {
      Partial p;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const auto [iu, iv] = pairs[i];
        const Subspace& u = all[iu];
        const Subspace& v = all[iv];
        const ProjectionMap rho = greedy_projection(u, v);
        const std::size_t k = rho.codim();
        bool ok = true;
        for (std::uint64_t rest = mask[iv]; rest; rest &= rest - 1) {
          const auto x = static_cast<std::uint64_t>(std::countr_zero(rest));
          const BitVec img = rho.apply(BitVec::from_word(n, x));
          const std::uint64_t y = img.word(0);
          ok = ok && ((mask[iu] >> y) & 1u) && std::popcount(y) <= static_cast<int>((k + 1) * std::popcount(x));
          if ((mask[iu] >> x) & 1u) ok = ok && y == x;
        }
        p.ck.expect(ok, [&] { return "stretch bound fails for U=" + u.to_text() + " V=" + v.to_text(); });
        ++p.pairs;
        if (!MaskSpace::codim1(mask[iu], mask[iv])) continue;
        const std::uint64_t high = MaskSpace::min_weight(ms.perp(mask[iu]), ms.perp(mask[iv]));
        for (std::size_t is = 0; is < all.size(); ++is) {
          if ((mask[is] & ~mask[iu]) != 0) continue;
          const Subspace& s = all[is];
          const Subspace t = descend_pair(s, u, v);
          const std::uint64_t mt = ms.members(t);
          const std::uint64_t ms_ = mask[is];
          bool q = MaskSpace::quad(ms_, mt, mask[iu], mask[iv]);
          // Duality: the dual quadruple, recomputed on masks, and the involution.
          const SubspaceQuad quad{{s, t}, {u, v}};
          const SubspaceQuad dq = dual_quad(quad);
          const std::uint64_t ps = ms.perp(ms_), pt = ms.perp(mt), pu = ms.perp(mask[iu]), pv = ms.perp(mask[iv]);
          q = q && ms.members(dq.lower.sub) == pv && ms.members(dq.lower.sup) == pu &&
              ms.members(dq.upper.sub) == pt && ms.members(dq.upper.sup) == ps;
          q = q && MaskSpace::quad(pv, pu, pt, ps) && dual_quad(dq) == quad;
          // Descent: min_{S^⊥∖T^⊥} * (dim U - dim S + 1) >= min_{U^⊥∖V^⊥}.
          const std::uint64_t low = MaskSpace::min_weight(ps, pt);
          q = q && low * (u.dim() - s.dim() + 1) >= high;
          // Lift: min_{V∖U'} * (dim V - dim T + 1) >= min_{T∖S}.
          const Subspace lifted = lift_pair(s, t, v);
          const std::uint64_t ml = ms.members(lifted);
          q = q && MaskSpace::quad(ms_, mt, ml, mask[iv]);
          q = q && MaskSpace::min_weight(mask[iv], ml) * (v.dim() - t.dim() + 1) >= MaskSpace::min_weight(mt, ms_);
          p.ck.expect(q, [&] {
            return "quadruple lemma fails for S=" + s.to_text() + " U=" + u.to_text() + " V=" + v.to_text();
          });
          ++p.triples;
        }
      }
      return p;
    });
    for (const auto& p : parts) {
      ck.merge(p.ck);
      stretch_pairs += p.pairs;
      quad_triples += p.triples;
    }
  }

  // Randomized for 7 <= n <= 12 with explicit element sets.
  std::mt19937_64 rng(0x5eed0004);
  std::uint64_t random_pairs = 0, random_triples = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 7 + uniform_below(rng, 6);
    const Triple tr = random_triple(n, 7, rng);
    const auto rho = greedy_projection(tr.s, tr.v);
    const auto ev = ref::elements(tr.v), es = ref::elements(tr.s);
    bool ok = true;
    for (const auto& x : ev) {
      const BitVec y = rho.apply(x);
      ok = ok && es.count(y) && y.weight() <= (rho.codim() + 1) * x.weight();
    }
    ck.expect(ok, "random stretch bound fails");
    ++random_pairs;

    const Subspace t = descend_pair(tr.s, tr.u, tr.v);
    const auto et = ref::elements(t), eu = ref::elements(tr.u);
    const auto ps = ref::orthogonal(es, n), pt = ref::orthogonal(et, n), pu = ref::orthogonal(eu, n),
               pv = ref::orthogonal(ev, n);
    bool q = ref::is_quad(es, et, eu, ev);
    const SubspaceQuad quad{{tr.s, t}, {tr.u, tr.v}};
    const SubspaceQuad dq = dual_quad(quad);
    q = q && ref::elements(dq.lower.sub) == pv && ref::elements(dq.lower.sup) == pu &&
        ref::elements(dq.upper.sub) == pt && ref::elements(dq.upper.sup) == ps && dual_quad(dq) == quad;
    q = q && set_bits_weight_min(ps, pt) * (tr.u.dim() - tr.s.dim() + 1) >= set_bits_weight_min(pu, pv);
    const Subspace lifted = lift_pair(tr.s, t, tr.v);
    const auto el = ref::elements(lifted);
    q = q && ref::is_quad(es, et, el, ev) &&
        set_bits_weight_min(ev, el) * (tr.v.dim() - t.dim() + 1) >= set_bits_weight_min(et, es);
    ck.expect(q, "random quadruple lemma fails");
    ++random_triples;
  }

  // a + c(b/a)^(1/c) >= (c+1) b^(1/(c+1)), with equality exactly at a = b^(1/(c+1)).
  std::uint64_t sweep = 0, equalities = 0, violations = 0, equality_misses = 0;
  for (int i = 0; i < 100000; ++i) {
    const double c = 1 + std::floor(unit_real(rng) * 10);
    const double b = std::exp2(unit_real(rng) * 40);
    const bool at_root = i % 10 == 0;
    const double a = at_root ? std::pow(b, 1 / (c + 1)) : 1 + unit_real(rng) * (b - 1);
    const AbcResult res = abc_inequality(a, b, c);
    ++sweep;
    if (!res.holds) ++violations;
    if (at_root) {
      ++equalities;
      if (!res.equality || std::abs(res.lhs - res.rhs) > kRealTol * res.rhs) ++equality_misses;
    } else if (res.equality && std::abs(res.lhs - res.rhs) > 1e-6 * res.rhs) {
      ++equality_misses;
    }
  }
  ck.expect(violations == 0, [&] { return std::to_string(violations) + " violations of the abc inequality"; });
  ck.expect(equality_misses == 0, [&] { return std::to_string(equality_misses) + " missed equality cases"; });

  r.data = {{"stretch_exhaustive_pairs", stretch_pairs},
            {"quad_exhaustive_triples", quad_triples},
            {"stretch_random", random_pairs},
            {"quad_random", random_triples},
            {"abc_points", sweep},
            {"abc_equality_points", equalities},
            {"abc_violations", violations},
            {"tolerance", kRealTol}};
  ck.finish(r);
}

// 5. Trace for depth-3 parity on four variables.
inline void criterion_trace(CriterionResult& r, Exec exec) {
  Checker ck;
  json traces = json::array();
  const Subspace p = parity_p(4);
  const Subspace full = Subspace::full(4);
  for (Gate g : {Gate::Or, Gate::And}) {
    const Formula f = synth_parity(3, 4, g);
    const TraceNode tr = trace_lower_bound(f, p, full, exec);
    const TraceVerdict verdict = verify_trace(tr, f, p, full);
    ck.expect(verdict.ok, [&] {
      return std::string("trace rejected: ") + (verdict.failures.empty() ? "" : verdict.failures.front());
    });
    ck.expect(verdict.nodes_checked == tr.height(), "verifier skipped nodes");
    ck.expect(verdict.final_inequality, "final inequality fails");
    ck.expect(verdict.root_bound == 4.0, "root bound is not 4");
    ck.expect(f.size() >= 4, "size below 4");
    // The trace must survive serialization.
    const TraceNode back = trace_from_json(json::parse(trace_to_json(tr).dump()));
    ck.expect(verify_trace(back, f, p, full).ok, "re-parsed trace rejected");
    traces.push_back({{"gate", gate_name(g)}, {"size", f.size()}, {"trace", trace_to_json(tr)}});
  }
  r.data = {{"traces", traces}};
  ck.finish(r);
}

// 6. Bound formula at d = 1 and for large d.
inline void criterion_limits(CriterionResult& r, Exec) {
  Checker ck;
  for (std::size_t m = 1; m <= 30; ++m) {
    ck.expect(theorem_bound(1, static_cast<double>(m)) == std::ldexp(1.0, static_cast<int>(m) - 1),
              [&] { return "theorem_bound(1," + std::to_string(m) + ") inexact"; });
  }
  json gaps = json::array();
  for (double m : {2.0, 10.0, 100.0, 1e6}) {
    const double lim = unbounded_depth_bound(m);
    const double rel = std::abs(theorem_bound(1e4, m) - lim) / lim;
    ck.expect(rel < 0.01, [&] { return "slow convergence at m=" + std::to_string(m); });
    gaps.push_back({{"m", m}, {"relative_gap", rel}});
  }
  r.data = {{"exact_d1_up_to", 30}, {"limit_gaps", gaps}};
  ck.finish(r);
}

inline constexpr const char* kK3Text = "v=3\n0 1\n0 2\n1 2\n";
inline constexpr const char* kK4Text = "v=4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

inline std::size_t cycle_space_m(const Graph& g, Exec exec) {
  const Subspace z = cycle_space(g);
  const auto ew = even_weight_sub(z);
  return min_weight_in_difference(dual(ew.z0), dual(z), exec).weight;
}

// 7. m from max cut equals the min-weight computation on the cycle space.
inline void criterion_cycle_identity(CriterionResult& r, Exec exec) {
  Checker ck;
  json per_v = json::array();
  for (std::size_t v = 1; v <= kMaxIsoVertices; ++v) {
    std::size_t classes = 0, nonbip = 0;
    std::map<std::size_t, std::size_t> hist;
    for (const Graph& g : connected_graphs(v)) {
      ++classes;
      if (g.edges.empty() || is_bipartite(g)) continue;
      ++nonbip;
      const std::size_t m = cycle_space_m(g, exec);
      const std::size_t mc = m_via_maxcut(g, exec);
      ck.expect(m == mc, [&] { return "identity fails on " + g.to_text(); });
      ++hist[m];
    }
    json h = json::object();
    for (auto [m, c] : hist) h[std::to_string(m)] = c;
    per_v.push_back({{"v", v}, {"classes", classes}, {"non_bipartite", nonbip}, {"m_histogram", h}});
  }
  const Graph k3 = Graph::from_text(kK3Text), k4 = Graph::from_text(kK4Text);
  const std::size_t m3 = cycle_space_m(k3, exec), m4 = cycle_space_m(k4, exec);
  ck.expect(m3 == 1 && m_via_maxcut(k3, exec) == 1, "K3 does not give m=1");
  ck.expect(m4 == 2 && m_via_maxcut(k4, exec) == 2, "K4 does not give m=2");
  r.data = {{"per_v", per_v}, {"K3_m", m3}, {"K4_m", m4}};
  ck.finish(r);
}

inline constexpr std::size_t kPipelineSamples = 100;

// 8. Cubic graphs through the whole pipeline.
inline void criterion_pipeline(CriterionResult& r, Exec exec) {
  Checker ck;
  json per_v = json::array();
  for (std::size_t v : {6u, 8u, 10u}) {
    std::size_t accepted = 0, bipartite = 0;
    double lo = 1, hi = 0, total = 0;
    std::uint64_t seed = static_cast<std::uint64_t>(v) << 32;
    json samples = json::array();
    for (; accepted < kPipelineSamples; ++seed) {
      const RegularSample s = random_regular(v, 3, seed);
      const Graph& g = s.graph;
      ck.expect(g.is_simple() && g.is_regular(3) && g.edges.size() == 3 * v / 2, "sample is not simple cubic");
      if (is_bipartite(g)) {
        ++bipartite;
        continue;
      }
      ++accepted;
      const Subspace z = cycle_space(g);
      const auto ew = even_weight_sub(z);
      ck.expect(ew.codim == 1, "(Z0, Z) is not codimension 1");
      const BoundReport rep = lower_bound_certificate(ew.z0, z, 2, exec);
      ck.expect(rep.m > 0 && rep.m == m_via_maxcut(g, exec), [&] { return "bad m for seed " + std::to_string(seed); });
      ck.expect(rep.theorem_bound >= 1, "bound below 1");
      const double ratio = static_cast<double>(rep.m) / static_cast<double>(g.edges.size());
      ck.expect(ratio > 0, "m/n is zero");
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      total += ratio;
      samples.push_back({{"seed", seed}, {"m", rep.m}, {"theorem_bound", rep.theorem_bound}});
    }
    per_v.push_back({{"v", v},
                     {"n", 3 * v / 2},
                     {"samples", accepted},
                     {"bipartite_rejected", bipartite},
                     {"m_over_n_min", lo},
                     {"m_over_n_mean", total / static_cast<double>(accepted)},
                     {"m_over_n_max", hi},
                     {"reports", samples}});
  }
  r.data = {{"rng", kRegularGraphRng}, {"d", 2}, {"per_v", per_v}};
  ck.finish(r);
}

struct CriterionDef {
  int id;
  const char* name;
  double limit_seconds;
  void (*run)(CriterionResult&, Exec);
};

inline const std::vector<CriterionDef>& criterion_defs() {
  static const std::vector<CriterionDef> defs = {
      {1, "parity upper bound at perfect powers", 10, criterion_upper_bound},
      {2, "beta identities", 5, criterion_beta},
      {3, "base case met by the depth-2 oracle", 120, criterion_base_case},
      {4, "lattice lemmas and the abc inequality", 60, criterion_lemmas},
      {5, "verified trace for depth-3 parity on 4 variables", 10, criterion_trace},
      {6, "bound at d=1 and its large-d limit", 1, criterion_limits},
      {7, "cycle-space identity on small graphs", 120, criterion_cycle_identity},
      {8, "cubic graph pipeline", 60, criterion_pipeline},
  };
  return defs;
}

inline CriterionResult run_criterion(const CriterionDef& def, Exec exec) {
  CriterionResult r;
  r.id = def.id;
  r.name = def.name;
  r.limit_seconds = def.limit_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    def.run(r, exec);
  } catch (const std::exception& e) {
    r.checks_passed = false;
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

/// Runs every acceptance criterion. The last one reruns the criteria that
/// use worker threads with a different job count and compares their data.
inline SelftestReport run_selftest(Exec exec = {}, const std::function<void(const CriterionResult&)>& progress = {}) {
  SelftestReport report;
  for (const auto& def : detail::criterion_defs()) {
    report.criteria.push_back(detail::run_criterion(def, exec));
    if (progress) progress(report.criteria.back());
  }

  CriterionResult det;
  det.id = 9;
  det.name = "results independent of the job count";
  const auto t0 = std::chrono::steady_clock::now();
  detail::Checker ck;
  const Exec other{exec.jobs == 1 ? 8u : 1u};
  json compared = json::array();
  for (const auto& def : detail::criterion_defs()) {
    if (def.id != 3 && def.id != 4 && def.id != 5 && def.id != 7 && def.id != 8) continue;
    const CriterionResult again = detail::run_criterion(def, other);
    const CriterionResult& first = report.criteria[static_cast<std::size_t>(def.id - 1)];
    ck.expect(again.data.dump() == first.data.dump() && again.checks == first.checks &&
                  again.checks_passed == first.checks_passed,
              [&] { return "criterion " + std::to_string(def.id) + " differs across job counts"; });
    compared.push_back(def.id);
  }
  det.data = {{"criteria_compared", compared}};
  ck.finish(det);
  det.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.criteria.push_back(std::move(det));
  if (progress) progress(report.criteria.back());
  return report;
}

}  // namespace sinv
