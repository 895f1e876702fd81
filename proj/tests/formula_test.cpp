#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "sinv/formula.hpp"
#include "sinv/formula_io.hpp"
#include "sinv/reference.hpp"
#include "sinv/semantics.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {
namespace {

BitVec bv(const char* s) { return BitVec::from_string(s); }

Formula x(std::size_t n, std::size_t i) { return Formula::literal(n, i - 1); }
Formula nx(std::size_t n, std::size_t i) { return Formula::literal(n, i - 1, true); }

Formula parity2_dnf() { return make_or({make_and({x(2, 1), nx(2, 2)}), make_and({nx(2, 1), x(2, 2)})}); }

template <class Rng>
Formula random_formula(std::size_t n, std::size_t depth, Rng& rng) {
  if (depth == 0 || rng() % 5 == 0) {
    if (rng() % 12 == 0) return Formula::constant(n, rng() & 1u);
    return Formula::literal(n, rng() % n, rng() & 1u);
  }
  std::vector<Formula> kids;
  const std::size_t fan = 1 + rng() % 3;
  for (std::size_t i = 0; i < fan; ++i) kids.push_back(random_formula(n, depth - 1, rng));
  return Formula::gate(rng() & 1u ? Gate::And : Gate::Or, std::move(kids));
}

template <class Rng>
RawFormula shuffled(const RawFormula& r, Rng& rng) {
  RawFormula out = r;
  for (auto& c : out.children) c = shuffled(c, rng);
  std::shuffle(out.children.begin(), out.children.end(), rng);
  if (!out.children.empty() && rng() % 3 == 0) out.children.push_back(out.children.front());
  return out;
}

TEST(Canonicalize, SetSemantics) {
  const Formula f = make_and({x(3, 1), x(3, 1), x(3, 2)});
  EXPECT_EQ(f, make_and({x(3, 1), x(3, 2)}));
  EXPECT_EQ(f.children().size(), 2u);
  EXPECT_EQ(f.leafsize(), 2u);

  const Formula g = make_or({make_and({x(3, 2), x(3, 1)}), make_and({x(3, 1), x(3, 2)})});
  EXPECT_EQ(g.children().size(), 1u);
  EXPECT_EQ(g.children()[0], make_and({x(3, 1), x(3, 2)}));
}

TEST(Canonicalize, OrderIndependentAndIdempotent) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 300; ++t) {
    const Formula f = random_formula(5, 4, rng);
    const RawFormula raw = to_raw(f);
    EXPECT_EQ(canonicalize(raw, 5), f);
    const Formula g = canonicalize(shuffled(raw, rng), 5);
    EXPECT_EQ(g, f);
    EXPECT_EQ(g.hash(), f.hash());
    EXPECT_EQ(write_formula(g), write_formula(f));
  }
}

TEST(Canonicalize, Errors) {
  EXPECT_THROW(canonicalize(RawFormula::make_gate(Gate::And, {}), 3), PreconditionError);
  EXPECT_THROW(canonicalize(RawFormula::literal(3), 3), PreconditionError);
  EXPECT_THROW(make_and({x(2, 1), x(3, 1)}), DimensionMismatch);
}

TEST(Metrics, DepthSizeLeafsize) {
  const Formula lit = x(3, 1);
  EXPECT_EQ(lit.depth(), 0u);
  EXPECT_EQ(lit.size(), 0u);
  EXPECT_EQ(lit.leafsize(), 1u);
  const Formula d = parity2_dnf();
  EXPECT_EQ(d.depth(), 2u);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(d.leafsize(), 4u);
  EXPECT_TRUE(d.leveled());
  EXPECT_FALSE(make_or({x(2, 1), make_and({x(2, 2)})}).leveled());

  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Formula f = random_formula(4, 4, rng);
    EXPECT_LE(f.size(), f.leafsize());
  }
}

TEST(Evaluate, Examples) {
  EXPECT_TRUE(evaluate(Formula::constant(3, true), bv("010")));
  const Formula d = parity2_dnf();
  EXPECT_TRUE(evaluate(d, bv("10")));
  EXPECT_FALSE(evaluate(d, bv("11")));
  EXPECT_EQ(evaluate_on(d, even_weight_subspace(2)), Constancy::AllZero);
  EXPECT_EQ(evaluate_on(d, Subspace::full(2)), Constancy::NonConstant);
  EXPECT_THROW(evaluate_checked(d, bv("101")), DimensionMismatch);
}

TEST(Evaluate, TruthTableMatchesPointwise) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const Formula f = random_formula(n, 3, rng);
    const TruthTable tt = truth_table(f);
    for (std::uint64_t p = 0; p < tt.points(); ++p) ASSERT_EQ(tt.get(p), evaluate(f, BitVec::from_word(n, p)));
  }
}

TEST(Act, Examples) {
  EXPECT_EQ(act(x(2, 1), bv("10")), nx(2, 1));
  const Formula d = parity2_dnf();
  EXPECT_EQ(act(d, bv("00")), d);
  EXPECT_EQ(act(d, bv("11")), d);
  EXPECT_NE(act(d, bv("10")), d);
  EXPECT_THROW(act(d, bv("1")), DimensionMismatch);
}

TEST(Act, GroupActionProperties) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const Formula f = random_formula(n, 4, rng);
    const BitVec u = BitVec::from_word(n, rng());
    const BitVec v = BitVec::from_word(n, rng());
    const Formula fu = act(f, u);
    ASSERT_EQ(act(fu, u), f);
    ASSERT_EQ(act(fu, v), act(f, u ^ v));
    ASSERT_EQ(fu.depth(), f.depth());
    ASSERT_EQ(fu.size(), f.size());
    ASSERT_EQ(fu.leafsize(), f.leafsize());
  }
}

TEST(Act, SemanticShiftExhaustive) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const Formula f = random_formula(n, 3, rng);
    const BitVec u = BitVec::from_word(n, rng());
    const TruthTable a = truth_table(act(f, u));
    const TruthTable b = truth_table(f);
    const std::uint64_t shift = u.word(0);
    for (std::uint64_t p = 0; p < a.points(); ++p) ASSERT_EQ(a.get(p), b.get(p ^ shift));
  }
}

TEST(Invariance, Examples) {
  EXPECT_TRUE(is_invariant(parity2_dnf(), even_weight_subspace(2)));

  const std::size_t n = 4;
  std::vector<Formula> kids{Formula::constant(n, false)};
  for (std::size_t i = 1; i <= n; ++i) kids.push_back(x(n, i));
  const Formula zero_fn = make_and(kids);
  const Subspace u = even_weight_subspace(n);
  EXPECT_TRUE(is_semantically_invariant(zero_fn, u));
  EXPECT_FALSE(is_invariant(zero_fn, u));

  EXPECT_FALSE(is_invariant(x(2, 1), even_weight_subspace(2)));
  EXPECT_FALSE(is_semantically_invariant(x(2, 1), even_weight_subspace(2)));
}

TEST(Invariance, SyntacticImpliesSemantic) {
  std::mt19937_64 rng(10);
  int invariant_seen = 0;
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + rng() % 4;
    const Formula g = random_formula(n, 3, rng);
    const Subspace u = ref::random_subspace(n, 1 + rng() % 2, rng);
    // Symmetrize so that some samples are invariant.
    std::vector<Formula> orbit;
    for (const auto& e : u.elements()) orbit.push_back(act(g, e));
    const Formula f = rng() & 1u ? make_or(orbit) : g;
    if (is_invariant(f, u)) {
      ++invariant_seen;
      ASSERT_TRUE(is_semantically_invariant(f, u));
    }
  }
  EXPECT_GT(invariant_seen, 100);
}

TEST(Invariance, SemanticCapAndSampling) {
  const Formula f = make_or({x(24, 1), nx(24, 1)});
  EXPECT_THROW(is_semantically_invariant(f, even_weight_subspace(24)), CapExceeded);
  const auto ok = sample_semantic_invariance(f, even_weight_subspace(24), 500, 1);
  EXPECT_FALSE(ok.counterexample_found);
  EXPECT_TRUE(ok.one_sided);
  const auto bad = sample_semantic_invariance(x(24, 1), even_weight_subspace(24), 500, 1);
  EXPECT_TRUE(bad.counterexample_found);
  EXPECT_NE(evaluate(x(24, 1), bad.point), evaluate(x(24, 1), bad.point ^ bad.shift));
}

TEST(OrbitStabilizer, Examples) {
  const Formula g = make_and({x(2, 1), x(2, 2)});
  const auto o = orbit_stabilizer(g, even_weight_subspace(2));
  EXPECT_TRUE(o.stabilizer.is_zero());
  ASSERT_EQ(o.orbit.size(), 2u);
  EXPECT_EQ(o.a, 2u);
  EXPECT_TRUE(std::find(o.orbit.begin(), o.orbit.end(), g) != o.orbit.end());
  EXPECT_TRUE(std::find(o.orbit.begin(), o.orbit.end(), make_and({nx(2, 1), nx(2, 2)})) != o.orbit.end());

  const auto sym = orbit_stabilizer(parity2_dnf(), even_weight_subspace(2));
  EXPECT_EQ(sym.orbit.size(), 1u);
  EXPECT_EQ(sym.a, 1u);
  EXPECT_EQ(sym.stabilizer, even_weight_subspace(2));
}

TEST(OrbitStabilizer, MatchesGroupEnumeration) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const Formula g = random_formula(n, 3, rng);
    const Subspace u = ref::random_subspace(n, rng() % 5, rng);
    const auto o = orbit_stabilizer(g, u);
    std::vector<BitVec> stab;
    std::unordered_set<Formula> orbit;
    for (const auto& e : ref::elements(u)) {
      const Formula h = act(g, e);
      orbit.insert(h);
      if (h == g) stab.push_back(e);
    }
    ASSERT_EQ(o.orbit.size() * (std::size_t{1} << o.stabilizer.dim()), std::size_t{1} << u.dim());
    ASSERT_EQ(orbit.size(), o.orbit.size());
    ASSERT_EQ(stab.size(), std::size_t{1} << o.stabilizer.dim());
    for (const auto& s : stab) ASSERT_TRUE(o.stabilizer.contains(s));
    for (const auto& h : o.orbit) {
      ASSERT_TRUE(orbit.count(h));
      ASSERT_EQ(h.size(), g.size());
      ASSERT_EQ(h.leafsize(), g.leafsize());
      ASSERT_EQ(h.depth(), g.depth());
    }
  }
}

TEST(FormulaJson, Format) {
  const Formula d = parity2_dnf();
  const json doc = formula_document(d);
  EXPECT_EQ(doc["format"], "formula/1");
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(read_formula(write_formula(d)), d);
  EXPECT_EQ(read_formula(R"({"n":2,"formula":{"or":[{"and":["~x2","x1"]},{"and":["x2","~x1"]}]}})"), d);
  EXPECT_EQ(read_formula(R"({"n":3,"formula":"1"})"), Formula::constant(3, true));
}

TEST(FormulaJson, Errors) {
  EXPECT_THROW(read_formula(R"({"n":2,"formula":"x3"})"), ParseError);
  EXPECT_THROW(read_formula(R"({"n":2,"formula":"x0"})"), ParseError);
  EXPECT_THROW(read_formula(R"({"n":2,"formula":{"and":[]}})"), ParseError);
  EXPECT_THROW(read_formula(R"({"n":2,"formula":{"xor":["x1"]}})"), ParseError);
  EXPECT_THROW(read_formula(R"({"n":2})"), ParseError);
  EXPECT_THROW(read_formula("{"), ParseError);
}

TEST(Simplify, FoldsConstantsOnlyWhenAsked) {
  const Formula f = make_and({Formula::constant(2, false), x(2, 1)});
  EXPECT_EQ(f.children().size(), 2u);
  EXPECT_EQ(simplify_constants(f), Formula::constant(2, false));
  EXPECT_EQ(simplify_constants(make_or({Formula::constant(2, false), x(2, 1)})), x(2, 1));
}

TEST(Interner, ReleasesDeadNodes) {
  const std::size_t before = detail::Interner::instance().live_nodes();
  {
    const Formula big = synth_parity(2, 8, Gate::Or);
    EXPECT_GT(detail::Interner::instance().live_nodes(), before);
  }
  EXPECT_EQ(detail::Interner::instance().live_nodes(), before);
}

}  // namespace
}  // namespace sinv
