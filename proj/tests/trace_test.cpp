#include <random>

#include <gtest/gtest.h>

#include "sinv/formula_io.hpp"
#include "sinv/reference.hpp"
#include "sinv/synthesis.hpp"
#include "sinv/trace.hpp"

namespace sinv {
namespace {

void expect_verified(const TraceNode& tr, const Formula& f, const Subspace& u, const Subspace& v) {
  const TraceVerdict verdict = verify_trace(tr, f, u, v);
  for (const auto& msg : verdict.failures) ADD_FAILURE() << msg;
  EXPECT_TRUE(verdict.ok);
  EXPECT_TRUE(verdict.final_inequality);
  EXPECT_EQ(verdict.nodes_checked, tr.height());
}

TEST(Trace, DepthTwoBaseCase) {
  const Formula f = synth_parity(2, 2, Gate::Or);
  const Subspace p = even_weight_subspace(2);
  const TraceNode tr = trace_lower_bound(f, p, Subspace::full(2));
  EXPECT_EQ(tr.step, TraceStep::BaseCase);
  EXPECT_EQ(tr.m, 2u);
  EXPECT_EQ(tr.size, 2u);
  EXPECT_EQ(tr.claimed_bound, 2.0);
  EXPECT_FALSE(tr.value_on_u);
  expect_verified(tr, f, p, Subspace::full(2));
}

TEST(Trace, DepthThreeParityFour) {
  for (Gate g : {Gate::And, Gate::Or}) {
    const Formula f = synth_parity(3, 4, g);
    const Subspace p = even_weight_subspace(4);
    const TraceNode tr = trace_lower_bound(f, p, Subspace::full(4));
    ASSERT_EQ(tr.step, TraceStep::OrbitStep);
    ASSERT_TRUE(tr.child);
    EXPECT_EQ(tr.child->step, TraceStep::BaseCase);
    EXPECT_EQ(tr.m, 4u);
    EXPECT_EQ(tr.claimed_bound, 4.0);
    EXPECT_GE(tr.size, 4u);
    EXPECT_EQ(tr.case_no, g == Gate::Or ? 1 : 2);
    EXPECT_EQ(BigInt(tr.size), BigInt(tr.child->size) << (tr.a - 1));
    EXPECT_GE(tr.child->m * tr.a, tr.m);
    expect_verified(tr, f, p, Subspace::full(4));
  }
}

TEST(Trace, ReductionStep) {
  // U = {0} inside span{110, 001}: not codimension 1.
  const std::size_t n = 3;
  const Subspace v = Subspace::span({BitVec::from_string("110"), BitVec::from_string("001")}, n);
  const Formula f = make_or({make_and({Formula::literal(n, 0)})});
  const TraceNode tr = trace_lower_bound(f, Subspace(n), v);
  ASSERT_EQ(tr.step, TraceStep::Reduction);
  EXPECT_EQ(tr.coset_rep.to_string(), "111");
  ASSERT_TRUE(tr.child);
  EXPECT_EQ(tr.child->step, TraceStep::BaseCase);
  EXPECT_GE(tr.child->m, tr.m);
  expect_verified(tr, f, Subspace(n), v);
}

TEST(Trace, Preconditions) {
  const Subspace p = even_weight_subspace(3);
  EXPECT_THROW(trace_lower_bound(Formula::literal(3, 0), Subspace(3), Subspace::full(3)), PreconditionError);
  const Formula notinv = make_or({make_and({Formula::literal(3, 0), Formula::literal(3, 1)})});
  EXPECT_THROW(trace_lower_bound(notinv, p, Subspace::full(3)), PreconditionError);
  const Formula constant = make_or({make_and({Formula::literal(3, 0)}), make_and({Formula::literal(3, 0, true)})});
  EXPECT_THROW(trace_lower_bound(constant, Subspace(3), Subspace::full(3)), PreconditionError);
  EXPECT_THROW(trace_lower_bound(synth_parity(2, 3, Gate::Or), p, p), PreconditionError);
  const Formula unleveled = make_or({Formula::literal(2, 0), make_and({Formula::literal(2, 1)})});
  EXPECT_THROW(trace_lower_bound(unleveled, Subspace(2), Subspace::full(2)), PreconditionError);
}

TEST(Trace, SynthesizedParityAcrossDepths) {
  for (std::size_t depth = 2; depth <= 5; ++depth) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (Gate g : {Gate::And, Gate::Or}) {
        const Formula f = synth_parity(depth, n, g);
        const Subspace p = even_weight_subspace(n);
        const TraceNode tr = trace_lower_bound(f, p, Subspace::full(n));
        EXPECT_EQ(tr.height(), depth - 1) << depth << "," << n;
        expect_verified(tr, f, p, Subspace::full(n));
      }
    }
  }
}

template <class Rng>
Formula random_leveled(std::size_t n, std::size_t depth, Gate g, Rng& rng) {
  std::vector<Formula> kids;
  const std::size_t fan = 1 + rng() % 3;
  for (std::size_t i = 0; i < fan; ++i) {
    kids.push_back(depth == 1 ? Formula::literal(n, rng() % n, rng() & 1u)
                              : random_leveled(n, depth - 1, opposite(g), rng));
  }
  return Formula::gate(g, std::move(kids));
}

// Symmetrised random formulas under random pairs U ⊂ V.
TEST(Trace, RandomInvariantFormulas) {
  std::mt19937_64 rng(41);
  int traced = 0;
  for (int t = 0; t < 3000 && traced < 150; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t depth = 2 + rng() % 3;
    const Gate g = rng() & 1u ? Gate::And : Gate::Or;
    const Subspace v = ref::random_subspace(n, 1 + rng() % n, rng);
    std::vector<BitVec> sub;
    for (const auto& r : v.basis())
      if (rng() % 2) sub.push_back(r);
    const Subspace u = Subspace::span(sub, n);
    if (u == v) continue;
    const Formula seed = random_leveled(n, depth - 1, opposite(g), rng);
    std::vector<Formula> orbit;
    for (const auto& x : u.elements()) orbit.push_back(act(seed, x));
    const Formula f = Formula::gate(g, orbit);
    if (evaluate_on(f, v) != Constancy::NonConstant) continue;
    const TraceNode tr = trace_lower_bound(f, u, v);
    expect_verified(tr, f, u, v);
    ++traced;
  }
  EXPECT_GE(traced, 100);
}

TEST(TraceJson, RoundTrip) {
  const Formula f = synth_parity(4, 6, Gate::Or);
  const Subspace p = even_weight_subspace(6);
  const TraceNode tr = trace_lower_bound(f, p, Subspace::full(6));
  const json doc = trace_to_json(tr);
  EXPECT_EQ(doc["format"], "trace/1");
  const TraceNode back = trace_from_json(json::parse(doc.dump()));
  EXPECT_EQ(trace_to_json(back), doc);
  expect_verified(back, f, p, Subspace::full(6));
  EXPECT_THROW(trace_from_json(json{{"format", "trace/2"}}), ParseError);
  EXPECT_THROW(trace_from_json(json{{"format", "trace/1"}, {"root", {{"step", "bogus"}}}}), ParseError);
}

TEST(TraceVerify, DetectsTampering) {
  const Formula f = synth_parity(3, 4, Gate::Or);
  const Subspace p = even_weight_subspace(4);
  const json good = trace_to_json(trace_lower_bound(f, p, Subspace::full(4)));

  auto rejects = [&](auto mutate) {
    json doc = good;
    mutate(doc["root"]);
    return !verify_trace(trace_from_json(doc), f, p, Subspace::full(4)).ok;
  };
  EXPECT_TRUE(rejects([](json& r) { r["m"] = 5; }));
  EXPECT_TRUE(rejects([](json& r) { r["claimed_bound"] = 8.0; }));
  EXPECT_TRUE(rejects([](json& r) { r["a"] = r["a"].get<int>() + 1; }));
  EXPECT_TRUE(rejects([](json& r) { r["case"] = 3 - r["case"].get<int>(); }));
  EXPECT_TRUE(rejects([](json& r) { r["size"] = 99; }));
  EXPECT_TRUE(rejects([](json& r) { r["shift"] = "1000"; }));
  EXPECT_TRUE(rejects([](json& r) { r["t"] = subspace_to_json(Subspace::full(4)); }));
  EXPECT_TRUE(rejects([](json& r) { r["child"]["m"] = 1; }));
  EXPECT_TRUE(rejects([](json& r) { r.erase("child"); }));

  // Wrong formula for an otherwise valid trace.
  const Formula other = synth_parity(3, 4, Gate::And);
  EXPECT_FALSE(verify_trace(trace_from_json(good), other, p, Subspace::full(4)).ok);
}

}  // namespace
}  // namespace sinv
