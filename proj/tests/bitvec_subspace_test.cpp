#include <random>

#include <gtest/gtest.h>

#include "sinv/min_weight.hpp"
#include "sinv/reference.hpp"
#include "sinv/subspace.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {
namespace {

BitVec bv(const char* s) { return BitVec::from_string(s); }

Subspace sp(std::initializer_list<const char*> rows, std::size_t n) {
  std::vector<BitVec> v;
  for (auto r : rows) v.push_back(bv(r));
  return Subspace::span(v, n);
}

TEST(BitVec, WeightXorDot) {
  const BitVec a = bv("1101");
  EXPECT_EQ(a.weight(), 3u);
  EXPECT_EQ((a ^ bv("0101")).to_string(), "1000");
  EXPECT_TRUE(dot(a, bv("1000")));
  EXPECT_FALSE(dot(a, bv("1100")));
  EXPECT_EQ(a.lowest_set(), 0u);
  EXPECT_EQ(BitVec(4).lowest_set(), 4u);
}

TEST(BitVec, MultiWord) {
  BitVec a(200);
  a.set(3);
  a.set(150);
  EXPECT_EQ(a.weight(), 2u);
  EXPECT_TRUE(a.test(150));
  EXPECT_EQ(BitVec::from_string(a.to_string()), a);
  EXPECT_TRUE(dot(a, BitVec::unit(200, 150)));
}

TEST(BitVec, LexOrderPutsEarlierSupportFirst) {
  EXPECT_TRUE(lex_less(bv("100"), bv("010")));
  EXPECT_TRUE(lex_less(bv("010"), bv("001")));
  EXPECT_FALSE(lex_less(bv("001"), bv("001")));
  EXPECT_TRUE(lighter(bv("001"), bv("110")));
}

TEST(BitVec, RejectsBadInput) {
  EXPECT_THROW(BitVec::from_string("10a"), ParseError);
  EXPECT_THROW(BitVec(0), PreconditionError);
  EXPECT_THROW(BitVec(BitVec::kMaxBits + 1), PreconditionError);
}

TEST(Span, Examples) {
  EXPECT_EQ(Subspace::span({}, 3).dim(), 0u);
  const Subspace s = sp({"110", "011", "101"}, 3);
  ASSERT_EQ(s.dim(), 2u);
  EXPECT_EQ(s.basis()[0].to_string(), "101");
  EXPECT_EQ(s.basis()[1].to_string(), "011");
  EXPECT_EQ(sp({"100", "010", "001"}, 3), Subspace::full(3));
}

TEST(Span, OrderIndependent) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BitVec> rows;
    for (int i = 0; i < 5; ++i) rows.push_back(BitVec::from_word(9, rng()));
    const Subspace a = Subspace::span(rows, 9);
    std::shuffle(rows.begin(), rows.end(), rng);
    EXPECT_EQ(Subspace::span(rows, 9), a);
    EXPECT_EQ(ref::elements(a), ref::closure(rows, 9));
  }
}

TEST(Span, MismatchedRowLength) { EXPECT_THROW(Subspace::span({bv("10"), bv("101")}, 3), DimensionMismatch); }

TEST(Subspace, SumIntersectContains) {
  EXPECT_EQ(sum(sp({"100"}, 3), sp({"010"}, 3)), sp({"100", "010"}, 3));
  const Subspace p3 = even_weight_subspace(3);
  EXPECT_EQ(intersect(p3, sp({"111", "100"}, 3)), sp({"011"}, 3));
  EXPECT_TRUE(p3.contains(bv("110")));
  EXPECT_FALSE(p3.contains(bv("100")));
  EXPECT_THROW(sum(Subspace(3), Subspace(4)), DimensionMismatch);
  EXPECT_THROW(p3.contains(bv("11")), DimensionMismatch);
}

TEST(Dual, Examples) {
  EXPECT_TRUE(dual(Subspace::full(3)).is_zero());
  EXPECT_EQ(dual(even_weight_subspace(3)), sp({"111"}, 3));
  EXPECT_EQ(dual(sp({"110", "011"}, 3)), sp({"111"}, 3));
}

// Complement facts, exhaustively over every pair of subspaces of {0,1}^n.
TEST(Dual, ComplementFactsExhaustive) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto all = ref::all_subspaces(n);
    for (const auto& a : all) {
      const Subspace d = dual(a);
      ASSERT_EQ(dual(d), a);
      ASSERT_EQ(a.dim() + d.dim(), n);
      ASSERT_EQ(ref::elements(d), ref::orthogonal(ref::elements(a), n));
    }
    if (n > 4) continue;
    for (const auto& a : all) {
      for (const auto& b : all) {
        ASSERT_EQ(a.is_subspace_of(b), dual(b).is_subspace_of(dual(a)));
        ASSERT_EQ(dual(sum(a, b)), intersect(dual(a), dual(b)));
        ASSERT_EQ(dual(intersect(a, b)), sum(dual(a), dual(b)));
        ASSERT_EQ(ref::elements(intersect(a, b)), ref::intersection(ref::elements(a), ref::elements(b)));
      }
    }
  }
}

TEST(Dual, SixDimensionalInvolution) {
  for (const auto& a : ref::all_subspaces(6)) {
    ASSERT_EQ(dual(dual(a)), a);
    ASSERT_EQ(a.dim() + dual(a).dim(), 6u);
  }
}

TEST(Dual, RandomizedUpTo20) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const Subspace a = ref::random_subspace(n, rng() % (n + 1), rng);
    const Subspace b = ref::random_subspace(n, rng() % (n + 1), rng);
    ASSERT_EQ(dual(dual(a)), a);
    ASSERT_EQ(a.dim() + dual(a).dim(), n);
    ASSERT_EQ(dual(sum(a, b)), intersect(dual(a), dual(b)));
    const Subspace da = dual(a);
    for (const auto& r : da.basis())
      for (const auto& s : a.basis()) ASSERT_FALSE(dot(r, s));
  }
}

TEST(SubspaceText, RoundTripAndErrors) {
  const Subspace s = sp({"1100", "0011"}, 4);
  EXPECT_EQ(Subspace::from_text(s.to_text()), s);
  EXPECT_EQ(Subspace::from_text("# comment\n\nn=3\n110 # trailing\n011\n"), sp({"110", "011"}, 3));
  EXPECT_EQ(Subspace::from_text("n=5\n"), Subspace(5));
  try {
    Subspace::from_text("n=3\n110\n11\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(Subspace::from_text("110\n"), ParseError);
  EXPECT_THROW(Subspace::from_text("n=3\n1x0\n"), ParseError);
  EXPECT_THROW(Subspace::from_text(""), ParseError);
}

TEST(MinWeight, Examples) {
  const auto r1 = min_weight_in_difference(dual(even_weight_subspace(3)), dual(Subspace::full(3)));
  EXPECT_EQ(r1.weight, 3u);
  EXPECT_EQ(r1.witness.to_string(), "111");
  const auto r2 = min_weight_in_difference(Subspace::full(3), sp({"111"}, 3));
  EXPECT_EQ(r2.weight, 1u);
  EXPECT_EQ(r2.witness.to_string(), "100");
  EXPECT_THROW(min_weight_in_difference(Subspace::full(3), Subspace::full(3)), PreconditionError);
  EXPECT_THROW(min_weight_in_difference(sp({"100"}, 3), sp({"010"}, 3)), PreconditionError);
}

TEST(MinWeight, MatchesNaiveScanAndIgnoresJobs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const Subspace a = ref::random_subspace(n, 1 + rng() % n, rng);
    if (a.is_zero()) continue;
    std::vector<BitVec> sub;
    for (std::size_t i = 0; i + 1 < a.dim(); ++i)
      if (rng() & 1u) sub.push_back(a.basis()[i]);
    const Subspace b = Subspace::span(sub, n);
    if (b == a) continue;
    const auto expect = ref::min_weight_difference(ref::elements(a), ref::elements(b));
    ASSERT_TRUE(expect);
    for (unsigned jobs : {1u, 3u, 8u}) {
      const auto got = min_weight_in_difference(a, b, Exec{jobs});
      ASSERT_EQ(got.witness, *expect) << "jobs=" << jobs;
      ASSERT_EQ(got.weight, expect->weight());
    }
  }
}

TEST(MinWeight, CapEnforced) {
  EXPECT_THROW(min_weight_in_difference(Subspace::full(30), Subspace(30)), CapExceeded);
}

}  // namespace
}  // namespace sinv
