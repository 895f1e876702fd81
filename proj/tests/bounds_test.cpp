#include <random>

#include <gtest/gtest.h>

#include "sinv/bounds.hpp"
#include "sinv/reference.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {
namespace {

TEST(TheoremBound, Examples) {
  EXPECT_EQ(theorem_bound(2, 4), 4.0);
  EXPECT_EQ(theorem_bound(3, 8), 8.0);
  for (std::size_t m = 1; m <= 30; ++m) {
    EXPECT_EQ(theorem_bound(1, static_cast<double>(m)), std::ldexp(1.0, static_cast<int>(m) - 1));
    EXPECT_EQ(BigInt(static_cast<std::uint64_t>(theorem_bound(1, static_cast<double>(m)))), base_case_bounds(m).size);
  }
  EXPECT_EQ(search_game_bound(2, 4), 2.0);
  EXPECT_NEAR(search_game_bound(3, 10), 3 * (std::cbrt(10.0) - 1), 1e-12);
  EXPECT_THROW(theorem_bound(0, 4), PreconditionError);
  EXPECT_THROW(theorem_bound(2, 0), PreconditionError);
}

TEST(TheoremBound, BaseCase) {
  const auto b = base_case_bounds(3);
  EXPECT_EQ(b.size, 4);
  EXPECT_EQ(b.leafsize, 12);
  EXPECT_THROW(base_case_bounds(0), PreconditionError);
}

TEST(TheoremBound, MonotoneInM) {
  for (double d : {1.0, 2.0, 3.0, 7.0, 100.0}) {
    double prev = 0;
    for (int m = 1; m <= 200; ++m) {
      const double b = theorem_bound(d, m);
      EXPECT_GE(b, prev);
      prev = b;
    }
  }
}

TEST(TheoremBound, ConvergesToUnboundedDepth) {
  for (double m : {2.0, 10.0, 100.0, 1e3, 1e6}) {
    const double lim = unbounded_depth_bound(m);
    double prev_gap = std::abs(theorem_bound(1, m) - lim);
    for (double d : {2.0, 4.0, 16.0, 100.0, 1000.0, 1e4}) {
      const double gap = std::abs(theorem_bound(d, m) - lim);
      EXPECT_LE(gap, prev_gap * (1 + 1e-12)) << m << " " << d;
      prev_gap = gap;
    }
    EXPECT_LT(std::abs(theorem_bound(1e4, m) - lim) / lim, 0.01);
  }
}

TEST(Abc, Examples) {
  const auto e = abc_inequality(2, 8, 2);
  EXPECT_NEAR(e.lhs, 6, 1e-12);
  EXPECT_NEAR(e.rhs, 6, 1e-12);
  EXPECT_TRUE(e.holds);
  EXPECT_TRUE(e.equality);
  const auto t = abc_inequality(1, 1, 1);
  EXPECT_DOUBLE_EQ(t.lhs, 2);
  EXPECT_DOUBLE_EQ(t.rhs, 2);
  EXPECT_TRUE(t.equality);
  EXPECT_FALSE(abc_inequality(3, 8, 2).equality);
  EXPECT_THROW(abc_inequality(0.5, 2, 2), PreconditionError);
}

TEST(Abc, GridAndRandomSweep) {
  const double grid[] = {1, 1.5, 2, 4, 8};
  for (double a : grid)
    for (double b : grid)
      for (double c : grid) EXPECT_TRUE(abc_inequality(a, b, c).holds);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int i = 0; i < 100000; ++i) {
    const double a = 1 + 50 * unit(rng), b = 1 + 1e4 * unit(rng), c = 1 + 20 * unit(rng);
    const auto r = abc_inequality(a, b, c);
    ASSERT_TRUE(r.holds);
    const double root = std::pow(b, 1 / (c + 1));
    ASSERT_EQ(r.equality, std::abs(a - root) <= 1e-9 * std::max(1.0, root));
    // At the analytic minimiser both sides coincide.
    if (root >= 1) {
      const auto at = abc_inequality(root, b, c);
      ASSERT_TRUE(at.equality);
      ASSERT_NEAR(at.lhs, at.rhs, 1e-9 * at.rhs);
    }
  }
}

TEST(Certificate, Examples) {
  const auto r = lower_bound_certificate(even_weight_subspace(4), Subspace::full(4), 2);
  EXPECT_EQ(r.m, 4u);
  EXPECT_EQ(r.witness.to_string(), "1111");
  EXPECT_EQ(r.theorem_bound, 4.0);
  EXPECT_EQ(r.base_case_size, 8);
  EXPECT_EQ(r.base_case_leafsize, 32);
  EXPECT_EQ(r.search_game_bound, 2.0);

  // K3: Z = span{111}, Z0 = {0}.
  const Subspace z = Subspace::span({BitVec::from_string("111")}, 3);
  const auto k3 = lower_bound_certificate(Subspace(3), z, 1);
  EXPECT_EQ(k3.m, 1u);
  EXPECT_EQ(k3.theorem_bound, 1.0);

  EXPECT_THROW(lower_bound_certificate(z, z, 2), PreconditionError);
  EXPECT_THROW(lower_bound_certificate(z, Subspace(3), 2), PreconditionError);
}

TEST(Certificate, MatchesFullSpaceScan) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 16;
    const Subspace v = ref::random_subspace(n, 1 + rng() % n, rng);
    std::vector<BitVec> sub;
    for (const auto& r : v.basis())
      if (rng() % 3) sub.push_back(r);
    const Subspace u = Subspace::span(sub, n);
    if (u == v) continue;
    const auto r = lower_bound_certificate(u, v, 1 + rng() % 4, Exec{1 + static_cast<unsigned>(rng() % 4)});
    ASSERT_EQ(r.m, ref::min_weight_perp_difference(u, v).value());
  }
}

}  // namespace
}  // namespace sinv
