#include <gtest/gtest.h>

#include "sinv/oracle.hpp"
#include "sinv/reference.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {
namespace {

Formula x(std::size_t n, std::size_t i, bool neg = false) { return Formula::literal(n, i - 1, neg); }

SeparatorSpec parity_spec(std::size_t n, bool b = false) { return {even_weight_subspace(n), Subspace::full(n), b}; }

std::vector<std::pair<Subspace, Subspace>> codim1_pairs(std::size_t n) {
  std::vector<std::pair<Subspace, Subspace>> out;
  const auto all = ref::all_subspaces(n);
  for (const auto& v : all)
    for (const auto& u : all)
      if (u.is_subspace_of(v) && u.dim() + 1 == v.dim()) out.emplace_back(u, v);
  return out;
}

TEST(VerifySeparator, Examples) {
  const Formula dnf = make_or({make_and({x(2, 1), x(2, 2, true)}), make_and({x(2, 1, true), x(2, 2)})});
  EXPECT_TRUE(verify_separator(dnf, parity_spec(2)));
  EXPECT_FALSE(verify_separator(dnf, parity_spec(2, true)));
  EXPECT_FALSE(verify_separator(Formula::constant(2, false), parity_spec(2)));
  EXPECT_TRUE(verify_separator(synth_parity(2, 3, Gate::Or), parity_spec(3)));
  EXPECT_THROW(verify_separator(dnf, {Subspace(2), Subspace::full(2), false}), PreconditionError);
}

TEST(Oracle, Examples) {
  const auto p2 = min_invariant_depth2_size(parity_spec(2), false);
  EXPECT_EQ(p2.m, 2u);
  EXPECT_EQ(p2.min_size, 2u);
  EXPECT_EQ(p2.min_leafsize, 4u);
  EXPECT_TRUE(verify_separator(p2.witness, parity_spec(2)));

  const auto p3 = min_invariant_depth2_size(parity_spec(3), false);
  EXPECT_EQ(p3.min_size, 4u);
  EXPECT_EQ(p3.min_leafsize, 12u);

  // K3: Z = span{111}, Z0 = {0}.
  const SeparatorSpec k3{Subspace(3), Subspace::span({BitVec::from_string("111")}, 3), false};
  const auto r = min_invariant_depth2_size(k3, false);
  EXPECT_EQ(r.m, 1u);
  EXPECT_EQ(r.min_size, 1u);
  EXPECT_EQ(r.min_leafsize, 1u);
  EXPECT_TRUE(verify_separator(r.witness, k3));

  EXPECT_THROW(min_invariant_depth2_size(parity_spec(5), false), CapExceeded);
}

TEST(Oracle, TermCount) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= 3;
    EXPECT_EQ(all_terms(n).size(), p - 1);
  }
}

// Plain subset enumeration over all terms: no DP, no orbit grouping.
std::pair<std::uint64_t, std::uint64_t> brute_min(const SeparatorSpec& spec) {
  const std::size_t n = spec.u.ambient_dim();
  const auto terms = all_terms(n);
  std::uint64_t best_size = ~0ull, best_leaf = ~0ull;
  for (bool cnf : {false, true}) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << terms.size()); ++mask) {
      std::vector<Formula> clauses;
      std::uint64_t lits = 0;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!((mask >> i) & 1u)) continue;
        lits += terms[i].width();
        std::vector<Formula> l;
        for (std::size_t j = 0; j < n; ++j) {
          if (!((terms[i].positions >> j) & 1u)) continue;
          const bool one = (terms[i].pattern >> j) & 1u;
          l.push_back(Formula::literal(n, j, cnf ? one : !one));
        }
        clauses.push_back(Formula::gate(cnf ? Gate::Or : Gate::And, l));
      }
      if (std::popcount(mask) >= static_cast<int>(best_size) && lits >= best_leaf) continue;
      const Formula f = Formula::gate(cnf ? Gate::And : Gate::Or, clauses);
      if (!verify_separator(f, spec)) continue;
      best_size = std::min<std::uint64_t>(best_size, std::popcount(mask));
      best_leaf = std::min(best_leaf, lits);
    }
  }
  return {best_size, best_leaf};
}

TEST(Oracle, MatchesSubsetEnumerationAtN2) {
  for (const auto& [u, v] : codim1_pairs(2)) {
    for (bool b : {false, true}) {
      const SeparatorSpec spec{u, v, b};
      const auto want = brute_min(spec);
      const auto got = min_invariant_depth2_size(spec, false);
      ASSERT_EQ(got.min_size, want.first);
      ASSERT_EQ(got.min_leafsize, want.second);
    }
  }
}

// Subset enumeration over the terms that miss the forbidden side, on bitmasks.
std::pair<std::uint64_t, std::uint64_t> brute_min_masks(const SeparatorSpec& spec) {
  const std::size_t n = spec.u.ambient_dim();
  const auto pts = spec.v.elements();
  std::uint64_t best_size = ~0ull, best_leaf = ~0ull;
  for (bool cnf : {false, true}) {
    std::uint32_t target = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const bool want = spec.u.contains(pts[k]) ? spec.polarity : !spec.polarity;
      if (want != cnf) target |= 1u << k;
    }
    std::vector<std::pair<std::uint32_t, std::size_t>> ok;  // (cover, width)
    for (const auto& t : all_terms(n)) {
      std::uint32_t cov = 0;
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (t.contains(pts[k].word(0))) cov |= 1u << k;
      if ((cov & ~target) == 0 && cov) ok.emplace_back(cov, t.width());
    }
    if (ok.size() > 22) throw std::runtime_error("too many admissible terms for subset enumeration");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ok.size()); ++mask) {
      std::uint32_t cov = 0;
      std::uint64_t lits = 0;
      for (std::size_t i = 0; i < ok.size(); ++i) {
        if (!((mask >> i) & 1u)) continue;
        cov |= ok[i].first;
        lits += ok[i].second;
      }
      if (cov != target) continue;
      best_size = std::min<std::uint64_t>(best_size, std::popcount(mask));
      best_leaf = std::min(best_leaf, lits);
    }
  }
  return {best_size, best_leaf};
}

TEST(Oracle, MatchesAdmissibleSubsetEnumerationAtN3) {
  int checked = 0;
  for (const auto& [u, v] : codim1_pairs(3)) {
    for (bool b : {false, true}) {
      const SeparatorSpec spec{u, v, b};
      std::pair<std::uint64_t, std::uint64_t> want;
      try {
        want = brute_min_masks(spec);
      } catch (const std::runtime_error&) {
        continue;
      }
      const auto got = min_invariant_depth2_size(spec, false);
      ASSERT_EQ(got.min_size, want.first) << u.to_text() << v.to_text() << b;
      ASSERT_EQ(got.min_leafsize, want.second);
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

// Depth-2 bound check over every codimension-1 pair with n <= 4, both polarities.
TEST(Oracle, BaseCaseBoundExhaustive) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& [u, v] : codim1_pairs(n)) {
      const std::size_t m = ref::min_weight_perp_difference(u, v).value();
      for (bool b : {false, true}) {
        for (bool inv : {false, true}) {
          const SeparatorSpec spec{u, v, b};
          const auto r = min_invariant_depth2_size(spec, inv);
          ASSERT_EQ(r.m, m);
          ASSERT_GE(r.min_size, std::uint64_t{1} << (m - 1)) << u.to_text() << v.to_text();
          ASSERT_GE(r.min_leafsize, m * (std::uint64_t{1} << (m - 1)));
          ASSERT_TRUE(verify_separator(r.witness, spec));
          ASSERT_TRUE(verify_separator(r.leafsize_witness, spec));
          ASSERT_EQ(r.witness.depth(), 2u);
          if (inv) {
            ASSERT_TRUE(is_invariant(r.witness, u));
            ASSERT_TRUE(is_invariant(r.leafsize_witness, u));
          }
        }
      }
    }
  }
}

TEST(Oracle, InvarianceDoesNotChangeParityOptimum) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (bool b : {false, true}) {
      const auto free = min_invariant_depth2_size(parity_spec(n, b), false);
      const auto inv = min_invariant_depth2_size(parity_spec(n, b), true);
      EXPECT_EQ(free.min_size, inv.min_size);
      EXPECT_EQ(free.min_leafsize, inv.min_leafsize);
      EXPECT_EQ(free.min_size, std::uint64_t{1} << (n - 1));
      EXPECT_EQ(free.min_leafsize, n * (std::uint64_t{1} << (n - 1)));
    }
  }
}

TEST(Oracle, IndependentOfJobs) {
  for (const auto& [u, v] : codim1_pairs(4)) {
    const SeparatorSpec spec{u, v, false};
    const auto a = min_invariant_depth2_size(spec, false, Exec{1});
    const auto b = min_invariant_depth2_size(spec, false, Exec{8});
    ASSERT_EQ(a.witness, b.witness);
    ASSERT_EQ(a.leafsize_witness, b.leafsize_witness);
  }
}

}  // namespace
}  // namespace sinv
