#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/formula.hpp"
#include "sinv/subspace.hpp"

namespace sinv {

/// Largest n for which semantic checks enumerate all of {0,1}^n.
inline constexpr std::size_t kMaxSemanticDim = 20;

inline bool evaluate(const Formula& f, const BitVec& x) {
  switch (f.kind()) {
    case NodeKind::Const:
      return f.value();
    case NodeKind::Literal:
      return x.test(f.var()) != f.negated();
    case NodeKind::Gate:
      break;
  }
  const bool decisive = f.gate_type() == Gate::Or;
  for (const auto& c : f.children())
    if (evaluate(c, x) == decisive) return decisive;
  return !decisive;
}

inline bool evaluate_checked(const Formula& f, const BitVec& x) {
  if (x.size() != f.ambient_dim()) {
    throw DimensionMismatch("evaluating a formula over n=" + std::to_string(f.ambient_dim()) + " on a vector of length " +
                            std::to_string(x.size()));
  }
  return evaluate(f, x);
}

enum class Constancy { AllZero, AllOne, NonConstant };

inline const char* constancy_name(Constancy c) {
  switch (c) {
    case Constancy::AllZero:
      return "all-0";
    case Constancy::AllOne:
      return "all-1";
    case Constancy::NonConstant:
      break;
  }
  return "non-constant";
}

template <class Range>
Constancy evaluate_on(const Formula& f, const Range& points) {
  bool seen0 = false;
  bool seen1 = false;
  for (const BitVec& x : points) {
    if (evaluate_checked(f, x)) {
      seen1 = true;
    } else {
      seen0 = true;
    }
    if (seen0 && seen1) return Constancy::NonConstant;
  }
  if (!seen0 && !seen1) throw PreconditionError("evaluate_on: empty point set");
  return seen1 ? Constancy::AllOne : Constancy::AllZero;
}

inline Constancy evaluate_on(const Formula& f, const Subspace& s) { return evaluate_on(f, s.elements()); }

/// Full truth table, bit x of the result being F(x) where coordinate i of x
/// is bit i of the index.
class TruthTable {
 public:
  explicit TruthTable(std::size_t n) : n_(n), words_(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0) {}

  std::size_t vars() const noexcept { return n_; }
  std::uint64_t points() const noexcept { return std::uint64_t{1} << n_; }
  bool get(std::uint64_t x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

inline TruthTable truth_table(const Formula& f) {
  const std::size_t n = f.ambient_dim();
  if (n > kMaxSemanticDim) {
    throw CapExceeded("truth table over n=" + std::to_string(n) + " (cap " + std::to_string(kMaxSemanticDim) +
                      "); use sampling mode");
  }
  const std::uint64_t used = std::uint64_t{1} << n;
  const std::uint64_t tail_mask = used >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
  std::unordered_map<const detail::Node*, TruthTable> memo;

  auto literal_table = [&](std::size_t var) {
    TruthTable t(n);
    auto& w = t.words();
    if (var < 6) {
      static constexpr std::uint64_t kPatterns[6] = {0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull,
                                                     0xf0f0f0f0f0f0f0f0ull, 0xff00ff00ff00ff00ull,
                                                     0xffff0000ffff0000ull, 0xffffffff00000000ull};
      for (auto& word : w) word = kPatterns[var];
    } else {
      const std::size_t stride = std::size_t{1} << (var - 6);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = ((k / stride) & 1u) ? ~std::uint64_t{0} : 0;
    }
    return t;
  };

  std::function<const TruthTable&(const Formula&)> table = [&](const Formula& g) -> const TruthTable& {
    if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
    TruthTable t(n);
    auto& w = t.words();
    switch (g.kind()) {
      case NodeKind::Const:
        for (auto& word : w) word = g.value() ? ~std::uint64_t{0} : 0;
        break;
      case NodeKind::Literal:
        t = literal_table(g.var());
        if (g.negated())
          for (auto& word : t.words()) word = ~word;
        break;
      case NodeKind::Gate: {
        const bool is_and = g.gate_type() == Gate::And;
        for (auto& word : w) word = is_and ? ~std::uint64_t{0} : 0;
        for (const auto& c : g.children()) {
          const auto& cw = table(c).words();
          for (std::size_t k = 0; k < w.size(); ++k) w[k] = is_and ? (w[k] & cw[k]) : (w[k] | cw[k]);
        }
        break;
      }
    }
    t.words().back() &= tail_mask;
    return memo.emplace(g.id(), std::move(t)).first->second;
  };
  return table(f);
}

/// F^u: swaps x_i and ~x_i wherever u_i = 1. Computes F^u(x) = F(x ⊕ u).
inline Formula act(const Formula& f, const BitVec& u) {
  if (u.size() != f.ambient_dim()) {
    throw DimensionMismatch("acting on a formula over n=" + std::to_string(f.ambient_dim()) + " with a vector of length " +
                            std::to_string(u.size()));
  }
  if (u.is_zero()) return f;
  std::unordered_map<const detail::Node*, Formula> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    switch (g.kind()) {
      case NodeKind::Const:
        return g;
      case NodeKind::Literal:
        return u.test(g.var()) ? Formula::literal(g.ambient_dim(), g.var(), !g.negated()) : g;
      case NodeKind::Gate:
        break;
    }
    if (auto it = memo.find(g.id()); it != memo.end()) return it->second;
    std::vector<Formula> kids;
    kids.reserve(g.children().size());
    bool changed = false;
    for (const auto& c : g.children()) {
      kids.push_back(go(c));
      changed = changed || kids.back() != c;
    }
    Formula out = changed ? Formula::gate(g.gate_type(), std::move(kids)) : g;
    memo.emplace(g.id(), out);
    return out;
  };
  return go(f);
}

/// Syntactic invariance: F^b = F for every basis vector b of U (enough,
/// since the action is a homomorphism).
inline bool is_invariant(const Formula& f, const Subspace& u) {
  if (u.ambient_dim() != f.ambient_dim()) throw DimensionMismatch("is_invariant: formula and subspace dimensions differ");
  for (const auto& b : u.basis())
    if (act(f, b) != f) return false;
  return true;
}

/// Semantic invariance: F(x) = F(x ⊕ b) for all x and every basis vector b,
/// checked on the full truth table. Throws CapExceeded beyond kMaxSemanticDim.
inline bool is_semantically_invariant(const Formula& f, const Subspace& u) {
  if (u.ambient_dim() != f.ambient_dim()) {
    throw DimensionMismatch("is_semantically_invariant: formula and subspace dimensions differ");
  }
  const TruthTable t = truth_table(f);
  for (const auto& b : u.basis()) {
    const std::uint64_t shift = b.word(0);
    for (std::uint64_t x = 0; x < t.points(); ++x)
      if (t.get(x) != t.get(x ^ shift)) return false;
  }
  return true;
}

/// Verdict of the sampling check: a counterexample is conclusive, its absence is not.
struct SampledInvariance {
  bool counterexample_found = false;
  BitVec point;
  BitVec shift;
  std::size_t samples = 0;
  /// Always true: a clean run only says no violation was seen.
  bool one_sided = true;
};

inline SampledInvariance sample_semantic_invariance(const Formula& f, const Subspace& u, std::size_t samples,
                                                    std::uint64_t seed) {
  if (u.ambient_dim() != f.ambient_dim()) throw DimensionMismatch("sampling: formula and subspace dimensions differ");
  std::mt19937_64 rng(seed);
  const std::size_t n = f.ambient_dim();
  SampledInvariance out;
  out.samples = samples;
  if (u.is_zero()) return out;
  for (std::size_t s = 0; s < samples; ++s) {
    BitVec x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rng() & 1u);
    const BitVec& b = u.basis()[rng() % u.dim()];
    if (evaluate(f, x) != evaluate(f, x ^ b)) {
      out.counterexample_found = true;
      out.point = x;
      out.shift = b;
      return out;
    }
  }
  return out;
}

/// Largest group dimension for orbit enumeration.
inline constexpr std::size_t kMaxOrbitDim = 20;

struct OrbitDecomposition {
  Formula base;
  Subspace group;
  Subspace stabilizer;
  /// Orbit elements in canonical order.
  std::vector<Formula> orbit;
  /// dim(group) - dim(stabilizer) + 1, so |orbit| = 2^(a-1).
  std::size_t a = 1;
};

/// Orbit of G under U by closure under the basis actions; the stabilizer is
/// spanned by the Schreier elements u_H ⊕ b ⊕ u_{H^b}, where u_H is the
/// group element that first reached H.
inline OrbitDecomposition orbit_stabilizer(const Formula& g, const Subspace& u) {
  if (u.ambient_dim() != g.ambient_dim()) throw DimensionMismatch("orbit_stabilizer: dimensions differ");
  if (u.dim() > kMaxOrbitDim) {
    throw CapExceeded("orbit enumeration under a group of dimension " + std::to_string(u.dim()) + " (cap " +
                      std::to_string(kMaxOrbitDim) + ")");
  }
  const std::size_t n = u.ambient_dim();
  std::unordered_map<Formula, BitVec> reached{{g, BitVec(n)}};
  std::vector<Formula> queue{g};
  std::vector<BitVec> stab_gens;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Formula h = queue[head];
    const BitVec uh = reached.at(h);
    for (const auto& b : u.basis()) {
      Formula next = act(h, b);
      const BitVec un = uh ^ b;
      auto [it, fresh] = reached.emplace(next, un);
      if (fresh) {
        queue.push_back(next);
      } else if (!(it->second == un)) {
        stab_gens.push_back(it->second ^ un);
      }
    }
  }
  OrbitDecomposition out{g, u, Subspace::span(stab_gens, n), std::move(queue), 1};
  std::sort(out.orbit.begin(), out.orbit.end());
  out.a = u.dim() - out.stabilizer.dim() + 1;
  if (out.orbit.size() != (std::size_t{1} << (out.a - 1))) throw Error("orbit_stabilizer: orbit size mismatch");
  return out;
}

}  // namespace sinv
