#pragma once

// Deliberately naive set-based routines. They share no code with the
// echelon-form algorithms and serve as independent ground truth for the
// verifier, the self-test and the unit tests. Everything here is
// exponential in n; keep n small.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/subspace.hpp"

namespace sinv::ref {

using VecSet = std::unordered_set<BitVec>;

inline constexpr std::size_t kMaxRefDim = 22;

inline void check_n(std::size_t n) {
  if (n > kMaxRefDim) throw CapExceeded("reference enumeration over n=" + std::to_string(n));
}

inline std::vector<BitVec> all_vectors(std::size_t n) {
  check_n(n);
  std::vector<BitVec> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) out.push_back(BitVec::from_word(n, x));
  return out;
}

/// Closure of {0} under XOR with the generators.
inline VecSet closure(const std::vector<BitVec>& gens, std::size_t n) {
  VecSet out{BitVec(n)};
  std::vector<BitVec> frontier{BitVec(n)};
  while (!frontier.empty()) {
    std::vector<BitVec> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        BitVec y = x ^ g;
        if (out.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

inline VecSet elements(const Subspace& s) { return closure(s.basis(), s.ambient_dim()); }

/// {x : <x, g> = 0 for every g}, by scanning all of {0,1}^n.
inline VecSet orthogonal(const VecSet& s, std::size_t n) {
  VecSet out;
  for (const auto& x : all_vectors(n)) {
    bool ok = true;
    for (const auto& g : s) {
      if (dot(x, g)) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(x);
  }
  return out;
}

inline bool subset(const VecSet& a, const VecSet& b) {
  return std::all_of(a.begin(), a.end(), [&](const BitVec& x) { return b.count(x) > 0; });
}

inline VecSet intersection(const VecSet& a, const VecSet& b) {
  VecSet out;
  for (const auto& x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

inline VecSet sumset(const VecSet& a, const VecSet& b) {
  VecSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x ^ y);
  return out;
}

inline std::size_t log2_size(const VecSet& s) {
  std::size_t d = 0;
  while ((std::size_t{1} << d) < s.size()) ++d;
  return d;
}

/// Lightest (then lexicographically first) element of A \ B.
inline std::optional<BitVec> min_weight_difference(const VecSet& a, const VecSet& b) {
  std::optional<BitVec> best;
  for (const auto& x : a) {
    if (b.count(x)) continue;
    if (!best || lighter(x, *best)) best = x;
  }
  return best;
}

/// m = min{|x| : x ⊥ U, x not ⊥ V}, by a scan over all of {0,1}^n.
inline std::optional<std::size_t> min_weight_perp_difference(const Subspace& u, const Subspace& v) {
  const std::size_t n = u.ambient_dim();
  std::optional<std::size_t> best;
  for (const auto& x : all_vectors(n)) {
    bool perp_u = true;
    for (const auto& g : u.basis()) perp_u = perp_u && !dot(x, g);
    if (!perp_u) continue;
    bool perp_v = true;
    for (const auto& g : v.basis()) perp_v = perp_v && !dot(x, g);
    if (perp_v) continue;
    if (!best || x.weight() < *best) best = x.weight();
  }
  return best;
}

inline bool is_codim1(const VecSet& sub, const VecSet& sup) { return subset(sub, sup) && sup.size() == 2 * sub.size(); }

/// ((S,T),(U,V)) membership checked on element sets.
inline bool is_quad(const VecSet& s, const VecSet& t, const VecSet& u, const VecSet& v) {
  if (!is_codim1(s, t) || !is_codim1(u, v)) return false;
  const VecSet meet = intersection(t, u);
  const VecSet join = sumset(t, u);
  return meet.size() == s.size() && subset(meet, s) && join.size() == v.size() && subset(join, v);
}

inline bool parity(const BitVec& x) { return x.weight() % 2 == 1; }

/// Every subspace of {0,1}^n, grown by adding one vector at a time.
inline std::vector<Subspace> all_subspaces(std::size_t n) {
  check_n(n);
  std::map<std::string, Subspace> seen;
  std::vector<Subspace> frontier{Subspace(n)};
  seen.emplace(Subspace(n).to_text(), Subspace(n));
  const auto vecs = all_vectors(n);
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier) {
      for (const auto& x : vecs) {
        if (s.contains(x)) continue;
        Subspace t = sum(s, Subspace::span({x}, n));
        if (seen.emplace(t.to_text(), t).second) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subspace> out;
  for (auto& [key, s] : seen) out.push_back(s);
  return out;
}

/// Span of `count` uniformly random vectors.
template <class Rng>
Subspace random_subspace(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<BitVec> gens;
  for (std::size_t i = 0; i < count; ++i) {
    BitVec v(n);
    for (std::size_t j = 0; j < n; ++j) v.set(j, rng() & 1u);
    gens.push_back(v);
  }
  return Subspace::span(gens, n);
}

}  // namespace sinv::ref
