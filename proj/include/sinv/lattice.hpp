#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/exec.hpp"
#include "sinv/min_weight.hpp"
#include "sinv/subspace.hpp"

namespace sinv {

/// A linear projection from `source` onto `target` (target ⊆ source) that
/// fixes target pointwise and sends each extension vector to zero.
class ProjectionMap {
 public:
  ProjectionMap(Subspace source, Subspace target, std::vector<BitVec> extension)
      : source_(std::move(source)), target_(std::move(target)), extension_(std::move(extension)) {
    const std::size_t k = extension_.size();
    // Echelon rows tagged with the extension vectors they are built from.
    auto insert = [&](BitVec v, BitVec tag) {
      for (const auto& [row, rtag] : rows_) {
        if (v.test(row.lowest_set())) {
          v ^= row;
          tag ^= rtag;
        }
      }
      if (v.is_zero()) throw PreconditionError("projection: extension basis is not independent over the target");
      const std::size_t p = v.lowest_set();
      for (auto& [row, rtag] : rows_) {
        if (row.test(p)) {
          row ^= v;
          rtag ^= tag;
        }
      }
      rows_.emplace_back(v, tag);
    };
    const std::size_t tag_len = k == 0 ? 1 : k;
    for (const auto& r : target_.basis()) insert(r, BitVec(tag_len));
    for (std::size_t i = 0; i < k; ++i) insert(extension_[i], BitVec::unit(tag_len, i));
    if (rows_.size() != source_.dim()) throw PreconditionError("projection: target + extension does not span the source");
  }

  const Subspace& source() const noexcept { return source_; }
  const Subspace& target() const noexcept { return target_; }
  const std::vector<BitVec>& extension_basis() const noexcept { return extension_; }
  std::size_t codim() const noexcept { return extension_.size(); }

  /// Coefficients a_1..a_k in v = u + a_1 w_1 + ... + a_k w_k (bit i is a_{i+1}).
  BitVec coefficients(BitVec v) const {
    if (!source_.contains(v)) throw PreconditionError("projection: vector " + v.to_string() + " is not in the source");
    BitVec tag(codim() == 0 ? 1 : codim());
    for (const auto& [row, rtag] : rows_) {
      if (v.test(row.lowest_set())) {
        v ^= row;
        tag ^= rtag;
      }
    }
    return tag;
  }

  BitVec apply(const BitVec& v) const {
    const BitVec a = coefficients(v);
    BitVec out = v;
    for (std::size_t i = 0; i < codim(); ++i)
      if (a.test(i)) out ^= extension_[i];
    return out;
  }

 private:
  Subspace source_;
  Subspace target_;
  std::vector<BitVec> extension_;
  std::vector<std::pair<BitVec, BitVec>> rows_;
};

/// Projection V -> U whose extension basis is chosen greedily: each w_i is
/// the lightest (then lexicographically first) vector of V outside
/// span(U, w_1, ..., w_{i-1}). Such a map stretches weights by at most k+1.
inline ProjectionMap greedy_projection(const Subspace& u, const Subspace& v, Exec exec = {}) {
  require_same_ambient(u, v);
  if (!u.is_subspace_of(v)) throw PreconditionError("greedy_projection: U is not a subspace of V");
  std::vector<BitVec> ext;
  Subspace acc = u;
  while (acc.dim() < v.dim()) {
    BitVec w = min_weight_in_difference(v, acc, exec).witness;
    acc = sum(acc, Subspace::span({w}, v.ambient_dim()));
    ext.push_back(w);
  }
  return ProjectionMap(v, u, std::move(ext));
}

/// (sub, sup) with sub a codimension-1 subspace of sup.
struct SubspacePair {
  Subspace sub;
  Subspace sup;

  friend bool operator==(const SubspacePair&, const SubspacePair&) = default;
};

/// ((S,T),(U,V)) with both pairs codimension 1, T ∩ U = S and T + U = V.
struct SubspaceQuad {
  SubspacePair lower;  // (S, T)
  SubspacePair upper;  // (U, V)

  friend bool operator==(const SubspaceQuad&, const SubspaceQuad&) = default;
};

inline bool is_codim1_pair(const Subspace& sub, const Subspace& sup) {
  return sub.ambient_dim() == sup.ambient_dim() && sub.dim() + 1 == sup.dim() && sub.is_subspace_of(sup);
}

inline bool is_codim1_pair(const SubspacePair& p) { return is_codim1_pair(p.sub, p.sup); }

inline bool is_quad(const SubspaceQuad& q) {
  const auto& [s, t] = q.lower;
  const auto& [u, v] = q.upper;
  if (!is_codim1_pair(q.lower) || !is_codim1_pair(q.upper)) return false;
  if (s.ambient_dim() != u.ambient_dim()) return false;
  return intersect(t, u) == s && sum(t, u) == v;
}

inline SubspacePair make_codim1_pair(Subspace sub, Subspace sup) {
  if (!is_codim1_pair(sub, sup)) throw PreconditionError("not a codimension-1 pair");
  return {std::move(sub), std::move(sup)};
}

/// ((S,T),(U,V)) -> ((V^⊥,U^⊥),(T^⊥,S^⊥)).
inline SubspaceQuad dual_quad(const SubspaceQuad& q) {
  if (!is_quad(q)) throw PreconditionError("dual_quad: input is not a valid quadruple");
  return {{dual(q.upper.sup), dual(q.upper.sub)}, {dual(q.lower.sup), dual(q.lower.sub)}};
}

/// Given (S,T) codimension 1 and V ⊇ T, returns U ⊇ S with ((S,T),(U,V)) a
/// quadruple and min_{V∖U}|x| >= min_{T∖S}|y| / (dim V - dim T + 1).
///
/// U is the preimage of S under the greedy projection ρ: V -> T. Since ρ
/// kills the extension vectors, ρ^{-1}(S) = S + span(w_1, ..., w_k).
inline Subspace lift_pair(const Subspace& s, const Subspace& t, const Subspace& v, Exec exec = {}) {
  require_same_ambient(s, t);
  require_same_ambient(t, v);
  if (!is_codim1_pair(s, t)) throw PreconditionError("lift_pair: (S,T) is not a codimension-1 pair");
  if (!t.is_subspace_of(v)) throw PreconditionError("lift_pair: T is not a subspace of V");
  const ProjectionMap rho = greedy_projection(t, v, exec);
  std::vector<BitVec> rows = s.basis();
  rows.insert(rows.end(), rho.extension_basis().begin(), rho.extension_basis().end());
  return Subspace::span(rows, v.ambient_dim());
}

/// Given (U,V) codimension 1 and S ⊆ U, returns T ⊆ V with ((S,T),(U,V)) a
/// quadruple and min_{S^⊥∖T^⊥}|x| >= min_{U^⊥∖V^⊥}|y| / (dim U - dim S + 1).
///
/// Works on the dual side: (V^⊥, U^⊥) is codimension 1 and S^⊥ ⊇ U^⊥, so
/// lifting gives U' with ((V^⊥,U^⊥),(U',S^⊥)) a quadruple; dualizing that
/// quadruple yields ((S,U'^⊥),(U,V)).
inline Subspace descend_pair(const Subspace& s, const Subspace& u, const Subspace& v, Exec exec = {}) {
  require_same_ambient(s, u);
  require_same_ambient(u, v);
  if (!is_codim1_pair(u, v)) throw PreconditionError("descend_pair: (U,V) is not a codimension-1 pair");
  if (!s.is_subspace_of(u)) throw PreconditionError("descend_pair: S is not a subspace of U");
  const Subspace lifted = lift_pair(dual(v), dual(u), dual(s), exec);
  return dual(lifted);
}

}  // namespace sinv
