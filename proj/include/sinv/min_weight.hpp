#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/exec.hpp"
#include "sinv/subspace.hpp"

namespace sinv {

/// Largest dimension enumerated by min_weight_in_difference.
inline constexpr std::size_t kMaxEnumDim = 28;

struct MinWeight {
  std::size_t weight = 0;
  BitVec witness;
};

/// Minimum Hamming weight over A \ B, with the lexicographically first
/// witness of that weight. Requires B ⊊ A.
///
/// A's elements are walked in Gray-code order over a basis that lists a
/// complement of B first, so membership in B is a mask test on the code.
inline MinWeight min_weight_in_difference(const Subspace& a, const Subspace& b, Exec exec = {}) {
  require_same_ambient(a, b);
  if (!b.is_subspace_of(a)) throw PreconditionError("min_weight_in_difference: B is not a subspace of A");
  if (a.dim() == b.dim()) throw PreconditionError("min_weight_in_difference: A = B, the difference is empty");
  if (a.dim() > kMaxEnumDim) {
    throw CapExceeded("min-weight enumeration over dimension " + std::to_string(a.dim()) + " (cap " +
                      std::to_string(kMaxEnumDim) + ")");
  }

  std::vector<BitVec> gens = complement_basis(b, a);
  const std::uint64_t outside_mask = (std::uint64_t{1} << gens.size()) - 1;
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  const std::uint64_t total = std::uint64_t{1} << gens.size();
  const std::size_t n = a.ambient_dim();

  auto partials = run_chunks(total, exec, [&](std::uint64_t lo, std::uint64_t hi) {
    std::optional<BitVec> best;
    std::size_t best_w = n + 1;
    std::uint64_t code = lo ^ (lo >> 1);
    BitVec x(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((code >> i) & 1u) x ^= gens[i];
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx != lo) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(idx));
        x ^= gens[bit];
        code ^= std::uint64_t{1} << bit;
      }
      if ((code & outside_mask) == 0) continue;
      const std::size_t w = x.weight();
      if (w < best_w || (w == best_w && lex_less(x, *best))) {
        best_w = w;
        best = x;
      }
    }
    return best;
  });

  std::optional<BitVec> best;
  for (auto& p : partials)
    if (p && (!best || lighter(*p, *best))) best = p;
  return {best->weight(), *best};
}

}  // namespace sinv
