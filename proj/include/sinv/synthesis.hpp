#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sinv/formula.hpp"
#include "sinv/semantics.hpp"
#include "sinv/subspace.hpp"

namespace sinv {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

/// P: the even-weight vectors of {0,1}^n.
inline Subspace even_weight_subspace(std::size_t n) { return dual(Subspace::span({BitVec::ones(n)}, n)); }

/// P_J = {u : XOR of u_j over j in J is 0}, J given as 0-based coordinates.
inline Subspace block_parity_subspace(const std::vector<std::size_t>& block, std::size_t n) {
  if (block.empty()) throw PreconditionError("block_parity_subspace: empty block");
  BitVec ind(n);
  for (auto j : block) {
    if (j >= n) throw PreconditionError("block_parity_subspace: index out of range");
    ind.set(j);
  }
  return dual(Subspace::span({ind}, n));
}

/// Smallest k with k^d >= n.
inline std::size_t ceil_root(std::size_t n, std::size_t d) {
  auto reaches = [&](std::size_t k) {
    BigInt p = 1;
    for (std::size_t i = 0; i < d; ++i) p *= k;
    return p >= n;
  };
  std::size_t k = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d))));
  k = std::max<std::size_t>(k, 1);
  while (k > 1 && reaches(k - 1)) --k;
  while (!reaches(k)) ++k;
  return k;
}

/// k with k^d = n, if n is a perfect d-th power.
inline std::optional<std::size_t> exact_root(std::size_t n, std::size_t d) {
  const std::size_t k = ceil_root(n, d);
  BigInt p = 1;
  for (std::size_t i = 0; i < d; ++i) p *= k;
  if (p == n) return k;
  return std::nullopt;
}

struct BetaValue {
  /// Empty means infinity.
  std::optional<BigInt> value;
  /// Block sizes n_1 >= ... >= n_k of a minimizer (empty for depth 1).
  std::vector<std::size_t> composition;

  bool finite() const noexcept { return value.has_value(); }
  std::string to_string() const { return value ? value->str() : std::string("inf"); }
};

/// Memoized evaluation of the leafsize recurrence
///   beta(1,1) = 1, beta(1,n>1) = inf,
///   beta(d+1,n) = min over n_1+...+n_k = n of 2^(k-1) * sum beta(d,n_i).
/// Minimizers are reported as sorted compositions; among equal values the
/// lexicographically largest composition wins.
class BetaTable {
 public:
  explicit BetaTable(std::size_t max_depth = 6, std::size_t max_n = 64) : max_depth_(max_depth), max_n_(max_n) {}

  std::size_t max_depth() const noexcept { return max_depth_; }
  std::size_t max_n() const noexcept { return max_n_; }

  BetaValue beta(std::size_t d, std::size_t n) {
    if (d == 0 || n == 0) throw PreconditionError("beta: depth and n must be positive");
    if (d > max_depth_ || n > max_n_) {
      throw CapExceeded("beta(" + std::to_string(d) + "," + std::to_string(n) + ") beyond table cap d<=" +
                        std::to_string(max_depth_) + ", n<=" + std::to_string(max_n_));
    }
    std::lock_guard lock(mu_);
    return value(d, n);
  }

 private:
  using Cost = std::optional<BigInt>;

  static bool less(const Cost& a, const Cost& b) { return a && (!b || *a < *b); }

  const BetaValue& value(std::size_t d, std::size_t n) {
    const auto key = std::make_pair(d, n);
    if (auto it = beta_.find(key); it != beta_.end()) return it->second;
    BetaValue out;
    if (d == 1) {
      if (n == 1) out.value = BigInt(1);
      return beta_.emplace(key, std::move(out)).first->second;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const Cost& s = parts(d - 1, k, n, n);
      if (!s) continue;
      Cost cand = BigInt(*s << (k - 1));
      std::vector<std::size_t> comp = composition(d - 1, k, n, n);
      if (less(cand, out.value) || (cand && out.value && *cand == *out.value && comp > out.composition)) {
        out.value = std::move(cand);
        out.composition = std::move(comp);
      }
    }
    return beta_.emplace(key, std::move(out)).first->second;
  }

  struct Part {
    Cost cost;
    std::size_t first = 0;
  };

  // Minimum of sum beta(d, n_i) over nonincreasing k-part sequences with
  // parts <= cap summing to rem; ties resolved towards the larger first part.
  const Cost& parts(std::size_t d, std::size_t k, std::size_t rem, std::size_t cap) {
    return part(d, k, rem, cap).cost;
  }

  const Part& part(std::size_t d, std::size_t k, std::size_t rem, std::size_t cap) {
    const auto key = std::make_tuple(d, k, rem, cap);
    if (auto it = parts_.find(key); it != parts_.end()) return it->second;
    Part out;
    if (k == 0) {
      if (rem == 0) out.cost = BigInt(0);
    } else if (rem >= k) {
      const std::size_t hi = std::min(cap, rem - (k - 1));
      for (std::size_t p = hi; p >= 1; --p) {
        if (rem - p > (k - 1) * p) break;  // the remaining parts cannot fit under p
        const BetaValue& head = value(d, p);
        if (!head.value) continue;
        const Part& tail = part(d, k - 1, rem - p, p);
        if (!tail.cost) continue;
        Cost c = BigInt(*head.value + *tail.cost);
        if (less(c, out.cost)) {
          out.cost = std::move(c);
          out.first = p;
        }
      }
    }
    return parts_.emplace(key, std::move(out)).first->second;
  }

  std::vector<std::size_t> composition(std::size_t d, std::size_t k, std::size_t rem, std::size_t cap) {
    std::vector<std::size_t> comp;
    while (k > 0) {
      const std::size_t p = part(d, k, rem, cap).first;
      comp.push_back(p);
      rem -= p;
      cap = p;
      --k;
    }
    return comp;
  }

  std::size_t max_depth_;
  std::size_t max_n_;
  std::mutex mu_;
  std::map<std::pair<std::size_t, std::size_t>, BetaValue> beta_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, Part> parts_;
};

/// k = ceil(n^(1/d)) balanced blocks of sizes floor(n/k) / ceil(n/k), larger first.
inline std::vector<std::size_t> closed_form_composition(std::size_t d, std::size_t n) {
  const std::size_t k = ceil_root(n, d);
  std::vector<std::size_t> comp(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++comp[i];
  return comp;
}

/// Leafsize produced by recursing with closed_form_composition at every level.
inline BigInt closed_form_leafsize(std::size_t total_depth, std::size_t n) {
  if (total_depth == 1) {
    if (n != 1) throw PreconditionError("depth-1 parity formulas exist only for n = 1");
    return 1;
  }
  const auto comp = closed_form_composition(total_depth - 1, n);
  BigInt sum = 0;
  for (auto ni : comp) sum += closed_form_leafsize(total_depth - 1, ni);
  return BigInt(sum << (comp.size() - 1));
}

/// Upper bound n * 2^(d * n^(1/d)) on beta(d+1, n), as a double.
inline double parity_leafsize_bound(std::size_t d, std::size_t n) {
  return static_cast<double>(n) * std::exp2(static_cast<double>(d) * std::pow(static_cast<double>(n), 1.0 / d));
}

/// n * 2^(d(k-1)) when n = k^d, the sharper bound for perfect powers.
inline std::optional<BigInt> parity_leafsize_bound_exact(std::size_t d, std::size_t n) {
  if (auto k = exact_root(n, d)) return BigInt(BigInt(n) << (d * (*k - 1)));
  return std::nullopt;
}

enum class SynthStrategy { ExactDp, ClosedForm };

inline const char* strategy_name(SynthStrategy s) { return s == SynthStrategy::ExactDp ? "exact-dp" : "closed-form"; }

namespace detail {

inline Formula build_parity(std::size_t total_depth, std::size_t n, std::size_t offset, std::size_t len, Gate out,
                            SynthStrategy strategy, BetaTable& table) {
  if (total_depth == 1) {
    if (len != 1) throw PreconditionError("depth-1 parity formulas exist only for one variable");
    return Formula::gate(out, {Formula::literal(n, offset)});
  }
  const std::vector<std::size_t> comp = strategy == SynthStrategy::ExactDp
                                            ? table.beta(total_depth, len).composition
                                            : closed_form_composition(total_depth - 1, len);
  const Gate inner = opposite(out);
  std::vector<Formula> pos;  // G_i, computes parity of block i
  std::vector<Formula> neg;  // H_i, computes its complement
  std::size_t at = offset;
  for (auto ni : comp) {
    Formula g = build_parity(total_depth - 1, n, at, ni, inner, strategy, table);
    neg.push_back(act(g, BitVec::unit(n, at)));
    pos.push_back(std::move(g));
    at += ni;
  }
  const std::size_t k = comp.size();
  // DNF over block parities (OR output) keeps the odd patterns; the CNF
  // (AND output) has one clause per even pattern, false exactly there.
  const bool want_odd = out == Gate::Or;
  std::vector<Formula> clauses;
  clauses.reserve(std::size_t{1} << (k - 1));
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << k); ++y) {
    if ((std::popcount(y) % 2 == 1) != want_odd) continue;
    std::vector<Formula> merged;
    for (std::size_t i = 0; i < k; ++i) {
      const bool bit = (y >> i) & 1u;
      const Formula& part = (bit == want_odd) ? pos[i] : neg[i];
      merged.insert(merged.end(), part.children().begin(), part.children().end());
    }
    clauses.push_back(Formula::gate(inner, std::move(merged)));
  }
  return Formula::gate(out, std::move(clauses));
}

}  // namespace detail

/// A P-invariant formula of depth exactly `total_depth` computing parity_n.
/// Variables are split into contiguous blocks; the complemented block
/// formula flips the block's first variable.
inline Formula synth_parity(std::size_t total_depth, std::size_t n, Gate output_gate,
                            SynthStrategy strategy = SynthStrategy::ExactDp, BetaTable* table = nullptr) {
  if (total_depth == 0 || n == 0) throw PreconditionError("synth_parity: depth and n must be positive");
  if (total_depth == 1 && n > 1) throw PreconditionError("synth_parity: depth 1 cannot compute parity of more than one variable");
  BetaTable local(std::max<std::size_t>(6, total_depth), std::max<std::size_t>(64, n));
  return detail::build_parity(total_depth, n, 0, n, output_gate, strategy, table ? *table : local);
}

struct SynthReport {
  std::size_t depth = 0;
  std::size_t n = 0;
  Gate output_gate = Gate::Or;
  SynthStrategy strategy = SynthStrategy::ExactDp;
  std::uint64_t leafsize = 0;
  std::uint64_t size = 0;
  BetaValue beta;
  std::vector<std::size_t> composition;
  bool invariance_checked = false;
  bool invariant = false;
};

inline SynthReport synth_report(const Formula& f, std::size_t total_depth, Gate gate, SynthStrategy strategy,
                                BetaTable& table) {
  SynthReport r;
  r.depth = total_depth;
  r.n = f.ambient_dim();
  r.output_gate = gate;
  r.strategy = strategy;
  r.leafsize = f.leafsize();
  r.size = f.size();
  r.beta = table.beta(total_depth, r.n);
  r.composition = total_depth == 1 ? std::vector<std::size_t>{} :
                  strategy == SynthStrategy::ExactDp ? r.beta.composition
                                                     : closed_form_composition(total_depth - 1, r.n);
  r.invariant = is_invariant(f, even_weight_subspace(r.n));
  r.invariance_checked = true;
  return r;
}

}  // namespace sinv
