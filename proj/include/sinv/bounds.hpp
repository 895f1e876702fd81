#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "sinv/bitvec.hpp"
#include "sinv/error.hpp"
#include "sinv/exec.hpp"
#include "sinv/min_weight.hpp"
#include "sinv/subspace.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {

/// Relative tolerance for every real-valued inequality check.
inline constexpr double kRealTol = 1e-9;

/// d * (m^(1/d) - 1) for real d, m >= 1. Exact when m is a perfect d-th power
/// of an integer; otherwise via expm1 so that large d keeps full precision.
inline double theorem_exponent(double d, double m) {
  if (!(d >= 1) || !(m >= 1) || !std::isfinite(d) || !std::isfinite(m)) {
    throw PreconditionError("bound exponent needs d >= 1 and m >= 1");
  }
  const double r = std::round(std::pow(m, 1.0 / d));
  if (d == std::floor(d) && d <= 64 && r >= 1 && std::pow(r, d) == m) return d * (r - 1);
  return d * std::expm1(std::log(m) / d);
}

/// 2^(d(m^(1/d) - 1)), the size lower bound for depth d+1.
inline double theorem_bound(double d, double m) { return std::exp2(theorem_exponent(d, m)); }

struct BaseCaseBounds {
  BigInt size;      // 2^(m-1)
  BigInt leafsize;  // m * 2^(m-1)
};

inline BaseCaseBounds base_case_bounds(std::size_t m) {
  if (m == 0) throw PreconditionError("base_case_bounds: m must be positive");
  return {pow2(m - 1), BigInt(m) * pow2(m - 1)};
}

/// d(m^(1/d) - 1), the round bound for the d-round search game.
inline double search_game_bound(double d, double m) { return theorem_exponent(d, m); }

/// m^(ln 2), the limit of theorem_bound as d grows.
inline double unbounded_depth_bound(double m) {
  if (!(m >= 1)) throw PreconditionError("unbounded_depth_bound: m must be >= 1");
  return std::pow(m, std::log(2.0));
}

struct AbcResult {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  bool equality = false;
};

/// a + c(b/a)^(1/c) versus (c+1) b^(1/(c+1)); equality iff a = b^(1/(c+1)).
inline AbcResult abc_inequality(double a, double b, double c, double tol = kRealTol) {
  if (!(a >= 1) || !(b >= 1) || !(c >= 1) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw PreconditionError("abc_inequality: a, b, c must be finite reals >= 1");
  }
  AbcResult r;
  r.lhs = a + c * std::pow(b / a, 1.0 / c);
  r.rhs = (c + 1) * std::pow(b, 1.0 / (c + 1));
  r.holds = r.lhs >= r.rhs * (1 - tol);
  const double root = std::pow(b, 1.0 / (c + 1));
  r.equality = std::abs(a - root) <= tol * std::max(1.0, root);
  return r;
}

struct BoundReport {
  std::size_t m = 0;
  BitVec witness;
  std::size_t d = 0;
  double theorem_bound = 0;
  BigInt base_case_size;
  BigInt base_case_leafsize;
  double search_game_bound = 0;
  double unbounded_depth_bound = 0;
};

/// Every bound for (U,V) at depth d+1, with m = min weight of U^perp \ V^perp.
inline BoundReport lower_bound_certificate(const Subspace& u, const Subspace& v, std::size_t d, Exec exec = {}) {
  require_same_ambient(u, v);
  if (d == 0) throw PreconditionError("lower_bound_certificate: d must be at least 1");
  if (!u.is_subspace_of(v)) throw PreconditionError("lower_bound_certificate: U is not contained in V");
  if (u == v) throw PreconditionError("lower_bound_certificate: U = V, so U^perp \\ V^perp is empty");
  const MinWeight mw = min_weight_in_difference(dual(u), dual(v), exec);
  BoundReport r;
  r.m = mw.weight;
  r.witness = mw.witness;
  r.d = d;
  const double m = static_cast<double>(r.m);
  r.theorem_bound = theorem_bound(static_cast<double>(d), m);
  const auto base = base_case_bounds(r.m);
  r.base_case_size = base.size;
  r.base_case_leafsize = base.leafsize;
  r.search_game_bound = search_game_bound(static_cast<double>(d), m);
  r.unbounded_depth_bound = unbounded_depth_bound(m);
  return r;
}

}  // namespace sinv
