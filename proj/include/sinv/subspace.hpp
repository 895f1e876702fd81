#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/error.hpp"

namespace sinv {

/// Largest dimension for which a subspace will list all of its elements.
inline constexpr std::size_t kMaxListDim = 24;

/// A linear subspace of {0,1}^n held as a reduced row-echelon basis.
///
/// Rows are sorted by pivot (the first coordinate equal to 1), and every
/// pivot column is zero in all other rows. The basis is therefore unique,
/// and two subspaces are equal iff their bases are.
class Subspace {
 public:
  Subspace() = default;

  /// The zero subspace of {0,1}^n.
  explicit Subspace(std::size_t n) : n_(n) {
    if (n == 0 || n > BitVec::kMaxBits) throw PreconditionError("bad ambient dimension " + std::to_string(n));
  }

  static Subspace span(const std::vector<BitVec>& rows, std::size_t n) {
    Subspace s(n);
    for (const auto& r : rows) {
      if (r.size() != n) {
        throw DimensionMismatch("row of length " + std::to_string(r.size()) + " in a span over n=" +
                                std::to_string(n));
      }
    }
    std::vector<BitVec> echelon;
    echelon.reserve(rows.size());
    for (BitVec r : rows) {
      for (const auto& e : echelon)
        if (r.test(e.lowest_set())) r ^= e;
      if (r.is_zero()) continue;
      const std::size_t p = r.lowest_set();
      for (auto& e : echelon)
        if (e.test(p)) e ^= r;
      echelon.push_back(r);
    }
    std::sort(echelon.begin(), echelon.end(),
              [](const BitVec& a, const BitVec& b) { return a.lowest_set() < b.lowest_set(); });
    s.rows_ = std::move(echelon);
    return s;
  }

  static Subspace full(std::size_t n) {
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(BitVec::unit(n, i));
    return span(rows, n);
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<BitVec>& basis() const noexcept { return rows_; }
  bool is_zero() const noexcept { return rows_.empty(); }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.lowest_set());
    return p;
  }

  /// Canonical representative of the coset v + A: v with every pivot column cleared.
  BitVec reduce(BitVec v) const {
    check(v);
    for (const auto& r : rows_)
      if (v.test(r.lowest_set())) v ^= r;
    return v;
  }

  bool contains(const BitVec& v) const { return reduce(v).is_zero(); }

  bool is_subspace_of(const Subspace& other) const {
    require_same_ambient(*this, other);
    return std::all_of(rows_.begin(), rows_.end(), [&](const BitVec& r) { return other.contains(r); });
  }

  /// The element whose basis coefficients are the bits of `coeffs`.
  BitVec combination(std::uint64_t coeffs) const {
    BitVec v(n_);
    for (std::size_t i = 0; coeffs != 0; ++i, coeffs >>= 1)
      if (coeffs & 1u) v ^= rows_[i];
    return v;
  }

  /// All 2^dim elements, indexed by basis coefficients.
  std::vector<BitVec> elements() const {
    if (dim() > kMaxListDim) {
      throw CapExceeded("listing a subspace of dimension " + std::to_string(dim()) + " (cap " +
                        std::to_string(kMaxListDim) + ")");
    }
    std::vector<BitVec> out;
    out.reserve(std::size_t{1} << dim());
    out.push_back(BitVec(n_));
    for (const auto& r : rows_) {
      const std::size_t half = out.size();
      for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] ^ r);
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

  std::string to_text() const {
    std::string out = "n=" + std::to_string(n_) + "\n";
    for (const auto& r : rows_) out += r.to_string() + "\n";
    return out;
  }

  /// Parses the text format: `n=<int>` on the first significant line, then
  /// one basis row per line. Blank lines and `#` comments are skipped.
  static Subspace from_text(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0;
    std::vector<BitVec> rows;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r");
      const std::string tok = line.substr(b, e - b + 1);
      if (n == 0) {
        if (tok.rfind("n=", 0) != 0) throw ParseError("expected 'n=<int>' header", lineno);
        try {
          n = std::stoul(tok.substr(2));
        } catch (const std::exception&) {
          throw ParseError("bad dimension in header '" + tok + "'", lineno);
        }
        if (n == 0 || n > BitVec::kMaxBits) throw ParseError("dimension out of range", lineno);
        continue;
      }
      if (tok.size() != n) {
        throw ParseError("row has " + std::to_string(tok.size()) + " characters, expected " + std::to_string(n),
                         lineno);
      }
      try {
        rows.push_back(BitVec::from_string(tok));
      } catch (const ParseError& err) {
        throw ParseError(err.what(), lineno);
      }
    }
    if (n == 0) throw ParseError("missing 'n=<int>' header", lineno);
    return span(rows, n);
  }

  static Subspace from_text(const std::string& text) {
    std::istringstream in(text);
    return from_text(in);
  }

  friend void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.n_ != b.n_) {
      throw DimensionMismatch("subspaces of {0,1}^" + std::to_string(a.n_) + " and {0,1}^" +
                              std::to_string(b.n_));
    }
  }

 private:
  void check(const BitVec& v) const {
    if (v.size() != n_) {
      throw DimensionMismatch("vector of length " + std::to_string(v.size()) + " against subspace of {0,1}^" +
                              std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<BitVec> rows_;
};

inline Subspace span(const std::vector<BitVec>& rows, std::size_t n) { return Subspace::span(rows, n); }

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  std::vector<BitVec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(rows, a.ambient_dim());
}

inline bool contains(const Subspace& a, const BitVec& v) { return a.contains(v); }

/// Orthogonal complement. For each non-pivot column j the vector
/// e_j + sum of e_pivot(r) over rows r with a 1 in column j is orthogonal to
/// every row, and these n - dim vectors are independent.
inline Subspace dual(const Subspace& a) {
  const std::size_t n = a.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (auto p : a.pivots()) is_pivot[p] = true;
  std::vector<BitVec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    BitVec v = BitVec::unit(n, j);
    for (const auto& r : a.basis())
      if (r.test(j)) v.set(r.lowest_set());
    rows.push_back(v);
  }
  return Subspace::span(rows, n);
}

/// A ∩ B, computed as dual(dual(A) + dual(B)).
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  return dual(sum(dual(a), dual(b)));
}

/// Rows C, drawn from sup's basis, with sub + span(C) = sup and the sum direct.
inline std::vector<BitVec> complement_basis(const Subspace& sub, const Subspace& sup) {
  if (!sub.is_subspace_of(sup)) throw PreconditionError("complement_basis: sub is not contained in sup");
  std::vector<BitVec> out;
  Subspace acc = sub;
  for (const auto& r : sup.basis()) {
    if (acc.contains(r)) continue;
    out.push_back(r);
    acc = sum(acc, Subspace::span({r}, sup.ambient_dim()));
  }
  return out;
}

}  // namespace sinv
