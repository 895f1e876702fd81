#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "sinv/error.hpp"

namespace sinv {

/// A vector in {0,1}^n, packed into machine words.
///
/// Coordinate i is printed as the i-th character of the 0/1 string, so
/// "100" is the first unit vector. Capacity is fixed at kMaxBits so that
/// the exhaustive loops never allocate.
class BitVec {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = 4;
  static constexpr std::size_t kMaxBits = kWords * kWordBits;

  BitVec() = default;

  explicit BitVec(std::size_t n) : n_(static_cast<std::uint32_t>(n)) {
    if (n == 0 || n > kMaxBits) {
      throw PreconditionError("ambient dimension must be in [1, " + std::to_string(kMaxBits) +
                              "], got " + std::to_string(n));
    }
  }

  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw ParseError("bit vector contains a character other than 0/1: '" + std::string(s) + "'");
      }
    }
    return v;
  }

  static BitVec unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
  }

  static BitVec ones(std::size_t n) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i);
    return v;
  }

  /// Builds a vector from the low n bits of a word (bit i -> coordinate i).
  static BitVec from_word(std::size_t n, std::uint64_t bits) {
    BitVec v(n);
    if (n < kWordBits) bits &= (std::uint64_t{1} << n) - 1;
    v.w_[0] = bits;
    return v;
  }

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const noexcept { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
      w_[i / kWordBits] |= mask;
    } else {
      w_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { w_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (std::size_t k = 0; k < words(); ++k) w += static_cast<std::size_t>(std::popcount(w_[k]));
    return w;
  }

  bool is_zero() const noexcept {
    for (std::size_t k = 0; k < words(); ++k)
      if (w_[k] != 0) return false;
    return true;
  }

  /// Index of the first coordinate equal to 1, or size() for the zero vector.
  std::size_t lowest_set() const noexcept {
    for (std::size_t k = 0; k < words(); ++k)
      if (w_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(w_[k]));
    return n_;
  }

  std::uint64_t word(std::size_t k) const noexcept { return w_[k]; }

  BitVec& operator^=(const BitVec& o) noexcept {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  BitVec& operator&=(const BitVec& o) noexcept {
    for (std::size_t k = 0; k < kWords; ++k) w_[k] &= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) noexcept { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) noexcept { return a &= b; }

  friend bool operator==(const BitVec& a, const BitVec& b) noexcept {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
    for (auto w : w_) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
    return static_cast<std::size_t>(h);
  }

 private:
  std::size_t words() const noexcept { return (n_ + kWordBits - 1) / kWordBits; }

  std::array<std::uint64_t, kWords> w_{};
  std::uint32_t n_ = 0;
};

/// Inner product mod 2.
inline bool dot(const BitVec& a, const BitVec& b) noexcept {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < BitVec::kWords; ++k) acc ^= a.word(k) & b.word(k);
  return std::popcount(acc) & 1;
}

/// Lexicographic order on supports: at the first coordinate where the two
/// vectors differ, the one holding a 1 comes first. Among vectors of equal
/// weight this is the usual order on sorted index lists, so 100 < 010 < 001.
inline bool lex_less(const BitVec& a, const BitVec& b) noexcept {
  const BitVec diff = a ^ b;
  const std::size_t i = diff.lowest_set();
  return i < diff.size() && a.test(i);
}

/// (weight, lex) order used for every "lightest, then lexicographically
/// first" choice in the library.
inline bool lighter(const BitVec& a, const BitVec& b) noexcept {
  const auto wa = a.weight();
  const auto wb = b.weight();
  return wa != wb ? wa < wb : lex_less(a, b);
}

inline void require_same_dim(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("bit vectors of length " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
}

}  // namespace sinv

template <>
struct std::hash<sinv::BitVec> {
  std::size_t operator()(const sinv::BitVec& v) const noexcept { return v.hash(); }
};
