#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sinv/bitvec.hpp"
#include "sinv/error.hpp"

namespace sinv {

enum class Gate : std::uint8_t { And, Or };
enum class NodeKind : std::uint8_t { Const, Literal, Gate };

inline Gate opposite(Gate g) noexcept { return g == Gate::And ? Gate::Or : Gate::And; }
inline const char* gate_name(Gate g) noexcept { return g == Gate::And ? "and" : "or"; }

namespace detail {
struct Node;
}

/// An AC0 formula: constants and literals at the leaves, unbounded fan-in
/// AND/OR gates above. Children of a gate form a set.
///
/// Every Formula is interned: structurally equal formulas share one node,
/// so equality is pointer equality and children are kept sorted in the
/// canonical order below. Formulas are immutable and safe to share across
/// threads.
class Formula {
 public:
  Formula() = default;

  static Formula constant(std::size_t n, bool value);
  static Formula literal(std::size_t n, std::size_t var, bool negated = false);
  /// Deduplicates and sorts `children`; they must be nonempty and share one ambient dimension.
  static Formula gate(Gate g, std::vector<Formula> children);

  explicit operator bool() const noexcept { return node_ != nullptr; }

  NodeKind kind() const noexcept;
  bool value() const noexcept;
  std::size_t var() const noexcept;
  bool negated() const noexcept;
  Gate gate_type() const noexcept;
  const std::vector<Formula>& children() const noexcept;

  std::size_t ambient_dim() const noexcept;
  std::uint32_t depth() const noexcept;
  /// Number of depth-1 subformulas, counted as occurrences in the tree.
  std::uint64_t size() const noexcept;
  /// Number of leaves, counted as occurrences in the tree.
  std::uint64_t leafsize() const noexcept;
  /// Structural hash; deterministic across runs and platforms.
  std::uint64_t hash() const noexcept;
  /// True when every gate's children all have the same depth.
  bool leveled() const noexcept;

  const detail::Node* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) noexcept { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend struct detail::Node;
  friend Formula intern_node(detail::Node&& proto);

  std::shared_ptr<const detail::Node> node_;
};

namespace detail {

struct Node {
  NodeKind kind = NodeKind::Const;
  Gate gate = Gate::And;
  bool flag = false;  // constant value, or literal negation
  std::uint32_t var = 0;
  std::uint32_t n = 0;
  std::vector<Formula> children;

  std::uint32_t depth = 0;
  std::uint64_t size = 0;
  std::uint64_t leafsize = 1;
  std::uint64_t hash = 0;
  bool leveled = true;

  bool same_shallow(const Node& o) const noexcept {
    if (kind != o.kind || gate != o.gate || flag != o.flag || var != o.var || n != o.n) return false;
    if (children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < children.size(); ++i)
      if (children[i].id() != o.children[i].id()) return false;
    return true;
  }
};

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
  std::uint64_t z = h + 0x9e3779b97f4a7c15ull + v;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw Error("formula size overflows 64 bits");
  return a + b;
}

/// Process-wide table of live nodes, keyed by structural hash. Entries are
/// weak so that dropping the last handle frees the node.
class Interner {
 public:
  static Interner& instance() {
    static Interner* table = new Interner;  // outlives every static Formula
    return *table;
  }

  std::shared_ptr<const Node> intern(Node&& proto) {
    std::lock_guard lock(mu_);
    auto range = table_.equal_range(proto.hash);
    for (auto it = range.first; it != range.second; ++it) {
      if (!it->second.raw->same_shallow(proto)) continue;
      if (auto live = it->second.weak.lock()) return live;
    }
    const std::uint64_t key = proto.hash;
    auto* raw = new Node(std::move(proto));
    std::shared_ptr<const Node> sp(raw, [](const Node* p) { Interner::instance().release(p); });
    table_.emplace(key, Entry{raw, sp});
    return sp;
  }

  std::size_t live_nodes() {
    std::lock_guard lock(mu_);
    return table_.size();
  }

 private:
  struct Entry {
    const Node* raw;
    std::weak_ptr<const Node> weak;
  };

  void release(const Node* p) {
    {
      std::lock_guard lock(mu_);
      auto range = table_.equal_range(p->hash);
      for (auto it = range.first; it != range.second; ++it) {
        if (it->second.raw == p) {
          table_.erase(it);
          break;
        }
      }
    }
    // Children release themselves after the lock is dropped.
    delete p;
  }

  std::mutex mu_;
  std::unordered_multimap<std::uint64_t, Entry> table_;
};

}  // namespace detail

inline Formula intern_node(detail::Node&& proto) {
  return Formula(detail::Interner::instance().intern(std::move(proto)));
}

inline NodeKind Formula::kind() const noexcept { return node_->kind; }
inline bool Formula::value() const noexcept { return node_->flag; }
inline std::size_t Formula::var() const noexcept { return node_->var; }
inline bool Formula::negated() const noexcept { return node_->flag; }
inline Gate Formula::gate_type() const noexcept { return node_->gate; }
inline const std::vector<Formula>& Formula::children() const noexcept { return node_->children; }
inline std::size_t Formula::ambient_dim() const noexcept { return node_->n; }
inline std::uint32_t Formula::depth() const noexcept { return node_->depth; }
inline std::uint64_t Formula::size() const noexcept { return node_->size; }
inline std::uint64_t Formula::leafsize() const noexcept { return node_->leafsize; }
inline std::uint64_t Formula::hash() const noexcept { return node_->hash; }
inline bool Formula::leveled() const noexcept { return node_->leveled; }

/// Canonical order: depth, then kind (constants, literals, gates), then
/// value / (index, polarity) for leaves and (gate, hash, arity, children)
/// for gates.
inline std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.depth <=> y.depth; c != 0) return c;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case NodeKind::Const:
      return x.flag <=> y.flag;
    case NodeKind::Literal:
      if (auto c = x.var <=> y.var; c != 0) return c;
      return x.flag <=> y.flag;
    case NodeKind::Gate:
      break;
  }
  if (auto c = x.gate <=> y.gate; c != 0) return c;
  if (auto c = x.hash <=> y.hash; c != 0) return c;
  if (auto c = x.children.size() <=> y.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (auto c = x.children[i] <=> y.children[i]; c != 0) return c;
  return x.n <=> y.n;
}

inline Formula Formula::constant(std::size_t n, bool value) {
  if (n == 0 || n > BitVec::kMaxBits) throw PreconditionError("bad ambient dimension " + std::to_string(n));
  detail::Node node;
  node.kind = NodeKind::Const;
  node.flag = value;
  node.n = static_cast<std::uint32_t>(n);
  node.hash = detail::mix(detail::mix(1, value), n);
  return intern_node(std::move(node));
}

inline Formula Formula::literal(std::size_t n, std::size_t var, bool negated) {
  if (n == 0 || n > BitVec::kMaxBits) throw PreconditionError("bad ambient dimension " + std::to_string(n));
  if (var >= n) {
    throw PreconditionError("variable x" + std::to_string(var + 1) + " out of range for n=" + std::to_string(n));
  }
  detail::Node node;
  node.kind = NodeKind::Literal;
  node.flag = negated;
  node.var = static_cast<std::uint32_t>(var);
  node.n = static_cast<std::uint32_t>(n);
  node.hash = detail::mix(detail::mix(detail::mix(2, var), negated), n);
  return intern_node(std::move(node));
}

inline Formula Formula::gate(Gate g, std::vector<Formula> children) {
  if (children.empty()) throw PreconditionError("a gate needs a nonempty set of children");
  const std::size_t n = children.front().ambient_dim();
  for (const auto& c : children) {
    if (!c) throw PreconditionError("null child formula");
    if (c.ambient_dim() != n) throw DimensionMismatch("gate children over different ambient dimensions");
  }
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());

  detail::Node node;
  node.kind = NodeKind::Gate;
  node.gate = g;
  node.n = static_cast<std::uint32_t>(n);
  std::uint32_t max_depth = 0;
  std::uint64_t size = 0;
  std::uint64_t leaves = 0;
  bool leveled = true;
  std::uint64_t h = detail::mix(detail::mix(3, static_cast<std::uint64_t>(g)), n);
  for (const auto& c : children) {
    max_depth = std::max(max_depth, c.depth());
    leaves = detail::checked_add(leaves, c.leafsize());
    size = detail::checked_add(size, c.size());
    leveled = leveled && c.leveled() && c.depth() == children.front().depth();
    h = detail::mix(h, c.hash());
  }
  node.depth = max_depth + 1;
  node.size = node.depth == 1 ? 1 : size;
  node.leafsize = leaves;
  node.leveled = leveled;
  node.hash = h;
  node.children = std::move(children);
  return intern_node(std::move(node));
}

inline Formula make_and(std::vector<Formula> children) { return Formula::gate(Gate::And, std::move(children)); }
inline Formula make_or(std::vector<Formula> children) { return Formula::gate(Gate::Or, std::move(children)); }

/// Uninterned tree, as read from a file or built by hand. canonicalize()
/// turns it into a Formula.
struct RawFormula {
  NodeKind kind = NodeKind::Const;
  bool value = false;
  std::size_t var = 0;
  bool negated = false;
  Gate gate = Gate::And;
  std::vector<RawFormula> children;

  static RawFormula constant(bool v) {
    RawFormula r;
    r.value = v;
    return r;
  }
  static RawFormula literal(std::size_t var, bool neg = false) {
    RawFormula r;
    r.kind = NodeKind::Literal;
    r.var = var;
    r.negated = neg;
    return r;
  }
  static RawFormula make_gate(Gate g, std::vector<RawFormula> kids) {
    RawFormula r;
    r.kind = NodeKind::Gate;
    r.gate = g;
    r.children = std::move(kids);
    return r;
  }
};

inline Formula canonicalize(const RawFormula& raw, std::size_t n) {
  switch (raw.kind) {
    case NodeKind::Const:
      return Formula::constant(n, raw.value);
    case NodeKind::Literal:
      return Formula::literal(n, raw.var, raw.negated);
    case NodeKind::Gate:
      break;
  }
  std::vector<Formula> kids;
  kids.reserve(raw.children.size());
  for (const auto& c : raw.children) kids.push_back(canonicalize(c, n));
  return Formula::gate(raw.gate, std::move(kids));
}

inline RawFormula to_raw(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Const:
      return RawFormula::constant(f.value());
    case NodeKind::Literal:
      return RawFormula::literal(f.var(), f.negated());
    case NodeKind::Gate:
      break;
  }
  std::vector<RawFormula> kids;
  kids.reserve(f.children().size());
  for (const auto& c : f.children()) kids.push_back(to_raw(c));
  return RawFormula::make_gate(f.gate_type(), std::move(kids));
}

/// Folds constants out of gates. This changes the formula as a syntactic
/// object and is never applied implicitly.
inline Formula simplify_constants(const Formula& f) {
  if (f.kind() != NodeKind::Gate) return f;
  const bool absorbing = f.gate_type() == Gate::Or;  // OR is decided by a 1, AND by a 0
  std::vector<Formula> kept;
  for (const auto& c : f.children()) {
    Formula s = simplify_constants(c);
    if (s.kind() == NodeKind::Const) {
      if (s.value() == absorbing) return Formula::constant(f.ambient_dim(), absorbing);
      continue;
    }
    kept.push_back(s);
  }
  if (kept.empty()) return Formula::constant(f.ambient_dim(), !absorbing);
  if (kept.size() == 1) return kept.front();
  return Formula::gate(f.gate_type(), std::move(kept));
}

}  // namespace sinv

template <>
struct std::hash<sinv::Formula> {
  std::size_t operator()(const sinv::Formula& f) const noexcept {
    return std::hash<const void*>{}(static_cast<const void*>(f.id()));
  }
};
