#pragma once

// Cycle-space instances: a graph's edges are the coordinates of {0,1}^n,
// Z is the space of even subgraphs and Z0 its even-weight part.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sinv/error.hpp"
#include "sinv/exec.hpp"
#include "sinv/subspace.hpp"
#include "sinv/synthesis.hpp"

namespace sinv {

struct Graph {
  std::size_t vertices = 0;
  /// Edge i is coordinate i.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t edge_count() const noexcept { return edges.size(); }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> deg(vertices, 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }

  bool is_simple() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
      if (a == b) return false;
      if (!seen.emplace(std::min(a, b), std::max(a, b)).second) return false;
    }
    return true;
  }

  bool is_regular(std::size_t d) const {
    const auto deg = degrees();
    return std::all_of(deg.begin(), deg.end(), [d](std::size_t x) { return x == d; });
  }

  std::string to_text() const {
    std::string out = "v=" + std::to_string(vertices) + "\n";
    for (auto [a, b] : edges) out += std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
  }

  /// `v=<int>` header, then one `a b` edge per line (0-indexed). Blank lines
  /// and `#` comments are skipped.
  static Graph from_text(std::istream& in) {
    Graph g;
    bool have_header = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream ls(line);
      if (!have_header) {
        std::string tok;
        ls >> tok;
        if (tok.rfind("v=", 0) != 0) throw ParseError("expected 'v=<int>' header", lineno);
        try {
          std::size_t used = 0;
          const std::string num = tok.substr(2);
          g.vertices = std::stoul(num, &used);
          if (used != num.size()) throw std::invalid_argument(num);
        } catch (const std::exception&) {
          throw ParseError("bad vertex count in '" + tok + "'", lineno);
        }
        have_header = true;
        continue;
      }
      long long a = -1, b = -1;
      std::string extra;
      if (!(ls >> a >> b) || (ls >> extra)) throw ParseError("expected an edge 'a b'", lineno);
      if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= g.vertices || static_cast<std::size_t>(b) >= g.vertices) {
        throw ParseError("edge endpoint out of range", lineno);
      }
      g.edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    if (!have_header) throw ParseError("missing 'v=<int>' header", lineno);
    return g;
  }

  static Graph from_text(const std::string& text) {
    std::istringstream in(text);
    return from_text(in);
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph complete_graph(std::size_t k) {
  Graph g{k, {}};
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) g.edges.emplace_back(a, b);
  return g;
}

inline Graph cycle_graph(std::size_t k) {
  Graph g{k, {}};
  for (std::size_t a = 0; a < k; ++a) g.edges.emplace_back(std::min(a, (a + 1) % k), std::max(a, (a + 1) % k));
  return g;
}

inline void require_edges(const Graph& g) {
  if (g.edges.empty()) throw PreconditionError("graph has no edges, so {0,1}^n is empty");
  if (g.edges.size() > BitVec::kMaxBits) throw CapExceeded("graph has more edges than a BitVec holds");
}

inline std::size_t component_count(const Graph& g) {
  std::vector<std::size_t> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = g.vertices;
  for (auto [a, b] : g.edges) {
    const std::size_t ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

/// Every vertex has even degree in the subgraph x.
inline bool is_even_subgraph(const Graph& g, const BitVec& x) {
  std::vector<std::uint8_t> par(g.vertices, 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (!x.test(i)) continue;
    par[g.edges[i].first] ^= 1u;
    par[g.edges[i].second] ^= 1u;
  }
  return std::all_of(par.begin(), par.end(), [](std::uint8_t p) { return p == 0; });
}

/// Cycle space, spanned by the fundamental cycles of a BFS forest whose
/// trees are rooted at the lowest-index unvisited vertex.
inline Subspace cycle_space(const Graph& g) {
  require_edges(g);
  const std::size_t n = g.edges.size();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertices);  // (neighbour, edge)
  for (std::size_t i = 0; i < n; ++i) {
    adj[g.edges[i].first].emplace_back(g.edges[i].second, i);
    if (g.edges[i].first != g.edges[i].second) adj[g.edges[i].second].emplace_back(g.edges[i].first, i);
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(g.vertices, kNone);
  std::vector<bool> seen(g.vertices, false);
  std::vector<bool> tree(n, false);
  std::vector<BitVec> to_root(g.vertices, BitVec(n));  // tree path from vertex to its root
  for (std::size_t r = 0; r < g.vertices; ++r) {
    if (seen[r]) continue;
    seen[r] = true;
    std::queue<std::size_t> q;
    q.push(r);
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (auto [y, e] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        tree[e] = true;
        parent_edge[y] = e;
        to_root[y] = to_root[x];
        to_root[y].set(e);
        q.push(y);
      }
    }
  }
  std::vector<BitVec> cycles;
  for (std::size_t i = 0; i < n; ++i) {
    if (tree[i]) continue;
    BitVec c = to_root[g.edges[i].first] ^ to_root[g.edges[i].second];
    c.flip(i);
    if (!is_even_subgraph(g, c)) throw Error("cycle_space: fundamental cycle is not an even subgraph");
    cycles.push_back(c);
  }
  Subspace z = Subspace::span(cycles, n);
  if (z.dim() != n - g.vertices + component_count(g)) throw Error("cycle_space: dimension mismatch");
  return z;
}

struct EvenWeightSub {
  Subspace z0;
  /// 1 iff Z contains an odd-weight vector; 0 for bipartite graphs.
  std::size_t codim = 0;
};

inline EvenWeightSub even_weight_sub(const Subspace& z) {
  EvenWeightSub out;
  out.z0 = intersect(z, even_weight_subspace(z.ambient_dim()));
  out.codim = z.dim() - out.z0.dim();
  return out;
}

/// Two-colouring by BFS.
inline bool is_bipartite(const Graph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertices);
  for (auto [a, b] : g.edges) {
    if (a == b) return false;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> colour(g.vertices, -1);
  for (std::size_t r = 0; r < g.vertices; ++r) {
    if (colour[r] >= 0) continue;
    colour[r] = 0;
    std::queue<std::size_t> q;
    q.push(r);
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (auto y : adj[x]) {
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          q.push(y);
        } else if (colour[y] == colour[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline constexpr std::size_t kMaxCutVertices = 24;

/// Exact max cut over the 2^(v-1) bipartitions with vertex 0 on side 0.
inline std::size_t max_cut(const Graph& g, Exec exec = {}) {
  if (g.vertices > kMaxCutVertices) {
    throw CapExceeded("max_cut over " + std::to_string(g.vertices) + " vertices (cap " +
                      std::to_string(kMaxCutVertices) + ")");
  }
  if (g.vertices <= 1) return 0;
  const std::uint64_t count = std::uint64_t{1} << (g.vertices - 1);
  const auto partials = run_chunks(count, exec, [&](std::uint64_t lo, std::uint64_t hi) {
    std::size_t best = 0;
    for (std::uint64_t s = lo; s < hi; ++s) {
      const std::uint64_t side = s << 1;
      std::size_t cut = 0;
      for (auto [a, b] : g.edges) cut += ((side >> a) ^ (side >> b)) & 1u;
      best = std::max(best, cut);
    }
    return best;
  });
  return *std::max_element(partials.begin(), partials.end());
}

/// n - maxcut: the fewest edges whose removal leaves a bipartite graph.
inline std::size_t m_via_maxcut(const Graph& g, Exec exec = {}) {
  if (is_bipartite(g)) throw PreconditionError("m_via_maxcut: graph is bipartite, so Z0 = Z and m is undefined");
  return g.edges.size() - max_cut(g, exec);
}

inline constexpr const char* kRegularGraphRng = "mt19937_64";

/// Uniform integer in [0, bound) by rejection, so the stream is portable.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

struct RegularSample {
  Graph graph;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
};

/// Configuration model: shuffle v*degree stubs, pair neighbours, reject any
/// pairing with a loop or a repeated edge. The result is uniform over simple
/// labelled degree-regular graphs; edges are sorted with a < b.
inline RegularSample random_regular(std::size_t v, std::size_t degree, std::uint64_t seed,
                                    std::size_t max_attempts = 100000) {
  if (degree == 0 || v <= degree || (v * degree) % 2 != 0) {
    throw PreconditionError("random_regular: need v > degree and v*degree even");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> stubs;
  for (std::size_t x = 0; x < v; ++x)
    for (std::size_t k = 0; k < degree; ++k) stubs.push_back(x);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) std::swap(stubs[i], stubs[uniform_below(rng, i + 1)]);
    Graph g{v, {}};
    for (std::size_t i = 0; i < stubs.size(); i += 2)
      g.edges.emplace_back(std::min(stubs[i], stubs[i + 1]), std::max(stubs[i], stubs[i + 1]));
    if (!g.is_simple()) continue;
    std::sort(g.edges.begin(), g.edges.end());
    return {std::move(g), seed, attempt};
  }
  throw Error("random_regular: no simple pairing after " + std::to_string(max_attempts) + " attempts");
}

inline constexpr std::size_t kMaxIsoVertices = 6;

/// One representative per isomorphism class of connected simple graphs on v
/// vertices: the adjacency mask minimal over all vertex permutations.
inline std::vector<Graph> connected_graphs(std::size_t v) {
  if (v == 0 || v > kMaxIsoVertices) throw CapExceeded("connected_graphs: v must be in 1.." + std::to_string(kMaxIsoVertices));
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b) slots.emplace_back(a, b);
  std::vector<std::vector<std::size_t>> slot_index(v, std::vector<std::size_t>(v, 0));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    slot_index[slots[i].first][slots[i].second] = i;
    slot_index[slots[i].second][slots[i].first] = i;
  }
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(v);
  std::iota(p.begin(), p.end(), std::size_t{0});
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::set<std::uint32_t> canon;
  for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
    Graph g{v, {}};
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1u) g.edges.push_back(slots[i]);
    if (component_count(g) != 1) continue;
    std::uint32_t best = mask;
    for (const auto& q : perms) {
      std::uint32_t img = 0;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((mask >> i) & 1u) img |= 1u << slot_index[q[slots[i].first]][q[slots[i].second]];
      best = std::min(best, img);
      if (best < mask) break;  // not the canonical member of its class
    }
    if (best == mask) canon.insert(mask);
  }
  std::vector<Graph> out;
  for (auto mask : canon) {
    Graph g{v, {}};
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1u) g.edges.push_back(slots[i]);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace sinv
