#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trustgrow/error.hpp"
#include "trustgrow/fraction.hpp"
#include "trustgrow/vertex_set.hpp"

namespace trustgrow {

using Edge = std::pair<VertexId, VertexId>;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

class GraphBuilder;

// Immutable undirected simple graph. Neighbor lists are sorted ascending, so
// two graphs with the same edge set compare equal and serialize identically.
class TrustGraph {
 public:
  TrustGraph() = default;

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const VertexId> neighbors(VertexId v) const {
    check_vertex(v);
    return adjacency_[v];
  }
  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  bool has_edge(VertexId u, VertexId v) const {
    if (u >= vertex_count() || v >= vertex_count()) return false;
    const auto& nu = adjacency_[u];
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  // All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId u = 0; u < vertex_count(); ++u)
      for (VertexId v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void check_vertex(VertexId v) const {
    if (v >= vertex_count())
      fail(ErrorKind::input, "vertex " + std::to_string(v) + " outside range [0, " +
                                 std::to_string(vertex_count()) + ")");
  }

  friend bool operator==(const TrustGraph& a, const TrustGraph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  friend class GraphBuilder;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
};

// Single-threaded construction. Self-loops and duplicate edges are rejected.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t vertex_count) : adjacency_(vertex_count) {}

  // Start from an existing graph, e.g. to extend a community's edge set.
  explicit GraphBuilder(const TrustGraph& base) : adjacency_(base.adjacency_) {
    for (const auto& [u, v] : base.edges()) keys_.insert(key(u, v));
  }

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  std::size_t edge_count() const { return keys_.size(); }

  bool has_edge(VertexId u, VertexId v) const { return keys_.count(key(u, v)) != 0; }

  void add_edge(VertexId u, VertexId v) {
    if (u >= vertex_count() || v >= vertex_count())
      fail(ErrorKind::input, "edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                 ") outside range [0, " + std::to_string(vertex_count()) + ")");
    if (u == v) fail(ErrorKind::input, "self-loop at vertex " + std::to_string(u));
    if (!keys_.insert(key(u, v)).second)
      fail(ErrorKind::input, "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }

  // Returns false instead of throwing on a self-loop or duplicate.
  bool try_add_edge(VertexId u, VertexId v) {
    if (u == v || u >= vertex_count() || v >= vertex_count()) return false;
    if (!keys_.insert(key(u, v)).second) return false;
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    return true;
  }

  TrustGraph build() const {
    TrustGraph g;
    g.adjacency_ = adjacency_;
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    g.edge_count_ = keys_.size();
    return g;
  }

 private:
  static std::uint64_t key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  std::vector<std::vector<VertexId>> adjacency_;
  std::unordered_set<std::uint64_t> keys_;
};

inline TrustGraph make_graph(std::size_t vertex_count, std::span<const Edge> edges) {
  GraphBuilder b(vertex_count);
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return b.build();
}
inline TrustGraph make_graph(std::size_t vertex_count, std::initializer_list<Edge> edges) {
  return make_graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size()));
}

inline void check_range(const TrustGraph& g, const VertexSet& a) {
  if (a.universe() != g.vertex_count())
    fail(ErrorKind::input, "vertex set range " + std::to_string(a.universe()) +
                               " does not match graph with " + std::to_string(g.vertex_count()) +
                               " vertices");
}

inline std::size_t degree(const TrustGraph& g, VertexId v) { return g.degree(v); }

inline std::size_t volume(const TrustGraph& g, const VertexSet& a) {
  check_range(g, a);
  std::size_t vol = 0;
  a.for_each([&](VertexId v) { vol += g.degree(v); });
  return vol;
}

// Ordered pairs (x, y) with x in A, y in B and {x, y} an edge.
inline std::size_t cut_size(const TrustGraph& g, const VertexSet& a, const VertexSet& b) {
  check_range(g, a);
  check_range(g, b);
  std::size_t cut = 0;
  a.for_each([&](VertexId x) {
    for (VertexId y : g.neighbors(x))
      if (b.contains(y)) ++cut;
  });
  return cut;
}

// Vertices of A with at least one neighbor in B.
inline std::size_t inner_boundary(const TrustGraph& g, const VertexSet& a, const VertexSet& b) {
  check_range(g, a);
  check_range(g, b);
  std::size_t count = 0;
  a.for_each([&](VertexId x) {
    for (VertexId y : g.neighbors(x)) {
      if (b.contains(y)) {
        ++count;
        break;
      }
    }
  });
  return count;
}

struct InducedSubgraph {
  TrustGraph graph;
  std::vector<VertexId> original;  // local id -> original id (ascending)
  std::vector<VertexId> local;     // original id -> local id, kNoVertex if outside
};

inline InducedSubgraph induced_subgraph(const TrustGraph& g, const VertexSet& a) {
  check_range(g, a);
  if (a.empty()) fail(ErrorKind::input, "induced subgraph of an empty vertex set");
  InducedSubgraph out;
  out.original = a.members();
  out.local.assign(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < out.original.size(); ++i)
    out.local[out.original[i]] = static_cast<VertexId>(i);

  GraphBuilder b(out.original.size());
  for (std::size_t i = 0; i < out.original.size(); ++i) {
    for (VertexId y : g.neighbors(out.original[i])) {
      const VertexId j = out.local[y];
      if (j != kNoVertex && i < j) b.add_edge(static_cast<VertexId>(i), j);
    }
  }
  out.graph = b.build();
  return out;
}

struct DegreeRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

inline DegreeRange degree_range(const TrustGraph& g) {
  DegreeRange r{std::numeric_limits<std::size_t>::max(), 0};
  if (g.vertex_count() == 0) return {0, 0};
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    r.min = std::min(r.min, g.degree(v));
    r.max = std::max(r.max, g.degree(v));
  }
  return r;
}

inline bool is_regular(const TrustGraph& g) {
  const auto r = degree_range(g);
  return r.min == r.max;
}

// alpha * d <= deg(v) <= d for every vertex; the lower bound is compared
// exactly, without rounding alpha * d.
inline bool degree_bounds_ok(const TrustGraph& g, const Fraction& alpha, std::size_t d) {
  if (alpha < Fraction(0) || alpha > Fraction(1)) fail(ErrorKind::input, "alpha must lie in [0, 1]");
  if (d < 1) fail(ErrorKind::input, "degree cap d must be at least 1");
  const Fraction lower = alpha * Fraction(static_cast<std::int64_t>(d));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const std::size_t deg = g.degree(v);
    if (deg > d || Fraction(static_cast<std::int64_t>(deg)) < lower) return false;
  }
  return true;
}

inline bool is_connected(const TrustGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace trustgrow
