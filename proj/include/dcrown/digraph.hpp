#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcrown {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Raised for malformed graphs: self-loops, duplicate edges, ids out of range.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Strictly increasing list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs);
  static VertexSet from_unsorted(std::vector<Vertex> vs);
  static VertexSet range(Vertex n);

  bool contains(Vertex v) const;
  void insert(Vertex v);
  void erase(Vertex v);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Vertex>& vec() const { return items_; }

  VertexSet set_union(const VertexSet& other) const;
  VertexSet set_intersection(const VertexSet& other) const;
  VertexSet set_difference(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> items_;
};

/// Immutable simple digraph on vertices 0..n-1. Antiparallel pairs are allowed,
/// self-loops and duplicate edges are not.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n);
  Digraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Lexicographically sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }
  bool has_edge(Vertex u, Vertex v) const;
  bool valid(Vertex v) const { return v < n_; }
  void check_vertex(Vertex v) const;

  Digraph reversed() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Simple undirected graph; edges stored as (u, v) with u < v, sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(std::size_t n) : n_(n), adj_(n) {}
  UndirectedGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

enum class Direction { out, in };

/// BFS distances from `v` along out-edges (or in-edges), truncated at
/// `max_depth` (negative: no limit); unreachable vertices get -1.
std::vector<int> bfs_distances(const Digraph& g, Vertex v, Direction dir, int max_depth);

/// N_d^+(v): every vertex reachable from v by a directed path of length <= d,
/// including v itself.
VertexSet out_neighborhood(const Digraph& g, Vertex v, unsigned d);
VertexSet in_neighborhood(const Digraph& g, Vertex v, unsigned d);
VertexSet set_neighborhood(const Digraph& g, const VertexSet& xs, unsigned d, Direction dir);

UndirectedGraph underlying_undirected(const Digraph& g);
Digraph bidirect(const UndirectedGraph& g);

struct TopologicalSort {
  std::vector<Vertex> order;  // valid iff cycle is empty
  std::vector<Vertex> cycle;  // v1 ... vk with vk -> v1 closing the cycle
  bool acyclic() const { return cycle.empty(); }
};

TopologicalSort topological_order(const Digraph& g);
bool is_dag(const Digraph& g);

struct Bipartition {
  VertexSet sources;  // A: every vertex with an out-edge; isolated vertices too
  VertexSet sinks;    // B: every vertex with an in-edge
};

/// Partition with E ⊆ A×B, if one exists.
std::optional<Bipartition> directed_bipartition(const Digraph& g);

/// Directed path (distinct vertices, consecutive pairs are edges).
bool is_directed_path(const Digraph& g, std::span<const Vertex> seq);
/// Directed cycle given as v1..vk (closing edge vk -> v1 implied), k >= 2.
bool is_directed_cycle(const Digraph& g, std::span<const Vertex> seq);

/// Walks a path of the underlying undirected graph and counts the inner
/// vertices at which edge orientation flips. Consecutive vertices must be
/// adjacent; an antiparallel pair counts as forward.
int count_alternations(const Digraph& g, std::span<const Vertex> path);
/// True iff `path` is a simple path of und(G) whose every inner vertex is an
/// alternation, i.e. an AP_k with k = |path| - 2 >= 1.
bool is_alternating_path(const Digraph& g, std::span<const Vertex> path);

struct Subgraph {
  Digraph graph;
  std::vector<Vertex> to_host;  // local id -> host id
};

Subgraph induced_subgraph(const Digraph& g, const VertexSet& keep);
/// Same vertex ids, every edge touching `removed` dropped. Scattered-set and
/// neighborhood semantics on G - S coincide with this graph outside S.
Digraph isolate_vertices(const Digraph& g, const VertexSet& removed);

std::string describe(const VertexSet& s);

}  // namespace dcrown
