#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcrown/digraph.hpp"
#include "dcrown/generators.hpp"

namespace dcrown {

/// Image δ(v) of one pattern vertex: a host subgraph plus its designated
/// source s_v and sink t_v.
struct BranchSet {
  VertexSet vertices;
  std::vector<Edge> edges;  // host edges with both ends in `vertices`
  Vertex source = 0;
  Vertex sink = 0;
};

/// Directed model of a pattern H in a host G. `edge_image[i]` is the host edge
/// carrying `pattern.edges()[i]`. With `depth` set, every required connection
/// inside a branch set must have length at most `*depth`.
struct DirectedModel {
  std::vector<BranchSet> branch;
  std::vector<Edge> edge_image;
  std::optional<unsigned> depth;
};

struct ModelReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Checks every clause of the model definition: disjoint branch sets, edge
/// images leaving δ(u) and entering δ(v), in→out reachability inside each
/// branch, source and sink conditions, and the depth bound when present.
ModelReport verify_model(const Digraph& host, const Digraph& pattern, const DirectedModel& m);

/// Partition of coordinates 0..k-1 into consecutive intervals. Paths whose
/// coordinates lie in different intervals must be vertex-disjoint.
class IntervalPartition {
 public:
  /// Breakpoints z_1 < ... < z_l = k (z_0 = 0 implied).
  explicit IntervalPartition(std::vector<std::size_t> breakpoints);
  static IntervalPartition single(std::size_t k);
  static IntervalPartition singletons(std::size_t k);
  static IntervalPartition from_sizes(const std::vector<std::size_t>& sizes);

  std::size_t num_coordinates() const { return breaks_.empty() ? 0 : breaks_.back(); }
  std::size_t num_intervals() const { return breaks_.size(); }
  std::size_t interval_of(std::size_t coord) const;
  std::size_t begin_of(std::size_t interval) const { return interval ? breaks_[interval - 1] : 0; }
  std::size_t end_of(std::size_t interval) const { return breaks_[interval]; }

 private:
  std::vector<std::size_t> breaks_;
};

struct TerminalPair {
  Vertex source;
  Vertex target;
};

using PathList = std::vector<std::vector<Vertex>>;

/// Paths P_i from s_i to t_i in a DAG, pairwise vertex-disjoint across
/// intervals. Search runs over tuples of current positions, introducing one
/// new vertex at a time in topological order. Throws GraphError on cyclic input.
std::optional<PathList> dag_disjoint_paths(const Digraph& g, const std::vector<TerminalPair>& pairs,
                                           const IntervalPartition& part);
/// Same, with every path of length at most `max_len`.
std::optional<PathList> dag_disjoint_paths_bounded(const Digraph& g,
                                                   const std::vector<TerminalPair>& pairs,
                                                   const IntervalPartition& part,
                                                   unsigned max_len);

/// XP minor test for acyclic hosts. Cyclic patterns are rejected at once.
std::optional<DirectedModel> dag_minor_check(const Digraph& pattern, const Digraph& host);
/// Depth-r minor test; DAG hosts go through the bounded product search.
std::optional<DirectedModel> shallow_minor_check(const Digraph& pattern, const Digraph& host,
                                                 unsigned depth);
/// Exhaustive backtracking for arbitrary hosts (desk scale, |V(G)| <= 12).
std::optional<DirectedModel> general_minor_check(const Digraph& pattern, const Digraph& host);

struct ButterflyContraction {
  Digraph graph;
  /// Host vertex -> vertex of the contracted graph.
  std::vector<Vertex> host_to_result;
};

/// Contracts u->v when out-deg(u) = 1 or in-deg(v) = 1. The merged vertex
/// takes u's place; loops and parallel edges are dropped. Throws
/// std::invalid_argument if the edge is missing or not contractible.
ButterflyContraction butterfly_contract(const Digraph& g, Edge e);
bool is_butterfly_contractible(const Digraph& g, Edge e);

/// Exhaustive search over deletions and butterfly contractions, memoised on
/// labelled states (|V(G)| <= 10).
bool is_butterfly_minor(const Digraph& pattern, const Digraph& host);

/// Subdivision witness: pattern vertex -> host vertex and pattern edge ->
/// host directed path between the images.
struct Subdivision {
  std::vector<Vertex> branch_vertex;
  PathList edge_path;
};

bool verify_subdivision(const Digraph& host, const Digraph& pattern, const Subdivision& s);
std::optional<Subdivision> topological_minor_check(const Digraph& pattern, const Digraph& host);
/// Model whose branch sets are the branch vertices plus the interior of their
/// outgoing subdivision paths.
DirectedModel subdivision_to_model(const Digraph& host, const Digraph& pattern,
                                   const Subdivision& s);

/// True iff the branch is an out-branching rooted at its source
/// (Direction::out) or an in-branching rooted at its sink (Direction::in).
bool is_branching(const BranchSet& b, Direction dir);

/// Rewrites a model of a directed-bipartite pattern so that source-side
/// branch sets become out-branchings and sink-side ones in-branchings, keeping
/// only BFS-tree paths to the edge-image endpoints.
DirectedModel branching_model(const Digraph& host, const Digraph& pattern,
                              const DirectedModel& m);

struct BipartiteMinorComparison {
  std::optional<DirectedModel> directed;  // branching form when found
  bool butterfly = false;
  bool agree() const { return directed.has_value() == butterfly; }
};

/// For a directed-bipartite pattern, runs both the directed and the butterfly
/// minor tests. Throws std::invalid_argument if the pattern is not bipartite.
BipartiteMinorComparison bipartite_minor_equiv_check(const Digraph& pattern, const Digraph& host);

/// Maximum |E(H)|/|V(H)| over depth-r minors H of G (|V(G)| <= 10).
Rational grad(const Digraph& g, unsigned depth);

/// Injective homomorphism of `pattern` into `host` (subgraph isomorphism),
/// first in lexicographic order of the image tuple.
std::optional<std::vector<Vertex>> find_subgraph(const Digraph& pattern, const Digraph& host);

/// Model with singleton branch sets from a subgraph embedding.
DirectedModel embedding_to_model(const Digraph& host, const Digraph& pattern,
                                 const std::vector<Vertex>& image);

}  // namespace dcrown
