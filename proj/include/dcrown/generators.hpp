#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <vector>

#include "dcrown/digraph.hpp"

namespace dcrown {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Crown S_q: principal sinks v_1..v_q occupy ids 0..q-1, then one source
/// u_{i,j} per pair i<j in lexicographic order, pointing to v_i and v_j.
struct Crown {
  Digraph graph;
  VertexSet principal;
  unsigned order = 0;

  /// Vertex id of u_{i,j} for 0 <= i < j < q (0-based principal indices).
  Vertex pair_vertex(unsigned i, unsigned j) const;
};

Crown crown(unsigned q);
Crown reversed_crown(unsigned q);

enum class Phase { odd, even };

/// AP_k on k+2 vertices 0..k+1 (vertex i is v_{i+1}); every edge points to its
/// odd-indexed (or even-indexed) endpoint.
Digraph alternating_path(unsigned k, Phase phase);

Digraph acyclic_tournament(unsigned n);
Digraph random_tournament(unsigned n, std::uint64_t seed);

/// Each ordered pair (u, v), u != v, becomes an edge with probability p. With
/// `acyclic` only pairs u < v are considered.
Digraph random_digraph(unsigned n, double p, std::uint64_t seed, bool acyclic = false);

/// 1-based grid position; vertex id is (row-1)*cols + (col-1).
struct GridCoord {
  unsigned row = 1;
  unsigned col = 1;
};

struct GridShape {
  unsigned rows = 0;
  unsigned cols = 0;
  Vertex id(GridCoord c) const { return (c.row - 1) * cols + (c.col - 1); }
  GridCoord coord(Vertex v) const { return {v / cols + 1, v % cols + 1}; }
  std::size_t num_undirected_edges() const {
    return rows * (cols - 1) + (rows - 1) * cols;
  }
};

/// Undirected grid edges (smaller id first) in row-major order: right, then down.
std::vector<Edge> grid_edges(GridShape shape);
/// Bit i of `orientation` set means grid_edges()[i] points from the larger id
/// to the smaller one; unset means smaller to larger.
Digraph oriented_grid(GridShape shape, const std::vector<bool>& orientation);
Digraph oriented_grid(GridShape shape, std::uint64_t seed);

/// Path in und(G) from (1,1) to (2l,1) or (2l,3) with at least l alternations.
/// Throws GraphError if `g` is not an orientation of the 2l x 3 grid.
std::vector<Vertex> extract_grid_alternating_path(const Digraph& g, unsigned l);

/// Directed bipartite graph with A = 0..n-1, B = n..2n-1; every a picks d
/// distinct uniform out-neighbours in B.
Digraph random_bipartite_outregular(unsigned n, unsigned d, std::uint64_t seed);

struct CrownPatternProbability {
  Rational exact;        // (C(n-2,d-2)/C(n,d))^C(q,2)
  Rational upper_bound;  // (2d/n)^(q(q-1))
};

CrownPatternProbability crown_pattern_probability(unsigned n, unsigned d, unsigned q);

BigInt binomial(std::int64_t n, std::int64_t k);

/// Copy of the acyclic tournament on n vertices inside tournament `t`, found
/// by repeatedly descending into the out-neighbourhood of a vertex of highest
/// out-degree. Returned vertices are in topological order.
std::optional<std::vector<Vertex>> embed_acyclic_tournament(const Digraph& t, unsigned n);

}  // namespace dcrown
