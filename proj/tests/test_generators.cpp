#include "doctest.h"

#include <set>

#include "dcrown/generators.hpp"
#include "dcrown/rng.hpp"

using namespace dcrown;

TEST_CASE("crowns") {
  auto s3 = crown(3);
  CHECK(s3.graph.num_vertices() == 6);
  CHECK(s3.graph.num_edges() == 6);
  auto s1 = crown(1);
  CHECK(s1.graph.num_vertices() == 1);
  CHECK(s1.graph.num_edges() == 0);
  CHECK_THROWS(crown(0));
  for (unsigned q = 1; q <= 6; ++q) {
    auto c = crown(q);
    CHECK(c.graph.num_vertices() == q + q * (q - 1) / 2);
    CHECK(c.graph.num_edges() == q * (q - 1));
    for (Vertex v = 0; v < q; ++v) {
      CHECK(c.graph.out_degree(v) == 0);
      CHECK(c.graph.in_degree(v) == q - 1);
    }
    for (unsigned i = 0; i < q; ++i)
      for (unsigned j = i + 1; j < q; ++j) {
        Vertex u = c.pair_vertex(i, j);
        CHECK(c.graph.in_degree(u) == 0);
        CHECK(c.graph.out_degree(u) == 2);
        CHECK(c.graph.has_edge(u, i));
        CHECK(c.graph.has_edge(u, j));
      }
    CHECK(is_dag(c.graph));
    CHECK(directed_bipartition(c.graph));
    auto r = reversed_crown(q);
    CHECK(r.graph.num_edges() == q * (q - 1));
    for (Vertex v = 0; v < r.graph.num_vertices(); ++v) CHECK(r.graph.in_degree(v) <= 2);
    CHECK(underlying_undirected(r.graph) == underlying_undirected(c.graph));
  }
}

TEST_CASE("alternating path layouts") {
  auto ap1 = alternating_path(1, Phase::odd);
  CHECK(ap1.edges() == std::vector<Edge>{{1, 0}, {1, 2}});
  auto ap2 = alternating_path(2, Phase::even);
  CHECK(ap2.edges() == std::vector<Edge>{{0, 1}, {2, 1}, {2, 3}});
  CHECK_THROWS(alternating_path(0, Phase::odd));
  CHECK(is_dag(alternating_path(7, Phase::odd)));
}

TEST_CASE("tournaments") {
  CHECK(acyclic_tournament(3).edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  for (unsigned n = 1; n <= 7; ++n) {
    CHECK(is_dag(acyclic_tournament(n)));
    auto t = random_tournament(n, 100 + n);
    CHECK(t.num_edges() == n * (n - 1) / 2);
    CHECK(underlying_undirected(t).num_edges() == n * (n - 1) / 2);
  }
}

TEST_CASE("acyclic tournaments embed in tournaments of order 2^n") {
  for (unsigned n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto t = random_tournament(1u << n, seed);
      auto seq = embed_acyclic_tournament(t, n);
      REQUIRE(seq);
      CHECK(seq->size() == n);
      for (std::size_t i = 0; i < seq->size(); ++i)
        for (std::size_t j = i + 1; j < seq->size(); ++j) CHECK(t.has_edge((*seq)[i], (*seq)[j]));
    }
}

TEST_CASE("oriented grids") {
  GridShape s{2, 3};
  CHECK(s.num_undirected_edges() == 7);
  auto forward = oriented_grid(s, std::vector<bool>(7, false));
  CHECK(forward.num_edges() == 7);
  CHECK(is_dag(forward));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GridShape big{4, 5};
    auto g = oriented_grid(big, seed);
    auto und = underlying_undirected(g);
    CHECK(und.num_edges() == big.num_undirected_edges());
    for (auto [u, v] : und.edges()) {
      auto a = big.coord(u), b = big.coord(v);
      int dr = static_cast<int>(a.row) - static_cast<int>(b.row);
      int dc = static_cast<int>(a.col) - static_cast<int>(b.col);
      CHECK(std::abs(dr) + std::abs(dc) == 1);
    }
  }
  CHECK_THROWS(oriented_grid(s, std::vector<bool>(3, false)));
}

TEST_CASE("grid alternating paths, all orientations of the 2x3 grid") {
  GridShape s{2, 3};
  for (unsigned bits = 0; bits < 128; ++bits) {
    std::vector<bool> o(7);
    for (unsigned i = 0; i < 7; ++i) o[i] = bits >> i & 1;
    auto g = oriented_grid(s, o);
    auto path = extract_grid_alternating_path(g, 1);
    CHECK(path.front() == s.id({1, 1}));
    CHECK(s.coord(path.back()).row == 2);
    CHECK(count_alternations(g, path) >= 1);
  }
}

TEST_CASE("grid alternating path falls back to P3 when P1 is a directed path") {
  GridShape s{2, 3};
  // (1,1)->(1,2)->(1,3)->(2,3)->(2,2)->(2,1): no alternation along P1.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 5}, {5, 4}, {4, 3}, {0, 3}, {1, 4}};
  Digraph g(6, edges);
  auto path = extract_grid_alternating_path(g, 1);
  CHECK(path == std::vector<Vertex>{0, 1, 4, 5});
  CHECK(count_alternations(g, path) >= 1);
}

TEST_CASE("grid alternating paths, random taller grids") {
  for (unsigned l = 2; l <= 4; ++l)
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      GridShape s{2 * l, 3};
      auto g = oriented_grid(s, seed * 7 + l);
      auto path = extract_grid_alternating_path(g, l);
      CHECK(path.front() == 0);
      CHECK(s.coord(path.back()).row == 2 * l);
      CHECK(s.coord(path.back()).col != 2);
      CHECK(count_alternations(g, path) >= static_cast<int>(l));
      std::set<Vertex> distinct(path.begin(), path.end());
      CHECK(distinct.size() == path.size());
    }
  CHECK_THROWS_AS(extract_grid_alternating_path(Digraph(6), 1), GraphError);
}

TEST_CASE("random out-regular bipartite graphs") {
  auto full = random_bipartite_outregular(4, 4, 1);
  CHECK(full.num_edges() == 16);
  for (unsigned d = 0; d <= 6; ++d) {
    auto g = random_bipartite_outregular(6, d, 9);
    CHECK(g.num_edges() == 6 * d);
    for (Vertex a = 0; a < 6; ++a) CHECK(g.out_degree(a) == d);
    for (Vertex b = 6; b < 12; ++b) CHECK(g.out_degree(b) == 0);
  }
  CHECK(random_bipartite_outregular(8, 3, 77) == random_bipartite_outregular(8, 3, 77));
  CHECK_THROWS(random_bipartite_outregular(3, 4, 0));
}

TEST_CASE("crown pattern probability") {
  CHECK(crown_pattern_probability(6, 1, 2).exact == 0);
  CHECK(crown_pattern_probability(4, 2, 2).exact == Rational(1, 6));
  // (C(6,1)/C(8,3))^1 = 6/56.
  CHECK(crown_pattern_probability(8, 3, 2).exact == Rational(3, 28));
  for (unsigned n = 3; n <= 20; ++n)
    for (unsigned d = 1; 2 * d < n; ++d)
      for (unsigned q = 1; q <= 4; ++q) {
        auto p = crown_pattern_probability(n, d, q);
        CHECK(p.exact <= p.upper_bound);
      }
}

TEST_CASE("rng determinism and range") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
  SplitMix64 c(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(c.below(13) < 13);
    double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(SplitMix64(1).split(3)() != SplitMix64(1).split(4)());
}
