#include "doctest.h"

#include "dcrown/generators.hpp"
#include "dcrown/minors.hpp"
#include "dcrown/rng.hpp"
#include "oracles/oracles.hpp"

using namespace dcrown;

namespace {

// Every edge u->v of g replaced by u->m->v; midpoints get ids n, n+1, ...
Digraph subdivide(const Digraph& g) {
  std::vector<Edge> edges;
  Vertex next = static_cast<Vertex>(g.num_vertices());
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(u, next);
    edges.emplace_back(next, v);
    ++next;
  }
  return Digraph(next, edges);
}

DirectedModel identity_model(const Digraph& g) {
  std::vector<Vertex> id(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) id[v] = v;
  return embedding_to_model(g, g, id);
}

Digraph random_pattern(SplitMix64& rng, unsigned max_h) {
  unsigned h = 1 + static_cast<unsigned>(rng.below(max_h));
  return random_digraph(h, 0.45, rng(), rng.coin());
}

}  // namespace

TEST_CASE("verify_model accepts identity and rejects overlaps") {
  auto g = random_digraph(7, 0.3, 3);
  CHECK(verify_model(g, g, identity_model(g)));

  auto s3 = crown(3);
  auto m = identity_model(s3.graph);
  m.branch[0].vertices.insert(1);
  auto report = verify_model(s3.graph, s3.graph, m);
  REQUIRE_FALSE(report);
  CHECK(report.violations[0].rfind("disjoint", 0) == 0);

  Digraph h(2, {{0, 1}});
  DirectedModel bad;
  bad.branch = {BranchSet{{0}, {}, 0, 0}};
  CHECK_FALSE(verify_model(g, h, bad));
}

TEST_CASE("hand-built crown model inside its subdivision") {
  auto s3 = crown(3);
  auto sub = subdivide(s3.graph);
  // Branch of u_{i,j}: u plus its two midpoints.
  DirectedModel m;
  m.depth = 1;
  for (Vertex v = 0; v < 3; ++v) m.branch.push_back(BranchSet{{v}, {}, v, v});
  for (Vertex u = 3; u < 6; ++u) {
    std::vector<Vertex> verts{u};
    std::vector<Edge> edges;
    for (Vertex mid : sub.out(u)) {
      verts.push_back(mid);
      edges.emplace_back(u, mid);
    }
    m.branch.push_back(BranchSet{VertexSet::from_unsorted(verts), edges, u, u});
  }
  for (auto [u, v] : s3.graph.edges())
    for (Vertex mid : sub.out(u))
      if (sub.has_edge(mid, v)) m.edge_image.emplace_back(mid, v);
  CHECK(verify_model(sub, s3.graph, m));
  m.depth = 0;
  CHECK_FALSE(verify_model(sub, s3.graph, m));
}

TEST_CASE("interval partitions") {
  auto p = IntervalPartition::from_sizes({2, 0, 3});
  CHECK(p.num_intervals() == 2);
  CHECK(p.interval_of(1) == 0);
  CHECK(p.interval_of(2) == 1);
  CHECK_THROWS(p.interval_of(5));
  CHECK_THROWS(IntervalPartition({2, 2}));
}

TEST_CASE("disjoint paths in DAGs") {
  Digraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  auto one = dag_disjoint_paths(path, {{0, 3}}, IntervalPartition::single(1));
  REQUIRE(one);
  CHECK((*one)[0] == std::vector<Vertex>{0, 1, 2, 3});

  // Both pairs must pass through the cut 2 -> 3.
  Digraph cut(7, {{0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {5, 6}});
  std::vector<TerminalPair> pairs{{0, 4}, {1, 6}};
  CHECK(dag_disjoint_paths(cut, pairs, IntervalPartition::single(2)));
  CHECK_FALSE(dag_disjoint_paths(cut, pairs, IntervalPartition::singletons(2)));
  CHECK(oracle::disjoint_paths_exist(cut, pairs, IntervalPartition::single(2)));
  CHECK_FALSE(oracle::disjoint_paths_exist(cut, pairs, IntervalPartition::singletons(2)));

  Digraph cyc(2, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(dag_disjoint_paths(cyc, {{0, 1}}, IntervalPartition::single(1)), GraphError);
}

TEST_CASE("bounded disjoint paths") {
  Digraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_FALSE(dag_disjoint_paths_bounded(path, {{0, 3}}, IntervalPartition::single(1), 2));
  CHECK(dag_disjoint_paths_bounded(path, {{0, 3}}, IntervalPartition::single(1), 3));
  // Length 0 only allows s = t.
  CHECK(dag_disjoint_paths_bounded(path, {{2, 2}}, IntervalPartition::single(1), 0));
  CHECK_FALSE(dag_disjoint_paths_bounded(path, {{1, 2}}, IntervalPartition::single(1), 0));
}

TEST_CASE("disjoint paths agree with path-tuple enumeration") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    unsigned n = 4 + static_cast<unsigned>(rng.below(6));
    auto g = random_digraph(n, 0.35, rng(), true);
    std::size_t k = 1 + rng.below(3);
    std::vector<TerminalPair> pairs;
    for (std::size_t i = 0; i < k; ++i) {
      Vertex s = static_cast<Vertex>(rng.below(n)), t = static_cast<Vertex>(rng.below(n));
      if (s > t) std::swap(s, t);
      pairs.push_back({s, t});
    }
    std::vector<std::size_t> sizes;
    for (std::size_t left = k; left > 0;) {
      std::size_t s = 1 + rng.below(left);
      sizes.push_back(s);
      left -= s;
    }
    auto part = IntervalPartition::from_sizes(sizes);
    auto got = dag_disjoint_paths(g, pairs, part);
    CHECK(got.has_value() == oracle::disjoint_paths_exist(g, pairs, part));
    if (got) {
      for (std::size_t i = 0; i < k; ++i) {
        CHECK((*got)[i].front() == pairs[i].source);
        CHECK((*got)[i].back() == pairs[i].target);
        CHECK(is_directed_path(g, (*got)[i]));
      }
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          if (part.interval_of(i) != part.interval_of(j))
            for (Vertex v : (*got)[i])
              CHECK(std::find((*got)[j].begin(), (*got)[j].end(), v) == (*got)[j].end());
    }
    for (unsigned r = 0; r <= 3; ++r) {
      auto b = dag_disjoint_paths_bounded(g, pairs, part, r);
      CHECK(b.has_value() == oracle::disjoint_paths_exist(g, pairs, part, r));
      if (b)
        for (const auto& p : *b) CHECK(p.size() <= r + 1);
    }
    CHECK(dag_disjoint_paths_bounded(g, pairs, part, n).has_value() == got.has_value());
  }
}

TEST_CASE("minor checks on small named instances") {
  Digraph edge(2, {{0, 1}});
  auto host = random_digraph(6, 0.4, 11, true);
  REQUIRE(host.num_edges() > 0);
  auto m = dag_minor_check(edge, host);
  REQUIRE(m);
  CHECK(verify_model(host, edge, *m));

  auto s3 = crown(3).graph;
  auto sub = subdivide(s3);
  CHECK(dag_minor_check(s3, sub));
  CHECK(oracle::directed_minor(crown(2).graph, subdivide(crown(2).graph)));
  auto d1 = shallow_minor_check(s3, sub, 1);
  REQUIRE(d1);
  CHECK(verify_model(sub, s3, *d1));
  CHECK_FALSE(shallow_minor_check(s3, sub, 0));

  Digraph two_cycle(2, {{0, 1}, {1, 0}});
  CHECK_FALSE(dag_minor_check(two_cycle, acyclic_tournament(6)));
  CHECK_THROWS_AS(dag_minor_check(edge, two_cycle), GraphError);
}

TEST_CASE("depth-0 minors are subgraphs") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_digraph(6, 0.35, rng(), rng.coin());
    auto h = random_pattern(rng, 4);
    CHECK(shallow_minor_check(h, g, 0).has_value() == find_subgraph(h, g).has_value());
  }
}

TEST_CASE("general minor check") {
  auto g = random_digraph(6, 0.4, 8);
  auto self = general_minor_check(g, g);
  REQUIRE(self);
  CHECK(verify_model(g, g, *self));

  auto k3 = bidirect(UndirectedGraph(3, {{0, 1}, {0, 2}, {1, 2}}));
  auto k4 = bidirect(UndirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  CHECK(general_minor_check(k3, k4));
  CHECK_FALSE(general_minor_check(k4, k3));
}

TEST_CASE("minor checks agree with branch-set enumeration") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    unsigned n = 3 + static_cast<unsigned>(rng.below(4));
    bool dag = rng.coin();
    auto g = random_digraph(n, 0.4, rng(), dag);
    auto h = random_pattern(rng, 3);
    auto gen = general_minor_check(h, g);
    CHECK(gen.has_value() == oracle::directed_minor(h, g));
    if (gen) CHECK(verify_model(g, h, *gen));
    if (dag) {
      auto d = dag_minor_check(h, g);
      CHECK(d.has_value() == gen.has_value());
    }
    for (unsigned r = 0; r <= 2; ++r) {
      auto s = shallow_minor_check(h, g, r);
      CHECK(s.has_value() == oracle::directed_minor(h, g, r));
      if (s) {
        CHECK(verify_model(g, h, *s));
        CHECK(shallow_minor_check(h, g, r + 1));
        auto plain = *s;
        plain.depth.reset();
        CHECK(verify_model(g, h, plain));
      }
    }
  }
}

TEST_CASE("directed minors project to undirected minors") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_digraph(6, 0.35, rng());
    auto h = random_pattern(rng, 4);
    if (general_minor_check(h, g))
      CHECK(oracle::undirected_minor(underlying_undirected(h), underlying_undirected(g)));
  }
}

TEST_CASE("bidirected lifting on tiny undirected graphs") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    auto hu = underlying_undirected(random_digraph(1 + rng.below(3), 0.5, rng()));
    auto gu = underlying_undirected(random_digraph(2 + rng.below(3), 0.4, rng()));
    CHECK(oracle::undirected_minor(hu, gu) == general_minor_check(bidirect(hu), bidirect(gu)).has_value());
  }
}

TEST_CASE("butterfly contraction") {
  Digraph p3(3, {{0, 1}, {1, 2}});
  auto c = butterfly_contract(p3, {1, 2});
  CHECK(c.graph == Digraph(2, {{0, 1}}));
  CHECK(c.host_to_result == std::vector<Vertex>{0, 1, 1});
  CHECK_THROWS(butterfly_contract(p3, {0, 2}));
  // 0->2, 1->2, 2->3, 2->4: neither out-degree nor in-degree is 1 on 0->2? in-degree of 2 is 2,
  // out-degree of 0 is 1, so it is allowed; 2->3 has out-degree 2 at 2 and in-degree 1 at 3.
  Digraph fan(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(is_butterfly_contractible(fan, {0, 2}));
  CHECK_FALSE(is_butterfly_contractible(fan, {2, 4}));
  CHECK_THROWS(butterfly_contract(fan, {2, 4}));
}

TEST_CASE("butterfly minors are directed minors") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_digraph(7, 0.3, rng());
    Digraph h = g;
    unsigned steps = static_cast<unsigned>(rng.below(4));
    for (unsigned s = 0; s < steps; ++s) {
      std::vector<Edge> ok;
      for (auto e : h.edges())
        if (is_butterfly_contractible(h, e)) ok.push_back(e);
      if (ok.empty()) break;
      h = butterfly_contract(h, ok[rng.below(ok.size())]).graph;
    }
    CHECK(is_butterfly_minor(h, g));
    auto m = general_minor_check(h, g);
    REQUIRE(m);
    CHECK(verify_model(g, h, *m));
  }
}

TEST_CASE("a directed minor that is not a butterfly minor") {
  // Pattern: two sources into b, b into two sinks.
  Digraph h(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  // Host: the middle vertex blown up into a K_{2,2} 2->4, 2->5, 3->4, 3->5.
  Digraph g(8, {{0, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 6}, {5, 7}});
  auto m = general_minor_check(h, g);
  REQUIRE(m);
  CHECK(verify_model(g, h, *m));
  CHECK_FALSE(is_butterfly_minor(h, g));
}

TEST_CASE("bipartite patterns: directed and butterfly minors coincide") {
  auto s2 = crown(2).graph;
  SplitMix64 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = random_digraph(6, 0.3, rng());
    auto c = bipartite_minor_equiv_check(s2, g);
    CHECK(c.agree());
    if (c.directed) {
      CHECK(verify_model(g, s2, *c.directed));
      for (Vertex x = 0; x < s2.num_vertices(); ++x)
        CHECK(is_branching(c.directed->branch[x], x < 2 ? Direction::in : Direction::out));
    }
  }
  for (unsigned q = 2; q <= 3; ++q) {
    auto rc = reversed_crown(q).graph;
    auto c = bipartite_minor_equiv_check(rc, subdivide(reversed_crown(q).graph));
    CHECK(c.agree());
  }
  CHECK_THROWS(bipartite_minor_equiv_check(Digraph(3, {{0, 1}, {1, 2}}), s2));
}

TEST_CASE("topological minors") {
  auto s3 = crown(3).graph;
  auto direct = topological_minor_check(s3, s3);
  REQUIRE(direct);
  CHECK(verify_subdivision(s3, s3, *direct));
  auto sub = subdivide(s3);
  auto t = topological_minor_check(s3, sub);
  REQUIRE(t);
  CHECK(verify_subdivision(sub, s3, *t));
  CHECK(verify_model(sub, s3, subdivision_to_model(sub, s3, *t)));
  SplitMix64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_digraph(7, 0.3, rng());
    auto h = random_pattern(rng, 4);
    if (auto s = topological_minor_check(h, g)) {
      CHECK(verify_subdivision(g, h, *s));
      CHECK(verify_model(g, h, subdivision_to_model(g, h, *s)));
    }
    if (find_subgraph(h, g)) CHECK(topological_minor_check(h, g));
  }
}

TEST_CASE("grad") {
  CHECK(grad(crown(3).graph, 0) == 1);
  CHECK(grad(Digraph(2, {{0, 1}}), 3) == Rational(1, 2));
  CHECK(grad(Digraph(3), 1) == 0);
  SplitMix64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_digraph(6, 0.3, rng());
    Rational prev = -1;
    for (unsigned r = 0; r <= 3; ++r) {
      auto v = grad(g, r);
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(grad(g, 0) >= Rational(g.num_edges(), g.num_vertices()));
  }
  CHECK(grad(bidirect(UndirectedGraph(3, {{0, 1}, {0, 2}, {1, 2}})), 0) == 2);
  // Directed 4-cycle: contracting down to a 2-cycle needs depth 1.
  Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(grad(c4, 0) == 1);
  CHECK(grad(c4, 1) == 1);
}
