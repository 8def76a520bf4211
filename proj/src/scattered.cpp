#include <boost/dynamic_bitset.hpp>

#include <functional>

#include "dcrown/quasiwide.hpp"

namespace dcrown {

namespace {

using Bits = boost::dynamic_bitset<>;

Bits in_ball_bits(const Digraph& g, Vertex u, unsigned d) {
  Bits b(g.num_vertices());
  auto dist = bfs_distances(g, u, Direction::in, static_cast<int>(d));
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (dist[v] >= 0) b.set(v);
  return b;
}

}  // namespace

bool is_scattered(const Digraph& g, const VertexSet& u, unsigned d) {
  for (Vertex x : u) g.check_vertex(x);
  Bits seen(g.num_vertices());
  for (Vertex x : u) {
    Bits ball = in_ball_bits(g, x, d);
    if (ball.intersects(seen)) return false;
    seen |= ball;
  }
  return true;
}

bool verify_scattered(const Digraph& g, const ScatteredWitness& w) {
  for (Vertex v : w.removed)
    if (!g.valid(v)) return false;
  for (Vertex v : w.set)
    if (!g.valid(v)) return false;
  if (w.set.intersects(w.removed)) return false;
  return is_scattered(isolate_vertices(g, w.removed), w.set, w.d);
}

VertexSet greedy_scattered(const Digraph& g, unsigned d) {
  Bits seen(g.num_vertices());
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Bits ball = in_ball_bits(g, v, d);
    if (ball.intersects(seen)) continue;
    seen |= ball;
    out.push_back(v);
  }
  return VertexSet::from_unsorted(out);
}

ScatterSearch compute_scattered(const Digraph& g, const VertexSet& w, unsigned d, std::size_t m,
                                std::size_t s_budget, std::uint64_t max_subsets) {
  for (Vertex x : w) g.check_vertex(x);
  if (w.size() < m) throw std::invalid_argument("scattered set target larger than W");
  ScatterSearch result;
  if (m == 0) {
    result.witness = ScatteredWitness{{}, {}, d};
    return result;
  }
  std::vector<Bits> balls;
  for (Vertex x : w) balls.push_back(in_ball_bits(g, x, d));

  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> chosen;
  // Subsets of one size in lexicographic order; `twice` only grows along a
  // branch, so an over-budget prefix prunes the whole branch.
  std::function<bool(std::size_t, std::size_t, const Bits&, const Bits&)> rec =
      [&](std::size_t k, std::size_t start, const Bits& once, const Bits& twice) -> bool {
    if (twice.count() > s_budget) return false;
    if (chosen.size() == k) {
      if (++result.subsets_examined > max_subsets) {
        result.budget_exhausted = true;
        return true;
      }
      std::vector<Vertex> keep;
      for (std::size_t i : chosen)
        if (!twice.test(w[i])) keep.push_back(w[i]);
      if (keep.size() < m) return false;
      keep.resize(m);
      std::vector<Vertex> removed;
      for (auto v = twice.find_first(); v != Bits::npos; v = twice.find_next(v))
        removed.push_back(static_cast<Vertex>(v));
      ScatteredWitness sw{VertexSet::from_unsorted(removed), VertexSet::from_unsorted(keep), d};
      if (!verify_scattered(g, sw))
        throw std::logic_error("common-ancestor deletion left a non-scattered set");
      result.witness = std::move(sw);
      return true;
    }
    for (std::size_t i = start; i + (k - chosen.size()) <= w.size(); ++i) {
      chosen.push_back(i);
      const bool stop = rec(k, i + 1, once | balls[i], twice | (once & balls[i]));
      chosen.pop_back();
      if (stop) return true;
    }
    return false;
  };
  for (std::size_t k = m; k <= w.size(); ++k)
    if (rec(k, 0, Bits(n), Bits(n))) break;
  if (result.budget_exhausted) result.witness.reset();
  return result;
}

}  // namespace dcrown
