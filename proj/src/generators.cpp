#include "dcrown/generators.hpp"

#include <algorithm>
#include <numeric>

#include "dcrown/rng.hpp"

namespace dcrown {

Vertex Crown::pair_vertex(unsigned i, unsigned j) const {
  if (!(i < j && j < order)) throw std::invalid_argument("crown pair index out of range");
  // Pairs (a,b) with a < i come first: sum_{a<i} (q-1-a) of them.
  unsigned before = i * (order - 1) - i * (i - 1) / 2;
  return order + before + (j - i - 1);
}

Crown crown(unsigned q) {
  if (q == 0) throw std::invalid_argument("crown order must be positive");
  std::vector<Edge> edges;
  Vertex next = q;
  for (unsigned i = 0; i < q; ++i) {
    for (unsigned j = i + 1; j < q; ++j) {
      edges.emplace_back(next, i);
      edges.emplace_back(next, j);
      ++next;
    }
  }
  Crown c;
  c.order = q;
  c.graph = Digraph(next, std::move(edges));
  c.principal = VertexSet::range(q);
  return c;
}

Crown reversed_crown(unsigned q) {
  Crown c = crown(q);
  c.graph = c.graph.reversed();
  return c;
}

Digraph alternating_path(unsigned k, Phase phase) {
  if (k == 0) throw std::invalid_argument("alternating path needs k >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < k + 2; ++i) {
    // Vertex i is v_{i+1}; target is the endpoint with the wanted parity.
    bool i_is_odd = (i + 1) % 2 == 1;
    bool want_odd = phase == Phase::odd;
    if (i_is_odd == want_odd)
      edges.emplace_back(i + 1, i);
    else
      edges.emplace_back(i, i + 1);
  }
  return Digraph(k + 2, std::move(edges));
}

Digraph acyclic_tournament(unsigned n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Digraph(n, std::move(edges));
}

Digraph random_tournament(unsigned n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) {
      if (rng.coin())
        edges.emplace_back(i, j);
      else
        edges.emplace_back(j, i);
    }
  return Digraph(n, std::move(edges));
}

Digraph random_digraph(unsigned n, double p, std::uint64_t seed, bool acyclic) {
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = acyclic ? u + 1 : 0; v < n; ++v)
      if (u != v && rng.uniform() < p) edges.emplace_back(u, v);
  return Digraph(n, std::move(edges));
}

std::vector<Edge> grid_edges(GridShape shape) {
  std::vector<Edge> edges;
  for (unsigned i = 1; i <= shape.rows; ++i)
    for (unsigned j = 1; j <= shape.cols; ++j) {
      Vertex v = shape.id({i, j});
      if (j < shape.cols) edges.emplace_back(v, shape.id({i, j + 1}));
      if (i < shape.rows) edges.emplace_back(v, shape.id({i + 1, j}));
    }
  return edges;
}

Digraph oriented_grid(GridShape shape, const std::vector<bool>& orientation) {
  auto und = grid_edges(shape);
  if (orientation.size() != und.size())
    throw std::invalid_argument("orientation vector must have one entry per grid edge");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < und.size(); ++i) {
    auto [u, v] = und[i];
    edges.push_back(orientation[i] ? Edge{v, u} : Edge{u, v});
  }
  return Digraph(static_cast<std::size_t>(shape.rows) * shape.cols, std::move(edges));
}

Digraph oriented_grid(GridShape shape, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<bool> orientation(shape.num_undirected_edges());
  for (std::size_t i = 0; i < orientation.size(); ++i) orientation[i] = rng.coin();
  return oriented_grid(shape, orientation);
}

namespace {

using Path = std::vector<Vertex>;

// Path from (top, start_col) down to row top+2l-1 ending in column 1 or 3,
// built from the two-row pieces P1 and P3 and their mirror images.
std::optional<Path> grid_path(const Digraph& g, GridShape shape, unsigned top, unsigned start_col,
                              unsigned l) {
  const unsigned s = start_col;
  const unsigned o = 4 - start_col;  // the opposite outer column
  auto id = [&](unsigned r, unsigned c) { return shape.id({r, c}); };
  const Path p1 = {id(top, s), id(top, 2), id(top, o), id(top + 1, o), id(top + 1, 2),
                   id(top + 1, s)};
  const Path p3 = {id(top, s), id(top, 2), id(top + 1, 2), id(top + 1, o)};
  const unsigned p1_end = s;
  const unsigned p3_end = o;

  if (l == 1) {
    if (count_alternations(g, p1) >= 1) return p1;
    if (count_alternations(g, p3) >= 1) return p3;
    return std::nullopt;
  }
  for (const auto& [piece, end_col] : {std::pair{p1, p1_end}, std::pair{p3, p3_end}}) {
    auto rest = grid_path(g, shape, top + 2, end_col, l - 1);
    if (!rest) continue;
    Path full = piece;
    full.insert(full.end(), rest->begin(), rest->end());
    if (count_alternations(g, full) >= static_cast<int>(l)) return full;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Vertex> extract_grid_alternating_path(const Digraph& g, unsigned l) {
  if (l == 0) throw std::invalid_argument("grid alternating path needs l >= 1");
  GridShape shape{2 * l, 3};
  if (g.num_vertices() != static_cast<std::size_t>(shape.rows) * shape.cols ||
      g.num_edges() != shape.num_undirected_edges())
    throw GraphError("input is not an orientation of a " + std::to_string(2 * l) + "x3 grid");
  for (auto [u, v] : grid_edges(shape))
    if (g.has_edge(u, v) == g.has_edge(v, u))
      throw GraphError("input is not an orientation of a " + std::to_string(2 * l) + "x3 grid");
  auto path = grid_path(g, shape, 1, 1, l);
  if (!path) throw std::logic_error("grid alternating path construction failed");
  return *path;
}

Digraph random_bipartite_outregular(unsigned n, unsigned d, std::uint64_t seed) {
  if (d > n) throw std::invalid_argument("out-degree d must not exceed n");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  std::vector<Vertex> pool(n);
  for (Vertex a = 0; a < n; ++a) {
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: the first d slots are a uniform d-subset.
    for (unsigned i = 0; i < d; ++i) {
      auto j = i + rng.below(n - i);
      std::swap(pool[i], pool[j]);
      edges.emplace_back(a, n + pool[i]);
    }
  }
  return Digraph(2 * static_cast<std::size_t>(n), std::move(edges));
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

namespace {

Rational rpow(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

CrownPatternProbability crown_pattern_probability(unsigned n, unsigned d, unsigned q) {
  if (n == 0 || d > n) throw std::invalid_argument("need 0 < n and d <= n");
  if (q == 0) throw std::invalid_argument("crown order must be positive");
  const unsigned pairs = q * (q - 1) / 2;
  Rational single(binomial(n - 2, static_cast<std::int64_t>(d) - 2), binomial(n, d));
  CrownPatternProbability p;
  p.exact = rpow(single, pairs);
  p.upper_bound = rpow(Rational(2 * d, n), q * (q - 1));
  return p;
}

std::optional<std::vector<Vertex>> embed_acyclic_tournament(const Digraph& t, unsigned n) {
  std::vector<Vertex> candidates(t.num_vertices());
  std::iota(candidates.begin(), candidates.end(), 0);
  std::vector<Vertex> chosen;
  while (chosen.size() < n) {
    if (candidates.empty()) return std::nullopt;
    Vertex best = candidates.front();
    std::size_t best_deg = 0;
    bool first = true;
    for (Vertex v : candidates) {
      std::size_t deg = 0;
      for (Vertex w : candidates)
        if (t.has_edge(v, w)) ++deg;
      if (first || deg > best_deg) {
        best = v;
        best_deg = deg;
        first = false;
      }
    }
    chosen.push_back(best);
    std::vector<Vertex> next;
    for (Vertex w : candidates)
      if (t.has_edge(best, w)) next.push_back(w);
    candidates = std::move(next);
  }
  return chosen;
}

}  // namespace dcrown
