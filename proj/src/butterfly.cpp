#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <unordered_set>

#include "dcrown/minors.hpp"

namespace dcrown {

bool is_butterfly_contractible(const Digraph& g, Edge e) {
  auto [u, v] = e;
  if (!g.valid(u) || !g.valid(v) || !g.has_edge(u, v)) return false;
  return g.out_degree(u) == 1 || g.in_degree(v) == 1;
}

ButterflyContraction butterfly_contract(const Digraph& g, Edge e) {
  auto [u, v] = e;
  if (!g.valid(u) || !g.valid(v) || !g.has_edge(u, v))
    throw std::invalid_argument("butterfly contraction: edge is not in the graph");
  if (!is_butterfly_contractible(g, e))
    throw std::invalid_argument(
        "butterfly contraction: needs out-degree 1 at the tail or in-degree 1 at the head");
  ButterflyContraction out;
  out.host_to_result.resize(g.num_vertices());
  for (Vertex w = 0; w < g.num_vertices(); ++w) out.host_to_result[w] = w < v ? w : w - 1;
  out.host_to_result[v] = out.host_to_result[u];
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges()) {
    Vertex x = out.host_to_result[a], y = out.host_to_result[b];
    if (x != y) edges.emplace_back(x, y);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Digraph(g.num_vertices() - 1, std::move(edges));
  return out;
}

namespace {

constexpr std::size_t kMaxButterflyVertices = 16;

// Labelled state: surviving vertex mask plus out-adjacency masks. Deleting a
// vertex is the same as isolating it, because the final test embeds H into
// the surviving vertices.
struct State {
  std::uint16_t alive = 0;
  std::array<std::uint16_t, kMaxButterflyVertices> out{};

  std::string key() const {
    std::string k(reinterpret_cast<const char*>(&alive), sizeof(alive));
    for (std::size_t v = 0; v < kMaxButterflyVertices; ++v)
      if (alive >> v & 1) k.append(reinterpret_cast<const char*>(&out[v]), sizeof(out[v]));
    return k;
  }

  int in_degree(std::size_t v) const {
    int d = 0;
    for (std::size_t u = 0; u < kMaxButterflyVertices; ++u) d += out[u] >> v & 1;
    return d;
  }

  int num_edges() const {
    int m = 0;
    for (auto o : out) m += std::popcount(o);
    return m;
  }
};

class ButterflySearch {
 public:
  ButterflySearch(const Digraph& pattern, const Digraph& host) : h_(pattern) {
    if (host.num_vertices() > kMaxButterflyVertices)
      throw std::invalid_argument("butterfly minor search supports at most 16 host vertices");
    n_ = host.num_vertices();
    for (Vertex v = 0; v < n_; ++v) start_.alive |= static_cast<std::uint16_t>(1u << v);
    for (auto [u, v] : host.edges()) start_.out[u] |= static_cast<std::uint16_t>(1u << v);
  }

  bool run() {
    if (h_.num_vertices() > n_) return false;
    return dfs(start_);
  }

 private:
  bool embeds(const State& s) const {
    std::vector<std::size_t> alive;
    for (std::size_t v = 0; v < n_; ++v)
      if (s.alive >> v & 1) alive.push_back(v);
    std::vector<std::size_t> image(h_.num_vertices());
    std::uint16_t used = 0;
    auto extend = [&](auto&& self, Vertex x) -> bool {
      if (x == h_.num_vertices()) return true;
      for (std::size_t a : alive) {
        if (used >> a & 1) continue;
        bool ok = true;
        for (Vertex y : h_.out(x))
          if (y < x && !(s.out[a] >> image[y] & 1)) ok = false;
        for (Vertex y : h_.in(x))
          if (y < x && !(s.out[image[y]] >> a & 1)) ok = false;
        if (!ok) continue;
        image[x] = a;
        used |= static_cast<std::uint16_t>(1u << a);
        if (self(self, x + 1)) return true;
        used &= static_cast<std::uint16_t>(~(1u << a));
      }
      return false;
    };
    return extend(extend, 0);
  }

  bool dfs(const State& s) {
    if (std::popcount(s.alive) < static_cast<int>(h_.num_vertices())) return false;
    if (s.num_edges() < static_cast<int>(h_.num_edges())) return false;
    if (!seen_.insert(s.key()).second) return false;
    if (embeds(s)) return true;
    if (std::popcount(s.alive) == static_cast<int>(h_.num_vertices())) {
      // Only edge deletions remain, and embeds() already covers those.
      return false;
    }
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v) {
        if (!(s.out[u] >> v & 1)) continue;
        if (std::popcount(s.out[u]) == 1 || s.in_degree(v) == 1) {
          if (dfs(contract(s, u, v))) return true;
        }
        State t = s;
        t.out[u] &= static_cast<std::uint16_t>(~(1u << v));
        if (dfs(t)) return true;
      }
    return false;
  }

  // Merge v into u.
  State contract(const State& s, std::size_t u, std::size_t v) const {
    State t = s;
    t.alive &= static_cast<std::uint16_t>(~(1u << v));
    t.out[u] |= s.out[v];
    t.out[v] = 0;
    for (std::size_t w = 0; w < n_; ++w)
      if (t.out[w] >> v & 1) {
        t.out[w] &= static_cast<std::uint16_t>(~(1u << v));
        if (w != u) t.out[w] |= static_cast<std::uint16_t>(1u << u);
      }
    t.out[u] &= static_cast<std::uint16_t>(~((1u << u) | (1u << v)));
    return t;
  }

  const Digraph& h_;
  std::size_t n_ = 0;
  State start_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

bool is_butterfly_minor(const Digraph& pattern, const Digraph& host) {
  return ButterflySearch(pattern, host).run();
}

}  // namespace dcrown
