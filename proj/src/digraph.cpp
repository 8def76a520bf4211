#include "dcrown/digraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace dcrown {

VertexSet::VertexSet(std::initializer_list<Vertex> vs) : items_(vs) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> vs) {
  VertexSet s;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  s.items_ = std::move(vs);
  return s;
}

VertexSet VertexSet::range(Vertex n) {
  VertexSet s;
  s.items_.resize(n);
  for (Vertex i = 0; i < n; ++i) s.items_[i] = i;
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(items_.begin(), items_.end(), v);
}

void VertexSet::insert(Vertex v) {
  auto it = std::lower_bound(items_.begin(), items_.end(), v);
  if (it == items_.end() || *it != v) items_.insert(it, v);
}

void VertexSet::erase(Vertex v) {
  auto it = std::lower_bound(items_.begin(), items_.end(), v);
  if (it != items_.end() && *it == v) items_.erase(it);
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
  VertexSet r;
  std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(r.items_));
  return r;
}

VertexSet VertexSet::set_intersection(const VertexSet& other) const {
  VertexSet r;
  std::set_intersection(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(r.items_));
  return r;
}

VertexSet VertexSet::set_difference(const VertexSet& other) const {
  VertexSet r;
  std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(r.items_));
  return r;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = begin();
  auto b = other.begin();
  while (a != end() && b != other.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

Digraph::Digraph(std::size_t n) : n_(n), out_(n), in_(n) {}

Digraph::Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), out_(n), in_(n) {
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") references a vertex >= " + std::to_string(n));
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw GraphError("duplicate edge (" + std::to_string(dup->first) + "," +
                     std::to_string(dup->second) + ")");
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  for (auto& l : in_) std::sort(l.begin(), l.end());
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

void Digraph::check_vertex(Vertex v) const {
  if (v >= n_)
    throw GraphError("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(n_) +
                     ")");
}

Digraph Digraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edges_.size());
  for (const auto& [u, v] : edges_) rev.emplace_back(v, u);
  return Digraph(n_, std::move(rev));
}

UndirectedGraph::UndirectedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw GraphError("undirected edge references vertex out of range");
    if (u == v) throw GraphError("undirected self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& l : adj_) std::sort(l.begin(), l.end());
}

bool UndirectedGraph::has_edge(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_) return false;
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<int> bfs_distances(const Digraph& g, Vertex v, Direction dir, int max_depth) {
  g.check_vertex(v);
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<Vertex> queue{v};
  dist[v] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && dist[x] >= max_depth) continue;
    auto next = dir == Direction::out ? g.out(x) : g.in(x);
    for (Vertex y : next) {
      if (dist[y] != -1) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

namespace {

VertexSet ball(const Digraph& g, Vertex v, unsigned d, Direction dir) {
  auto dist = bfs_distances(g, v, dir, static_cast<int>(d));
  std::vector<Vertex> out;
  for (Vertex u = 0; u < dist.size(); ++u)
    if (dist[u] >= 0) out.push_back(u);
  return VertexSet::from_unsorted(std::move(out));
}

}  // namespace

VertexSet out_neighborhood(const Digraph& g, Vertex v, unsigned d) {
  return ball(g, v, d, Direction::out);
}

VertexSet in_neighborhood(const Digraph& g, Vertex v, unsigned d) {
  return ball(g, v, d, Direction::in);
}

VertexSet set_neighborhood(const Digraph& g, const VertexSet& xs, unsigned d, Direction dir) {
  VertexSet acc;
  for (Vertex x : xs) acc = acc.set_union(ball(g, x, d, dir));
  return acc;
}

UndirectedGraph underlying_undirected(const Digraph& g) {
  return UndirectedGraph(g.num_vertices(), g.edges());
}

Digraph bidirect(const UndirectedGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(2 * g.num_edges());
  for (const auto& [u, v] : g.edges()) {
    edges.emplace_back(u, v);
    edges.emplace_back(v, u);
  }
  return Digraph(g.num_vertices(), std::move(edges));
}

TopologicalSort topological_order(const Digraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> indeg(n);
  for (Vertex v = 0; v < n; ++v) indeg[v] = g.in_degree(v);
  // Smallest available vertex first keeps the order deterministic.
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  TopologicalSort result;
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    Vertex v = ready.back();
    ready.pop_back();
    result.order.push_back(v);
    for (Vertex w : g.out(v)) {
      if (--indeg[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (result.order.size() == n) return result;

  // Every leftover vertex keeps a leftover in-neighbour; walk backwards until
  // a vertex repeats.
  std::vector<int> pos(n, -1);
  std::vector<Vertex> walk;
  Vertex cur = 0;
  while (indeg[cur] == 0) ++cur;
  while (pos[cur] == -1) {
    pos[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
    for (Vertex p : g.in(cur)) {
      if (indeg[p] > 0) {
        cur = p;
        break;
      }
    }
  }
  std::vector<Vertex> cycle(walk.begin() + pos[cur], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  result.order.clear();
  result.cycle = std::move(cycle);
  return result;
}

bool is_dag(const Digraph& g) { return topological_order(g).acyclic(); }

std::optional<Bipartition> directed_bipartition(const Digraph& g) {
  std::vector<Vertex> a, b;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    bool has_out = g.out_degree(v) > 0;
    bool has_in = g.in_degree(v) > 0;
    if (has_out && has_in) return std::nullopt;
    if (has_in)
      b.push_back(v);
    else
      a.push_back(v);
  }
  return Bipartition{VertexSet::from_unsorted(std::move(a)), VertexSet::from_unsorted(std::move(b))};
}

bool is_directed_path(const Digraph& g, std::span<const Vertex> seq) {
  if (seq.empty()) return false;
  for (Vertex v : seq)
    if (!g.valid(v)) return false;
  if (VertexSet::from_unsorted({seq.begin(), seq.end()}).size() != seq.size()) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!g.has_edge(seq[i], seq[i + 1])) return false;
  return true;
}

bool is_directed_cycle(const Digraph& g, std::span<const Vertex> seq) {
  if (seq.size() < 2) return false;
  return is_directed_path(g, seq) && g.has_edge(seq.back(), seq.front());
}

int count_alternations(const Digraph& g, std::span<const Vertex> path) {
  std::vector<bool> forward;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Vertex a = path[i], b = path[i + 1];
    if (g.has_edge(a, b))
      forward.push_back(true);
    else if (g.has_edge(b, a))
      forward.push_back(false);
    else
      throw GraphError("vertices " + std::to_string(a) + " and " + std::to_string(b) +
                       " are not adjacent");
  }
  int count = 0;
  for (std::size_t i = 0; i + 1 < forward.size(); ++i)
    if (forward[i] != forward[i + 1]) ++count;
  return count;
}

bool is_alternating_path(const Digraph& g, std::span<const Vertex> path) {
  if (path.size() < 3) return false;
  if (VertexSet::from_unsorted({path.begin(), path.end()}).size() != path.size()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!g.has_edge(path[i], path[i + 1]) && !g.has_edge(path[i + 1], path[i])) return false;
  return count_alternations(g, path) == static_cast<int>(path.size()) - 2;
}

Subgraph induced_subgraph(const Digraph& g, const VertexSet& keep) {
  std::vector<int> local(g.num_vertices(), -1);
  Subgraph sub;
  for (Vertex v : keep) {
    g.check_vertex(v);
    local[v] = static_cast<int>(sub.to_host.size());
    sub.to_host.push_back(v);
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (local[u] >= 0 && local[v] >= 0)
      edges.emplace_back(static_cast<Vertex>(local[u]), static_cast<Vertex>(local[v]));
  sub.graph = Digraph(sub.to_host.size(), std::move(edges));
  return sub;
}

Digraph isolate_vertices(const Digraph& g, const VertexSet& removed) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!removed.contains(e.first) && !removed.contains(e.second)) edges.push_back(e);
  return Digraph(g.num_vertices(), std::move(edges));
}

std::string describe(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
  os << '}';
  return os.str();
}

}  // namespace dcrown
