#include <algorithm>
#include <deque>

#include "dcrown/minors.hpp"

namespace dcrown {

bool verify_subdivision(const Digraph& host, const Digraph& pattern, const Subdivision& s) {
  if (s.branch_vertex.size() != pattern.num_vertices()) return false;
  if (s.edge_path.size() != pattern.num_edges()) return false;
  std::vector<int> use(host.num_vertices(), 0);
  for (Vertex v : s.branch_vertex) {
    if (!host.valid(v) || use[v]) return false;
    use[v] = 1;
  }
  for (std::size_t i = 0; i < pattern.num_edges(); ++i) {
    const auto& p = s.edge_path[i];
    auto [x, y] = pattern.edges()[i];
    if (p.size() < 2 || p.front() != s.branch_vertex[x] || p.back() != s.branch_vertex[y])
      return false;
    for (Vertex v : p)
      if (!host.valid(v)) return false;
    if (!is_directed_path(host, p)) return false;
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (use[p[j]]) return false;
      use[p[j]] = 1;
    }
  }
  return true;
}

namespace {

class SubdivisionSearch {
 public:
  SubdivisionSearch(const Digraph& pattern, const Digraph& host) : h_(pattern), g_(host) {
    used_.assign(host.num_vertices(), false);
    s_.branch_vertex.resize(pattern.num_vertices());
    s_.edge_path.resize(pattern.num_edges());
  }

  std::optional<Subdivision> run() {
    if (h_.num_vertices() > g_.num_vertices()) return std::nullopt;
    if (place(0)) return s_;
    return std::nullopt;
  }

 private:
  bool place(Vertex x) {
    if (x == h_.num_vertices()) return route(0);
    for (Vertex a = 0; a < g_.num_vertices(); ++a) {
      if (used_[a] || g_.out_degree(a) < h_.out_degree(x) || g_.in_degree(a) < h_.in_degree(x))
        continue;
      used_[a] = true;
      s_.branch_vertex[x] = a;
      if (place(x + 1)) return true;
      used_[a] = false;
    }
    return false;
  }

  bool route(std::size_t i) {
    if (i == h_.num_edges()) return true;
    auto [x, y] = h_.edges()[i];
    std::vector<Vertex> path{s_.branch_vertex[x]};
    return walk(i, s_.branch_vertex[y], path);
  }

  bool walk(std::size_t i, Vertex target, std::vector<Vertex>& path) {
    for (Vertex w : g_.out(path.back())) {
      if (w == target) {
        path.push_back(w);
        s_.edge_path[i] = path;
        if (route(i + 1)) return true;
        path.pop_back();
        continue;
      }
      if (used_[w]) continue;
      used_[w] = true;
      path.push_back(w);
      const bool found = walk(i, target, path);
      path.pop_back();
      used_[w] = false;
      if (found) return true;
    }
    return false;
  }

  const Digraph& h_;
  const Digraph& g_;
  std::vector<bool> used_;
  Subdivision s_;
};

}  // namespace

std::optional<Subdivision> topological_minor_check(const Digraph& pattern, const Digraph& host) {
  return SubdivisionSearch(pattern, host).run();
}

DirectedModel subdivision_to_model(const Digraph& host, const Digraph& pattern,
                                   const Subdivision& s) {
  (void)host;
  std::vector<std::vector<Vertex>> verts(pattern.num_vertices());
  std::vector<std::vector<Edge>> edges(pattern.num_vertices());
  DirectedModel m;
  for (Vertex x = 0; x < pattern.num_vertices(); ++x) verts[x].push_back(s.branch_vertex[x]);
  for (std::size_t i = 0; i < pattern.num_edges(); ++i) {
    Vertex x = pattern.edges()[i].first;
    const auto& p = s.edge_path[i];
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      verts[x].push_back(p[j]);
      edges[x].emplace_back(p[j - 1], p[j]);
    }
    m.edge_image.emplace_back(p[p.size() - 2], p.back());
  }
  for (Vertex x = 0; x < pattern.num_vertices(); ++x) {
    std::sort(edges[x].begin(), edges[x].end());
    m.branch.push_back(BranchSet{VertexSet::from_unsorted(verts[x]), edges[x], s.branch_vertex[x],
                                 s.branch_vertex[x]});
  }
  return m;
}

bool is_branching(const BranchSet& b, Direction dir) {
  const Vertex root = dir == Direction::out ? b.source : b.sink;
  if (!b.vertices.contains(root)) return false;
  if (b.edges.size() + 1 != b.vertices.size()) return false;
  std::vector<int> indeg(b.vertices.size(), 0);
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(b.vertices.begin(), b.vertices.end(), v) -
                                    b.vertices.begin());
  };
  std::vector<std::vector<std::size_t>> adj(b.vertices.size());
  for (auto [u, v] : b.edges) {
    auto head = dir == Direction::out ? v : u;
    auto tail = dir == Direction::out ? u : v;
    ++indeg[idx(head)];
    adj[idx(tail)].push_back(idx(head));
  }
  for (std::size_t i = 0; i < indeg.size(); ++i)
    if (indeg[i] != (b.vertices[i] == root ? 0 : 1)) return false;
  std::vector<bool> seen(b.vertices.size(), false);
  std::deque<std::size_t> q{idx(root)};
  seen[idx(root)] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push_back(w);
      }
  }
  return count == b.vertices.size();
}

namespace {

// BFS tree of the branch from `root` (forward or backward), pruned to the
// tree paths reaching `keep`.
BranchSet tree_branch(const BranchSet& b, Vertex root, const VertexSet& keep, Direction dir) {
  std::vector<std::vector<Vertex>> adj;
  auto idx = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(b.vertices.begin(), b.vertices.end(), v) -
                                    b.vertices.begin());
  };
  adj.resize(b.vertices.size());
  for (auto [u, v] : b.edges) {
    if (dir == Direction::out)
      adj[idx(u)].push_back(v);
    else
      adj[idx(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<long> parent(b.vertices.size(), -1);
  std::vector<bool> seen(b.vertices.size(), false);
  std::deque<Vertex> q{root};
  seen[idx(root)] = true;
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop_front();
    for (Vertex w : adj[idx(u)])
      if (!seen[idx(w)]) {
        seen[idx(w)] = true;
        parent[idx(w)] = u;
        q.push_back(w);
      }
  }
  std::vector<Vertex> verts{root};
  std::vector<Edge> edges;
  std::vector<bool> in_tree(b.vertices.size(), false);
  in_tree[idx(root)] = true;
  for (Vertex k : keep) {
    Vertex v = k;
    while (!in_tree[idx(v)]) {
      in_tree[idx(v)] = true;
      verts.push_back(v);
      Vertex p = static_cast<Vertex>(parent[idx(v)]);
      edges.push_back(dir == Direction::out ? Edge{p, v} : Edge{v, p});
      v = p;
    }
  }
  std::sort(edges.begin(), edges.end());
  return BranchSet{VertexSet::from_unsorted(verts), edges, root, root};
}

}  // namespace

DirectedModel branching_model(const Digraph& host, const Digraph& pattern,
                              const DirectedModel& m) {
  (void)host;
  DirectedModel out;
  out.depth = m.depth;
  out.edge_image = m.edge_image;
  std::vector<std::vector<Vertex>> ins(pattern.num_vertices()), outs(pattern.num_vertices());
  for (std::size_t i = 0; i < pattern.num_edges(); ++i) {
    auto [x, y] = pattern.edges()[i];
    outs[x].push_back(m.edge_image[i].first);
    ins[y].push_back(m.edge_image[i].second);
  }
  for (Vertex x = 0; x < pattern.num_vertices(); ++x) {
    const auto& b = m.branch[x];
    if (!ins[x].empty() && !outs[x].empty())
      throw std::invalid_argument("branching form needs a directed-bipartite pattern");
    if (!outs[x].empty())
      out.branch.push_back(
          tree_branch(b, b.source, VertexSet::from_unsorted(outs[x]), Direction::out));
    else if (!ins[x].empty())
      out.branch.push_back(tree_branch(b, b.sink, VertexSet::from_unsorted(ins[x]), Direction::in));
    else
      out.branch.push_back(BranchSet{VertexSet{b.source}, {}, b.source, b.source});
  }
  return out;
}

BipartiteMinorComparison bipartite_minor_equiv_check(const Digraph& pattern, const Digraph& host) {
  if (!directed_bipartition(pattern))
    throw std::invalid_argument("pattern is not a directed bipartite graph");
  BipartiteMinorComparison c;
  if (auto m = general_minor_check(pattern, host)) {
    auto tree = branching_model(host, pattern, *m);
    if (!verify_model(host, pattern, tree))
      throw std::logic_error("branching form of a bipartite model failed verification");
    c.directed = std::move(tree);
  }
  c.butterfly = is_butterfly_minor(pattern, host);
  return c;
}

}  // namespace dcrown
