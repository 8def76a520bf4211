#include <algorithm>
#include <deque>
#include <sstream>

#include "dcrown/minors.hpp"

namespace dcrown {

namespace {

// Distances inside a branch subgraph given by its own edge list.
class BranchGraph {
 public:
  BranchGraph(const BranchSet& b) : verts_(b.vertices) {
    adj_.resize(verts_.size());
    for (const auto& [u, v] : b.edges) {
      auto iu = index(u), iv = index(v);
      if (iu >= 0 && iv >= 0) adj_[iu].push_back(iv);
    }
  }

  int index(Vertex v) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
    if (it == verts_.end() || *it != v) return -1;
    return static_cast<int>(it - verts_.begin());
  }

  std::vector<int> distances(Vertex from) const {
    std::vector<int> dist(verts_.size(), -1);
    int s = index(from);
    if (s < 0) return dist;
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj_[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
    return dist;
  }

 private:
  VertexSet verts_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

ModelReport verify_model(const Digraph& host, const Digraph& pattern, const DirectedModel& m) {
  ModelReport report;
  auto fail = [&](const std::string& msg) { report.violations.push_back(msg); };
  const std::size_t h = pattern.num_vertices();

  if (m.branch.size() != h) {
    fail("structure: expected " + std::to_string(h) + " branch sets, got " +
         std::to_string(m.branch.size()));
    return report;
  }
  if (m.edge_image.size() != pattern.num_edges()) {
    fail("structure: expected " + std::to_string(pattern.num_edges()) + " edge images, got " +
         std::to_string(m.edge_image.size()));
    return report;
  }

  bool structural = true;
  for (std::size_t x = 0; x < h; ++x) {
    const auto& b = m.branch[x];
    const std::string tag = "branch " + std::to_string(x);
    if (b.vertices.empty()) {
      fail("structure: " + tag + " is empty");
      structural = false;
      continue;
    }
    for (Vertex v : b.vertices)
      if (!host.valid(v)) {
        fail("structure: " + tag + " contains invalid vertex " + std::to_string(v));
        structural = false;
      }
    for (const auto& [u, v] : b.edges)
      if (!host.has_edge(u, v) || !b.vertices.contains(u) || !b.vertices.contains(v)) {
        fail("structure: " + tag + " edge (" + std::to_string(u) + "," + std::to_string(v) +
             ") is not a host edge inside the branch");
        structural = false;
      }
    if (!b.vertices.contains(b.source)) fail("source: " + tag + " source not in branch");
    if (!b.vertices.contains(b.sink)) fail("sink: " + tag + " sink not in branch");
  }
  if (!structural) return report;

  // Clause 1: pairwise disjoint branch sets.
  std::vector<int> owner(host.num_vertices(), -1);
  for (std::size_t x = 0; x < h; ++x)
    for (Vertex v : m.branch[x].vertices) {
      if (owner[v] >= 0)
        fail("disjoint: vertex " + std::to_string(v) + " in branches " +
             std::to_string(owner[v]) + " and " + std::to_string(x));
      else
        owner[v] = static_cast<int>(x);
    }

  // Clause 2: δ(e) for e = xy starts in δ(x) and ends in δ(y).
  std::vector<std::vector<Vertex>> in_set(h), out_set(h);
  std::vector<Edge> images = m.edge_image;
  for (std::size_t i = 0; i < pattern.num_edges(); ++i) {
    auto [x, y] = pattern.edges()[i];
    auto [a, b] = m.edge_image[i];
    if (!host.has_edge(a, b)) {
      fail("edge-image: image of pattern edge " + std::to_string(i) + " is not a host edge");
      continue;
    }
    if (!m.branch[x].vertices.contains(a) || !m.branch[y].vertices.contains(b))
      fail("edge-image: pattern edge " + std::to_string(i) + " image does not run from branch " +
           std::to_string(x) + " to branch " + std::to_string(y));
    out_set[x].push_back(a);
    in_set[y].push_back(b);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end())
    fail("edge-image: two pattern edges share a host edge");

  // Clauses 3-5 (with the depth bound when set).
  const int limit = m.depth ? static_cast<int>(*m.depth) : -1;
  auto within = [&](int d) { return d >= 0 && (limit < 0 || d <= limit); };
  for (std::size_t x = 0; x < h; ++x) {
    const auto& b = m.branch[x];
    BranchGraph bg(b);
    auto ins = VertexSet::from_unsorted(in_set[x]);
    auto outs = VertexSet::from_unsorted(out_set[x]);
    const std::string tag = "branch " + std::to_string(x);
    for (Vertex i : ins) {
      auto dist = bg.distances(i);
      for (Vertex o : outs)
        if (!within(dist[bg.index(o)]))
          fail("in-out: " + tag + " in-vertex " + std::to_string(i) + " does not reach out-vertex " +
               std::to_string(o) + (limit >= 0 ? " within depth" : ""));
      if (b.vertices.contains(b.sink) && !within(dist[bg.index(b.sink)]))
        fail("sink: " + tag + " sink not reached from in-vertex " + std::to_string(i));
    }
    if (b.vertices.contains(b.source)) {
      auto dist = bg.distances(b.source);
      for (Vertex o : outs)
        if (!within(dist[bg.index(o)]))
          fail("source: " + tag + " source does not reach out-vertex " + std::to_string(o));
    }
  }
  return report;
}

IntervalPartition::IntervalPartition(std::vector<std::size_t> breakpoints)
    : breaks_(std::move(breakpoints)) {
  std::size_t prev = 0;
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (breaks_[i] <= prev && !(i == 0 && breaks_[i] > 0))
      throw std::invalid_argument("interval breakpoints must be strictly increasing");
    prev = breaks_[i];
  }
}

IntervalPartition IntervalPartition::single(std::size_t k) {
  return k == 0 ? IntervalPartition({}) : IntervalPartition({k});
}

IntervalPartition IntervalPartition::singletons(std::size_t k) {
  std::vector<std::size_t> b(k);
  for (std::size_t i = 0; i < k; ++i) b[i] = i + 1;
  return IntervalPartition(std::move(b));
}

IntervalPartition IntervalPartition::from_sizes(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> b;
  std::size_t acc = 0;
  for (auto s : sizes) {
    if (s == 0) continue;
    acc += s;
    b.push_back(acc);
  }
  return IntervalPartition(std::move(b));
}

std::size_t IntervalPartition::interval_of(std::size_t coord) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), coord);
  if (it == breaks_.end()) throw std::out_of_range("coordinate outside interval partition");
  return static_cast<std::size_t>(it - breaks_.begin());
}

std::optional<std::vector<Vertex>> find_subgraph(const Digraph& pattern, const Digraph& host) {
  const std::size_t h = pattern.num_vertices(), n = host.num_vertices();
  if (h > n || pattern.num_edges() > host.num_edges()) return std::nullopt;
  std::vector<Vertex> image(h);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, std::size_t x) -> bool {
    if (x == h) return true;
    for (Vertex a = 0; a < n; ++a) {
      if (used[a]) continue;
      if (host.out_degree(a) < pattern.out_degree(x) || host.in_degree(a) < pattern.in_degree(x))
        continue;
      bool ok = true;
      for (Vertex y : pattern.out(x))
        if (y < x && !host.has_edge(a, image[y])) ok = false;
      for (Vertex y : pattern.in(x))
        if (y < x && !host.has_edge(image[y], a)) ok = false;
      if (!ok) continue;
      image[x] = a;
      used[a] = true;
      if (self(self, x + 1)) return true;
      used[a] = false;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return image;
}

DirectedModel embedding_to_model(const Digraph& host, const Digraph& pattern,
                                 const std::vector<Vertex>& image) {
  (void)host;
  DirectedModel m;
  m.depth = 0;
  for (Vertex x = 0; x < pattern.num_vertices(); ++x)
    m.branch.push_back(BranchSet{VertexSet{image[x]}, {}, image[x], image[x]});
  for (const auto& [x, y] : pattern.edges()) m.edge_image.emplace_back(image[x], image[y]);
  return m;
}

}  // namespace dcrown
