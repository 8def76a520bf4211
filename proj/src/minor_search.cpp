#include <algorithm>
#include <deque>

#include "dcrown/minors.hpp"
#include "search_util.hpp"

namespace dcrown {

namespace {

enum class Router { product, backtrack };

constexpr int kFree = -1;

// Guess the image of every pattern edge, then connect the in- and out-vertices
// of each branch set, either with the product search (acyclic hosts) or by
// backtracking over short simple paths.
class ModelSearch {
 public:
  ModelSearch(const Digraph& pattern, const Digraph& host, std::optional<unsigned> depth,
              Router router)
      : h_(pattern), g_(host), depth_(depth), router_(router) {
    limit_ = depth ? static_cast<int>(*depth) : static_cast<int>(host.num_vertices());
    dist_ = detail::all_pairs_distances(host);
    owner_.assign(host.num_vertices(), kFree);
    count_.assign(host.num_vertices(), 0);
    image_.resize(pattern.num_edges());
    ins_.resize(pattern.num_vertices());
    outs_.resize(pattern.num_vertices());
    source_.assign(pattern.num_vertices(), 0);
    sink_.assign(pattern.num_vertices(), 0);
    order_edges();
  }

  std::optional<DirectedModel> run() {
    if (h_.num_vertices() > g_.num_vertices() || h_.num_edges() > g_.num_edges())
      return std::nullopt;
    if (guess_edges(0)) return result_;
    return std::nullopt;
  }

 private:
  struct Task {
    Vertex x;
    Vertex a;
    Vertex b;
  };

  bool claimable(Vertex v, Vertex x) const {
    return owner_[v] == kFree || owner_[v] == static_cast<int>(x);
  }
  void claim(Vertex v, Vertex x) {
    owner_[v] = static_cast<int>(x);
    ++count_[v];
  }
  void release(Vertex v) {
    if (--count_[v] == 0) owner_[v] = kFree;
  }
  bool near(Vertex a, Vertex b) const { return dist_[a][b] >= 0 && dist_[a][b] <= limit_; }

  // Pattern edges ordered so that each one touches an earlier one when possible.
  void order_edges() {
    const auto& es = h_.edges();
    std::vector<bool> used(es.size(), false);
    std::vector<bool> seen(h_.num_vertices(), false);
    for (std::size_t step = 0; step < es.size(); ++step) {
      std::size_t pick = es.size();
      for (std::size_t i = 0; i < es.size() && pick == es.size(); ++i)
        if (!used[i] && (seen[es[i].first] || seen[es[i].second])) pick = i;
      for (std::size_t i = 0; i < es.size() && pick == es.size(); ++i)
        if (!used[i]) pick = i;
      used[pick] = true;
      seen[es[pick].first] = seen[es[pick].second] = true;
      edge_order_.push_back(pick);
    }
  }

  bool guess_edges(std::size_t k) {
    if (k == edge_order_.size()) return plan_terminals();
    const std::size_t ei = edge_order_[k];
    const auto [x, y] = h_.edges()[ei];
    for (const auto& [a, b] : g_.edges()) {
      if (!claimable(a, x) || !claimable(b, y)) continue;
      bool ok = true;
      for (Vertex i : ins_[x]) ok = ok && near(i, a);
      for (Vertex o : outs_[y]) ok = ok && near(b, o);
      if (!ok) continue;
      claim(a, x);
      claim(b, y);
      outs_[x].push_back(a);
      ins_[y].push_back(b);
      image_[ei] = {a, b};
      const bool found = guess_edges(k + 1);
      outs_[x].pop_back();
      ins_[y].pop_back();
      release(a);
      release(b);
      if (found) return true;
    }
    return false;
  }

  bool plan_terminals() {
    tasks_.clear();
    guess_source_.clear();
    guess_sink_.clear();
    isolated_.clear();
    for (Vertex x = 0; x < h_.num_vertices(); ++x) {
      auto ins = VertexSet::from_unsorted(ins_[x]);
      auto outs = VertexSet::from_unsorted(outs_[x]);
      if (!ins.empty() && !outs.empty()) {
        source_[x] = ins[0];
        sink_[x] = outs[0];
      } else if (!outs.empty()) {
        if (outs.size() == 1)
          source_[x] = sink_[x] = outs[0];
        else
          guess_source_.push_back(x);
      } else if (!ins.empty()) {
        if (ins.size() == 1)
          source_[x] = sink_[x] = ins[0];
        else
          guess_sink_.push_back(x);
      } else {
        isolated_.push_back(x);
      }
    }
    return guess_ends(0);
  }

  // Vertices with only out-edges (only in-edges) need a source (sink) that is
  // not forced by the edge images.
  bool guess_ends(std::size_t idx) {
    const std::size_t total = guess_source_.size() + guess_sink_.size();
    if (idx == total) {
      build_tasks();
      return router_ == Router::product ? route_product() : route_backtrack(0);
    }
    const bool is_source = idx < guess_source_.size();
    const Vertex x = is_source ? guess_source_[idx] : guess_sink_[idx - guess_source_.size()];
    for (Vertex c = 0; c < g_.num_vertices(); ++c) {
      if (!claimable(c, x)) continue;
      bool ok = true;
      if (is_source)
        for (Vertex o : outs_[x]) ok = ok && near(c, o);
      else
        for (Vertex i : ins_[x]) ok = ok && near(i, c);
      if (!ok) continue;
      claim(c, x);
      source_[x] = sink_[x] = c;
      const bool found = guess_ends(idx + 1);
      release(c);
      if (found) return true;
    }
    return false;
  }

  void build_tasks() {
    for (Vertex x = 0; x < h_.num_vertices(); ++x) {
      auto ins = VertexSet::from_unsorted(ins_[x]);
      auto outs = VertexSet::from_unsorted(outs_[x]);
      if (!ins.empty() && !outs.empty()) {
        for (Vertex i : ins)
          for (Vertex o : outs) tasks_.push_back({x, i, o});
      } else if (outs.size() > 1) {
        for (Vertex o : outs) tasks_.push_back({x, source_[x], o});
      } else if (ins.size() > 1) {
        for (Vertex i : ins) tasks_.push_back({x, i, sink_[x]});
      }
    }
  }

  bool route_product() {
    std::vector<TerminalPair> pairs;
    std::vector<std::size_t> sizes;
    std::vector<Vertex> who;
    for (const auto& t : tasks_) {
      if (who.empty() || who.back() != t.x) sizes.push_back(0);
      ++sizes.back();
      who.push_back(t.x);
      pairs.push_back({t.a, t.b});
    }
    auto part = IntervalPartition::from_sizes(sizes);
    detail::AllowFn allowed = [&](std::size_t i, Vertex w) { return claimable(w, who[i]); };
    std::optional<unsigned> len;
    if (depth_) len = *depth_;
    auto paths = detail::product_search(g_, pairs, part, len, allowed);
    if (!paths) return false;
    std::vector<std::pair<Vertex, Vertex>> claimed;
    for (std::size_t i = 0; i < paths->size(); ++i)
      for (Vertex v : (*paths)[i]) {
        claim(v, who[i]);
        claimed.emplace_back(v, who[i]);
      }
    const bool found = finish();
    for (auto [v, x] : claimed) release(v);
    return found;
  }

  // Distance from a to b using only vertices currently owned by x.
  int owned_distance(Vertex x, Vertex a, Vertex b) const {
    std::vector<int> d(g_.num_vertices(), -1);
    std::deque<Vertex> q{a};
    d[a] = 0;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop_front();
      if (u == b) return d[u];
      for (Vertex w : g_.out(u))
        if (d[w] < 0 && owner_[w] == static_cast<int>(x)) {
          d[w] = d[u] + 1;
          q.push_back(w);
        }
    }
    return -1;
  }

  bool route_backtrack(std::size_t k) {
    if (k == tasks_.size()) return finish();
    const auto [x, a, b] = tasks_[k];
    const int d = owned_distance(x, a, b);
    if (d >= 0 && d <= limit_) return route_backtrack(k + 1);
    std::vector<Vertex> path{a};
    std::vector<bool> on_path(g_.num_vertices(), false);
    on_path[a] = true;
    return extend_path(k, x, b, path, on_path);
  }

  bool extend_path(std::size_t k, Vertex x, Vertex b, std::vector<Vertex>& path,
                   std::vector<bool>& on_path) {
    const Vertex u = path.back();
    const int len = static_cast<int>(path.size()) - 1;
    for (Vertex w : g_.out(u)) {
      if (on_path[w] || !claimable(w, x)) continue;
      if (dist_[w][b] < 0 || len + 1 + dist_[w][b] > limit_) continue;
      path.push_back(w);
      on_path[w] = true;
      bool found;
      if (w == b) {
        for (Vertex v : path) claim(v, x);
        found = route_backtrack(k + 1);
        for (Vertex v : path) release(v);
      } else {
        found = extend_path(k, x, b, path, on_path);
      }
      on_path[w] = false;
      path.pop_back();
      if (found) return true;
    }
    return false;
  }

  bool finish() {
    std::vector<Vertex> spare;
    for (Vertex v = 0; v < g_.num_vertices() && spare.size() < isolated_.size(); ++v)
      if (owner_[v] == kFree) spare.push_back(v);
    if (spare.size() < isolated_.size()) return false;

    std::vector<std::vector<Vertex>> members(h_.num_vertices());
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (owner_[v] != kFree) members[owner_[v]].push_back(v);
    for (std::size_t i = 0; i < isolated_.size(); ++i) {
      members[isolated_[i]].push_back(spare[i]);
      source_[isolated_[i]] = sink_[isolated_[i]] = spare[i];
    }

    DirectedModel m;
    m.depth = depth_;
    for (Vertex x = 0; x < h_.num_vertices(); ++x) {
      BranchSet b;
      b.vertices = VertexSet::from_unsorted(members[x]);
      for (Vertex u : b.vertices)
        for (Vertex w : g_.out(u))
          if (b.vertices.contains(w)) b.edges.emplace_back(u, w);
      b.source = source_[x];
      b.sink = sink_[x];
      m.branch.push_back(std::move(b));
    }
    m.edge_image = image_;
    auto report = verify_model(g_, h_, m);
    if (!report)
      throw std::logic_error("minor search produced an invalid model: " + report.violations[0]);
    result_ = std::move(m);
    return true;
  }

  const Digraph& h_;
  const Digraph& g_;
  std::optional<unsigned> depth_;
  Router router_;
  int limit_ = 0;
  detail::DistanceMatrix dist_;
  std::vector<int> owner_;
  std::vector<int> count_;
  std::vector<std::size_t> edge_order_;
  std::vector<Edge> image_;
  std::vector<std::vector<Vertex>> ins_, outs_;
  std::vector<Vertex> source_, sink_;
  std::vector<Vertex> guess_source_, guess_sink_, isolated_;
  std::vector<Task> tasks_;
  std::optional<DirectedModel> result_;
};

}  // namespace

std::optional<DirectedModel> dag_minor_check(const Digraph& pattern, const Digraph& host) {
  if (!is_dag(host)) throw GraphError("dag_minor_check: host graph has a directed cycle");
  if (!is_dag(pattern)) return std::nullopt;
  return ModelSearch(pattern, host, std::nullopt, Router::product).run();
}

std::optional<DirectedModel> shallow_minor_check(const Digraph& pattern, const Digraph& host,
                                                 unsigned depth) {
  if (is_dag(host)) {
    if (!is_dag(pattern)) return std::nullopt;
    return ModelSearch(pattern, host, depth, Router::product).run();
  }
  return ModelSearch(pattern, host, depth, Router::backtrack).run();
}

std::optional<DirectedModel> general_minor_check(const Digraph& pattern, const Digraph& host) {
  return ModelSearch(pattern, host, std::nullopt, Router::backtrack).run();
}

}  // namespace dcrown
