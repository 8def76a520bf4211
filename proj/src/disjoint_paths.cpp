#include <algorithm>
#include <unordered_set>

#include "dcrown/minors.hpp"
#include "search_util.hpp"

namespace dcrown {

namespace detail {

namespace {

// Lazy search over the product DAG. A state holds one position per
// coordinate (the super-source is encoded as n); one move introduces a single
// new vertex w above every current position in the topological order and
// advances a nonempty set of coordinates of one interval onto w.
class ProductSearch {
 public:
  ProductSearch(const Digraph& g, const std::vector<TerminalPair>& pairs,
                const IntervalPartition& part, std::optional<unsigned> max_len,
                const AllowFn& allowed)
      : g_(g), pairs_(pairs), part_(part), max_len_(max_len), allowed_(allowed) {
    auto topo = topological_order(g);
    if (!topo.acyclic()) throw GraphError("disjoint paths: host graph has a directed cycle");
    order_ = topo.order;
    pos_of_.assign(g.num_vertices(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_of_[order_[i]] = static_cast<int>(i);
    dist_ = all_pairs_distances(g);
    src_ = static_cast<Vertex>(g.num_vertices());
  }

  std::optional<PathList> run() {
    const std::size_t k = pairs_.size();
    if (part_.num_coordinates() != k)
      throw std::invalid_argument("interval partition does not cover the terminal pairs");
    for (const auto& p : pairs_) {
      g_.check_vertex(p.source);
      g_.check_vertex(p.target);
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (dist_[pairs_[i].source][pairs_[i].target] < 0) return std::nullopt;
      if (max_len_ && dist_[pairs_[i].source][pairs_[i].target] > static_cast<int>(*max_len_))
        return std::nullopt;
      if (!allowed_(i, pairs_[i].source) || !allowed_(i, pairs_[i].target)) return std::nullopt;
    }
    State start{std::vector<Vertex>(k, src_), std::vector<int>(k, 0)};
    trail_.clear();
    if (!dfs(start)) return std::nullopt;
    PathList paths(k);
    for (const auto& st : trail_)
      for (std::size_t i = 0; i < k; ++i) {
        Vertex p = st.pos[i];
        if (p == src_) continue;
        if (paths[i].empty() || paths[i].back() != p) paths[i].push_back(p);
      }
    return paths;
  }

 private:
  struct State {
    std::vector<Vertex> pos;
    std::vector<int> len;
  };

  int rank(Vertex p) const { return p == src_ ? -1 : pos_of_[p]; }
  bool done(const State& s, std::size_t i) const {
    return s.pos[i] != src_ && s.pos[i] == pairs_[i].target;
  }

  std::string key(const State& s) const {
    std::string out;
    out.reserve(s.pos.size() * 5);
    for (std::size_t i = 0; i < s.pos.size(); ++i) {
      out.append(reinterpret_cast<const char*>(&s.pos[i]), sizeof(Vertex));
      if (max_len_) out.push_back(static_cast<char>(s.len[i]));
    }
    return out;
  }

  // Every unfinished coordinate must still be able to finish above `top`.
  bool viable(const State& s, int top) const {
    for (std::size_t i = 0; i < s.pos.size(); ++i) {
      if (done(s, i)) continue;
      if (s.pos[i] == src_) {
        if (rank(pairs_[i].source) <= top) return false;
      } else if (rank(pairs_[i].target) <= top) {
        return false;
      }
    }
    return true;
  }

  bool dfs(const State& s) {
    trail_.push_back(s);
    bool all_done = true;
    for (std::size_t i = 0; i < s.pos.size(); ++i) all_done = all_done && done(s, i);
    if (all_done) return true;
    if (dead_.count(key(s))) {
      trail_.pop_back();
      return false;
    }

    int top = -1;
    for (Vertex p : s.pos) top = std::max(top, rank(p));
    for (std::size_t idx = static_cast<std::size_t>(top + 1); idx < order_.size(); ++idx) {
      const Vertex w = order_[idx];
      for (std::size_t d = 0; d < part_.num_intervals(); ++d) {
        std::vector<std::size_t> movable;
        for (std::size_t i = part_.begin_of(d); i < part_.end_of(d); ++i) {
          if (done(s, i)) continue;
          const Vertex p = s.pos[i];
          const bool step = p == src_ ? w == pairs_[i].source : g_.has_edge(p, w);
          if (!step || !allowed_(i, w)) continue;
          const int dw = dist_[w][pairs_[i].target];
          if (dw < 0) continue;
          const int nl = p == src_ ? 0 : s.len[i] + 1;
          if (max_len_ && nl + dw > static_cast<int>(*max_len_)) continue;
          movable.push_back(i);
        }
        if (movable.empty()) continue;
        const std::size_t m = movable.size();
        for (std::size_t mask = (std::size_t{1} << m) - 1; mask > 0; --mask) {
          State next = s;
          for (std::size_t b = 0; b < m; ++b)
            if (mask >> b & 1) {
              const std::size_t i = movable[b];
              next.len[i] = s.pos[i] == src_ ? 0 : s.len[i] + 1;
              next.pos[i] = w;
            }
          if (!viable(next, static_cast<int>(idx))) continue;
          if (dfs(next)) return true;
        }
      }
    }
    dead_.insert(key(s));
    trail_.pop_back();
    return false;
  }

  const Digraph& g_;
  const std::vector<TerminalPair>& pairs_;
  const IntervalPartition& part_;
  std::optional<unsigned> max_len_;
  const AllowFn& allowed_;
  std::vector<Vertex> order_;
  std::vector<int> pos_of_;
  DistanceMatrix dist_;
  Vertex src_ = 0;
  std::unordered_set<std::string> dead_;
  std::vector<State> trail_;
};

}  // namespace

DistanceMatrix all_pairs_distances(const Digraph& g) {
  DistanceMatrix d(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) d[v] = bfs_distances(g, v, Direction::out, -1);
  return d;
}

std::optional<PathList> product_search(const Digraph& g, const std::vector<TerminalPair>& pairs,
                                       const IntervalPartition& part,
                                       std::optional<unsigned> max_len, const AllowFn& allowed) {
  return ProductSearch(g, pairs, part, max_len, allowed).run();
}

}  // namespace detail

namespace {
const detail::AllowFn kAllowAll = [](std::size_t, Vertex) { return true; };
}

std::optional<PathList> dag_disjoint_paths(const Digraph& g, const std::vector<TerminalPair>& pairs,
                                           const IntervalPartition& part) {
  return detail::product_search(g, pairs, part, std::nullopt, kAllowAll);
}

std::optional<PathList> dag_disjoint_paths_bounded(const Digraph& g,
                                                   const std::vector<TerminalPair>& pairs,
                                                   const IntervalPartition& part,
                                                   unsigned max_len) {
  return detail::product_search(g, pairs, part, max_len, kAllowAll);
}

}  // namespace dcrown
