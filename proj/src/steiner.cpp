#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "dcrown/quasiwide.hpp"
#include "dcrown/solvers.hpp"
#include "solver_util.hpp"

namespace dcrown {

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

// How dp[mask][v] was reached: a terminal itself, an edge v->arg, or the
// union of the trees for `arg` and mask ^ arg at v.
struct Step {
  enum Kind : std::uint8_t { none, leaf, extend, merge } kind = none;
  std::uint32_t arg = 0;
};

class Steiner {
 public:
  Steiner(const Digraph& g, std::vector<Vertex> terms) : g_(g), terms_(std::move(terms)) {
    n_ = g.num_vertices();
    full_ = (std::uint32_t{1} << terms_.size()) - 1;
    dp_.assign(std::size_t{full_ + 1} * n_, kInf);
    how_.assign(dp_.size(), Step{});
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      at(std::uint32_t{1} << i, terms_[i]) = 1;
      step(std::uint32_t{1} << i, terms_[i]) = Step{Step::leaf, 0};
    }
    for (std::uint32_t mask = 1; mask <= full_; ++mask) {
      const std::uint32_t low = mask & (~mask + 1);
      if (mask != low)
        for (Vertex v = 0; v < n_; ++v)
          for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            const auto a = at(sub, v), b = at(mask ^ sub, v);
            if (a + b - 1 < at(mask, v)) {
              at(mask, v) = a + b - 1;
              step(mask, v) = Step{Step::merge, sub};
            }
          }
      relax(mask);
    }
  }

  std::uint32_t cost(Vertex root) const { return dp_[std::size_t{full_} * n_ + root]; }

  OutBranching tree(Vertex root) const {
    std::set<Edge> edges;
    collect(full_, root, edges);
    // The union is connected from the root; take its BFS tree and drop
    // branches without terminals.
    std::map<Vertex, std::vector<Vertex>> adj;
    for (auto [u, v] : edges) adj[u].push_back(v);
    std::map<Vertex, Vertex> parent{{root, root}};
    std::vector<Vertex> order{root};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (Vertex w : adj[order[i]])
        if (parent.emplace(w, order[i]).second) order.push_back(w);
    std::set<Vertex> keep(terms_.begin(), terms_.end());
    keep.insert(root);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (keep.count(*it)) keep.insert(parent[*it]);
    OutBranching t{root, {}, {}};
    std::vector<Vertex> verts;
    for (Vertex v : order)
      if (keep.count(v)) {
        verts.push_back(v);
        if (v != root) t.edges.emplace_back(parent[v], v);
      }
    t.vertices = VertexSet::from_unsorted(verts);
    std::sort(t.edges.begin(), t.edges.end());
    return t;
  }

 private:
  std::uint32_t& at(std::uint32_t mask, Vertex v) { return dp_[std::size_t{mask} * n_ + v]; }
  std::uint32_t at(std::uint32_t mask, Vertex v) const { return dp_[std::size_t{mask} * n_ + v]; }
  Step& step(std::uint32_t mask, Vertex v) { return how_[std::size_t{mask} * n_ + v]; }
  const Step& step(std::uint32_t mask, Vertex v) const { return how_[std::size_t{mask} * n_ + v]; }

  // dp[mask][v] <- dp[mask][u] + 1 along v->u, Dijkstra over in-edges.
  void relax(std::uint32_t mask) {
    using Item = std::pair<std::uint32_t, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (Vertex v = 0; v < n_; ++v)
      if (at(mask, v) < kInf) pq.emplace(at(mask, v), v);
    while (!pq.empty()) {
      auto [c, u] = pq.top();
      pq.pop();
      if (c != at(mask, u)) continue;
      for (Vertex v : g_.in(u))
        if (c + 1 < at(mask, v)) {
          at(mask, v) = c + 1;
          step(mask, v) = Step{Step::extend, u};
          pq.emplace(c + 1, v);
        }
    }
  }

  void collect(std::uint32_t mask, Vertex v, std::set<Edge>& edges) const {
    const Step& s = step(mask, v);
    if (s.kind == Step::extend) {
      edges.emplace(v, s.arg);
      collect(mask, s.arg, edges);
    } else if (s.kind == Step::merge) {
      collect(s.arg, v, edges);
      collect(mask ^ s.arg, v, edges);
    }
  }

  const Digraph& g_;
  std::vector<Vertex> terms_;
  std::size_t n_ = 0;
  std::uint32_t full_ = 0;
  std::vector<std::uint32_t> dp_;
  std::vector<Step> how_;
};

}  // namespace

std::optional<OutBranching> directed_steiner_outtree(const Digraph& g, const VertexSet& terminals,
                                                     std::optional<std::size_t> size_budget,
                                                     std::optional<Vertex> root) {
  if (root && !g.valid(*root)) throw std::invalid_argument("root is not a vertex");
  for (Vertex t : terminals)
    if (!g.valid(t)) throw std::invalid_argument("terminal is not a vertex");
  if (terminals.size() > 20) throw std::invalid_argument("at most 20 terminals");
  if (g.num_vertices() == 0) return std::nullopt;
  if (terminals.empty()) {
    if (size_budget && *size_budget < 1) return std::nullopt;
    const Vertex r = root.value_or(0);
    return OutBranching{r, VertexSet{r}, {}};
  }
  Steiner dp(g, terminals.vec());
  Vertex best = root.value_or(0);
  if (!root)
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (dp.cost(v) < dp.cost(best)) best = v;
  if (dp.cost(best) >= kInf) return std::nullopt;
  if (size_budget && dp.cost(best) > *size_budget) return std::nullopt;
  return dp.tree(best);
}

namespace {

constexpr std::size_t kMaxPartitionTargets = 12;
constexpr std::size_t kMaxPartitionBlocks = 4;

// V' ⊆ V \ U, |V'| <= j, by size then lexicographically.
std::optional<VertexSet> exhaustive_extension(const Digraph& g, const VertexSet& u,
                                              const VertexSet& w, std::size_t j) {
  if (g.num_vertices() > 64) throw std::invalid_argument("exhaustive search is limited to 64 vertices");
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!u.contains(v)) pool.push_back(v);
  std::vector<Mask> ball(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) ball[v] = to_mask(out_neighborhood(g, v, 1));
  Mask covered_by_u = 0;
  for (Vertex x : u) covered_by_u |= ball[x];
  const Mask target = to_mask(w) & ~covered_by_u;
  const Mask base = to_mask(u);
  std::optional<VertexSet> found;
  for (std::size_t s = 0; s <= std::min(j, pool.size()) && !found; ++s)
    each_combination(pool, s, [&](Mask m) {
      Mask covered = 0;
      for (Mask x = m; x; x &= x - 1) covered |= ball[std::countr_zero(x)];
      if ((covered & target) != target) return false;
      if ((m | base) && !spanning_outbranching(g, from_mask(m | base))) return false;
      found = from_mask(m);
      return true;
    });
  return found;
}

class PartitionSearch {
 public:
  PartitionSearch(const Digraph& g, const VertexSet& u, const VertexSet& w, std::size_t j)
      : g_(g), u_(u), w_(w), j_(j) {
    for (Vertex x : w) dominators_.push_back(to_mask(in_neighborhood(g, x, 1)));
  }

  std::optional<VertexSet> run() {
    if (place(0)) return found_;
    return std::nullopt;
  }

 private:
  // Assigns target i to a block; each block keeps the vertices dominating
  // all of it.
  bool place(std::size_t i) {
    if (i == w_.size()) return route();
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const Mask old = blocks_[b];
      blocks_[b] &= dominators_[i];
      if (blocks_[b] && place(i + 1)) return true;
      blocks_[b] = old;
    }
    if (blocks_.size() < j_) {
      blocks_.push_back(dominators_[i]);
      if (place(i + 1)) return true;
      blocks_.pop_back();
    }
    return false;
  }

  // Steiner instance: one extra sink x_i per block, fed by the block's
  // candidates.
  bool route() {
    std::vector<Mask> key = blocks_;
    std::sort(key.begin(), key.end());
    if (!tried_.insert(key).second) return false;
    const std::size_t n = g_.num_vertices();
    if (u_.empty() && blocks_.size() == 1) {
      // A lone sink would root its own one-vertex tree.
      found_ = VertexSet{static_cast<Vertex>(std::countr_zero(blocks_[0]))};
      return true;
    }
    std::vector<Edge> edges = g_.edges();
    std::vector<Vertex> terms(u_.begin(), u_.end());
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const Vertex x = static_cast<Vertex>(n + i);
      terms.push_back(x);
      for (Mask m = blocks_[i]; m; m &= m - 1) edges.emplace_back(std::countr_zero(m), x);
    }
    Digraph aux(n + blocks_.size(), std::move(edges));
    auto t = directed_steiner_outtree(aux, VertexSet::from_unsorted(terms),
                                      u_.size() + j_ + blocks_.size());
    if (!t) return false;
    std::vector<Vertex> picked;
    for (Vertex v : t->vertices)
      if (v < n && !u_.contains(v)) picked.push_back(v);
    if (picked.size() > j_) return false;
    found_ = VertexSet::from_unsorted(picked);
    return true;
  }

  const Digraph& g_;
  const VertexSet& u_;
  const VertexSet& w_;
  std::size_t j_;
  std::vector<Mask> dominators_, blocks_;
  std::set<std::vector<Mask>> tried_;
  VertexSet found_;
};

}  // namespace

std::optional<VertexSet> dominating_outbranching_bounded(const Digraph& g, const VertexSet& u,
                                                         const VertexSet& w, std::size_t j) {
  const VertexSet open = w.set_difference(set_neighborhood(g, u, 1, Direction::out));
  if (open.empty()) {
    if (u.empty()) return VertexSet{};
    auto t = directed_steiner_outtree(g, u, u.size() + j);
    if (!t) return std::nullopt;
    return t->vertices.set_difference(u);
  }
  if (j == 0) return std::nullopt;
  if (open.size() > kMaxPartitionTargets || j > kMaxPartitionBlocks || g.num_vertices() >= 64)
    return exhaustive_extension(g, u, open, j);
  return PartitionSearch(g, u, open, j).run();
}

namespace {

class DobSearch {
 public:
  DobSearch(const Digraph& g, const SolverOptions& opt) : g_(g), opt_(opt) {}

  std::optional<VertexSet> run(const VertexSet& u, const VertexSet& w, std::size_t j) {
    const VertexSet open = w.set_difference(set_neighborhood(g_, u, 1, Direction::out));
    const std::size_t small = std::min(opt_.bounded_targets, kMaxPartitionTargets);
    if (open.empty() || j == 0 || (open.size() <= small && j <= kMaxPartitionBlocks))
      return dominating_outbranching_bounded(g_, u, open, j);
    if (open.size() > j) {
      auto found = compute_scattered(g_, open, 1, j + 1, opt_.scatter_budget, opt_.max_subsets);
      if (found.witness && !found.witness->set.intersects(found.witness->removed)) {
        // j+1 open targets, each outside vertex dominates at most one of them.
        for (Vertex s : found.witness->removed) {
          if (u.contains(s)) continue;
          VertexSet next = u;
          next.insert(s);
          if (auto rest = run(next, open.set_difference(out_neighborhood(g_, s, 1)), j - 1)) {
            rest->insert(s);
            return rest;
          }
        }
        return std::nullopt;
      }
    }
    exhausted = true;
    return exhaustive_extension(g_, u, open, j);
  }

  bool exhausted = false;

 private:
  const Digraph& g_;
  const SolverOptions& opt_;
};

}  // namespace

SolveOutcome dominating_outbranching(const Digraph& g, std::size_t k, const SolverOptions& opt) {
  if (g.num_vertices() <= opt.exhaustive_below)
    return brute_force_solve(DominationInstance{g, k, 1, std::nullopt, {}}, Problem::dob);
  DobSearch search(g, opt);
  auto got = search.run({}, VertexSet::range(static_cast<Vertex>(g.num_vertices())), k);
  SolveOutcome out;
  out.exhausted = search.exhausted;
  if (!got) return out;
  out.feasible = true;
  out.solution = *got;
  if (!got->empty()) {
    out.tree = spanning_outbranching(g, *got);
    if (!out.tree) throw std::logic_error("dominating set does not span an out-branching");
  }
  return out;
}

}  // namespace dcrown
