#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>

#include "dcrown/quasiwide.hpp"
#include "dcrown/solvers.hpp"
#include "solver_util.hpp"

namespace dcrown {

std::string_view problem_name(Problem p) {
  switch (p) {
    case Problem::ds: return "ds";
    case Problem::ids: return "ids";
    case Problem::dds: return "dds";
    case Problem::dob: return "dob";
    case Problem::is: return "is";
  }
  return "?";
}

std::optional<Problem> parse_problem(std::string_view name) {
  for (auto p : {Problem::ds, Problem::ids, Problem::dds, Problem::dob, Problem::is})
    if (problem_name(p) == name) return p;
  return std::nullopt;
}

bool verify_dominating(const Digraph& g, const VertexSet& dom, unsigned d, const VertexSet& w) {
  for (Vertex v : dom)
    if (!g.valid(v)) return false;
  return w.is_subset_of(set_neighborhood(g, dom, d, Direction::out));
}

bool verify_independent(const Digraph& g, const VertexSet& s) {
  for (Vertex u : s) {
    if (!g.valid(u)) return false;
    for (Vertex v : s)
      if (u != v && g.has_edge(u, v)) return false;
  }
  return true;
}

bool verify_distance_independent(const Digraph& g, const VertexSet& s, unsigned d) {
  for (Vertex u : s) {
    if (!g.valid(u)) return false;
    if (out_neighborhood(g, u, d).set_intersection(s).size() != 1) return false;
  }
  return true;
}

bool verify_outbranching(const Digraph& g, const OutBranching& t) {
  if (t.vertices.empty() || !t.vertices.contains(t.root)) return false;
  if (t.edges.size() + 1 != t.vertices.size()) return false;
  std::map<Vertex, Vertex> parent;
  std::map<Vertex, std::vector<Vertex>> children;
  for (auto [u, v] : t.edges) {
    if (!g.valid(u) || !g.valid(v) || !g.has_edge(u, v)) return false;
    if (!t.vertices.contains(u) || !t.vertices.contains(v) || v == t.root) return false;
    if (!parent.emplace(v, u).second) return false;
    children[u].push_back(v);
  }
  std::size_t seen = 1;
  std::deque<Vertex> q{t.root};
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop_front();
    for (Vertex v : children[u]) {
      ++seen;
      q.push_back(v);
    }
  }
  return seen == t.vertices.size();
}

std::optional<OutBranching> spanning_outbranching(const Digraph& g, const VertexSet& dom) {
  for (Vertex r : dom) {
    OutBranching t{r, VertexSet{r}, {}};
    std::deque<Vertex> q{r};
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop_front();
      for (Vertex v : g.out(u))
        if (dom.contains(v) && !t.vertices.contains(v)) {
          t.vertices.insert(v);
          t.edges.emplace_back(u, v);
          q.push_back(v);
        }
    }
    if (t.vertices.size() == dom.size()) {
      std::sort(t.edges.begin(), t.edges.end());
      return t;
    }
  }
  return std::nullopt;
}

namespace {

unsigned radius_of(const DominationInstance& inst, Problem p) {
  return p == Problem::dds || p == Problem::is ? inst.d : 1;
}

}  // namespace

bool verify_outcome(const DominationInstance& inst, Problem p, const SolveOutcome& out) {
  if (!out.feasible) return true;
  const auto& s = out.solution;
  if (s.intersects(inst.y)) return false;
  const unsigned d = radius_of(inst, p);
  if (p == Problem::is) return s.size() == inst.k && verify_distance_independent(inst.g, s, d);
  if (s.size() > inst.k || !verify_dominating(inst.g, s, d, inst.targets())) return false;
  if (p == Problem::ids) return verify_independent(inst.g, s);
  if (p == Problem::dob) {
    if (s.empty()) return !out.tree;
    return out.tree && out.tree->vertices == s && verify_outbranching(inst.g, *out.tree);
  }
  return true;
}

SolveOutcome brute_force_solve(const DominationInstance& inst, Problem p) {
  const Digraph& g = inst.g;
  const std::size_t n = g.num_vertices();
  if (n > 64) throw std::invalid_argument("exhaustive search is limited to 64 vertices");
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < n; ++v)
    if (!inst.y.contains(v)) pool.push_back(v);
  const std::size_t lo = p == Problem::is ? inst.k : 0;
  double work = 0;
  for (std::size_t s = lo; s <= std::min(inst.k, pool.size()); ++s)
    work += binomial(static_cast<std::int64_t>(pool.size()), static_cast<std::int64_t>(s))
                .convert_to<double>();
  if (work > 5e7) throw std::invalid_argument("instance too large for exhaustive search");

  const unsigned d = radius_of(inst, p);
  std::vector<Mask> ball(n), adj(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    ball[v] = to_mask(out_neighborhood(g, v, d));
    for (Vertex w : g.out(v)) {
      adj[v] |= bit(w);
      adj[w] |= bit(v);
    }
  }
  const Mask target = to_mask(inst.targets());
  SolveOutcome out;
  out.exhausted = true;
  auto accept = [&](Mask m) {
    if (p == Problem::is) {
      for (Mask x = m; x; x &= x - 1)
        if (ball[std::countr_zero(x)] & m & ~bit(std::countr_zero(x))) return false;
      return true;
    }
    Mask covered = 0;
    for (Mask x = m; x; x &= x - 1) covered |= ball[std::countr_zero(x)];
    if ((covered & target) != target) return false;
    if (p == Problem::ids)
      for (Mask x = m; x; x &= x - 1)
        if (adj[std::countr_zero(x)] & m) return false;
    if (p == Problem::dob && m) {
      auto t = spanning_outbranching(g, from_mask(m));
      if (!t) return false;
      out.tree = std::move(t);
    }
    return true;
  };
  for (std::size_t s = lo; s <= std::min(inst.k, pool.size()); ++s) {
    if (each_combination(pool, s, [&](Mask m) {
          if (!accept(m)) return false;
          out.feasible = true;
          out.solution = from_mask(m);
          return true;
        }))
      break;
  }
  if (!out.feasible) out.tree.reset();
  return out;
}

namespace {

class IdsSearch {
 public:
  IdsSearch(const Digraph& g, const SolverOptions& opt) : g_(g), opt_(opt) {}

  std::optional<VertexSet> run(const VertexSet& alive, const VertexSet& y, std::size_t k) {
    if (alive.empty()) return VertexSet{};
    if (k == 0) return std::nullopt;
    auto sub = induced_subgraph(g_, alive);
    if (alive.size() > opt_.exhaustive_below && alive.size() > k) {
      auto found = compute_scattered(sub.graph, VertexSet::range(static_cast<Vertex>(alive.size())), 1,
                                     k + 1, opt_.scatter_budget, opt_.max_subsets);
      if (found.witness && !found.witness->set.intersects(found.witness->removed)) {
        // k+1 vertices no single vertex outside S dominates twice: a solution hits S.
        for (Vertex local : found.witness->removed) {
          const Vertex s = sub.to_host[local];
          if (y.contains(s)) continue;
          VertexSet gone = out_neighborhood(g_, s, 1);
          VertexSet next_y = y.set_union(in_neighborhood(g_, s, 1));
          next_y.erase(s);
          if (auto rest = run(alive.set_difference(gone), next_y.set_intersection(alive), k - 1)) {
            rest->insert(s);
            return rest;
          }
        }
        return std::nullopt;
      }
    }
    exhausted = true;
    DominationInstance inst{sub.graph, k, 1, std::nullopt, {}};
    for (Vertex v = 0; v < sub.to_host.size(); ++v)
      if (y.contains(sub.to_host[v])) inst.y.insert(v);
    auto bf = brute_force_solve(inst, Problem::ids);
    if (!bf.feasible) return std::nullopt;
    std::vector<Vertex> host;
    for (Vertex v : bf.solution) host.push_back(sub.to_host[v]);
    return VertexSet::from_unsorted(host);
  }

  bool exhausted = false;

 private:
  const Digraph& g_;
  const SolverOptions& opt_;
};

}  // namespace

SolveOutcome independent_dominating_set(const Digraph& g, std::size_t k, const SolverOptions& opt) {
  IdsSearch search(g, opt);
  auto got = search.run(VertexSet::range(static_cast<Vertex>(g.num_vertices())), {}, k);
  SolveOutcome out;
  out.exhausted = search.exhausted;
  if (got) {
    out.feasible = true;
    out.solution = *got;
  }
  return out;
}

std::optional<Vertex> find_irrelevant_vertex(const Digraph& g, const VertexSet& w, std::size_t k,
                                             unsigned d) {
  (void)k;
  std::vector<VertexSet> in(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) in[i] = in_neighborhood(g, w[i], d);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (i != j && in[j].is_subset_of(in[i])) return w[i];
  return std::nullopt;
}

std::optional<VertexSet> dominate_targets(const Digraph& g, const VertexSet& w, std::size_t k,
                                          unsigned d) {
  if (w.size() > 64) throw std::invalid_argument("trace search is limited to 64 targets");
  if (w.empty()) return VertexSet{};
  // Trace of v: the targets it d-dominates. Keep the least vertex per trace
  // and drop traces contained in another.
  std::map<Mask, Vertex> first;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Mask t = 0;
    for (Vertex x : out_neighborhood(g, v, d))
      if (w.contains(x)) t |= bit(static_cast<unsigned>(std::lower_bound(w.begin(), w.end(), x) - w.begin()));
    if (t) first.emplace(t, v);
  }
  std::vector<std::pair<Vertex, Mask>> classes;
  for (auto [t, v] : first) {
    bool dominated = false;
    for (auto& [t2, v2] : first) dominated = dominated || (t2 != t && (t & t2) == t);
    if (!dominated) classes.emplace_back(v, t);
  }
  std::sort(classes.begin(), classes.end());
  int widest = 0;
  for (auto& [v, t] : classes) widest = std::max(widest, std::popcount(t));
  std::vector<Vertex> chosen;
  std::function<bool(Mask, std::size_t)> cover = [&](Mask open, std::size_t left) {
    if (!open) return true;
    if (static_cast<std::size_t>(std::popcount(open)) > left * static_cast<std::size_t>(widest)) return false;
    const Mask low = open & (~open + 1);
    for (auto& [v, t] : classes) {
      if (!(t & low)) continue;
      chosen.push_back(v);
      if (cover(open & ~t, left - 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  const Mask all = w.size() == 64 ? ~Mask{0} : (Mask{1} << w.size()) - 1;
  if (!cover(all, k)) return std::nullopt;
  return VertexSet::from_unsorted(chosen);
}

SolveOutcome d_dominating_set(const Digraph& g, std::size_t k, unsigned d, const SolverOptions& opt) {
  SolveOutcome out;
  if (g.num_vertices() <= opt.exhaustive_below)
    return brute_force_solve(DominationInstance{g, k, d, std::nullopt, {}}, Problem::dds);
  VertexSet w = VertexSet::range(static_cast<Vertex>(g.num_vertices()));
  while (auto x = find_irrelevant_vertex(g, w, k, d)) w.erase(*x);
  if (w.size() > 64) return brute_force_solve(DominationInstance{g, k, d, w, {}}, Problem::dds);
  if (auto x = dominate_targets(g, w, k, d)) {
    out.feasible = true;
    out.solution = *x;
  }
  return out;
}

SolveOutcome independent_set(const Digraph& g, std::size_t k, unsigned d, const SolverOptions& opt) {
  SolveOutcome out;
  if (k == 0) {
    out.feasible = true;
    return out;
  }
  const std::size_t n = g.num_vertices();
  if (n > opt.exhaustive_below && n >= k) {
    // d-scattered after deleting S ⊆ V \ U; for d > 1 paths through S may
    // still join U, so only S = ∅ is asked for.
    auto found = compute_scattered(g, VertexSet::range(static_cast<Vertex>(n)), d, k,
                                   d == 1 ? opt.scatter_budget : 0, opt.max_subsets);
    if (found.witness && verify_distance_independent(g, found.witness->set, d)) {
      out.feasible = true;
      out.solution = found.witness->set;
      return out;
    }
  }
  return brute_force_solve(DominationInstance{g, k, d, std::nullopt, {}}, Problem::is);
}

SolveOutcome solve(const DominationInstance& inst, Problem p, const SolverOptions& opt, bool oracle) {
  const bool plain = !inst.w && inst.y.empty();
  if (oracle || !plain) return brute_force_solve(inst, p);
  switch (p) {
    case Problem::ds: return d_dominating_set(inst.g, inst.k, 1, opt);
    case Problem::dds: return d_dominating_set(inst.g, inst.k, inst.d, opt);
    case Problem::ids: return independent_dominating_set(inst.g, inst.k, opt);
    case Problem::dob: return dominating_outbranching(inst.g, inst.k, opt);
    case Problem::is: return independent_set(inst.g, inst.k, inst.d, opt);
  }
  return {};
}

}  // namespace dcrown
