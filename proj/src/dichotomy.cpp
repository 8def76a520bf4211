#include <algorithm>
#include <deque>
#include <map>

#include "dcrown/quasiwide.hpp"

namespace dcrown {

std::optional<DichotomyOutcome> main_tec_step(const Digraph& g, const VertexSet& i, unsigned r,
                                              std::size_t p, unsigned q, ExtractMode mode) {
  const ControlledBipartite c = build_controlled_bipartite(g, i, r);
  const std::size_t max_removed = q * (q - 1) / 2;
  // Deleted vertices may themselves lie in I; ask for more and drop them.
  for (std::size_t extra = 0; extra <= max_removed; ++extra) {
    auto got = rcdbg_extract(c, p + extra, q, extra ? ExtractMode::best_effort : mode);
    if (!got) return std::nullopt;
    if (auto* k = std::get_if<ControlledCrown>(&*got)) {
      CrownModel m = crown_model_from_controlled(g, c, *k);
      if (!verify_crown_model(g, m)) throw std::logic_error("crown model failed verification");
      return m;
    }
    const auto& sc = std::get<ControlledScattered>(*got);
    std::vector<Vertex> removed, kept;
    for (auto a : sc.removed) removed.push_back(c.a_ground[a]);
    ScatteredWitness w;
    w.removed = VertexSet::from_unsorted(removed);
    w.d = r + 1;
    for (auto b : sc.set)
      if (!w.removed.contains(c.b_ground[b])) kept.push_back(c.b_ground[b]);
    if (kept.size() < p) continue;
    std::sort(kept.begin(), kept.end());
    kept.resize(p);
    w.set = VertexSet::from_unsorted(kept);
    if (!verify_scattered(g, w)) throw std::logic_error("mapped scattered set failed verification");
    return w;
  }
  return std::nullopt;
}

UqwResult uqw_iterate(const Digraph& g, const VertexSet& w, unsigned target_r, std::size_t m,
                      const CrownSchedule& q, unsigned budget) {
  if (w.size() < m) throw std::invalid_argument("W smaller than the requested set");
  UqwResult result;
  VertexSet current = w, removed;
  auto first_m = [&](const VertexSet& s) {
    return VertexSet::from_unsorted({s.begin(), s.begin() + static_cast<long>(m)});
  };
  for (unsigned step = 0; step < target_r && m > 0; ++step) {
    const Digraph h = isolate_vertices(g, removed);
    bool advanced = false;
    for (std::size_t p = current.size(); p >= m && !advanced; --p) {
      if (result.steps >= budget) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.steps;
      auto got = main_tec_step(h, current, step, p, q(step));
      if (!got) continue;
      if (auto* cm = std::get_if<CrownModel>(&*got)) {
        if (!verify_crown_model(g, *cm)) throw std::logic_error("crown model fails in the host");
        result.outcome = *cm;
        return result;
      }
      const auto& sw = std::get<ScatteredWitness>(*got);
      removed = removed.set_union(sw.removed);
      current = sw.set;
      advanced = true;
    }
    if (!advanced) return result;
  }
  ScatteredWitness out{removed, first_m(current), target_r};
  if (!verify_scattered(g, out)) throw std::logic_error("iterated scattered set failed verification");
  result.outcome = out;
  return result;
}

namespace {

// Shortest path inside the branch from `from` to `to`, along branch edges.
std::optional<std::vector<Vertex>> branch_path(const BranchSet& b, Vertex from, Vertex to) {
  std::map<Vertex, Vertex> parent{{from, from}};
  std::deque<Vertex> queue{from};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (auto [x, y] : b.edges)
      if (x == v && parent.emplace(y, v).second) queue.push_back(y);
  }
  if (!parent.count(to)) return std::nullopt;
  std::vector<Vertex> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<CrownContradiction> uqw_refutes_crownful(const Digraph& g, const CrownModel& m,
                                                       const ScatteredWitness& w) {
  auto walk_ok = [&](const std::vector<Vertex>& path) {
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (!g.valid(path[k]) || w.removed.contains(path[k])) return false;
      if (k && !g.has_edge(path[k - 1], path[k])) return false;
    }
    return true;
  };
  const unsigned q = m.order;
  const Crown pattern = crown(q);
  auto untouched = [&](const BranchSet& b) { return !b.vertices.intersects(w.removed); };
  auto to_members = [&](Vertex x, Vertex y, std::size_t edge) {
    // Paths from the source of pair branch x through the image of x->y to a
    // member of U inside principal branch y.
    std::vector<std::vector<Vertex>> out;
    const auto& bx = m.model.branch[x];
    const auto& by = m.model.branch[y];
    auto [tail, head] = m.model.edge_image[edge];
    auto first = branch_path(bx, bx.source, tail);
    if (!first) return out;
    for (Vertex u : by.vertices.set_intersection(w.set)) {
      auto second = branch_path(by, head, u);
      if (!second) continue;
      std::vector<Vertex> path = *first;
      path.insert(path.end(), second->begin(), second->end());
      if (path.size() - 1 <= w.d) out.push_back(std::move(path));
    }
    return out;
  };
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = i + 1; j < q; ++j) {
      const Vertex x = pattern.pair_vertex(i, j);
      if (!untouched(m.model.branch[x]) || !untouched(m.model.branch[i]) ||
          !untouched(m.model.branch[j]))
        continue;
      std::size_t ei = 0, ej = 0;
      for (std::size_t e = 0; e < pattern.graph.num_edges(); ++e) {
        if (pattern.graph.edges()[e] == Edge{x, i}) ei = e;
        if (pattern.graph.edges()[e] == Edge{x, j}) ej = e;
      }
      auto left = to_members(x, i, ei);
      auto right = to_members(x, j, ej);
      for (const auto& a : left)
        for (const auto& b : right)
          if (a.back() != b.back() && walk_ok(a) && walk_ok(b)) return CrownContradiction{a, b};
    }
  return std::nullopt;
}

}  // namespace dcrown
