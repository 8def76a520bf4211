#include <algorithm>
#include <deque>
#include <set>

#include "dcrown/quasiwide.hpp"

namespace dcrown {

void ControlledBipartite::finalize() {
  if (a_label.size() != a_ground.size()) throw std::invalid_argument("a_label size mismatch");
  std::set<Vertex> ga(a_ground.begin(), a_ground.end());
  if (ga.size() != a_ground.size()) throw std::invalid_argument("repeated ground vertex in A");
  b_lookup_.clear();
  for (std::uint32_t b = 0; b < b_ground.size(); ++b)
    if (!b_lookup_.emplace(b_ground[b], b).second)
      throw std::invalid_argument("repeated ground vertex in B");
  for (const auto& e : arcs)
    if (e.a >= a_ground.size() || e.b >= b_ground.size())
      throw std::invalid_argument("arc endpoint out of range");
  std::sort(arcs.begin(), arcs.end(),
            [](const ControlledArc& x, const ControlledArc& y) {
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  out_.assign(a_ground.size(), {});
  in_.assign(b_ground.size(), {});
  arc_begin_.assign(a_ground.size() + 1, 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i && arcs[i].a == arcs[i - 1].a && arcs[i].b == arcs[i - 1].b)
      throw std::invalid_argument("duplicate arc");
    out_[arcs[i].a].push_back(arcs[i].b);
    in_[arcs[i].b].push_back(arcs[i].a);
    ++arc_begin_[arcs[i].a + 1];
  }
  for (std::size_t a = 0; a < a_ground.size(); ++a) arc_begin_[a + 1] += arc_begin_[a];
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

const ControlledArc* ControlledBipartite::arc(std::uint32_t a, std::uint32_t b) const {
  if (a >= a_ground.size()) return nullptr;
  auto first = arcs.begin() + static_cast<long>(arc_begin_[a]);
  auto last = arcs.begin() + static_cast<long>(arc_begin_[a + 1]);
  auto it = std::lower_bound(first, last, b,
                             [](const ControlledArc& e, std::uint32_t x) { return e.b < x; });
  return it != last && it->b == b ? &*it : nullptr;
}

std::optional<std::uint32_t> ControlledBipartite::b_index(Vertex ground) const {
  auto it = b_lookup_.find(ground);
  if (it == b_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> ControlledBipartite::base_index(std::uint32_t a) const {
  if (!a_label[a].base) return std::nullopt;
  return b_index(*a_label[a].base);
}

std::vector<std::string> controlled_violations(const ControlledBipartite& c) {
  std::vector<std::string> out;
  const unsigned top = c.radius + 1;
  for (std::size_t a = 0; a < c.a_ground.size(); ++a)
    if (c.a_label[a].level > top) out.push_back("level above r+1 at A node " + std::to_string(a));
  for (const auto& e : c.arcs) {
    const std::string where = "arc (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
    const auto& la = c.a_label[e.a];
    if (e.eta.size() > top) out.push_back(where + ": label longer than r+1");
    if (e.eta.size() < la.level) out.push_back(where + ": label shorter than the level");
    std::set<unsigned> levels;
    for (Vertex z : e.eta) {
      auto it = c.eta_label.find(z);
      if (it == c.eta_label.end()) {
        out.push_back(where + ": unlabelled vertex " + std::to_string(z));
        continue;
      }
      if (it->second.base != c.b_ground[e.b])
        out.push_back(where + ": vertex " + std::to_string(z) + " has another base");
      if (!levels.insert(it->second.level).second)
        out.push_back(where + ": repeated level " + std::to_string(it->second.level));
      if (la.base == c.b_ground[e.b] && it->second.level >= la.level)
        out.push_back(where + ": level of " + std::to_string(z) + " not below the tail level");
    }
  }
  return out;
}

std::vector<std::string> construction_violations(const ControlledBipartite& c) {
  std::vector<std::string> out;
  for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) {
    const auto& l = c.a_label[a];
    if ((l.level == c.radius + 1) != !l.base)
      out.push_back("A node " + std::to_string(a) + ": level r+1 must match a missing base");
    if (c.out(a).size() < 2) out.push_back("A node " + std::to_string(a) + ": fewer than 2 arcs");
    auto it = c.eta_label.find(c.a_ground[a]);
    if (it != c.eta_label.end() && (it->second.base != l.base || it->second.level != l.level))
      out.push_back("A node " + std::to_string(a) + ": labels disagree with its ground vertex");
  }
  return out;
}

ControlledBipartite build_controlled_bipartite(const Digraph& g, const VertexSet& i, unsigned r) {
  if (!is_scattered(g, i, r)) throw std::invalid_argument("I is not r-scattered");
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> dist;
  for (Vertex u : i) dist.push_back(bfs_distances(g, u, Direction::in, static_cast<int>(r) + 1));

  ControlledBipartite c;
  c.radius = r;
  c.b_ground = i.vec();
  std::vector<std::optional<ControlLabel>> label(n);
  for (Vertex v = 0; v < n; ++v) {
    ControlLabel l{std::nullopt, r + 1};
    bool reached = false;
    for (std::size_t k = 0; k < i.size(); ++k) {
      const int dv = dist[k][v];
      if (dv < 0) continue;
      reached = true;
      l.level = std::min(l.level, static_cast<unsigned>(dv));
      if (dv <= static_cast<int>(r)) l.base = i[k];
    }
    if (reached) label[v] = l;
  }
  for (Vertex v = 0; v < n; ++v) {
    std::vector<std::size_t> reach;
    for (std::size_t k = 0; k < i.size(); ++k)
      if (dist[k][v] >= 0) reach.push_back(k);
    if (reach.size() < 2) continue;
    const auto a = static_cast<std::uint32_t>(c.a_ground.size());
    c.a_ground.push_back(v);
    c.a_label.push_back(*label[v]);
    for (std::size_t k : reach) {
      ControlledArc e{a, static_cast<std::uint32_t>(k), {}};
      for (Vertex cur = v; cur != i[k];) {
        for (Vertex w : g.out(cur))
          if (dist[k][w] == dist[k][cur] - 1) {
            cur = w;
            break;
          }
        e.eta.push_back(cur);
        c.eta_label[cur] = *label[cur];
      }
      c.arcs.push_back(std::move(e));
    }
  }
  c.finalize();
  auto bad = controlled_violations(c);
  auto more = construction_violations(c);
  bad.insert(bad.end(), more.begin(), more.end());
  if (!bad.empty()) throw std::logic_error("controlled graph construction broke: " + bad.front());
  return c;
}

namespace {

bool crown_shape(const ControlledBipartite& c, const ControlledCrown& k) {
  const std::size_t q = k.b.size();
  if (q == 0 || k.a.size() != q * (q - 1) / 2) return false;
  for (auto a : k.a)
    if (a >= c.a_ground.size()) return false;
  for (auto b : k.b)
    if (b >= c.b_ground.size()) return false;
  if (std::set(k.a.begin(), k.a.end()).size() != k.a.size()) return false;
  if (std::set(k.b.begin(), k.b.end()).size() != k.b.size()) return false;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j, ++idx)
      if (!c.arc(k.a[idx], k.b[i]) || !c.arc(k.a[idx], k.b[j])) return false;
  return true;
}

}  // namespace

bool is_controlled_crown(const ControlledBipartite& c, const ControlledCrown& k) {
  if (!crown_shape(c, k)) return false;
  std::set<Vertex> ga, gb;
  for (auto a : k.a) ga.insert(c.a_ground[a]);
  for (auto b : k.b) gb.insert(c.b_ground[b]);
  for (Vertex v : ga)
    if (gb.count(v)) return false;
  const std::size_t q = k.b.size();
  std::size_t idx = 0;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = i + 1; j < q; ++j, ++idx)
      for (auto b : {k.b[i], k.b[j]})
        for (Vertex z : c.arc(k.a[idx], b)->eta)
          if (ga.count(z) || (gb.count(z) && z != c.b_ground[b])) return false;
  return true;
}

bool satisfies_base_avoidance(const ControlledBipartite& c, const ControlledCrown& k) {
  if (!crown_shape(c, k)) return false;
  for (auto a : k.a) {
    auto b = c.base_index(a);
    if (b && std::find(k.b.begin(), k.b.end(), *b) != k.b.end()) return false;
  }
  return true;
}

bool is_controlled_scattered(const ControlledBipartite& c, const ControlledScattered& s) {
  std::vector<bool> removed(c.a_ground.size(), false), in_set(c.b_ground.size(), false);
  for (auto a : s.removed) {
    if (a >= removed.size() || removed[a]) return false;
    removed[a] = true;
  }
  for (auto b : s.set) {
    if (b >= in_set.size() || in_set[b]) return false;
    in_set[b] = true;
  }
  for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) {
    if (removed[a]) continue;
    int hits = 0;
    for (auto b : c.out(a)) hits += in_set[b];
    if (hits > 1) return false;
  }
  return true;
}

bool verify_crown_model(const Digraph& g, const CrownModel& m) {
  if (m.order == 0) return false;
  return verify_model(g, crown(m.order).graph, m.model).ok();
}

CrownModel crown_model_from_controlled(const Digraph& g, const ControlledBipartite& c,
                                       const ControlledCrown& k) {
  const unsigned q = k.order();
  const Crown pattern = crown(q);
  CrownModel out;
  out.order = q;
  out.model.depth = c.radius;
  out.model.branch.resize(pattern.graph.num_vertices());
  std::vector<std::vector<Vertex>> members(q);
  for (unsigned i = 0; i < q; ++i) members[i].push_back(c.b_ground[k.b[i]]);
  std::size_t idx = 0;
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = i + 1; j < q; ++j, ++idx) {
      const Vertex x = pattern.pair_vertex(i, j);
      const Vertex a = c.a_ground[k.a[idx]];
      out.model.branch[x] = BranchSet{VertexSet{a}, {}, a, a};
      for (unsigned y : {i, j}) {
        const auto& eta = c.arc(k.a[idx], k.b[y])->eta;
        members[y].insert(members[y].end(), eta.begin(), eta.end());
      }
    }
  for (unsigned i = 0; i < q; ++i) {
    const VertexSet vs = VertexSet::from_unsorted(members[i]);
    const Vertex root = c.b_ground[k.b[i]];
    // BFS in-branching towards the root inside the η vertices.
    std::vector<Edge> tree;
    std::set<Vertex> seen{root};
    std::deque<Vertex> queue{root};
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.in(v))
        if (vs.contains(w) && seen.insert(w).second) {
          tree.emplace_back(w, v);
          queue.push_back(w);
        }
    }
    std::sort(tree.begin(), tree.end());
    out.model.branch[i] = BranchSet{vs, tree, root, root};
  }
  for (auto [x, y] : pattern.graph.edges()) {
    // x is a pair vertex, y a principal one.
    const auto& eta = c.arc(k.a[x - q], k.b[y])->eta;
    if (eta.empty()) throw std::logic_error("crown arc without a path label");
    out.model.edge_image.emplace_back(c.a_ground[k.a[x - q]], eta.front());
  }
  return out;
}

}  // namespace dcrown
