#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "dcrown/quasiwide.hpp"

namespace dcrown {

LabelledClique::LabelledClique(std::size_t size) : label_(size, std::vector<long>(size, -1)) {}

void LabelledClique::set(std::size_t u, std::size_t v, std::optional<std::size_t> l) {
  if (u >= size() || v >= size() || u == v) throw std::invalid_argument("bad clique edge");
  if (l && (*l == u || *l == v || *l >= size()))
    throw std::invalid_argument("edge label must avoid its own edge");
  label_[u][v] = label_[v][u] = l ? static_cast<long>(*l) : -1;
}

std::optional<std::size_t> LabelledClique::get(std::size_t u, std::size_t v) const {
  const long l = label_[u][v];
  if (l < 0) return std::nullopt;
  return static_cast<std::size_t>(l);
}

bool is_label_free(const LabelledClique& k, const std::vector<std::size_t>& h) {
  std::set<std::size_t> in(h.begin(), h.end());
  if (in.size() != h.size()) return false;
  for (auto v : h)
    if (v >= k.size()) return false;
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      auto l = k.get(h[i], h[j]);
      if (l && in.count(*l)) return false;
    }
  return true;
}

namespace {

using Mask = std::uint64_t;

// Largest clique inside `cand`; plain branch and bound.
Mask max_clique(const std::vector<Mask>& adj, Mask cand) {
  Mask best = 0;
  std::function<void(Mask, Mask)> expand = [&](Mask r, Mask p) {
    if (std::popcount(r) > std::popcount(best)) best = r;
    while (p) {
      if (std::popcount(r) + std::popcount(p) <= std::popcount(best)) return;
      const int v = std::countr_zero(p);
      expand(r | Mask{1} << v, p & adj[v]);
      p &= ~(Mask{1} << v);
    }
  };
  expand(0, cand);
  return best;
}

class CliqueExtractor {
 public:
  explicit CliqueExtractor(const LabelledClique& k) : k_(k) {}

  std::optional<std::vector<std::size_t>> run(const std::vector<std::size_t>& x, unsigned n) {
    if (n == 0) return std::vector<std::size_t>{};
    if (x.size() < n) return std::nullopt;
    if (n == 1) return std::vector<std::size_t>{x.front()};
    for (std::size_t pick = 0; pick < x.size(); ++pick) {
      const std::size_t v = x[pick];
      std::vector<std::size_t> rest;
      for (auto y : x)
        if (y != v) rest.push_back(y);
      // Colour v: γ(e) = {v}.
      std::vector<Mask> same(rest.size(), 0), other(rest.size(), 0);
      for (std::size_t i = 0; i < rest.size(); ++i)
        for (std::size_t j = 0; j < rest.size(); ++j) {
          if (i == j) continue;
          if (k_.get(rest[i], rest[j]) == v)
            same[i] |= Mask{1} << j;
          else
            other[i] |= Mask{1} << j;
        }
      const Mask all = rest.size() == 64 ? ~Mask{0} : (Mask{1} << rest.size()) - 1;
      const Mask mono_v = max_clique(same, all);
      if (static_cast<unsigned>(std::popcount(mono_v)) >= n) {
        std::vector<std::size_t> h;
        for (std::size_t i = 0; i < rest.size() && h.size() < n; ++i)
          if (mono_v >> i & 1) h.push_back(rest[i]);
        return h;
      }
      Mask mono = max_clique(other, all);
      std::vector<std::size_t> stripped;
      std::set<std::size_t> banned;
      while (mono) {
        const int i = std::countr_zero(mono);
        mono &= ~(Mask{1} << i);
        const std::size_t x = rest[i];
        auto l = k_.get(v, x);
        if (banned.count(x) || (l && std::find(stripped.begin(), stripped.end(), *l) != stripped.end()))
          continue;
        stripped.push_back(x);
        if (l) banned.insert(*l);
      }
      if (auto h = run(stripped, n - 1)) {
        h->push_back(v);
        std::sort(h->begin(), h->end());
        return h;
      }
    }
    return std::nullopt;
  }

 private:
  const LabelledClique& k_;
};

struct Restricted {
  ControlledBipartite c;
  std::vector<std::uint32_t> a_map, b_map;  // local -> original
};

Restricted restrict_to(const ControlledBipartite& c, const std::vector<std::uint32_t>& keep_a,
                       const std::vector<std::uint32_t>& keep_b) {
  Restricted r;
  r.c.radius = c.radius;
  r.c.eta_label = c.eta_label;
  std::map<std::uint32_t, std::uint32_t> a_local, b_local;
  for (auto a : keep_a) {
    a_local[a] = static_cast<std::uint32_t>(r.a_map.size());
    r.a_map.push_back(a);
    r.c.a_ground.push_back(c.a_ground[a]);
    r.c.a_label.push_back(c.a_label[a]);
  }
  for (auto b : keep_b) {
    b_local[b] = static_cast<std::uint32_t>(r.b_map.size());
    r.b_map.push_back(b);
    r.c.b_ground.push_back(c.b_ground[b]);
  }
  for (const auto& e : c.arcs) {
    auto ia = a_local.find(e.a);
    auto ib = b_local.find(e.b);
    if (ia != a_local.end() && ib != b_local.end())
      r.c.arcs.push_back(ControlledArc{ia->second, ib->second, e.eta});
  }
  r.c.finalize();
  return r;
}

ControlledCrown lift(const Restricted& r, const ControlledCrown& k) {
  ControlledCrown out;
  for (auto a : k.a) out.a.push_back(r.a_map[a]);
  for (auto b : k.b) out.b.push_back(r.b_map[b]);
  return out;
}

std::vector<std::uint32_t> common_predecessors(const ControlledBipartite& c, std::uint32_t u,
                                               std::uint32_t v) {
  std::vector<std::uint32_t> out;
  std::set_intersection(c.in(u).begin(), c.in(u).end(), c.in(v).begin(), c.in(v).end(),
                        std::back_inserter(out));
  return out;
}

std::size_t max_out_degree(const ControlledBipartite& c) {
  std::size_t n = 0;
  for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) n = std::max(n, c.out(a).size());
  return n;
}

std::vector<std::uint32_t> all_b(const ControlledBipartite& c) {
  std::vector<std::uint32_t> out(c.b_ground.size());
  for (std::uint32_t b = 0; b < out.size(); ++b) out[b] = b;
  return out;
}

// Crown over pool members h (indices into `pool`), pair (i,j) carried by conn.
ControlledCrown crown_from_pool(const std::vector<std::uint32_t>& pool,
                                const std::vector<std::size_t>& h,
                                const std::map<std::pair<std::uint32_t, std::uint32_t>,
                                               std::uint32_t>& conn) {
  ControlledCrown k;
  for (auto i : h) k.b.push_back(pool[i]);
  for (std::size_t i = 0; i < k.b.size(); ++i)
    for (std::size_t j = i + 1; j < k.b.size(); ++j)
      k.a.push_back(conn.at(std::minmax(k.b[i], k.b[j])));
  return k;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::optional<std::vector<std::size_t>> controlled_clique_extract(const LabelledClique& k,
                                                                  unsigned n, ExtractMode mode) {
  if (k.size() > 64) throw std::invalid_argument("labelled clique limited to 64 vertices");
  if (mode == ExtractMode::guaranteed) {
    require(k.size() <= 24, "guaranteed clique extraction is capped at 24 vertices");
    auto f = clique_bound(std::max(n, 1u));
    require(f && BigInt(k.size()) >= *f, "clique smaller than f(n)");
  }
  std::vector<std::size_t> x(k.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i;
  auto h = CliqueExtractor(k).run(x, n);
  if (h && !is_label_free(k, *h)) throw std::logic_error("clique extraction produced a labelled edge");
  if (!h && mode == ExtractMode::guaranteed)
    throw std::logic_error("clique extraction failed above its threshold");
  return h;
}

std::optional<ControlledCrown> lemma0_extract(const ControlledBipartite& c, unsigned q,
                                              ExtractMode mode) {
  if (q == 0) throw std::invalid_argument("crown order must be positive");
  if (mode == ExtractMode::guaranteed) {
    for (std::uint32_t a = 1; a < c.a_ground.size(); ++a)
      require(c.a_label[a].level == c.a_label[0].level, "levels must be constant");
    for (std::uint32_t u = 0; u < c.b_ground.size(); ++u)
      for (std::uint32_t v = u + 1; v < c.b_ground.size(); ++v)
        require(!common_predecessors(c, u, v).empty(), "two B nodes without common predecessor");
    auto g = lemma0_bound(q, max_out_degree(c));
    require(g && BigInt(c.b_ground.size()) >= *g, "B smaller than g(q,n)");
  }
  if (c.b_ground.empty()) return std::nullopt;
  if (q == 1) return ControlledCrown{{}, {0}};

  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  std::map<Pair, std::uint32_t> conn;
  std::vector<std::uint32_t> red, yellow;
  std::vector<std::uint32_t> pool = all_b(c);
  while (!pool.empty()) {
    const std::uint32_t v = pool.front();
    pool.erase(pool.begin());
    std::vector<std::uint32_t> to_red, to_yellow;
    while (!pool.empty()) {
      const std::uint32_t u = pool.front();
      pool.erase(pool.begin());
      auto common = common_predecessors(c, v, u);
      if (common.empty()) continue;
      const std::uint32_t a = common.front();
      const auto& base = c.a_label[a].base;
      const bool is_red = base != c.b_ground[v] && base != c.b_ground[u];
      conn[std::minmax(u, v)] = a;
      (is_red ? to_red : to_yellow).push_back(u);
      std::erase_if(pool, [&](std::uint32_t b) {
        return std::binary_search(c.out(a).begin(), c.out(a).end(), b);
      });
    }
    if (to_red.empty() && to_yellow.empty()) {
      red.push_back(v);
      yellow.push_back(v);
    } else if (to_red.size() >= to_yellow.size()) {
      red.push_back(v);
      pool = std::move(to_red);
    } else {
      yellow.push_back(v);
      pool = std::move(to_yellow);
    }
  }

  auto index_in = [](const std::vector<std::uint32_t>& xs, std::uint32_t x) -> std::optional<std::size_t> {
    auto it = std::find(xs.begin(), xs.end(), x);
    if (it == xs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - xs.begin());
  };

  if (red.size() >= q) {
    LabelledClique k(red.size());
    for (std::size_t i = 0; i < red.size(); ++i)
      for (std::size_t j = i + 1; j < red.size(); ++j) {
        auto base = c.base_index(conn.at(std::minmax(red[i], red[j])));
        k.set(i, j, base ? index_in(red, *base) : std::nullopt);
      }
    if (auto h = controlled_clique_extract(k, q, ExtractMode::best_effort)) {
      auto crown = crown_from_pool(red, *h, conn);
      if (is_controlled_crown(c, crown)) return crown;
    }
  }

  if (yellow.size() >= q) {
    std::map<std::uint32_t, Pair> carried;
    for (std::size_t i = 0; i < yellow.size(); ++i)
      for (std::size_t j = i + 1; j < yellow.size(); ++j) {
        auto p = std::minmax(yellow[i], yellow[j]);
        carried[conn.at(p)] = p;
      }
    std::map<Vertex, std::uint32_t> a_of_ground;
    for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) a_of_ground[c.a_ground[a]] = a;
    std::set<std::uint32_t> deleted;
    LabelledClique k(yellow.size());
    for (std::size_t i = 0; i < yellow.size(); ++i)
      for (std::size_t j = i + 1; j < yellow.size(); ++j) {
        const std::uint32_t a = conn.at(std::minmax(yellow[i], yellow[j]));
        // u is the base end of the pair, v the other one.
        const bool base_i = c.a_label[a].base == c.b_ground[yellow[i]];
        const std::uint32_t u = base_i ? yellow[i] : yellow[j];
        const std::uint32_t v = base_i ? yellow[j] : yellow[i];
        std::optional<std::size_t> gamma;
        std::optional<Vertex> z;
        for (Vertex x : c.arc(a, v)->eta) {
          auto it = c.eta_label.find(x);
          if (it != c.eta_label.end() && it->second.level == c.a_label[a].level) z = x;
        }
        if (z) {
          auto az = a_of_ground.find(*z);
          if (az != a_of_ground.end() && !deleted.count(az->second)) {
            auto cp = carried.find(az->second);
            if (cp != carried.end() && (cp->second.first == v || cp->second.second == v)) {
              const std::uint32_t w = cp->second.first == v ? cp->second.second : cp->second.first;
              if (w == u)
                deleted.insert(az->second);
              else
                gamma = index_in(yellow, w);
            }
          }
        }
        k.set(i, j, gamma);
      }
    if (auto h = controlled_clique_extract(k, q, ExtractMode::best_effort)) {
      auto crown = crown_from_pool(yellow, *h, conn);
      if (is_controlled_crown(c, crown)) return crown;
    }
  }
  if (mode == ExtractMode::guaranteed)
    throw std::logic_error("crown extraction failed above its threshold");
  return std::nullopt;
}

std::optional<Lemma1Outcome> lemma1_extract(const ControlledBipartite& c, std::size_t p, unsigned q,
                                            std::size_t n, ExtractMode mode) {
  if (q == 0) throw std::invalid_argument("crown order must be positive");
  for (std::uint32_t a = 0; a < c.a_ground.size(); ++a)
    if (c.out(a).size() > n) {
      HighDegreeVertex h{a, {c.out(a).begin(), c.out(a).begin() + static_cast<long>(n + 1)}};
      return h;
    }
  if (mode == ExtractMode::guaranteed) {
    auto f = lemma1_bound(c.radius, p, q, n);
    require(f && BigInt(c.b_ground.size()) > *f, "B not larger than f(r,p,q,n)");
  }
  const unsigned levels = c.radius + 2;
  std::vector<std::uint32_t> current = all_b(c), chosen;
  std::vector<std::vector<std::uint32_t>> bucket(levels);
  while (chosen.size() < p && !current.empty()) {
    const std::uint32_t v = current.front();
    std::vector<std::set<std::uint32_t>> by_level(levels);
    for (auto a : c.in(v))
      for (auto b : c.out(a))
        if (std::binary_search(current.begin(), current.end(), b))
          by_level[std::min(c.a_label[a].level, levels - 1)].insert(b);
    std::set<std::uint32_t> touched;
    for (const auto& s : by_level) touched.insert(s.begin(), s.end());
    touched.insert(v);
    std::vector<std::uint32_t> rest;
    for (auto b : current)
      if (!touched.count(b)) rest.push_back(b);
    // A vertex sharing no predecessor with the others goes straight to I.
    // It still joins every bucket: each bucket member reaches all of current.
    if (touched.size() == 1)
      for (auto& d : bucket)
        if (!d.empty()) d.push_back(v);
    if (rest.size() * (c.radius + 3) >= current.size() || touched.size() == 1) {
      chosen.push_back(v);
      current = std::move(rest);
      continue;
    }
    std::size_t t = 0;
    for (std::size_t j = 1; j < levels; ++j)
      if (by_level[j].size() > by_level[t].size()) t = j;
    bucket[t].push_back(v);
    by_level[t].erase(v);
    current.assign(by_level[t].begin(), by_level[t].end());
  }
  if (chosen.size() >= p) {
    ControlledScattered s{{}, chosen};
    if (!is_controlled_scattered(c, s)) throw std::logic_error("lemma1_extract set is not 1-scattered");
    return s;
  }
  std::vector<std::size_t> order(levels);
  for (std::size_t t = 0; t < levels; ++t) order[t] = t;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return bucket[x].size() > bucket[y].size(); });
  for (std::size_t t : order) {
    if (bucket[t].size() < q) break;
    std::sort(bucket[t].begin(), bucket[t].end());
    std::vector<std::uint32_t> keep_a;
    for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) {
      if (c.a_label[a].level != t) continue;
      bool touches = false;
      for (auto b : c.out(a)) touches = touches || std::binary_search(bucket[t].begin(), bucket[t].end(), b);
      if (touches) keep_a.push_back(a);
    }
    auto sub = restrict_to(c, keep_a, bucket[t]);
    if (auto k = lemma0_extract(sub.c, q, ExtractMode::best_effort)) {
      auto crown = lift(sub, *k);
      if (is_controlled_crown(c, crown)) return crown;
    }
  }
  if (mode == ExtractMode::guaranteed)
    throw std::logic_error("lemma1_extract failed above its threshold");
  return std::nullopt;
}

namespace {

std::optional<RcdbgOutcome> residual(const ControlledBipartite& c, const std::vector<std::uint32_t>& s,
                                     const std::vector<std::uint32_t>& b, std::size_t p, unsigned q) {
  std::vector<std::uint32_t> keep_a;
  for (std::uint32_t a = 0; a < c.a_ground.size(); ++a)
    if (std::find(s.begin(), s.end(), a) == s.end()) keep_a.push_back(a);
  auto sub = restrict_to(c, keep_a, b);
  auto got = lemma1_extract(sub.c, p, q, max_out_degree(sub.c), ExtractMode::best_effort);
  if (!got) return std::nullopt;
  if (auto* sc = std::get_if<ControlledScattered>(&*got)) {
    ControlledScattered out{s, {}};
    for (auto x : sc->set) out.set.push_back(sub.b_map[x]);
    std::sort(out.removed.begin(), out.removed.end());
    std::sort(out.set.begin(), out.set.end());
    if (is_controlled_scattered(c, out)) return out;
    return std::nullopt;
  }
  if (auto* k = std::get_if<ControlledCrown>(&*got)) {
    auto crown = lift(sub, *k);
    if (is_controlled_crown(c, crown)) return crown;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RcdbgOutcome> rcdbg_extract(const ControlledBipartite& c, std::size_t p, unsigned q,
                                          ExtractMode mode) {
  if (q == 0) throw std::invalid_argument("crown order must be positive");
  const unsigned rounds = q * (q - 1) / 2;
  if (mode == ExtractMode::guaranteed) {
    auto f = rcdbg_bound(c.radius, p, q);
    require(f && BigInt(c.b_ground.size()) >= *f, "B smaller than F(r,p,q)");
  }
  std::vector<std::uint32_t> s, b = all_b(c);
  for (unsigned i = 0; i < rounds; ++i) {
    std::optional<std::uint32_t> best;
    std::vector<std::uint32_t> best_next;
    for (std::uint32_t a = 0; a < c.a_ground.size(); ++a) {
      if (std::find(s.begin(), s.end(), a) != s.end()) continue;
      const auto base = c.base_index(a);
      std::vector<std::uint32_t> next;
      for (auto x : c.out(a))
        if (x != base && std::binary_search(b.begin(), b.end(), x)) next.push_back(x);
      if (next.size() >= q && (!best || next.size() > best_next.size())) {
        best = a;
        best_next = std::move(next);
      }
    }
    if (!best) break;
    s.push_back(*best);
    b = std::move(best_next);
  }
  if (s.size() == rounds && b.size() >= q) {
    ControlledCrown k{s, {b.begin(), b.begin() + q}};
    if (!satisfies_base_avoidance(c, k) || !is_controlled_crown(c, k))
      throw std::logic_error("peeled crown is not controlled");
    return k;
  }
  auto out = residual(c, s, b, p, q);
  if (!out && !s.empty()) out = residual(c, {}, all_b(c), p, q);
  if (!out && mode == ExtractMode::guaranteed)
    throw std::logic_error("rcdbg extraction failed above its threshold");
  return out;
}

}  // namespace dcrown
