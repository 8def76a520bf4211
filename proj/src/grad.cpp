#include <deque>

#include "dcrown/minors.hpp"

namespace dcrown {

namespace {

constexpr std::size_t kMaxGradVertices = 10;
constexpr int kFar = 1 << 20;

using Mask = std::uint32_t;

// Depth-r branch feasibility inside one block, for given in/out masks.
class Block {
 public:
  Block(const Digraph& g, Mask members, unsigned depth) : members_(members), depth_(depth) {
    const std::size_t n = g.num_vertices();
    dist_.assign(n, std::vector<int>(n, kFar));
    for (Vertex s = 0; s < n; ++s) {
      if (!(members >> s & 1)) continue;
      dist_[s][s] = 0;
      std::deque<Vertex> q{s};
      while (!q.empty()) {
        Vertex u = q.front();
        q.pop_front();
        for (Vertex w : g.out(u))
          if ((members >> w & 1) && dist_[s][w] == kFar) {
            dist_[s][w] = dist_[s][u] + 1;
            q.push_back(w);
          }
      }
    }
  }

  bool feasible(Mask in, Mask out) const {
    const int r = static_cast<int>(depth_);
    if (in && out) {
      for (Vertex i = 0; i < dist_.size(); ++i)
        if (in >> i & 1)
          for (Vertex o = 0; o < dist_.size(); ++o)
            if ((out >> o & 1) && dist_[i][o] > r) return false;
      return true;
    }
    if (out) return has_root(out, true);
    if (in) return has_root(in, false);
    return true;
  }

 private:
  bool has_root(Mask targets, bool forward) const {
    const int r = static_cast<int>(depth_);
    for (Vertex c = 0; c < dist_.size(); ++c) {
      if (!(members_ >> c & 1)) continue;
      bool ok = true;
      for (Vertex t = 0; t < dist_.size() && ok; ++t)
        if (targets >> t & 1) ok = (forward ? dist_[c][t] : dist_[t][c]) <= r;
      if (ok) return true;
    }
    return false;
  }

  Mask members_;
  unsigned depth_;
  std::vector<std::vector<int>> dist_;
};

class GradSearch {
 public:
  GradSearch(const Digraph& g, unsigned depth) : g_(g), depth_(depth) {}

  Rational run() {
    if (g_.num_vertices() == 0) return 0;
    label_.assign(g_.num_vertices(), 0);
    assign(0, 0);
    return Rational(best_edges_, best_vertices_);
  }

 private:
  // Restricted growth labelling: 0 = unused, 1..k = block index.
  void assign(Vertex v, unsigned blocks) {
    if (v == g_.num_vertices()) {
      if (blocks > 0) evaluate(blocks);
      return;
    }
    for (unsigned l = 0; l <= blocks + 1; ++l) {
      label_[v] = l;
      assign(v + 1, std::max(blocks, l));
    }
  }

  struct Slot {
    unsigned from, to;
    std::vector<Edge> candidates;
  };

  // Is edges/k > best?
  bool better(long edges, long k) const { return edges * best_vertices_ > best_edges_ * k; }

  void evaluate(unsigned k) {
    std::vector<Mask> mask(k, 0);
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (label_[v]) mask[label_[v] - 1] |= Mask{1} << v;
    std::vector<Slot> slots;
    for (unsigned x = 0; x < k; ++x)
      for (unsigned y = 0; y < k; ++y) {
        if (x == y) continue;
        Slot s{x, y, {}};
        for (auto [a, b] : g_.edges())
          if ((mask[x] >> a & 1) && (mask[y] >> b & 1)) s.candidates.emplace_back(a, b);
        if (!s.candidates.empty()) slots.push_back(std::move(s));
      }
    if (!better(static_cast<long>(slots.size()), k)) return;
    blocks_.clear();
    for (unsigned x = 0; x < k; ++x) blocks_.emplace_back(g_, mask[x], depth_);
    in_.assign(k, 0);
    out_.assign(k, 0);
    slots_ = &slots;
    k_ = k;
    choose(0, 0);
  }

  void choose(std::size_t i, long taken) {
    const auto& slots = *slots_;
    if (!better(taken + static_cast<long>(slots.size() - i), k_)) return;
    if (i == slots.size()) {
      best_edges_ = taken;
      best_vertices_ = k_;
      return;
    }
    const auto& s = slots[i];
    for (auto [a, b] : s.candidates) {
      Mask old_out = out_[s.from], old_in = in_[s.to];
      out_[s.from] |= Mask{1} << a;
      in_[s.to] |= Mask{1} << b;
      if (blocks_[s.from].feasible(in_[s.from], out_[s.from]) &&
          blocks_[s.to].feasible(in_[s.to], out_[s.to]))
        choose(i + 1, taken + 1);
      out_[s.from] = old_out;
      in_[s.to] = old_in;
    }
    choose(i + 1, taken);
  }

  const Digraph& g_;
  unsigned depth_;
  std::vector<unsigned> label_;
  long best_edges_ = 0;
  long best_vertices_ = 1;
  std::vector<Block> blocks_;
  std::vector<Mask> in_, out_;
  const std::vector<Slot>* slots_ = nullptr;
  unsigned k_ = 0;
};

}  // namespace

Rational grad(const Digraph& g, unsigned depth) {
  if (g.num_vertices() > kMaxGradVertices)
    throw std::invalid_argument("grad is exhaustive and supports at most 10 vertices");
  return GradSearch(g, depth).run();
}

}  // namespace dcrown
