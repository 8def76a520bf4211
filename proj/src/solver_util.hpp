#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "dcrown/digraph.hpp"

namespace dcrown {

using Mask = std::uint64_t;

inline Mask bit(unsigned i) { return Mask{1} << i; }

inline Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) m |= bit(v);
  return m;
}

inline VertexSet from_mask(Mask m) {
  std::vector<Vertex> out;
  for (; m; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return VertexSet::from_unsorted(std::move(out));
}

/// Size-`size` subsets of `pool` in lexicographic order until `fn` says stop.
inline bool each_combination(const std::vector<Vertex>& pool, std::size_t size,
                             const std::function<bool(Mask)>& fn) {
  if (size > pool.size()) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (auto i : idx) m |= bit(pool[i]);
    if (fn(m)) return true;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace dcrown
