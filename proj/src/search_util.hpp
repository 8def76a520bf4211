#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dcrown/minors.hpp"

namespace dcrown::detail {

using DistanceMatrix = std::vector<std::vector<int>>;
/// May coordinate i step onto host vertex w?
using AllowFn = std::function<bool(std::size_t, Vertex)>;

DistanceMatrix all_pairs_distances(const Digraph& g);

std::optional<PathList> product_search(const Digraph& g, const std::vector<TerminalPair>& pairs,
                                       const IntervalPartition& part,
                                       std::optional<unsigned> max_len, const AllowFn& allowed);

}  // namespace dcrown::detail
