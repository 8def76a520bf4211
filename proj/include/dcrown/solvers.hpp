#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "dcrown/digraph.hpp"

namespace dcrown {

enum class Problem { ds, ids, dds, dob, is };

std::string_view problem_name(Problem p);
std::optional<Problem> parse_problem(std::string_view name);

/// Solutions have at most k vertices (exactly k for `is`), avoid Y, and
/// d-dominate W (V(G) when unset).
struct DominationInstance {
  Digraph g;
  std::size_t k = 0;
  unsigned d = 1;
  std::optional<VertexSet> w;
  VertexSet y;

  VertexSet targets() const { return w ? *w : VertexSet::range(static_cast<Vertex>(g.num_vertices())); }
};

/// Out-tree given by its root and tree edges.
struct OutBranching {
  Vertex root = 0;
  VertexSet vertices;
  std::vector<Edge> edges;
};

struct SolveOutcome {
  bool feasible = false;
  VertexSet solution;
  std::optional<OutBranching> tree;  // dob only
  bool exhausted = false;            // brute force decided at least one branch
};

struct SolverOptions {
  std::size_t scatter_budget = 2;  // |S| allowed in a scattered witness
  std::size_t exhaustive_below = 0;  // graphs this small go straight to brute force
  std::uint64_t max_subsets = 20'000;  // per scattered-set search
  std::size_t bounded_targets = 12;  // dob: |W| handed to the partition search
};

/// N_d^+(D) ⊇ W.
bool verify_dominating(const Digraph& g, const VertexSet& dom, unsigned d, const VertexSet& w);
/// No edge between two members, in either direction.
bool verify_independent(const Digraph& g, const VertexSet& s);
/// No member reaches another within d steps.
bool verify_distance_independent(const Digraph& g, const VertexSet& s, unsigned d);
/// Tree edges are edges of G, every non-root vertex has one parent, all
/// vertices reachable from the root.
bool verify_outbranching(const Digraph& g, const OutBranching& t);
/// G[D] has a spanning out-tree; returns the BFS tree from the smallest root.
std::optional<OutBranching> spanning_outbranching(const Digraph& g, const VertexSet& dom);

/// Re-checks an outcome against the instance's defining predicate.
bool verify_outcome(const DominationInstance& inst, Problem p, const SolveOutcome& out);

/// Exhaustive over [V]^{<=k}; returns the lexicographically least among the
/// smallest solutions (for `is`, the least set of size k).
SolveOutcome brute_force_solve(const DominationInstance& inst, Problem p);

/// Branches on the deletion set of a 1-scattered witness of size k+1.
SolveOutcome independent_dominating_set(const Digraph& g, std::size_t k, const SolverOptions& opt = {});

/// w ∈ W with N_d^-(w') ⊆ N_d^-(w) for some other w' ∈ W: any X that
/// d-dominates W \ {w} also d-dominates w.
std::optional<Vertex> find_irrelevant_vertex(const Digraph& g, const VertexSet& w, std::size_t k,
                                             unsigned d);

/// Reduces W, then covers it with at most k domination traces.
SolveOutcome d_dominating_set(const Digraph& g, std::size_t k, unsigned d, const SolverOptions& opt = {});
/// X ∈ [V]^{<=k} d-dominating W, by trace classes.
std::optional<VertexSet> dominate_targets(const Digraph& g, const VertexSet& w, std::size_t k,
                                          unsigned d);

/// Minimum-vertex out-tree containing the terminals (and rooted at `root`
/// when given), subset DP over terminal sets. Trees larger than
/// `size_budget` are reported as missing.
std::optional<OutBranching> directed_steiner_outtree(const Digraph& g, const VertexSet& terminals,
                                                     std::optional<std::size_t> size_budget = std::nullopt,
                                                     std::optional<Vertex> root = std::nullopt);

/// At most j further vertices V' so that G[U ∪ V'] has a spanning out-tree
/// and W ⊆ N^+(U ∪ V'). Partitions W into at most j blocks (|W| <= 12,
/// j <= 4), exhaustive over V' beyond that.
std::optional<VertexSet> dominating_outbranching_bounded(const Digraph& g, const VertexSet& u,
                                                         const VertexSet& w, std::size_t j);
SolveOutcome dominating_outbranching(const Digraph& g, std::size_t k, const SolverOptions& opt = {});

/// k vertices pairwise out of reach within d steps (d = 1: independent).
SolveOutcome independent_set(const Digraph& g, std::size_t k, unsigned d = 1,
                             const SolverOptions& opt = {});

/// Dispatch on the problem; `oracle` forces brute force.
SolveOutcome solve(const DominationInstance& inst, Problem p, const SolverOptions& opt = {},
                   bool oracle = false);

}  // namespace dcrown
