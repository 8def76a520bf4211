#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dcrown/bounds.hpp"
#include "dcrown/minors.hpp"

namespace dcrown {

/// U is d-scattered in G - S.
struct ScatteredWitness {
  VertexSet removed;  // S
  VertexSet set;      // U
  unsigned d = 0;
};

/// No vertex of G reaches two distinct elements of U within d steps.
bool is_scattered(const Digraph& g, const VertexSet& u, unsigned d);
/// U ∩ S = ∅ and U is d-scattered in G - S.
bool verify_scattered(const Digraph& g, const ScatteredWitness& w);

/// Smallest-first greedy maximal d-scattered set.
VertexSet greedy_scattered(const Digraph& g, unsigned d);

struct ScatterSearch {
  std::optional<ScatteredWitness> witness;
  bool budget_exhausted = false;
  std::uint64_t subsets_examined = 0;
};

/// Scans U ⊆ W by size, then lexicographically, with S = the vertices
/// reaching two members of U within d steps; accepts when |U \ S| >= m and
/// |S| <= s_budget, returning U \ S cut to m elements. Stops after
/// `max_subsets` candidates. Throws std::invalid_argument if |W| < m.
ScatterSearch compute_scattered(const Digraph& g, const VertexSet& w, unsigned d, std::size_t m,
                                std::size_t s_budget, std::uint64_t max_subsets = 1'000'000);

struct ControlLabel {
  std::optional<Vertex> base;  // ground vertex of the base in B
  unsigned level = 0;
};

struct ControlledArc {
  std::uint32_t a = 0;  // index into a_ground
  std::uint32_t b = 0;  // index into b_ground
  std::vector<Vertex> eta;  // ground vertices
};

/// Controlled directed bipartite graph over a ground vertex universe. A and B
/// nodes are addressed by index; a node's ground vertex may occur on both
/// sides. β and λ of an A node live in a_label, those of η members in
/// eta_label.
struct ControlledBipartite {
  unsigned radius = 0;
  std::vector<Vertex> a_ground;
  std::vector<ControlLabel> a_label;
  std::vector<Vertex> b_ground;
  std::vector<ControlledArc> arcs;
  std::map<Vertex, ControlLabel> eta_label;

  /// Sorts arcs and builds adjacency. Throws std::invalid_argument on bad
  /// indices, duplicate arcs or duplicate ground vertices on one side.
  void finalize();

  const std::vector<std::uint32_t>& out(std::uint32_t a) const { return out_[a]; }
  const std::vector<std::uint32_t>& in(std::uint32_t b) const { return in_[b]; }
  const ControlledArc* arc(std::uint32_t a, std::uint32_t b) const;
  std::optional<std::uint32_t> b_index(Vertex ground) const;
  /// β(a) as a B index, if it is defined and lies in B.
  std::optional<std::uint32_t> base_index(std::uint32_t a) const;

 private:
  std::vector<std::vector<std::uint32_t>> out_, in_;
  std::vector<std::size_t> arc_begin_;
  std::map<Vertex, std::uint32_t> b_lookup_;
};

/// Violations of the labelling rules: η members carry labels, share the base
/// b of their arc, have pairwise distinct levels, stay below λ(a) when
/// β(a) = b, and |η| lies in [λ(a), r+1].
std::vector<std::string> controlled_violations(const ControlledBipartite& c);
/// Additional invariants of the construction from an r-scattered set:
/// λ(a) = r+1 exactly when β(a) is undefined, η labels agree with A labels.
std::vector<std::string> construction_violations(const ControlledBipartite& c);

/// Builds the controlled graph of an r-scattered set I (B = I, A = vertices
/// reaching two members of I within r+1 steps, η = a shortest path minus its
/// start). Throws std::invalid_argument if I is not r-scattered.
ControlledBipartite build_controlled_bipartite(const Digraph& g, const VertexSet& i, unsigned r);

/// Crown of order q inside a controlled graph: b[i] plays v_i, a[k] plays the
/// k-th pair vertex u_{i,j} in lexicographic pair order.
struct ControlledCrown {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
  unsigned order() const { return static_cast<unsigned>(b.size()); }
};

/// Crown structure present, and for every crown arc η(e) avoids the ground
/// vertices of A'. Ground vertices of A' and B' must also be disjoint.
bool is_controlled_crown(const ControlledBipartite& c, const ControlledCrown& k);
/// β(a) ∉ B' for every a in A' (sufficient for the above on valid inputs).
bool satisfies_base_avoidance(const ControlledBipartite& c, const ControlledCrown& k);

/// B-set that is 1-scattered in C minus the A-nodes `removed`.
struct ControlledScattered {
  std::vector<std::uint32_t> removed;  // A indices
  std::vector<std::uint32_t> set;      // B indices
};
bool is_controlled_scattered(const ControlledBipartite& c, const ControlledScattered& s);

enum class ExtractMode {
  guaranteed,   // thresholds checked up front; failure would be a bug
  best_effort,  // any input size; failure reported as an empty result
};

/// Complete graph on 0..size-1 with labels γ(e) ∈ {none} ∪ V, γ(e) ∩ e = ∅.
class LabelledClique {
 public:
  explicit LabelledClique(std::size_t size);
  std::size_t size() const { return label_.size(); }
  void set(std::size_t u, std::size_t v, std::optional<std::size_t> l);
  std::optional<std::size_t> get(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::vector<long>> label_;
};

/// n vertices H with γ(e) ∉ H for every edge e inside H, by the recursive
/// colouring argument. Guaranteed mode needs size >= f(n) and size <= 24.
std::optional<std::vector<std::size_t>> controlled_clique_extract(const LabelledClique& k,
                                                                  unsigned n, ExtractMode mode);
bool is_label_free(const LabelledClique& k, const std::vector<std::size_t>& h);

/// Crown from a graph with constant λ where every two B nodes have a common
/// predecessor, via red and yellow connection pools.
std::optional<ControlledCrown> lemma0_extract(const ControlledBipartite& c, unsigned q,
                                              ExtractMode mode);

struct HighDegreeVertex {
  std::uint32_t a = 0;
  std::vector<std::uint32_t> successors;  // n+1 of them
};

using Lemma1Outcome = std::variant<HighDegreeVertex, ControlledScattered, ControlledCrown>;

/// A node with n+1 successors, a 1-scattered B-set of size p, or a
/// controlled crown of order q.
std::optional<Lemma1Outcome> lemma1_extract(const ControlledBipartite& c, std::size_t p, unsigned q,
                                            std::size_t n, ExtractMode mode);

using RcdbgOutcome = std::variant<ControlledScattered, ControlledCrown>;

/// Deletes at most C(q,2) A nodes to leave a 1-scattered B-set of size p, or
/// finds a controlled crown of order q.
std::optional<RcdbgOutcome> rcdbg_extract(const ControlledBipartite& c, std::size_t p, unsigned q,
                                          ExtractMode mode);

/// Depth-r model of the crown S_q in a host.
struct CrownModel {
  unsigned order = 0;
  DirectedModel model;
};

bool verify_crown_model(const Digraph& g, const CrownModel& m);

/// Model of a controlled crown: singleton branch sets for A', a BFS
/// in-branching over the η vertices for each member of B'.
CrownModel crown_model_from_controlled(const Digraph& g, const ControlledBipartite& c,
                                       const ControlledCrown& k);

using DichotomyOutcome = std::variant<CrownModel, ScatteredWitness>;

/// For an r-scattered I: a depth-r model of S_q, or S with |S| <= C(q,2) and
/// p members of I that are (r+1)-scattered in G - S. Outputs are verified.
std::optional<DichotomyOutcome> main_tec_step(const Digraph& g, const VertexSet& i, unsigned r,
                                              std::size_t p, unsigned q,
                                              ExtractMode mode = ExtractMode::best_effort);

struct UqwResult {
  std::optional<DichotomyOutcome> outcome;
  bool budget_exhausted = false;
  unsigned steps = 0;  // main_tec_step calls made
};

/// Raises the scattering radius from 0 to target_r one step at a time,
/// accumulating deleted vertices; step i uses crown order q(i). Each step
/// keeps the largest subset the dichotomy grants, never fewer than m.
UqwResult uqw_iterate(const Digraph& g, const VertexSet& w, unsigned target_r, std::size_t m,
                      const CrownSchedule& q, unsigned budget = 100'000);

/// Two paths of length <= 2r+1 in G - S from one vertex to two members of U.
struct CrownContradiction {
  std::vector<Vertex> first;
  std::vector<Vertex> second;
};

/// Given a depth-r crown model whose pair branch sets are out-branchings and
/// principal ones in-branchings, and a claimed (2r+1)-scattered witness on
/// principal vertices (branch sinks), looks for an untouched pair branch
/// linking two untouched principal branch sets that contain members of U.
std::optional<CrownContradiction> uqw_refutes_crownful(const Digraph& g, const CrownModel& m,
                                                       const ScatteredWitness& w);

}  // namespace dcrown
