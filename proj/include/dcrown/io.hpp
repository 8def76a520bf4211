#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dcrown/digraph.hpp"
#include "dcrown/minors.hpp"
#include "dcrown/quasiwide.hpp"
#include "dcrown/solvers.hpp"

namespace dcrown {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct GraphFile {
  Digraph graph;
  std::optional<VertexSet> principal;  // from a "# principal:" line
};

/// First line n, then "u v" per line; '#' starts a comment.
GraphFile parse_graph(std::string_view text);
/// Edges in lexicographic order, principal sidecar when given.
std::string emit_graph(const Digraph& g, const std::optional<VertexSet>& principal = std::nullopt);
GraphFile read_graph_file(const std::string& path);

using Json = nlohmann::ordered_json;

enum class WitnessKind { model, scattered, dominating, outbranching, independent, crown };

std::string_view kind_name(WitnessKind k);
std::optional<WitnessKind> parse_kind(std::string_view name);

/// Self-contained: the host graph (and pattern, for models) travels with
/// the payload, so a document can be re-verified on its own.
struct WitnessDocument {
  WitnessKind kind = WitnessKind::model;
  bool found = false;
  bool verified = false;
  Json params = Json::object();
  Json payload = Json::object();
};

WitnessDocument model_document(const Digraph& host, const Digraph& pattern,
                               const std::optional<DirectedModel>& m, Json params = Json::object());
WitnessDocument crown_document(const Digraph& host, const CrownModel& m, Json params = Json::object());
WitnessDocument scattered_document(const Digraph& host, const std::optional<ScatteredWitness>& w,
                                   Json params = Json::object());
WitnessDocument solution_document(const DominationInstance& inst, Problem p, const SolveOutcome& out,
                                  Json params = Json::object());

/// Recomputes `verified` from the payload. A missing witness verifies
/// trivially; malformed payloads do not.
bool reverify(const WitnessDocument& doc);

/// One line, fixed field order.
std::string to_line(const WitnessDocument& doc);
/// Parses and re-verifies; throws ParseError on malformed input.
WitnessDocument parse_document(std::string_view line);

Json graph_json(const Digraph& g);
Digraph graph_from_json(const Json& j);

}  // namespace dcrown
