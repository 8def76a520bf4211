#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dcrown/io.hpp"

namespace dcrown {

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> number(std::string_view t) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
  return v;
}

constexpr std::string_view kPrincipal = "principal:";

}  // namespace

GraphFile parse_graph(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::optional<std::vector<Vertex>> principal;
  std::size_t principal_line = 0;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      auto comment = tokens(line.substr(hash + 1));
      if (!comment.empty() && comment[0] == kPrincipal) {
        if (principal) throw ParseError(lineno, "second principal line");
        principal.emplace();
        principal_line = lineno;
        for (std::size_t i = 1; i < comment.size(); ++i) {
          auto v = number(comment[i]);
          if (!v) throw ParseError(lineno, "bad principal vertex '" + std::string(comment[i]) + "'");
          principal->push_back(static_cast<Vertex>(*v));
        }
      }
      line = line.substr(0, hash);
    }
    auto t = tokens(line);
    if (t.empty()) continue;
    if (!n) {
      auto v = t.size() == 1 ? number(t[0]) : std::nullopt;
      if (!v) throw ParseError(lineno, "expected the vertex count");
      n = *v;
      continue;
    }
    if (t.size() != 2) throw ParseError(lineno, "expected 'u v'");
    auto u = number(t[0]), v = number(t[1]);
    if (!u || !v) throw ParseError(lineno, "vertex ids must be non-negative integers");
    if (*u >= *n || *v >= *n) throw ParseError(lineno, "vertex id out of range");
    if (*u == *v) throw ParseError(lineno, "self-loop");
    Edge e{static_cast<Vertex>(*u), static_cast<Vertex>(*v)};
    if (!seen.insert(e).second) throw ParseError(lineno, "duplicate edge");
    edges.push_back(e);
  }
  if (!n) throw ParseError(lineno, "missing vertex count");
  GraphFile f{Digraph(*n, std::move(edges)), std::nullopt};
  if (principal) {
    for (Vertex v : *principal)
      if (v >= *n) throw ParseError(principal_line, "principal vertex out of range");
    f.principal = VertexSet::from_unsorted(*principal);
  }
  return f;
}

std::string emit_graph(const Digraph& g, const std::optional<VertexSet>& principal) {
  std::ostringstream out;
  out << g.num_vertices() << '\n';
  if (principal) {
    out << "# principal:";
    for (Vertex v : *principal) out << ' ' << v;
    out << '\n';
  }
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string_view kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::model: return "model";
    case WitnessKind::scattered: return "scattered";
    case WitnessKind::dominating: return "dominating";
    case WitnessKind::outbranching: return "outbranching";
    case WitnessKind::independent: return "independent";
    case WitnessKind::crown: return "crown";
  }
  return "?";
}

std::optional<WitnessKind> parse_kind(std::string_view name) {
  for (auto k : {WitnessKind::model, WitnessKind::scattered, WitnessKind::dominating,
                 WitnessKind::outbranching, WitnessKind::independent, WitnessKind::crown})
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

Json graph_json(const Digraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return Json{{"n", g.num_vertices()}, {"edges", edges}};
}

Digraph graph_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return Digraph(j.at("n").get<std::size_t>(), std::move(edges));
}

namespace {

Json set_json(const VertexSet& s) { return Json(s.vec()); }

VertexSet set_from(const Json& j) { return VertexSet::from_unsorted(j.get<std::vector<Vertex>>()); }

Json edges_json(const std::vector<Edge>& es) {
  Json out = Json::array();
  for (auto [u, v] : es) out.push_back({u, v});
  return out;
}

std::vector<Edge> edges_from(const Json& j) {
  std::vector<Edge> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  return out;
}

Json model_json(const DirectedModel& m) {
  Json branches = Json::array();
  for (const auto& b : m.branch)
    branches.push_back(Json{{"vertices", set_json(b.vertices)},
                            {"edges", edges_json(b.edges)},
                            {"source", b.source},
                            {"sink", b.sink}});
  Json depth = m.depth ? Json(*m.depth) : Json(nullptr);
  return Json{{"branch", branches}, {"edge_image", edges_json(m.edge_image)}, {"depth", depth}};
}

DirectedModel model_from(const Json& j) {
  DirectedModel m;
  for (const auto& b : j.at("branch"))
    m.branch.push_back(BranchSet{set_from(b.at("vertices")), edges_from(b.at("edges")),
                                 b.at("source").get<Vertex>(), b.at("sink").get<Vertex>()});
  m.edge_image = edges_from(j.at("edge_image"));
  if (!j.at("depth").is_null()) m.depth = j.at("depth").get<unsigned>();
  return m;
}

WitnessKind solution_kind(Problem p) {
  switch (p) {
    case Problem::dob: return WitnessKind::outbranching;
    case Problem::is: return WitnessKind::independent;
    default: return WitnessKind::dominating;
  }
}

}  // namespace

WitnessDocument model_document(const Digraph& host, const Digraph& pattern,
                               const std::optional<DirectedModel>& m, Json params) {
  WitnessDocument doc{WitnessKind::model, m.has_value(), false, std::move(params), Json::object()};
  doc.payload["graph"] = graph_json(host);
  doc.payload["pattern"] = graph_json(pattern);
  if (m) doc.payload["model"] = model_json(*m);
  doc.verified = reverify(doc);
  return doc;
}

WitnessDocument crown_document(const Digraph& host, const CrownModel& m, Json params) {
  WitnessDocument doc{WitnessKind::crown, true, false, std::move(params), Json::object()};
  doc.payload["graph"] = graph_json(host);
  doc.payload["order"] = m.order;
  doc.payload["model"] = model_json(m.model);
  doc.verified = reverify(doc);
  return doc;
}

WitnessDocument scattered_document(const Digraph& host, const std::optional<ScatteredWitness>& w,
                                   Json params) {
  WitnessDocument doc{WitnessKind::scattered, w.has_value(), false, std::move(params), Json::object()};
  doc.payload["graph"] = graph_json(host);
  if (w) {
    doc.payload["removed"] = set_json(w->removed);
    doc.payload["set"] = set_json(w->set);
    doc.payload["d"] = w->d;
  }
  doc.verified = reverify(doc);
  return doc;
}

WitnessDocument solution_document(const DominationInstance& inst, Problem p, const SolveOutcome& out,
                                  Json params) {
  WitnessDocument doc{solution_kind(p), out.feasible, false, std::move(params), Json::object()};
  doc.payload["graph"] = graph_json(inst.g);
  doc.payload["problem"] = std::string(problem_name(p));
  doc.payload["k"] = inst.k;
  doc.payload["d"] = inst.d;
  doc.payload["fallback"] = out.exhausted;
  if (out.feasible) {
    doc.payload["solution"] = set_json(out.solution);
    if (out.tree)
      doc.payload["tree"] = Json{{"root", out.tree->root}, {"edges", edges_json(out.tree->edges)}};
  }
  doc.verified = reverify(doc);
  return doc;
}

bool reverify(const WitnessDocument& doc) {
  try {
    const auto& p = doc.payload;
    const Digraph g = graph_from_json(p.at("graph"));
    if (!doc.found) return true;
    switch (doc.kind) {
      case WitnessKind::model: {
        const Digraph h = graph_from_json(p.at("pattern"));
        return verify_model(g, h, model_from(p.at("model"))).ok();
      }
      case WitnessKind::crown:
        return verify_crown_model(g, CrownModel{p.at("order").get<unsigned>(), model_from(p.at("model"))});
      case WitnessKind::scattered:
        return verify_scattered(g, ScatteredWitness{set_from(p.at("removed")), set_from(p.at("set")),
                                                    p.at("d").get<unsigned>()});
      case WitnessKind::dominating:
      case WitnessKind::outbranching:
      case WitnessKind::independent: {
        auto prob = parse_problem(p.at("problem").get<std::string>());
        if (!prob || solution_kind(*prob) != doc.kind) return false;
        DominationInstance inst{g, p.at("k").get<std::size_t>(), p.at("d").get<unsigned>(), std::nullopt, {}};
        SolveOutcome out;
        out.feasible = true;
        out.solution = set_from(p.at("solution"));
        if (p.contains("tree")) {
          const auto& t = p.at("tree");
          std::vector<Edge> es = edges_from(t.at("edges"));
          std::vector<Vertex> vs{t.at("root").get<Vertex>()};
          for (auto [u, v] : es) vs.push_back(v);
          out.tree = OutBranching{t.at("root").get<Vertex>(), VertexSet::from_unsorted(vs), es};
        }
        for (Vertex v : out.solution)
          if (!g.valid(v)) return false;
        return verify_outcome(inst, *prob, out);
      }
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

std::string to_line(const WitnessDocument& doc) {
  Json j{{"kind", kind_name(doc.kind)},
         {"found", doc.found},
         {"verified", doc.verified},
         {"params", doc.params},
         {"payload", doc.payload}};
  return j.dump();
}

WitnessDocument parse_document(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad JSON: ") + e.what());
  }
  WitnessDocument doc;
  try {
    auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw ParseError(1, "unknown witness kind");
    doc.kind = *kind;
    doc.found = j.at("found").get<bool>();
    doc.params = j.at("params");
    doc.payload = j.at("payload");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad document: ") + e.what());
  }
  doc.verified = reverify(doc);
  return doc;
}

}  // namespace dcrown
