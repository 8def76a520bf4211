#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "acceptance/acceptance.hpp"
#include "dcrown/bounds.hpp"
#include "dcrown/generators.hpp"
#include "dcrown/io.hpp"
#include "dcrown/minors.hpp"
#include "dcrown/quasiwide.hpp"
#include "dcrown/solvers.hpp"

using namespace dcrown;

namespace {

enum Exit { found = 0, not_found = 1, exhausted = 2, usage = 3, internal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  bool human = false;
  std::ostream& out = std::cout;

  void emit(const WitnessDocument& doc) const {
    if (!human) {
      out << to_line(doc) << '\n';
      return;
    }
    out << kind_name(doc.kind) << ": " << (doc.found ? "found" : "not found");
    if (doc.found) out << (doc.verified ? ", verified" : ", NOT verified");
    out << '\n';
    for (const auto& [k, v] : doc.params.items()) out << "  " << k << " = " << v.dump() << '\n';
    for (const auto& [k, v] : doc.payload.items()) {
      if (k == "graph" || k == "pattern") {
        out << "  " << k << ": " << v["n"] << " vertices, " << v["edges"].size() << " edges\n";
      } else if (k == "model") {
        std::size_t i = 0;
        for (const auto& b : v["branch"])
          out << "  branch " << i++ << ": " << b["vertices"].dump() << " source " << b["source"] << " sink "
              << b["sink"] << '\n';
        out << "  edge images: " << v["edge_image"].dump() << '\n';
      } else {
        out << "  " << k << ": " << v.dump() << '\n';
      }
    }
  }
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("DCROWN_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("DCROWN_BUDGET is not a number");
    }
  }
  return 1'000'000;
}

unsigned number_arg(const std::vector<std::string>& args, std::size_t i, const std::string& what) {
  if (i >= args.size()) throw UsageError("missing parameter " + what);
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(args[i], &used);
    if (used != args[i].size()) throw std::invalid_argument(what);
    return static_cast<unsigned>(v);
  } catch (const std::logic_error&) {
    throw UsageError("parameter " + what + " must be a non-negative integer");
  }
}

Digraph subdivide(const Digraph& g) {
  std::vector<Edge> edges;
  Vertex next = static_cast<Vertex>(g.num_vertices());
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(u, next);
    edges.emplace_back(next, v);
    ++next;
  }
  return Digraph(next, edges);
}

// --- generate ---

struct GenerateArgs {
  std::string family;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::string phase = "odd";
  bool acyclic = false;
};

int run_generate(const GenerateArgs& a, const Output& o) {
  const auto& f = a.family;
  const bool random = f == "tournament" || f == "random" || f == "grid" || f == "bipartite";
  if (random && !a.seed && !o.human) throw UsageError(f + " is random: pass --seed");
  const std::uint64_t seed = a.seed.value_or(0);
  std::optional<VertexSet> principal;
  Digraph g;
  if (f == "crown" || f == "reversed-crown" || f == "subdivided-crown") {
    const unsigned q = number_arg(a.params, 0, "q");
    if (q == 0) throw UsageError("crown order must be positive");
    auto c = f == "reversed-crown" ? reversed_crown(q) : crown(q);
    g = f == "subdivided-crown" ? subdivide(c.graph) : c.graph;
    principal = c.principal;
  } else if (f == "alternating-path") {
    const unsigned k = number_arg(a.params, 0, "k");
    if (k == 0) throw UsageError("alternating path needs k >= 1");
    if (a.phase != "odd" && a.phase != "even") throw UsageError("--phase is odd or even");
    g = alternating_path(k, a.phase == "odd" ? Phase::odd : Phase::even);
  } else if (f == "acyclic-tournament") {
    g = acyclic_tournament(number_arg(a.params, 0, "n"));
  } else if (f == "tournament") {
    g = random_tournament(number_arg(a.params, 0, "n"), seed);
  } else if (f == "random") {
    const unsigned n = number_arg(a.params, 0, "n");
    if (a.params.size() < 2) throw UsageError("missing parameter p");
    double p = 0;
    try {
      p = std::stod(a.params[1]);
    } catch (const std::exception&) {
      throw UsageError("p must be a probability");
    }
    if (p < 0 || p > 1) throw UsageError("p must be a probability");
    g = random_digraph(n, p, seed, a.acyclic);
  } else if (f == "grid") {
    g = oriented_grid(GridShape{number_arg(a.params, 0, "rows"), number_arg(a.params, 1, "cols")}, seed);
  } else if (f == "bipartite") {
    const unsigned n = number_arg(a.params, 0, "n"), d = number_arg(a.params, 1, "d");
    if (d > n) throw UsageError("out-degree exceeds the B side");
    g = random_bipartite_outregular(n, d, seed);
  } else {
    throw UsageError("unknown family '" + f + "'");
  }
  o.out << emit_graph(g, principal);
  return found;
}

// --- minor ---

struct MinorArgs {
  std::string mode = "directed";
  std::optional<unsigned> depth;
  std::string pattern_path, host_path;
};

int run_minor(const MinorArgs& a, const Output& o) {
  const auto h = read_graph_file(a.pattern_path).graph;
  const auto g = read_graph_file(a.host_path).graph;
  Json params{{"mode", a.mode}};
  std::optional<DirectedModel> m;
  if (a.mode == "directed") {
    if (is_dag(g)) {
      m = dag_minor_check(h, g);
    } else {
      if (g.num_vertices() > 12) throw UsageError("cyclic hosts are searched exhaustively, at most 12 vertices");
      m = general_minor_check(h, g);
    }
  } else if (a.mode == "shallow") {
    if (!a.depth) throw UsageError("shallow mode needs --depth");
    params["depth"] = *a.depth;
    if (!is_dag(g) && g.num_vertices() > 12)
      throw UsageError("cyclic hosts are searched exhaustively, at most 12 vertices");
    m = shallow_minor_check(h, g, *a.depth);
  } else if (a.mode == "butterfly") {
    if (g.num_vertices() > 10) throw UsageError("butterfly search supports at most 10 host vertices");
    const bool yes = is_butterfly_minor(h, g);
    params["butterfly"] = yes;
    // A butterfly minor is a directed minor; the model is the checkable part.
    if (yes) {
      m = general_minor_check(h, g);
      if (!m) throw std::logic_error("butterfly minor without a directed model");
    }
  } else if (a.mode == "topological") {
    if (g.num_vertices() > 12) throw UsageError("topological search supports at most 12 host vertices");
    if (auto s = topological_minor_check(h, g)) m = subdivision_to_model(g, h, *s);
  } else {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  auto doc = model_document(g, h, m, params);
  o.emit(doc);
  if (doc.found && !doc.verified) return internal;
  return doc.found ? found : not_found;
}

// --- scatter / dichotomy ---

VertexSet targets_of(const GraphFile& f) {
  return f.principal ? *f.principal : VertexSet::range(static_cast<Vertex>(f.graph.num_vertices()));
}

struct ScatterArgs {
  std::string path;
  unsigned d = 1;
  std::size_t m = 1;
  std::size_t s_budget = 0;
  std::optional<std::string> witness;
};

int run_scatter(const ScatterArgs& a, const Output& o) {
  const auto f = read_graph_file(a.path);
  const auto w = targets_of(f);
  if (w.size() < a.m) throw UsageError("m exceeds the target set");
  auto res = compute_scattered(f.graph, w, a.d, a.m, a.s_budget, default_budget());
  Json params{{"d", a.d}, {"m", a.m}, {"s_budget", a.s_budget}, {"examined", res.subsets_examined}};
  auto doc = scattered_document(f.graph, res.witness, params);
  o.emit(doc);
  if (a.witness) {
    std::ofstream file(*a.witness);
    if (!file) throw UsageError("cannot write " + *a.witness);
    file << to_line(doc) << '\n';
  }
  if (doc.found && !doc.verified) return internal;
  if (doc.found) return found;
  return res.budget_exhausted ? exhausted : not_found;
}

struct DichotomyArgs {
  std::string path;
  unsigned r = 0;
  unsigned q = 2;
  std::size_t p = 1;
  std::optional<std::size_t> m;
};

int run_dichotomy(const DichotomyArgs& a, const Output& o) {
  const auto f = read_graph_file(a.path);
  const auto& g = f.graph;
  Json params{{"r", a.r}, {"q", a.q}};
  std::optional<DichotomyOutcome> outcome;
  bool out_of_budget = false;
  if (a.m) {
    params["m"] = *a.m;
    const auto w = targets_of(f);
    if (w.size() < *a.m) throw UsageError("m exceeds the target set");
    const unsigned q = a.q;
    auto res = uqw_iterate(g, w, a.r, *a.m, [q](unsigned) { return q; },
                           static_cast<unsigned>(std::min<std::uint64_t>(default_budget(), 1u << 30)));
    outcome = res.outcome;
    out_of_budget = res.budget_exhausted;
  } else {
    params["p"] = a.p;
    VertexSet i = f.principal ? *f.principal : greedy_scattered(g, a.r);
    if (!is_scattered(g, i, a.r)) throw UsageError("principal set is not " + std::to_string(a.r) + "-scattered");
    outcome = main_tec_step(g, i, a.r, a.p, a.q);
  }
  WitnessDocument doc;
  if (outcome && std::holds_alternative<CrownModel>(*outcome)) {
    doc = crown_document(g, std::get<CrownModel>(*outcome), params);
  } else {
    std::optional<ScatteredWitness> w;
    if (outcome) w = std::get<ScatteredWitness>(*outcome);
    doc = scattered_document(g, w, params);
  }
  o.emit(doc);
  if (doc.found && !doc.verified) return internal;
  if (doc.found) return found;
  return out_of_budget ? exhausted : not_found;
}

// --- solve ---

struct SolveArgs {
  std::string problem;
  std::string path;
  std::size_t k = 0;
  unsigned d = 1;
  std::optional<std::size_t> scatter_budget;
  bool oracle = false;
};

int run_solve(const SolveArgs& a, const Output& o) {
  auto p = parse_problem(a.problem);
  if (!p) throw UsageError("unknown problem '" + a.problem + "'");
  const auto f = read_graph_file(a.path);
  DominationInstance inst{f.graph, a.k, a.d, std::nullopt, {}};
  SolverOptions opt;
  if (a.scatter_budget) opt.scatter_budget = *a.scatter_budget;
  opt.max_subsets = default_budget();
  auto out = solve(inst, *p, opt, a.oracle);
  Json params{{"k", a.k}, {"d", a.d}, {"oracle", a.oracle}};
  auto doc = solution_document(inst, *p, out, params);
  o.emit(doc);
  if (doc.found && !doc.verified) return internal;
  return doc.found ? found : not_found;
}

// --- grad ---

int run_grad(const std::string& path, unsigned depth, const Output& o) {
  const auto g = read_graph_file(path).graph;
  const Rational v = grad(g, depth);
  if (o.human) {
    o.out << "grad at depth " << depth << ": " << v << " (" << v.convert_to<double>() << ")\n";
  } else {
    Json j{{"kind", "grad"}, {"depth", depth}, {"value", v.str()}};
    o.out << j.dump() << '\n';
  }
  return found;
}

// --- verify / selftest ---

int run_verify(const std::string& path, const Output& o) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  std::size_t n = 0, bad = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    WitnessDocument doc;
    try {
      doc = parse_document(line);
    } catch (const ParseError& e) {
      throw ParseError(n, e.what());
    }
    bad += !doc.verified;
    if (o.human)
      o.out << "line " << n << ": " << kind_name(doc.kind) << (doc.verified ? " verified" : " FAILS verification")
            << '\n';
    else
      o.out << Json{{"line", n}, {"kind", kind_name(doc.kind)}, {"found", doc.found}, {"verified", doc.verified}}.dump()
            << '\n';
  }
  return bad ? not_found : found;
}

int run_selftest(const std::string& scale, std::uint64_t seed, int only, const Output& o) {
  using namespace dcrown::acceptance;
  if (scale != "small" && scale != "full") throw UsageError("--scale is small or full");
  const Scale s = scale == "full" ? Scale::full : Scale::small;
  bool ok = true;
  auto print = [&](const CriterionResult& r) {
    ok = ok && r.pass;
    if (o.human) {
      o.out << format_line(r) << std::endl;
    } else {
      Json j{{"criterion", r.id},   {"name", r.name},         {"pass", r.pass},
             {"cases", r.cases},    {"failures", r.failures}, {"seconds", r.seconds},
             {"detail", r.detail}};
      o.out << j.dump() << std::endl;
    }
  };
  if (only) {
    if (only < 1 || only > kCriteria) throw UsageError("no criterion " + std::to_string(only));
    print(run_criterion(only, s, seed));
  } else {
    run_all(s, seed, print);
  }
  return ok ? found : not_found;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed minors, crowns and scattered sets"};
  app.require_subcommand(1);
  bool human = false;
  app.add_flag("--human", human, "Readable output instead of JSON lines");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Emit a graph of a named family");
  generate->add_option("family", gen.family,
                       "crown | reversed-crown | subdivided-crown | alternating-path | acyclic-tournament | "
                       "tournament | random | grid | bipartite")
      ->required();
  generate->add_option("params", gen.params, "Family parameters");
  generate->add_option("--seed", gen.seed, "Seed for random families");
  generate->add_option("--phase", gen.phase, "Alternating path phase (odd | even)");
  generate->add_flag("--acyclic", gen.acyclic, "Random graphs: only edges u -> v with u < v");

  MinorArgs mn;
  auto* minor = app.add_subcommand("minor", "Is H a minor of G");
  minor->add_option("--mode", mn.mode, "directed | shallow | butterfly | topological");
  minor->add_option("--depth", mn.depth, "Depth for shallow minors");
  minor->add_option("H", mn.pattern_path, "Pattern graph file")->required();
  minor->add_option("G", mn.host_path, "Host graph file")->required();

  ScatterArgs sc;
  auto* scatter = app.add_subcommand("scatter", "Search a d-scattered set after deleting few vertices");
  scatter->add_option("G", sc.path, "Graph file; its principal line, if any, gives W")->required();
  scatter->add_option("--d", sc.d, "Radius");
  scatter->add_option("--m", sc.m, "Size of the scattered set");
  scatter->add_option("--s-budget", sc.s_budget, "How many vertices may be deleted");
  scatter->add_option("--witness", sc.witness, "Also write the document here");

  DichotomyArgs di;
  auto* dichotomy = app.add_subcommand("dichotomy", "Crown model or scattered set");
  dichotomy->add_option("G", di.path, "Graph file; its principal line, if any, gives I (or W)")->required();
  dichotomy->add_option("--r", di.r, "Scattering radius of I");
  dichotomy->add_option("--q", di.q, "Crown order");
  dichotomy->add_option("--p", di.p, "Size of the scattered set asked for");
  dichotomy->add_option("--m", di.m, "Iterate from radius 0 up to r, keeping m vertices");

  SolveArgs so;
  auto* solvec = app.add_subcommand("solve", "Domination-type problems");
  solvec->add_option("problem", so.problem, "ds | ids | dds | dob | is")->required();
  solvec->add_option("G", so.path, "Graph file")->required();
  solvec->add_option("--k", so.k, "Solution size")->required();
  solvec->add_option("--d", so.d, "Distance, for dds and is");
  solvec->add_option("--scatter-budget", so.scatter_budget, "Deletions allowed in scattered witnesses");
  solvec->add_flag("--oracle", so.oracle, "Brute force");

  std::string grad_path;
  unsigned grad_depth = 0;
  auto* gradc = app.add_subcommand("grad", "Greatest reduced average density");
  gradc->add_option("G", grad_path, "Graph file")->required();
  gradc->add_option("--depth", grad_depth, "Minor depth");

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Re-verify a file of witness documents");
  verify->add_option("file", verify_path, "JSON lines")->required();

  std::string scale = "small";
  std::uint64_t seed = 1;
  int only = 0;
  auto* selftest = app.add_subcommand("selftest", "Run the property suites");
  selftest->add_option("--scale", scale, "small | full");
  selftest->add_option("--seed", seed, "Seed");
  selftest->add_option("--only", only, "A single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : usage;
  }

  const Output o{human};
  try {
    if (*generate) return run_generate(gen, o);
    if (*minor) return run_minor(mn, o);
    if (*scatter) return run_scatter(sc, o);
    if (*dichotomy) return run_dichotomy(di, o);
    if (*solvec) return run_solve(so, o);
    if (*gradc) return run_grad(grad_path, grad_depth, o);
    if (*verify) return run_verify(verify_path, o);
    if (*selftest) return run_selftest(scale, seed, only, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return internal;
  }
  return usage;
}
