#include "stgray/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "stgray/counting.hpp"
#include "stgray/dualtree.hpp"
#include "stgray/error.hpp"
#include "stgray/flipgraph.hpp"
#include "stgray/treegen.hpp"

namespace stgray {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kMaxDelContractEdges = 60;

struct RunConfig {
  std::string input;
  std::string listing;
  std::optional<int> root;
  std::string tiebreak = "closest";
  std::string restriction = "any";
  std::string klass = "any";
  std::string initial = "default";
  std::string labels = "dual";
  std::string mode = "multigraph";
  std::string format = "dot";
  std::string scope = "pivot";
  std::string out_path;
  int max_n = 0;
  int arb_root = 0;
  unsigned threads = 0;
  std::uint64_t budget = 20'000'000;
  bool per_block = false;
  bool fib = false;
  bool long_run = false;
  bool hamilton = false;
};

std::vector<VertexId> outer_order_of(const GraphInput& in) {
  if (in.outer) return *in.outer;
  std::vector<VertexId> order(in.graph.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  return order;
}

EmbeddedGraph embed(const GraphInput& in) {
  if (in.directed) throw Error("expected an undirected graph");
  return EmbeddedGraph(in.graph, outer_order_of(in));
}

struct DualLabeling {
  EdgeLabeling labeling;
  std::optional<OrientedSplitDual> oriented;  // absent for per-block labelings
};

DualLabeling dual_labeling(const EmbeddedGraph& e, const RunConfig& cfg) {
  const MultiGraph& g = e.graph();
  if (g.num_edges() == 0) return {EdgeLabeling::identity(0), std::nullopt};
  if (is_two_connected(g) && !g.has_loops()) {
    SplitDual s = split_dual(e);
    int root = default_root(e, s);
    if (cfg.root) {
      if (*cfg.root < 0 || *cfg.root >= s.num_leaves()) {
        throw Error("--root must be a leaf index in 0.." + std::to_string(s.num_leaves() - 1));
      }
      root = s.num_inner + *cfg.root;
    }
    OrientedSplitDual o = orient_split_dual(std::move(s), root);
    EdgeLabeling l = dual_tree_labeling(o);
    return {std::move(l), std::move(o)};
  }
  if (!cfg.per_block && !g.has_loops()) {
    throw EmbeddingError("graph is not 2-connected; pass --per-block to label each block separately");
  }
  if (cfg.root) throw Error("--root is not supported with per-block labelings");
  return {per_block_labeling(e), std::nullopt};
}

std::string edge_text(const MultiGraph& g, EdgeId id) {
  return "(" + std::to_string(g.edge(id).u) + "," + std::to_string(g.edge(id).v) + ")";
}

SpanningTree parse_initial(const std::string& text, const LabeledGraph& g) {
  if (text == "default") return first_spanning_tree(g);
  const int m = g.num_edges();
  SpanningTree t(m);
  if (static_cast<int>(text.size()) == m && text.find_first_not_of("01") == std::string::npos) {
    t = SpanningTree::from_string(text);
  } else {
    std::string s = text;
    for (char& c : s) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(s);
    int l = 0;
    while (is >> l) {
      if (l < 1 || l > m) throw Error("initial tree label " + std::to_string(l) + " out of range 1.." + std::to_string(m));
      t.set(l);
    }
    if (!is.eof()) throw Error("--initial expects 'default', a 0/1 vector or a list of labels");
  }
  if (!is_spanning_tree(g, t)) throw Error("--initial does not describe a spanning tree");
  return t;
}

/// Labelled view for gen/verify: embedded when possible.
struct GenContext {
  std::optional<EmbeddedGraph> embedded;
  std::optional<LabeledGraph> graph;
};

GenContext gen_context(const GraphInput& in, const RunConfig& cfg) {
  GenContext c;
  if (cfg.labels == "dual") {
    c.embedded.emplace(embed(in));
    c.graph.emplace(*c.embedded, dual_labeling(*c.embedded, cfg).labeling);
  } else if (cfg.labels == "identity") {
    try {
      c.embedded.emplace(embed(in));
    } catch (const EmbeddingError&) {
      c.embedded.reset();
    }
    auto l = EdgeLabeling::identity(in.graph.num_edges());
    if (c.embedded) {
      c.graph.emplace(*c.embedded, l);
    } else {
      c.graph.emplace(in.graph, l);
    }
  } else {
    throw Error("--labels must be 'dual' or 'identity'");
  }
  return c;
}

int cmd_label(const RunConfig& cfg, std::ostream& out) {
  GraphInput in = read_graph_file(cfg.input);
  EmbeddedGraph e = embed(in);
  DualLabeling dl = dual_labeling(e, cfg);
  const MultiGraph& g = e.graph();
  if (dl.oriented) {
    const auto& s = dl.oriented->split;
    int leaf = dl.oriented->root - s.num_inner;
    EdgeId id = s.leaf_dart[leaf].edge;
    out << "root leaf " << leaf << " on edge " << edge_text(g, id) << " [id " << id << "]\n";
  } else {
    out << "root per-block\n";
  }
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    out << "edge " << edge_text(g, id) << " [id " << id << "] -> label " << dl.labeling.label(id) << '\n';
  }
  if (!dl.oriented) return kOk;
  LemmaReport faces = check_lemma_labels(e, *dl.oriented, dl.labeling);
  LemmaReport verts = check_lemma_neighbors(e, *dl.oriented, dl.labeling);
  out << "face-order=" << (faces.ok ? "pass" : "fail") << " vertex-order=" << (verts.ok ? "pass" : "fail") << '\n';
  for (const auto& v : faces.violations) out << "  " << v << '\n';
  for (const auto& v : verts.violations) out << "  " << v << '\n';
  return faces.ok && verts.ok ? kOk : kFailed;
}

std::optional<ExchangeKind> preferred_kind(const std::string& tiebreak) {
  if (tiebreak.starts_with("prefer-")) return parse_exchange_kind(std::string_view(tiebreak).substr(7));
  return std::nullopt;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  TieBreak rule = TieBreak::from_name(cfg.tiebreak);
  GraphInput in = read_graph_file(cfg.input);
  GenContext c = gen_context(in, cfg);
  SpanningTree initial = parse_initial(cfg.initial, *c.graph);
  Listing listing = algorithm_g(*c.graph, initial, rule);
  write_listing(out, *c.graph, listing, rule.name());
  if (auto kind = preferred_kind(cfg.tiebreak)) {
    GrayReport rep = verify_gray(*c.graph, listing, *kind);
    if (!rep.ok) {
      out << "# violation " << rep.message << '\n';
      return kFailed;
    }
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  ExchangeKind kind = parse_exchange_kind(cfg.klass);
  GraphInput in = read_graph_file(cfg.input);
  std::ifstream file(cfg.listing);
  if (!file) throw Error("cannot open listing '" + cfg.listing + "'");
  std::stringstream buf;
  buf << file.rdbuf();
  ParsedListing parsed = parse_listing(buf.str());

  GenContext c;
  if (parsed.labeling) {
    if (parsed.labeling->size() != in.graph.num_edges()) throw Error("listing labels do not match the graph");
    try {
      c.embedded.emplace(embed(in));
      c.graph.emplace(*c.embedded, *parsed.labeling);
    } catch (const EmbeddingError&) {
      c.graph.emplace(in.graph, *parsed.labeling);
    }
  } else {
    c = gen_context(in, cfg);
  }

  const bool genlex = verify_genlex(parsed.trees);
  GrayReport rep;
  try {
    Listing listing = to_listing(parsed, *c.graph);
    rep = verify_gray(*c.graph, listing, kind);
  } catch (const Error& ex) {
    rep.ok = false;
    rep.message = ex.what();
  }
  out << "count=" << parsed.trees.size() << " expected=" << rep.expected_count << " genlex=" << (genlex ? "yes" : "no")
      << " gray=" << (rep.ok ? "pass" : "fail") << " class=" << to_string(kind) << '\n';
  if (!rep.ok) out << "violation: " << rep.message << '\n';
  return genlex && rep.ok ? kOk : kFailed;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  GraphInput in = read_graph_file(cfg.input);
  const MultiGraph& g = in.graph;
  BigCount mt = count_matrix_tree(g);
  out << "matrix-tree=" << mt << '\n';
  int status = kOk;
  if (g.num_edges() - g.num_loops() <= kMaxDelContractEdges) {
    BigCount dc = count_del_contract(g);
    out << "deletion-contraction=" << dc << '\n';
    if (dc != mt) {
      out << "mismatch\n";
      status = kFailed;
    }
  } else {
    out << "deletion-contraction=skipped\n";
  }
  if (cfg.fib) {
    TriangulationMode mode;
    if (cfg.mode == "multigraph") {
      mode = TriangulationMode::multigraph;
    } else if (cfg.mode == "simple") {
      mode = TriangulationMode::simple;
    } else {
      throw Error("--mode must be 'simple' or 'multigraph'");
    }
    FibBoundReport r = check_fib_bound(embed(in), mode);
    out << r.to_string() << '\n';
    if (!r.consistent()) status = kFailed;
  }
  return status;
}

int cmd_experiment(const RunConfig& cfg, std::ostream& out) {
  ExperimentOptions opt;
  opt.scope = parse_experiment_scope(cfg.scope);
  const int ci_n = opt.scope == ExperimentScope::arborescence ? 4 : 5;
  const int long_n = opt.scope == ExperimentScope::arborescence ? 5 : 6;
  opt.max_n = cfg.max_n > 0 ? cfg.max_n : (cfg.long_run ? long_n : ci_n);
  if (opt.max_n > ci_n && !cfg.long_run) {
    throw Error("--max-n " + std::to_string(opt.max_n) + " needs --long");
  }
  opt.budget = cfg.budget;
  opt.threads = cfg.threads;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw Error("cannot write '" + cfg.out_path + "'");
    sink = &file;
  }
  ExperimentReport rep = experiment_open_problems(opt, [&](const ExperimentRecord& r) {
    *sink << r.to_string() << '\n';
    sink->flush();
  });
  out << "scope=" << to_string(opt.scope) << " max-n=" << opt.max_n << " graphs=" << rep.records.size()
      << " cyclic=" << rep.cyclic << " path=" << rep.path << " none=" << rep.none << " unknown=" << rep.unknown
      << " discrepancies=" << rep.discrepancies << '\n';
  return rep.discrepancies == 0 ? kOk : kFailed;
}

int cmd_flip(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "dot" && cfg.format != "text") throw Error("--format must be 'dot' or 'text'");
  GraphInput in = read_graph_file(cfg.input);
  FlipGraph fg;
  if (in.directed) {
    if (cfg.arb_root < 0 || cfg.arb_root >= in.graph.num_vertices()) throw Error("--arb-root out of range");
    fg = arborescence_flip_graph(to_digraph(in), cfg.arb_root);
  } else {
    ExchangeKind kind = parse_exchange_kind(cfg.restriction);
    GenContext c = gen_context(in, cfg);
    fg = build_flip_graph(*c.graph, kind);
  }
  if (cfg.format == "dot") {
    write_dot(out, fg);
  } else {
    write_text(out, fg);
  }
  if (!cfg.hamilton || fg.num_nodes() == 0) return kOk;
  HamiltonOptions opt;
  opt.budget = cfg.budget;
  HamiltonResult cyc = hamilton_path(fg, opt);
  opt.cycle = false;
  HamiltonResult path = cyc.outcome == HamiltonOutcome::found ? cyc : hamilton_path(fg, opt);
  std::ostringstream line;
  line << "hamilton cycle=" << to_string(cyc.outcome) << " path=" << to_string(path.outcome);
  if (!path.path.empty()) {
    line << " order=";
    for (std::size_t i = 0; i < path.path.size(); ++i) line << (i ? "," : "") << path.path[i];
  }
  out << (cfg.format == "dot" ? "// " : "") << line.str() << '\n';
  return kOk;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genlex Gray codes of spanning trees of outerplane graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_labeling = [&](CLI::App* sub) {
    sub->add_option("--root", cfg.root, "Root leaf of the split dual (0-based, ccw from the first outer vertex)");
    sub->add_flag("--per-block", cfg.per_block, "Label each block separately when the graph is not 2-connected");
  };
  auto add_labels = [&](CLI::App* sub) {
    sub->add_option("--labels", cfg.labels, "Edge labeling: dual (dual-tree) or identity (file order)")
        ->capture_default_str();
  };

  auto* label = app.add_subcommand("label", "Print the dual-tree labeling and check the label-order lemmas");
  label->add_option("graph", cfg.input, "Edge-list file")->required();
  add_labeling(label);

  auto* gen = app.add_subcommand("gen", "List all spanning trees with the greedy generator");
  gen->add_option("graph", cfg.input, "Edge-list file")->required();
  gen->add_option("--tiebreak", cfg.tiebreak,
                  "closest | farthest | prefer-pivot | prefer-pof | prefer-pof-inner | prefer-paf | prefer-face")
      ->capture_default_str();
  gen->add_option("--initial", cfg.initial, "default, a 0/1 vector or a comma-separated label list")
      ->capture_default_str();
  add_labeling(gen);
  add_labels(gen);

  auto* verify = app.add_subcommand("verify", "Check a listing for completeness, genlex order and exchange class");
  verify->add_option("graph", cfg.input, "Edge-list file")->required();
  verify->add_option("listing", cfg.listing, "Listing file")->required();
  verify->add_option("--class", cfg.klass, "any | pivot | face | face-inner | paf | pof | pof-inner")
      ->capture_default_str();
  add_labeling(verify);
  add_labels(verify);

  auto* count = app.add_subcommand("count", "Count spanning trees two ways");
  count->add_option("graph", cfg.input, "Edge-list file")->required();
  count->add_flag("--fib", cfg.fib, "Also check the Fibonacci bound (needs an outerplane embedding)");
  count->add_option("--mode", cfg.mode, "Triangulation mode for --fib: simple or multigraph")->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "Hamiltonicity sweeps over small graphs");
  exp->add_option("--scope", cfg.scope, "pivot | paf | arborescence")->capture_default_str();
  exp->add_option("--max-n", cfg.max_n, "Largest vertex count (default 5, arborescence 4)");
  exp->add_flag("--long", cfg.long_run, "Allow the full sizes (6 vertices, arborescence 5)");
  exp->add_option("--budget", cfg.budget, "Search budget per graph in node expansions")->capture_default_str();
  exp->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  exp->add_option("--out", cfg.out_path, "Write records to this file instead of standard output");

  auto* flip = app.add_subcommand("flip", "Export the flip graph");
  flip->add_option("graph", cfg.input, "Edge-list file")->required();
  flip->add_option("--restriction", cfg.restriction, "any | pivot | face | face-inner | paf | pof | pof-inner")
      ->capture_default_str();
  flip->add_option("--format", cfg.format, "dot or text")->capture_default_str();
  flip->add_option("--arb-root", cfg.arb_root, "Root vertex for directed inputs")->capture_default_str();
  flip->add_flag("--hamilton", cfg.hamilton, "Search for a Hamilton cycle and path");
  flip->add_option("--budget", cfg.budget, "Search budget in node expansions")->capture_default_str();
  add_labeling(flip);
  add_labels(flip);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (label->parsed()) return cmd_label(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (count->parsed()) return cmd_count(cfg, out);
    if (exp->parsed()) return cmd_experiment(cfg, out);
    if (flip->parsed()) return cmd_flip(cfg, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace stgray
