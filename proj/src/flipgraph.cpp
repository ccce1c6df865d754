#include "stgray/flipgraph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "stgray/error.hpp"

namespace stgray {

namespace {

constexpr int kMaxSubsetEdges = 24;

template <class Visit>
void for_each_subset_tree(const LabeledGraph& g, Visit&& visit) {
  const int m = g.num_edges();
  const int k = g.num_vertices() - 1;
  if (m > kMaxSubsetEdges) {
    throw Error("subset enumeration is limited to " + std::to_string(kMaxSubsetEdges) +
                " edges; use the greedy generator for larger graphs");
  }
  if (k < 0) return;
  if (k > m) return;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 1);
  SpanningTree t(m);
  while (true) {
    t = SpanningTree(m);
    for (int l : pick) t.set(l);
    if (is_spanning_tree(g, t)) visit(t);
    int i = k - 1;
    while (i >= 0 && pick[i] == m - (k - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

std::vector<SpanningTree> enumerate_spanning_trees(const LabeledGraph& g) {
  std::vector<SpanningTree> out;
  for_each_subset_tree(g, [&](const SpanningTree& t) { out.push_back(t); });
  return out;
}

std::vector<SpanningTree> enumerate_spanning_trees(const MultiGraph& g) {
  return enumerate_spanning_trees(LabeledGraph(g, EdgeLabeling::identity(g.num_edges())));
}

BigCount count_by_subsets(const MultiGraph& g) {
  BigCount c = 0;
  for_each_subset_tree(LabeledGraph(g, EdgeLabeling::identity(g.num_edges())),
                       [&](const SpanningTree&) { c += 1; });
  return c;
}

bool FlipGraph::adjacent(int a, int b) const {
  const auto& list = adj.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::optional<int> FlipGraph::find(const SpanningTree& t) const {
  auto it = std::find(nodes.begin(), nodes.end(), t);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<int>(it - nodes.begin());
}

namespace {

void finish_adjacency(FlipGraph& fg) {
  fg.adj.assign(fg.nodes.size(), {});
  std::sort(fg.edges.begin(), fg.edges.end(),
            [](const FlipEdge& x, const FlipEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (const auto& e : fg.edges) {
    fg.adj[e.a].push_back(e.b);
    fg.adj[e.b].push_back(e.a);
  }
  for (auto& l : fg.adj) std::sort(l.begin(), l.end());
}

}  // namespace

FlipGraph build_flip_graph(const LabeledGraph& g, ExchangeKind restriction) {
  bool faces = restriction != ExchangeKind::any && restriction != ExchangeKind::pivot;
  if (faces && !g.has_faces()) {
    throw Error("restriction '" + std::string(to_string(restriction)) + "' needs an embedded graph");
  }
  FlipGraph fg;
  fg.restriction = std::string(to_string(restriction));
  fg.nodes = enumerate_spanning_trees(g);
  std::unordered_map<SpanningTree, int, SpanningTreeHash> index;
  for (int i = 0; i < fg.num_nodes(); ++i) index.emplace(fg.nodes[i], i);
  for (int i = 0; i < fg.num_nodes(); ++i) {
    for (const Exchange& ex : valid_exchanges(g, fg.nodes[i])) {
      if (!satisfies(g.classify(ex), restriction)) continue;
      int j = index.at(apply(fg.nodes[i], ex));
      if (i < j) fg.edges.push_back({i, j, ex});
    }
  }
  finish_adjacency(fg);
  return fg;
}

void write_dot(std::ostream& os, const FlipGraph& fg) {
  os << "graph flip {\n  // restriction=" << fg.restriction << "\n";
  for (int i = 0; i < fg.num_nodes(); ++i) {
    os << "  t" << i << " [label=\"" << fg.nodes[i].to_string() << "\"];\n";
  }
  for (const auto& e : fg.edges) {
    os << "  t" << e.a << " -- t" << e.b << " [label=\"{" << e.exchange.smaller() << ","
       << e.exchange.larger() << "}\"];\n";
  }
  os << "}\n";
}

void write_text(std::ostream& os, const FlipGraph& fg) {
  os << "restriction " << fg.restriction << "\nnodes " << fg.num_nodes() << "\n";
  for (int i = 0; i < fg.num_nodes(); ++i) os << "node " << i << ' ' << fg.nodes[i].to_string() << '\n';
  os << "edges " << fg.num_edges() << "\n";
  for (const auto& e : fg.edges) {
    os << "edge " << e.a << ' ' << e.b << ' ' << e.exchange.smaller() << ' ' << e.exchange.larger() << '\n';
  }
}

// ---------------------------------------------------------------------------

Digraph to_digraph(const GraphInput& in) {
  Digraph d;
  d.n = in.graph.num_vertices();
  d.arcs.assign(in.graph.edges().begin(), in.graph.edges().end());
  return d;
}

namespace {

bool is_arborescence(const Digraph& d, int root, const std::vector<int>& in_arc) {
  std::vector<std::vector<int>> out(d.n);
  for (int v = 0; v < d.n; ++v) {
    if (v != root) out[d.arcs[in_arc[v]].u].push_back(v);
  }
  std::vector<char> seen(d.n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : out[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == d.n;
}

}  // namespace

std::vector<SpanningTree> enumerate_arborescences(const Digraph& d, int root) {
  if (root < 0 || root >= d.n) throw Error("root out of range");
  std::vector<std::vector<int>> in(d.n);
  for (int a = 0; a < static_cast<int>(d.arcs.size()); ++a) {
    const Edge& e = d.arcs[a];
    if (!e.is_loop() && e.v != root) in[e.v].push_back(a);
  }
  std::vector<SpanningTree> out;
  for (int v = 0; v < d.n; ++v) {
    if (v != root && in[v].empty()) return out;
  }
  // Odometer over in-arc choices, vertex 0 least significant.
  std::vector<int> choice(d.n, 0), in_arc(d.n, -1);
  const int m = static_cast<int>(d.arcs.size());
  while (true) {
    for (int v = 0; v < d.n; ++v) {
      if (v != root) in_arc[v] = in[v][choice[v]];
    }
    if (is_arborescence(d, root, in_arc)) {
      SpanningTree t(m);
      for (int v = 0; v < d.n; ++v) {
        if (v != root) t.set(in_arc[v] + 1);
      }
      out.push_back(t);
    }
    int v = 0;
    for (; v < d.n; ++v) {
      if (v == root) continue;
      if (++choice[v] < static_cast<int>(in[v].size())) break;
      choice[v] = 0;
    }
    if (v == d.n) break;
  }
  std::sort(out.begin(), out.end(), [](const SpanningTree& a, const SpanningTree& b) {
    return a.to_string() < b.to_string();
  });
  return out;
}

FlipGraph arborescence_flip_graph(const Digraph& d, int root) {
  FlipGraph fg;
  fg.restriction = "arc";
  fg.nodes = enumerate_arborescences(d, root);
  std::unordered_map<SpanningTree, int, SpanningTreeHash> index;
  for (int i = 0; i < fg.num_nodes(); ++i) index.emplace(fg.nodes[i], i);
  const int m = static_cast<int>(d.arcs.size());
  for (int i = 0; i < fg.num_nodes(); ++i) {
    for (int a = 1; a <= m; ++a) {
      if (!fg.nodes[i].contains(a)) continue;
      for (int b = 1; b <= m; ++b) {
        if (fg.nodes[i].contains(b) || d.arcs[b - 1].v != d.arcs[a - 1].v || d.arcs[b - 1].is_loop()) continue;
        auto it = index.find(apply(fg.nodes[i], {a, b}));
        if (it != index.end() && i < it->second) fg.edges.push_back({i, it->second, {a, b}});
      }
    }
  }
  finish_adjacency(fg);
  return fg;
}

}  // namespace stgray
