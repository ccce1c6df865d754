#pragma once

// Brute-force oracles and the flip graph of spanning trees or
// arborescences, with a Hamilton path/cycle search and the small-graph
// experiment harness built on top.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stgray/counting.hpp"
#include "stgray/spanning_tree.hpp"

namespace stgray {

/// Every spanning tree, by testing all (n-1)-subsets of labels in
/// lexicographic order. Throws Error above 24 edges.
std::vector<SpanningTree> enumerate_spanning_trees(const LabeledGraph& g);
std::vector<SpanningTree> enumerate_spanning_trees(const MultiGraph& g);

/// Number of spanning trees by the same subset test.
BigCount count_by_subsets(const MultiGraph& g);

struct FlipEdge {
  int a = 0, b = 0;  // node indices, a < b
  Exchange exchange;  // taking node a to node b
};

struct FlipGraph {
  std::vector<SpanningTree> nodes;
  std::vector<FlipEdge> edges;
  std::vector<std::vector<int>> adj;  // sorted neighbour lists
  std::string restriction;            // exchange kind or "arc"

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool adjacent(int a, int b) const;
  std::optional<int> find(const SpanningTree& t) const;
};

/// Nodes are all spanning trees; two trees are adjacent when they differ by
/// an exchange of class `restriction`. Face classes need `g.has_faces()`.
FlipGraph build_flip_graph(const LabeledGraph& g, ExchangeKind restriction);

/// DOT export: node label = characteristic vector, edge label = "{e,f}".
void write_dot(std::ostream& os, const FlipGraph& fg);
/// "nodes k", one "node i <bits>" line each, then "edge a b e f" lines.
void write_text(std::ostream& os, const FlipGraph& fg);

// ---------------------------------------------------------------------------
// Hamilton search

struct HamiltonOptions {
  bool cycle = true;
  std::optional<int> start;   // forced first node
  std::optional<int> end;     // forced last node (paths only)
  std::uint64_t budget = 20'000'000;  // node expansions
};

enum class HamiltonOutcome { found, none, unknown };
const char* to_string(HamiltonOutcome o);

struct HamiltonResult {
  HamiltonOutcome outcome = HamiltonOutcome::unknown;
  std::vector<int> path;  // node order when found
  std::uint64_t expansions = 0;
};

/// Backtracking with degree and connectivity pruning, fewest remaining
/// neighbours first. A found certificate is re-validated before returning.
/// A single node is a trivial cycle; two adjacent nodes count as a cycle.
HamiltonResult hamilton_path(const FlipGraph& fg, const HamiltonOptions& options = {});

/// Permutation of the nodes with consecutive nodes adjacent (and the ends
/// adjacent for a cycle).
bool validate_hamilton(const FlipGraph& fg, const std::vector<int>& order, bool cycle);

// ---------------------------------------------------------------------------
// Arborescences

struct Digraph {
  int n = 0;
  std::vector<Edge> arcs;  // u -> v; arc label = index + 1
};

/// Parses the edge-list format with the "directed" header flag.
Digraph to_digraph(const GraphInput& in);

/// All arc sets with exactly one in-arc per non-root vertex and every
/// vertex reachable from `root`, as bit vectors over arc labels.
std::vector<SpanningTree> enumerate_arborescences(const Digraph& d, int root);

/// Arborescences adjacent when they differ in two arcs with the same head.
FlipGraph arborescence_flip_graph(const Digraph& d, int root);

// ---------------------------------------------------------------------------
// Small graphs and the experiment harness

enum class SmallGraphFilter { all, two_connected, outerplane };

/// Simple graphs on n labelled vertices (edge subsets of K_n in mask
/// order), filtered, optionally one per isomorphism class (the member with
/// the smallest mask). `outerplane` means connected and outerplanar.
/// Throws Error for n > 7.
void for_each_small_graph(int n, SmallGraphFilter filter, bool dedup,
                          const std::function<void(const MultiGraph&, std::uint32_t mask)>& visit);
std::vector<MultiGraph> enumerate_small_graphs(int n, SmallGraphFilter filter, bool dedup);

/// Outer orders with vertex 0 first, one per distinct set of faces.
std::vector<std::vector<VertexId>> outerplane_embeddings(const MultiGraph& g);

enum class ExperimentScope { pivot, paf, arborescence };
ExperimentScope parse_experiment_scope(std::string_view name);
const char* to_string(ExperimentScope s);

struct ExperimentOptions {
  ExperimentScope scope = ExperimentScope::pivot;
  int max_n = 5;
  std::uint64_t budget = 20'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct ExperimentRecord {
  std::string graph;
  std::string result;  // cyclic | path | none | unknown
  long long time_ms = 0;
  int nodes = 0;
  bool discrepancy = false;
  /// "graph=<id> result=<r> time=<ms> nodes=<k>[ discrepancy=yes]"
  std::string to_string() const;
};

struct ExperimentReport {
  std::vector<ExperimentRecord> records;
  int cyclic = 0, path = 0, none = 0, unknown = 0, discrepancies = 0;
};

/// pivot: pivot flip graphs of 2-connected simple graphs, need a cycle.
/// paf: paf flip graphs of every embedding of connected outerplane graphs,
/// need a cycle. arborescence: digraphs whose underlying simple graph is
/// 2-connected, every root admitting an arborescence, need a path.
/// Graphs are deduplicated up to isomorphism. A "none" inside the claimed
/// range is a discrepancy. Records are ordered by graph, independent of
/// scheduling.
ExperimentReport experiment_open_problems(const ExperimentOptions& options,
                                          const std::function<void(const ExperimentRecord&)>& on_record = {});

}  // namespace stgray
