#pragma once

// Duals of 2-connected outerplane graphs and the dual-tree edge labeling.
//
// The split dual has one node per inner face and one leaf per incidence of
// an edge with the outer face; it is a tree with one edge per primal edge.
// Rooting it at a leaf and numbering edges in depth-first preorder, with
// the children of every face node taken counterclockwise after the edge
// through which the face was entered, yields the dual-tree labeling.

#include <string>
#include <vector>

#include "stgray/embedgraph.hpp"
#include "stgray/spanning_tree.hpp"

namespace stgray {

/// One node per inner face, edges between faces sharing a primal edge.
/// Node i is the i-th inner face in face-id order.
MultiGraph weak_dual(const EmbeddedGraph& e);

/// True iff the weak dual is a path (the empty graph and K_1 included).
bool weak_dual_is_path(const EmbeddedGraph& e);

struct SplitDual {
  int num_inner = 0;                        // nodes [0, num_inner) are inner faces
  std::vector<int> node_face;               // face id of inner nodes, -1 for leaves
  std::vector<Dart> leaf_dart;              // outer dart of each leaf (index node - num_inner)
  std::vector<std::vector<EdgeId>> incident;  // counterclockwise around each node
  std::vector<std::array<int, 2>> edge_nodes;  // per primal edge: node left of forward / backward dart

  int num_nodes() const { return static_cast<int>(incident.size()); }
  int num_leaves() const { return num_nodes() - num_inner; }
  bool is_leaf(int node) const { return node >= num_inner; }
  int node_of(Dart d) const { return edge_nodes[d.edge][d.forward ? 0 : 1]; }
  int other_node(EdgeId e, int node) const {
    return edge_nodes[e][0] == node ? edge_nodes[e][1] : edge_nodes[e][0];
  }
};

/// Leaves are numbered in counterclockwise order along the outer boundary,
/// starting with the boundary edge that leaves outer_order()[0].
/// Throws EmbeddingError if e is not 2-connected (use blocks()).
SplitDual split_dual(const EmbeddedGraph& e);

struct OrientedSplitDual {
  SplitDual split;
  int root = 0;              // a leaf node
  std::vector<int> head;     // per primal edge: node its dual edge points to
  std::vector<EdgeId> in_edge;  // per node: incoming dual edge, -1 at the root

  int tail(EdgeId e) const { return split.other_node(e, head[e]); }
};

/// Orients every dual edge away from `root_leaf`; throws if not a leaf.
OrientedSplitDual orient_split_dual(SplitDual s, int root_leaf);

/// The leaf on the outer-boundary edge with the lexicographically smallest
/// (min endpoint, max endpoint) pair; ties go to the lower leaf id.
int default_root(const EmbeddedGraph& e, const SplitDual& s);

EdgeLabeling dual_tree_labeling(const OrientedSplitDual& o);

/// Labels each block with its own dual-tree labeling (default root) and
/// concatenates them in block order. Works on any connected outerplane graph.
EdgeLabeling per_block_labeling(const EmbeddedGraph& e);

/// Inner face as (e_1, ..., e_t) counterclockwise, e_1 being the edge whose
/// dual points into the face.
struct OrientedFace {
  int face = 0;
  int node = 0;
  std::vector<EdgeId> edges;
  std::vector<Dart> darts;  // boundary darts matching `edges`
  int length() const { return static_cast<int>(edges.size()); }
};

std::vector<OrientedFace> oriented_faces(const EmbeddedGraph& e, const OrientedSplitDual& o);
OrientedFace oriented_face(const EmbeddedGraph& e, const OrientedSplitDual& o, int node);

/// Primal edges dual to the maximal subtree containing the dual of
/// f.edges[i] and no other boundary edge of f. `i` is 0-based.
std::vector<EdgeId> lobe(const OrientedSplitDual& o, const OrientedFace& f, int i);

enum class Turn { ccw, cw };

/// Edges at v in clockwise order, first and last bounding the outer face,
/// with the turning direction of each dual edge around v.
struct IncidenceList {
  VertexId v = 0;
  std::vector<EdgeId> edges;
  std::vector<Turn> turn;
  /// Number of leading ccw-edges.
  int split_index() const;
};

IncidenceList incidence_list(const EmbeddedGraph& e, const OrientedSplitDual& o, VertexId v);

struct LemmaReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Per inner face: labels increase along (e_1..e_t); every edge of the lobe
/// at e_i (i >= 2) other than e_i lies strictly between l(e_i) and l(e_{i+1}).
LemmaReport check_lemma_labels(const EmbeddedGraph& e, const OrientedSplitDual& o,
                               const EdgeLabeling& labeling);

/// Per vertex: the incidence list is ccw^i cw^(t-i) and the labels satisfy
/// l(e_i) < ... < l(e_1) < l(e_{i+1}) < ... < l(e_t).
LemmaReport check_lemma_neighbors(const EmbeddedGraph& e, const OrientedSplitDual& o,
                                  const EdgeLabeling& labeling);

/// Given an exchange for `t` with smaller label e and larger label f, builds
/// an exchange {d, f} with l(d) < l(f) that is a pivot-exchange or shares an
/// inner face with f (a pivot-exchange when every inner face has length <= 3).
/// Throws Error if `ex` is not a valid exchange for `t`.
Exchange alternative_pof_exchange(const EmbeddedGraph& e, const OrientedSplitDual& o,
                                  const EdgeLabeling& labeling, const SpanningTree& t,
                                  const Exchange& ex);

}  // namespace stgray
