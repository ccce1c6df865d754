#pragma once

// Multigraphs with an explicit outerplane embedding.
//
// Vertices are placed on a circle in the given counterclockwise outer order
// and every edge is drawn as a chord. The rotation system and faces follow
// from that drawing. Parallel copies of the same vertex pair are stacked in
// edge-id order, copy 0 nearest the counterclockwise arc that runs from the
// endpoint earlier in the outer order to the later one. Loops are accepted
// but are excluded from rotations, faces and everything downstream.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stgray {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  bool is_loop() const { return u == v; }
  bool operator==(const Edge&) const = default;
};

/// Undirected multigraph. Edge identity is positional and stable.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int num_vertices, std::vector<Edge> edges = {});

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }

  EdgeId add_edge(VertexId u, VertexId v);
  VertexId other_end(EdgeId e, VertexId v) const;

  bool has_loops() const;
  bool has_parallel_edges() const;
  int num_loops() const;
  /// Connectivity ignoring loops. The empty graph and K_1 are connected.
  bool is_connected() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Contents of an edge-list file.
struct GraphInput {
  MultiGraph graph;
  std::optional<std::vector<VertexId>> outer;
  bool directed = false;
};

/// Parses the edge-list format:
///   n m [directed]
///   u v            (m lines, 0-based, edge id = line order)
///   outer: v0 ... v_{n-1}   (optional)
/// '#' starts a comment. Throws ParseError with the offending line number.
GraphInput parse_graph_input(std::string_view text);
MultiGraph parse_graph(std::string_view text);
GraphInput read_graph_file(const std::filesystem::path& path);
std::string format_graph(const MultiGraph& g,
                         const std::optional<std::vector<VertexId>>& outer = {},
                         bool directed = false);

/// An edge traversed in one direction. `forward` means u -> v.
struct Dart {
  EdgeId edge = 0;
  bool forward = true;
  bool operator==(const Dart&) const = default;
};

inline int dart_index(Dart d) { return 2 * d.edge + (d.forward ? 0 : 1); }
inline Dart dart_from_index(int i) { return {i / 2, i % 2 == 0}; }
inline Dart twin(Dart d) { return {d.edge, !d.forward}; }

struct Face {
  int id = 0;
  /// Darts with the face on their left. Inner faces run counterclockwise.
  std::vector<Dart> boundary;
  bool is_outer = false;
  int length() const { return static_cast<int>(boundary.size()); }
};

class EmbeddedGraph {
 public:
  /// Throws EmbeddingError for crossing chords, a disconnected graph, or an
  /// outer order that is not a permutation of the vertices.
  EmbeddedGraph(MultiGraph g, std::span<const VertexId> outer_order);

  const MultiGraph& graph() const { return g_; }
  const std::vector<VertexId>& outer_order() const { return outer_order_; }
  int position(VertexId v) const { return pos_[v]; }

  /// Counterclockwise order of the non-loop edges at v.
  std::span<const EdgeId> rotation(VertexId v) const { return rotation_[v]; }

  const std::vector<Face>& faces() const { return faces_; }
  int outer_face() const { return outer_face_; }
  int num_inner_faces() const { return static_cast<int>(faces_.size()) - 1; }
  /// Face to the left of the dart; -1 for loops.
  int face_of(Dart d) const { return dart_face_[dart_index(d)]; }
  VertexId tail(Dart d) const;
  VertexId head(Dart d) const;

 private:
  void compute_rotation();
  void trace_faces();

  MultiGraph g_;
  std::vector<VertexId> outer_order_;
  std::vector<int> pos_;
  std::vector<std::vector<EdgeId>> rotation_;
  std::vector<int> rot_index_;  // per dart: index in rotation of its tail
  std::vector<Face> faces_;
  std::vector<int> dart_face_;
  int outer_face_ = 0;
};

EmbeddedGraph build_embedding(MultiGraph g, std::span<const VertexId> outer_order);

enum class TriangulationMode { simple, multigraph };

/// Every inner face has length 3 (simple) or at most 3 (multigraph).
bool is_triangulation(const EmbeddedGraph& e, TriangulationMode mode);

/// A 2-connected component, or a bridge as a two-vertex block. Vertices are
/// renumbered 0..k-1 in increasing original id.
struct Block {
  MultiGraph graph;
  std::vector<VertexId> vertices;  // local -> original
  std::vector<EdgeId> edge_ids;    // local -> original
};

/// Blocks of a connected graph; loops are dropped. Blocks are ordered by
/// their smallest original edge id.
std::vector<Block> blocks(const MultiGraph& g);

/// Connected and without a cut vertex, ignoring loops. K_1 and K_2 count.
bool is_two_connected(const MultiGraph& g);

/// The sub-embedding induced by a block, outer order inherited.
EmbeddedGraph block_embedding(const EmbeddedGraph& e, const Block& b);

}  // namespace stgray
