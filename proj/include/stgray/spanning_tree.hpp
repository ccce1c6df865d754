#pragma once

// Value types shared by the generator, the dual-tree machinery and the
// flip-graph tools: edge labelings, characteristic vectors, exchanges and
// their pivot/face classification.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgray/embedgraph.hpp"

namespace stgray {

/// Bijection from edge ids 0..m-1 to labels 1..m.
class EdgeLabeling {
 public:
  EdgeLabeling() = default;
  /// `labels[e]` is the label of edge e. Throws if not a bijection onto 1..m.
  static EdgeLabeling from_labels(std::vector<int> labels);
  /// `edges[l-1]` is the edge carrying label l.
  static EdgeLabeling from_order(std::vector<EdgeId> edges);
  /// Edge e gets label e+1.
  static EdgeLabeling identity(int m);

  int size() const { return static_cast<int>(label_.size()); }
  int label(EdgeId e) const { return label_.at(e); }
  EdgeId edge(int label) const { return edge_.at(label - 1); }
  const std::vector<int>& labels() const { return label_; }
  const std::vector<EdgeId>& order() const { return edge_; }

  bool operator==(const EdgeLabeling&) const = default;

 private:
  std::vector<int> label_;
  std::vector<EdgeId> edge_;
};

/// Characteristic vector of an edge subset, indexed by label (1-based).
class SpanningTree {
 public:
  SpanningTree() = default;
  explicit SpanningTree(int m) : m_(m), words_((m + 63) / 64, 0) {}
  static SpanningTree from_labels(int m, std::span<const int> labels);
  /// Parses a 0/1 string, label 1 leftmost.
  static SpanningTree from_string(std::string_view bits);

  int size() const { return m_; }
  bool contains(int label) const {
    int i = label - 1;
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int label, bool value = true) {
    int i = label - 1;
    if (value) {
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else {
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
  void flip(int label) {
    int i = label - 1;
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }
  int count() const;
  std::vector<int> labels() const;
  std::string to_string() const;
  std::span<const std::uint64_t> words() const { return words_; }

  /// Number of positions where the two vectors differ.
  int distance(const SpanningTree& other) const;

  bool operator==(const SpanningTree&) const = default;

 private:
  int m_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SpanningTreeHash {
  std::size_t operator()(const SpanningTree& t) const;
};

/// Replace `removed` (in the tree) by `added` (not in the tree). Labels.
struct Exchange {
  int removed = 0;
  int added = 0;
  int larger() const { return removed > added ? removed : added; }
  int smaller() const { return removed < added ? removed : added; }
  bool operator==(const Exchange&) const = default;
};

struct ExchangeClass {
  bool pivot = false;       // common end vertex
  bool face = false;        // common face, outer face included
  bool face_inner = false;  // common inner face
  bool paf() const { return pivot && face; }
  bool pof() const { return pivot || face; }
  bool operator==(const ExchangeClass&) const = default;
};

enum class ExchangeKind { any, pivot, face, face_inner, paf, pof, pof_inner };

bool satisfies(const ExchangeClass& c, ExchangeKind kind);
std::string_view to_string(ExchangeKind kind);
/// Accepts any|pivot|face|face-inner|paf|pof|pof-inner. Throws Error otherwise.
ExchangeKind parse_exchange_kind(std::string_view name);
/// "pivot,face,paf,pof" style list of the classes c belongs to; "" if none.
std::string class_tags(const ExchangeClass& c);

/// A multigraph together with an edge labeling, viewed in label space.
/// Built from an embedding, it can also decide face membership.
class LabeledGraph {
 public:
  LabeledGraph(const MultiGraph& g, EdgeLabeling labeling);
  LabeledGraph(const EmbeddedGraph& e, EdgeLabeling labeling);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  const Edge& ends(int label) const { return ends_[label - 1]; }
  const EdgeLabeling& labeling() const { return labeling_; }
  bool has_faces() const { return has_faces_; }

  ExchangeClass classify(const Exchange& ex) const;

 private:
  int n_ = 0;
  EdgeLabeling labeling_;
  std::vector<Edge> ends_;
  bool has_faces_ = false;
  std::vector<std::array<int, 2>> faces_;  // per label
  int outer_face_ = -1;
};

/// n-1 edges, connected, acyclic; loops never qualify.
bool is_spanning_tree(const LabeledGraph& g, const SpanningTree& t);

/// Kruskal over labels in increasing order. Throws if g is disconnected.
SpanningTree first_spanning_tree(const LabeledGraph& g);

/// All exchanges {e,f} with T - e + f a spanning tree, sorted by
/// (larger label, smaller label).
std::vector<Exchange> valid_exchanges(const LabeledGraph& g, const SpanningTree& t);

/// T with both labels of the exchange toggled.
SpanningTree apply(const SpanningTree& t, const Exchange& ex);

}  // namespace stgray
