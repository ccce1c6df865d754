#include "stgray/spanning_tree.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "stgray/error.hpp"

namespace stgray {

EdgeLabeling EdgeLabeling::from_labels(std::vector<int> labels) {
  const int m = static_cast<int>(labels.size());
  EdgeLabeling l;
  l.edge_.assign(m, -1);
  for (EdgeId e = 0; e < m; ++e) {
    int lab = labels[e];
    if (lab < 1 || lab > m || l.edge_[lab - 1] != -1) {
      throw Error("edge labeling is not a bijection onto 1.." + std::to_string(m));
    }
    l.edge_[lab - 1] = e;
  }
  l.label_ = std::move(labels);
  return l;
}

EdgeLabeling EdgeLabeling::from_order(std::vector<EdgeId> edges) {
  const int m = static_cast<int>(edges.size());
  std::vector<int> labels(m, 0);
  for (int i = 0; i < m; ++i) {
    if (edges[i] < 0 || edges[i] >= m || labels[edges[i]] != 0) {
      throw Error("edge order is not a permutation of 0.." + std::to_string(m - 1));
    }
    labels[edges[i]] = i + 1;
  }
  return from_labels(std::move(labels));
}

EdgeLabeling EdgeLabeling::identity(int m) {
  std::vector<int> labels(m);
  std::iota(labels.begin(), labels.end(), 1);
  return from_labels(std::move(labels));
}

// ---------------------------------------------------------------------------

SpanningTree SpanningTree::from_labels(int m, std::span<const int> labels) {
  SpanningTree t(m);
  for (int l : labels) {
    if (l < 1 || l > m) throw Error("label " + std::to_string(l) + " out of range 1.." + std::to_string(m));
    t.set(l);
  }
  return t;
}

SpanningTree SpanningTree::from_string(std::string_view bits) {
  SpanningTree t(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      t.set(static_cast<int>(i) + 1);
    } else if (bits[i] != '0') {
      throw Error("characteristic vector must consist of 0 and 1");
    }
  }
  return t;
}

int SpanningTree::count() const {
  int c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

std::vector<int> SpanningTree::labels() const {
  std::vector<int> out;
  for (int l = 1; l <= m_; ++l) {
    if (contains(l)) out.push_back(l);
  }
  return out;
}

std::string SpanningTree::to_string() const {
  std::string s(m_, '0');
  for (int l = 1; l <= m_; ++l) {
    if (contains(l)) s[l - 1] = '1';
  }
  return s;
}

int SpanningTree::distance(const SpanningTree& other) const {
  if (other.m_ != m_) throw Error("characteristic vectors of different length");
  int d = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) d += std::popcount(words_[i] ^ other.words_[i]);
  return d;
}

std::size_t SpanningTreeHash::operator()(const SpanningTree& t) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(t.size());
  for (auto w : t.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

bool satisfies(const ExchangeClass& c, ExchangeKind kind) {
  switch (kind) {
    case ExchangeKind::any: return true;
    case ExchangeKind::pivot: return c.pivot;
    case ExchangeKind::face: return c.face;
    case ExchangeKind::face_inner: return c.face_inner;
    case ExchangeKind::paf: return c.paf();
    case ExchangeKind::pof: return c.pof();
    case ExchangeKind::pof_inner: return c.pivot || c.face_inner;
  }
  return false;
}

std::string_view to_string(ExchangeKind kind) {
  switch (kind) {
    case ExchangeKind::any: return "any";
    case ExchangeKind::pivot: return "pivot";
    case ExchangeKind::face: return "face";
    case ExchangeKind::face_inner: return "face-inner";
    case ExchangeKind::paf: return "paf";
    case ExchangeKind::pof: return "pof";
    case ExchangeKind::pof_inner: return "pof-inner";
  }
  return "?";
}

ExchangeKind parse_exchange_kind(std::string_view name) {
  for (auto k : {ExchangeKind::any, ExchangeKind::pivot, ExchangeKind::face,
                 ExchangeKind::face_inner, ExchangeKind::paf, ExchangeKind::pof,
                 ExchangeKind::pof_inner}) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown exchange class '" + std::string(name) + "'");
}

std::string class_tags(const ExchangeClass& c) {
  std::string out;
  auto add = [&](const char* s) {
    if (!out.empty()) out += ',';
    out += s;
  };
  if (c.pivot) add("pivot");
  if (c.face) add("face");
  if (c.face_inner) add("face-inner");
  if (c.paf()) add("paf");
  if (c.pof()) add("pof");
  return out;
}

// ---------------------------------------------------------------------------

LabeledGraph::LabeledGraph(const MultiGraph& g, EdgeLabeling labeling)
    : n_(g.num_vertices()), labeling_(std::move(labeling)) {
  if (labeling_.size() != g.num_edges()) throw Error("labeling size does not match edge count");
  ends_.resize(g.num_edges());
  for (int l = 1; l <= g.num_edges(); ++l) ends_[l - 1] = g.edge(labeling_.edge(l));
}

LabeledGraph::LabeledGraph(const EmbeddedGraph& e, EdgeLabeling labeling)
    : LabeledGraph(e.graph(), std::move(labeling)) {
  has_faces_ = true;
  outer_face_ = e.outer_face();
  faces_.resize(ends_.size());
  for (int l = 1; l <= num_edges(); ++l) {
    EdgeId id = labeling_.edge(l);
    faces_[l - 1] = {e.face_of({id, true}), e.face_of({id, false})};
  }
}

ExchangeClass LabeledGraph::classify(const Exchange& ex) const {
  ExchangeClass c;
  const Edge& a = ends(ex.removed);
  const Edge& b = ends(ex.added);
  c.pivot = a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
  if (has_faces_) {
    const auto& fa = faces_[ex.removed - 1];
    const auto& fb = faces_[ex.added - 1];
    for (int x : fa) {
      if (x < 0) continue;
      for (int y : fb) {
        if (x != y) continue;
        c.face = true;
        if (x != outer_face_) c.face_inner = true;
      }
    }
  }
  return c;
}

namespace {

struct RootedTree {
  std::vector<int> parent;        // vertex
  std::vector<int> parent_label;  // label of edge to parent, 0 at root
  std::vector<int> depth;
  bool spanning = false;
};

RootedTree root_tree(const LabeledGraph& g, const SpanningTree& t) {
  const int n = g.num_vertices();
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int l = 1; l <= g.num_edges(); ++l) {
    if (!t.contains(l)) continue;
    const Edge& e = g.ends(l);
    adj[e.u].push_back({e.v, l});
    adj[e.v].push_back({e.u, l});
  }
  RootedTree r;
  r.parent.assign(n, -1);
  r.parent_label.assign(n, 0);
  r.depth.assign(n, -1);
  if (n == 0) return r;
  std::vector<int> queue{0};
  r.depth[0] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (auto [w, l] : adj[v]) {
      if (r.depth[w] != -1) continue;
      r.depth[w] = r.depth[v] + 1;
      r.parent[w] = v;
      r.parent_label[w] = l;
      queue.push_back(w);
    }
  }
  r.spanning = static_cast<int>(queue.size()) == n;
  return r;
}

}  // namespace

bool is_spanning_tree(const LabeledGraph& g, const SpanningTree& t) {
  const int n = g.num_vertices();
  if (t.size() != g.num_edges()) return false;
  if (t.count() != n - 1) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int l = 1; l <= g.num_edges(); ++l) {
    if (!t.contains(l)) continue;
    const Edge& e = g.ends(l);
    int a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;  // n-1 edges without a cycle
}

SpanningTree first_spanning_tree(const LabeledGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  SpanningTree t(g.num_edges());
  int added = 0;
  for (int l = 1; l <= g.num_edges(); ++l) {
    const Edge& e = g.ends(l);
    int a = find(e.u), b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    t.set(l);
    ++added;
  }
  if (added != n - 1) throw Error("graph is disconnected; it has no spanning tree");
  return t;
}

std::vector<Exchange> valid_exchanges(const LabeledGraph& g, const SpanningTree& t) {
  if (!is_spanning_tree(g, t)) throw Error("valid_exchanges: not a spanning tree");
  RootedTree r = root_tree(g, t);
  std::vector<Exchange> out;
  for (int f = 1; f <= g.num_edges(); ++f) {
    if (t.contains(f)) continue;
    const Edge& e = g.ends(f);
    if (e.is_loop()) continue;
    int a = e.u, b = e.v;
    while (a != b) {
      if (r.depth[a] < r.depth[b]) std::swap(a, b);
      out.push_back({r.parent_label[a], f});
      a = r.parent[a];
    }
  }
  std::sort(out.begin(), out.end(), [](const Exchange& x, const Exchange& y) {
    return std::pair(x.larger(), x.smaller()) < std::pair(y.larger(), y.smaller());
  });
  return out;
}

SpanningTree apply(const SpanningTree& t, const Exchange& ex) {
  SpanningTree out = t;
  out.flip(ex.removed);
  out.flip(ex.added);
  return out;
}

}  // namespace stgray
