#include "stgray/dualtree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "stgray/error.hpp"

namespace stgray {

namespace {

std::vector<int> inner_node_index(const EmbeddedGraph& e) {
  std::vector<int> node(e.faces().size(), -1);
  int next = 0;
  for (const auto& f : e.faces()) {
    if (!f.is_outer) node[f.id] = next++;
  }
  return node;
}

}  // namespace

MultiGraph weak_dual(const EmbeddedGraph& e) {
  auto node = inner_node_index(e);
  MultiGraph wd(e.num_inner_faces());
  for (EdgeId id = 0; id < e.graph().num_edges(); ++id) {
    if (e.graph().edge(id).is_loop()) continue;
    int a = e.face_of({id, true}), b = e.face_of({id, false});
    if (a == b || a == e.outer_face() || b == e.outer_face()) continue;
    wd.add_edge(node[a], node[b]);
  }
  return wd;
}

bool weak_dual_is_path(const EmbeddedGraph& e) {
  MultiGraph wd = weak_dual(e);
  const int k = wd.num_vertices();
  if (k <= 1) return wd.num_edges() == 0;
  if (wd.num_edges() != k - 1 || !wd.is_connected()) return false;
  std::vector<int> deg(k, 0);
  for (const auto& ed : wd.edges()) {
    ++deg[ed.u];
    ++deg[ed.v];
  }
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d <= 2; });
}

SplitDual split_dual(const EmbeddedGraph& e) {
  const MultiGraph& g = e.graph();
  if (g.num_vertices() < 2 || !is_two_connected(g)) {
    throw EmbeddingError("split dual needs a 2-connected outerplane graph with at least one edge; "
                         "label each block separately");
  }
  SplitDual s;
  auto node = inner_node_index(e);
  s.num_inner = e.num_inner_faces();
  s.node_face.assign(s.num_inner, -1);
  s.incident.assign(s.num_inner, {});
  for (const auto& f : e.faces()) {
    if (f.is_outer) continue;
    s.node_face[node[f.id]] = f.id;
    for (Dart d : f.boundary) s.incident[node[f.id]].push_back(d.edge);
  }

  // Outer face darts run clockwise; reverse them for counterclockwise order.
  std::vector<Dart> outer = e.faces()[e.outer_face()].boundary;
  std::reverse(outer.begin(), outer.end());
  VertexId v0 = e.outer_order().front();
  auto start = std::find_if(outer.begin(), outer.end(), [&](Dart d) { return e.head(d) == v0; });
  std::rotate(outer.begin(), start, outer.end());

  s.edge_nodes.assign(g.num_edges(), {-1, -1});
  for (Dart d : outer) {
    int leaf = s.num_nodes();
    s.node_face.push_back(-1);
    s.leaf_dart.push_back(d);
    s.incident.push_back({d.edge});
    s.edge_nodes[d.edge][d.forward ? 0 : 1] = leaf;
  }
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    for (bool fwd : {true, false}) {
      int f = e.face_of({id, fwd});
      if (f != e.outer_face()) s.edge_nodes[id][fwd ? 0 : 1] = node[f];
    }
  }
  return s;
}

OrientedSplitDual orient_split_dual(SplitDual s, int root_leaf) {
  if (root_leaf < s.num_inner || root_leaf >= s.num_nodes()) {
    throw Error("root " + std::to_string(root_leaf) + " is not a leaf of the split dual (leaves are " +
                std::to_string(s.num_inner) + ".." + std::to_string(s.num_nodes() - 1) + ")");
  }
  OrientedSplitDual o;
  o.root = root_leaf;
  const int m = static_cast<int>(s.edge_nodes.size());
  o.head.assign(m, -1);
  o.in_edge.assign(s.num_nodes(), -1);
  std::vector<char> seen(s.num_nodes(), 0);
  std::vector<int> queue{root_leaf};
  seen[root_leaf] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (EdgeId id : s.incident[x]) {
      if (id == o.in_edge[x]) continue;
      int y = s.other_node(id, x);
      if (seen[y]) throw InvariantViolation("split dual contains a cycle");
      seen[y] = 1;
      o.head[id] = y;
      o.in_edge[y] = id;
      queue.push_back(y);
    }
  }
  if (static_cast<int>(queue.size()) != s.num_nodes()) {
    throw InvariantViolation("split dual is disconnected");
  }
  o.split = std::move(s);
  return o;
}

int default_root(const EmbeddedGraph& e, const SplitDual& s) {
  int best = -1;
  std::pair<int, int> best_key;
  for (int k = 0; k < s.num_leaves(); ++k) {
    const Edge& ed = e.graph().edge(s.leaf_dart[k].edge);
    std::pair<int, int> key{std::min(ed.u, ed.v), std::max(ed.u, ed.v)};
    if (best == -1 || key < best_key) {
      best = k;
      best_key = key;
    }
  }
  return s.num_inner + best;
}

EdgeLabeling dual_tree_labeling(const OrientedSplitDual& o) {
  const auto& s = o.split;
  const int m = static_cast<int>(s.edge_nodes.size());
  std::vector<int> labels(m, 0);
  int next = 1;

  struct Frame {
    int node;
    int pos;   // index of the incoming edge in incident[node]
    int step;  // children visited so far
  };
  auto enter = [&](int node) {
    const auto& inc = s.incident[node];
    int pos = static_cast<int>(std::find(inc.begin(), inc.end(), o.in_edge[node]) - inc.begin());
    return Frame{node, pos, 0};
  };

  EdgeId root_edge = s.incident[o.root].front();
  labels[root_edge] = next++;
  std::vector<Frame> stack{enter(o.head[root_edge])};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    const auto& inc = s.incident[fr.node];
    int k = static_cast<int>(inc.size());
    if (fr.step + 1 >= k) {
      stack.pop_back();
      continue;
    }
    ++fr.step;
    EdgeId child = inc[(fr.pos + fr.step) % k];
    labels[child] = next++;
    stack.push_back(enter(o.head[child]));
  }
  return EdgeLabeling::from_labels(std::move(labels));
}

EdgeLabeling per_block_labeling(const EmbeddedGraph& e) {
  const MultiGraph& g = e.graph();
  std::vector<int> labels(g.num_edges(), 0);
  int offset = 0;
  for (const Block& b : blocks(g)) {
    EmbeddedGraph be = block_embedding(e, b);
    SplitDual s = split_dual(be);
    int root = default_root(be, s);
    EdgeLabeling local = dual_tree_labeling(orient_split_dual(std::move(s), root));
    for (int i = 0; i < b.graph.num_edges(); ++i) labels[b.edge_ids[i]] = offset + local.label(i);
    offset += b.graph.num_edges();
  }
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    if (g.edge(id).is_loop()) labels[id] = ++offset;
  }
  return EdgeLabeling::from_labels(std::move(labels));
}

OrientedFace oriented_face(const EmbeddedGraph& e, const OrientedSplitDual& o, int node) {
  const auto& s = o.split;
  if (node < 0 || node >= s.num_inner) throw Error("node " + std::to_string(node) + " is not an inner face");
  OrientedFace f;
  f.node = node;
  f.face = s.node_face[node];
  const auto& boundary = e.faces()[f.face].boundary;
  const int t = static_cast<int>(boundary.size());
  int start = 0;
  while (start < t && boundary[start].edge != o.in_edge[node]) ++start;
  for (int k = 0; k < t; ++k) {
    Dart d = boundary[(start + k) % t];
    f.darts.push_back(d);
    f.edges.push_back(d.edge);
  }
  return f;
}

std::vector<OrientedFace> oriented_faces(const EmbeddedGraph& e, const OrientedSplitDual& o) {
  std::vector<OrientedFace> out;
  for (int node = 0; node < o.split.num_inner; ++node) out.push_back(oriented_face(e, o, node));
  return out;
}

std::vector<EdgeId> lobe(const OrientedSplitDual& o, const OrientedFace& f, int i) {
  if (i < 0 || i >= f.length()) throw Error("lobe index out of range");
  const auto& s = o.split;
  EdgeId first = f.edges[i];
  std::vector<EdgeId> out{first};
  std::vector<std::pair<int, EdgeId>> stack{{s.other_node(first, f.node), first}};
  while (!stack.empty()) {
    auto [x, via] = stack.back();
    stack.pop_back();
    for (EdgeId id : s.incident[x]) {
      if (id == via) continue;
      out.push_back(id);
      stack.push_back({s.other_node(id, x), id});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int IncidenceList::split_index() const {
  int i = 0;
  while (i < static_cast<int>(turn.size()) && turn[i] == Turn::ccw) ++i;
  return i;
}

IncidenceList incidence_list(const EmbeddedGraph& e, const OrientedSplitDual& o, VertexId v) {
  const MultiGraph& g = e.graph();
  auto rot = e.rotation(v);
  std::vector<EdgeId> cw(rot.rbegin(), rot.rend());
  auto leaving = [&](EdgeId id) { return Dart{id, g.edge(id).u == v}; };
  const int t = static_cast<int>(cw.size());
  int start = 0;
  while (start < t && e.face_of(leaving(cw[start])) != e.outer_face()) ++start;
  if (start == t) throw InvariantViolation("vertex not on the outer face");

  IncidenceList list;
  list.v = v;
  for (int k = 0; k < t; ++k) {
    EdgeId id = cw[(start + k) % t];
    list.edges.push_back(id);
    // The dual edge points either to the face clockwise-before the edge
    // (left of the dart leaving v) or to the one after it.
    bool toward_before = o.head[id] == o.split.node_of(leaving(id));
    list.turn.push_back(toward_before ? Turn::ccw : Turn::cw);
  }
  return list;
}

LemmaReport check_lemma_labels(const EmbeddedGraph& e, const OrientedSplitDual& o,
                               const EdgeLabeling& labeling) {
  LemmaReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  };
  for (const auto& f : oriented_faces(e, o)) {
    const int t = f.length();
    for (int i = 0; i + 1 < t; ++i) {
      if (labeling.label(f.edges[i]) >= labeling.label(f.edges[i + 1])) {
        std::ostringstream os;
        os << "face " << f.face << ": labels not increasing at position " << i + 1 << " ("
           << labeling.label(f.edges[i]) << " >= " << labeling.label(f.edges[i + 1]) << ")";
        fail(os.str());
      }
    }
    for (int i = 1; i < t; ++i) {
      int li = labeling.label(f.edges[i]);
      for (EdgeId x : lobe(o, f, i)) {
        if (x == f.edges[i]) continue;
        int lx = labeling.label(x);
        bool above = li < lx;
        bool below = i + 1 >= t || lx < labeling.label(f.edges[i + 1]);
        if (!above || !below) {
          std::ostringstream os;
          os << "face " << f.face << ": lobe edge with label " << lx << " outside the range after e_"
             << i + 1 << " (label " << li << ")";
          fail(os.str());
        }
      }
    }
  }
  return report;
}

LemmaReport check_lemma_neighbors(const EmbeddedGraph& e, const OrientedSplitDual& o,
                                  const EdgeLabeling& labeling) {
  LemmaReport report;
  for (VertexId v = 0; v < e.graph().num_vertices(); ++v) {
    IncidenceList list = incidence_list(e, o, v);
    const int t = static_cast<int>(list.edges.size());
    const int i = list.split_index();
    bool ok = std::all_of(list.turn.begin() + i, list.turn.end(), [](Turn x) { return x == Turn::cw; });
    std::vector<int> chain;
    for (int k = i - 1; k >= 0; --k) chain.push_back(labeling.label(list.edges[k]));
    for (int k = i; k < t; ++k) chain.push_back(labeling.label(list.edges[k]));
    ok = ok && std::is_sorted(chain.begin(), chain.end(), std::less_equal<>());
    if (!ok) {
      std::ostringstream os;
      os << "vertex " << v << ": incidence list";
      for (int k = 0; k < t; ++k) {
        os << ' ' << labeling.label(list.edges[k]) << (list.turn[k] == Turn::ccw ? "(ccw)" : "(cw)");
      }
      os << " violates the ccw^i cw^(t-i) label chain";
      report.ok = false;
      report.violations.push_back(os.str());
    }
  }
  return report;
}

namespace {

// Edges of the path in tree `t` between a and b.
std::vector<EdgeId> tree_path(const MultiGraph& g, const std::vector<EdgeId>& tree_edges, VertexId a,
                              VertexId b) {
  const int n = g.num_vertices();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  for (EdgeId id : tree_edges) {
    adj[g.edge(id).u].push_back({g.edge(id).v, id});
    adj[g.edge(id).v].push_back({g.edge(id).u, id});
  }
  std::vector<EdgeId> via(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<VertexId> queue{a};
  seen[a] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (auto [w, id] : adj[queue[i]]) {
      if (seen[w]) continue;
      seen[w] = 1;
      via[w] = id;
      queue.push_back(w);
    }
  }
  std::vector<EdgeId> path;
  for (VertexId x = b; x != a;) {
    EdgeId id = via[x];
    if (id < 0) throw InvariantViolation("tree path endpoints are disconnected");
    path.push_back(id);
    x = g.other_end(id, x);
  }
  return path;
}

}  // namespace

Exchange alternative_pof_exchange(const EmbeddedGraph& e, const OrientedSplitDual& o,
                                  const EdgeLabeling& labeling, const SpanningTree& t,
                                  const Exchange& ex) {
  const MultiGraph& g = e.graph();
  LabeledGraph lg(e, labeling);
  if (!is_spanning_tree(lg, t)) throw Error("alternative_pof_exchange: not a spanning tree");
  if (ex.removed == ex.added || !t.contains(ex.removed) || t.contains(ex.added) ||
      !is_spanning_tree(lg, apply(t, ex))) {
    throw Error("alternative_pof_exchange: {" + std::to_string(ex.removed) + "," +
                std::to_string(ex.added) + "} is not a valid exchange for the tree");
  }

  const EdgeId small = labeling.edge(ex.smaller());
  const EdgeId large = labeling.edge(ex.larger());
  const int alpha = o.tail(large);
  if (o.split.is_leaf(alpha)) throw InvariantViolation("larger edge hangs off the root leaf");
  const OrientedFace face = oriented_face(e, o, alpha);
  const int i = static_cast<int>(std::find(face.edges.begin(), face.edges.end(), large) - face.edges.begin());
  if (i == 0 || i == face.length()) throw InvariantViolation("larger edge is not an outgoing face edge");

  std::vector<EdgeId> tree_edges;
  for (int l : t.labels()) tree_edges.push_back(labeling.edge(l));
  const bool large_in_tree = t.contains(ex.larger());
  const EdgeId closing = large_in_tree ? small : large;
  std::vector<EdgeId> cycle = tree_path(g, tree_edges, g.edge(closing).u, g.edge(closing).v);
  cycle.push_back(closing);

  auto in_lobe = [&](int j, EdgeId x) {
    auto l = lobe(o, face, j);
    return std::binary_search(l.begin(), l.end(), x);
  };

  Exchange result;
  if (large_in_tree) {
    // The cycle leaves the lobe holding `small` only through the face edge
    // bounding that lobe, which is therefore a non-tree edge.
    int j = 0;
    while (j < face.length() && !in_lobe(j, small)) ++j;
    if (j >= i) throw InvariantViolation("smaller edge is not in a lobe before the larger one");
    result = {ex.larger(), labeling.label(face.edges[j])};
  } else {
    const VertexId w = e.head(face.darts[i - 1]);
    EdgeId d = -1;
    for (EdgeId x : cycle) {
      if (x == large) continue;
      if (g.edge(x).u == w || g.edge(x).v == w) {
        if (d != -1) throw InvariantViolation("fundamental cycle visits a vertex twice");
        d = x;
      }
    }
    if (d == -1 || !in_lobe(i - 1, d)) throw InvariantViolation("cycle edge at the pivot vertex is not in the preceding lobe");
    result = {labeling.label(d), ex.larger()};
  }

  if (result.smaller() == result.larger() || result.larger() != ex.larger() ||
      !is_spanning_tree(lg, apply(t, result))) {
    throw InvariantViolation("constructed alternative exchange is invalid");
  }
  ExchangeClass c = lg.classify(result);
  if (!c.pivot && !c.face_inner) throw InvariantViolation("constructed alternative exchange is not pof");
  return result;
}

}  // namespace stgray
