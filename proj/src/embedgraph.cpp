#include "stgray/embedgraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

#include "stgray/error.hpp"

namespace stgray {

MultiGraph::MultiGraph(int num_vertices, std::vector<Edge> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw Error("negative vertex count");
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw Error("edge endpoint out of range");
    }
  }
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) {
    throw Error("edge endpoint out of range");
  }
  edges_.push_back({u, v});
  return num_edges() - 1;
}

VertexId MultiGraph::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edge(e);
  return ed.u == v ? ed.v : ed.u;
}

bool MultiGraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.is_loop(); });
}

int MultiGraph::num_loops() const {
  return static_cast<int>(std::count_if(
      edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

bool MultiGraph::has_parallel_edges() const {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges_) {
    if (!e.is_loop()) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end();
}

bool MultiGraph::is_connected() const {
  if (n_ <= 1) return true;
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n_;
  for (const auto& e : edges_) {
    int a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int to_int(std::string_view tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

GraphInput parse_graph_input(std::string_view text) {
  GraphInput result;
  bool have_header = false;
  int n = 0, m = 0, line_no = 0;
  std::vector<Edge> edges;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (toks.size() < 2 || toks.size() > 3) {
        throw ParseError(line_no, "header must be 'n m' or 'n m directed'");
      }
      n = to_int(toks[0], line_no);
      m = to_int(toks[1], line_no);
      if (n < 0 || m < 0) throw ParseError(line_no, "negative count in header");
      if (toks.size() == 3) {
        if (toks[2] != "directed") throw ParseError(line_no, "unknown header flag '" + std::string(toks[2]) + "'");
        result.directed = true;
      }
      have_header = true;
    } else if (toks[0] == "outer:" || toks[0].starts_with("outer:")) {
      if (result.outer) throw ParseError(line_no, "duplicate outer line");
      std::vector<VertexId> order;
      std::size_t first = 1;
      if (toks[0] != "outer:") {
        toks[0] = toks[0].substr(6);
        first = 0;
      }
      for (std::size_t i = first; i < toks.size(); ++i) {
        int v = to_int(toks[i], line_no);
        if (v < 0 || v >= n) throw ParseError(line_no, "outer vertex " + std::to_string(v) + " out of range");
        order.push_back(v);
      }
      std::vector<char> seen(n, 0);
      for (VertexId v : order) {
        if (seen[v]++) throw ParseError(line_no, "outer vertex " + std::to_string(v) + " listed twice");
      }
      if (static_cast<int>(order.size()) != n) {
        throw ParseError(line_no, "outer line lists " + std::to_string(order.size()) + " of " + std::to_string(n) +
                                      " vertices");
      }
      result.outer = std::move(order);
    } else {
      if (toks.size() != 2) throw ParseError(line_no, "edge line must be 'u v'");
      if (static_cast<int>(edges.size()) >= m) {
        throw ParseError(line_no, "more edge lines than the header's m=" + std::to_string(m));
      }
      int u = to_int(toks[0], line_no), v = to_int(toks[1], line_no);
      if (u < 0 || u >= n || v < 0 || v >= n) {
        throw ParseError(line_no, "vertex index out of range (n=" + std::to_string(n) + ")");
      }
      edges.push_back({u, v});
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "missing 'n m' header");
  if (static_cast<int>(edges.size()) != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                  std::to_string(edges.size()));
  }
  result.graph = MultiGraph(n, std::move(edges));
  return result;
}

MultiGraph parse_graph(std::string_view text) { return parse_graph_input(text).graph; }

GraphInput read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph_input(ss.str());
}

std::string format_graph(const MultiGraph& g, const std::optional<std::vector<VertexId>>& outer,
                         bool directed) {
  std::ostringstream os;
  os << g.num_vertices() << ' ' << g.num_edges();
  if (directed) os << " directed";
  os << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  if (outer) {
    os << "outer:";
    for (VertexId v : *outer) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Embedding

EmbeddedGraph::EmbeddedGraph(MultiGraph g, std::span<const VertexId> outer_order)
    : g_(std::move(g)), outer_order_(outer_order.begin(), outer_order.end()) {
  const int n = g_.num_vertices();
  if (n == 0) throw EmbeddingError("empty graph");
  if (static_cast<int>(outer_order_.size()) != n) {
    throw EmbeddingError("outer order must list all " + std::to_string(n) + " vertices exactly once");
  }
  pos_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    VertexId v = outer_order_[i];
    if (v < 0 || v >= n || pos_[v] != -1) {
      throw EmbeddingError("outer order must list all " + std::to_string(n) + " vertices exactly once");
    }
    pos_[v] = i;
  }
  if (!g_.is_connected()) throw EmbeddingError("graph is disconnected; embed each component separately");

  // Two chords cross iff their endpoint positions strictly interleave.
  const int m = g_.num_edges();
  for (EdgeId a = 0; a < m; ++a) {
    const Edge& ea = g_.edge(a);
    if (ea.is_loop()) continue;
    int a1 = std::min(pos_[ea.u], pos_[ea.v]), a2 = std::max(pos_[ea.u], pos_[ea.v]);
    for (EdgeId b = a + 1; b < m; ++b) {
      const Edge& eb = g_.edge(b);
      if (eb.is_loop()) continue;
      int b1 = std::min(pos_[eb.u], pos_[eb.v]), b2 = std::max(pos_[eb.u], pos_[eb.v]);
      if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) continue;
      bool in1 = a1 < b1 && b1 < a2;
      bool in2 = a1 < b2 && b2 < a2;
      if (in1 != in2) {
        throw EmbeddingError("chords " + std::to_string(a) + " (" + std::to_string(ea.u) + "," +
                             std::to_string(ea.v) + ") and " + std::to_string(b) + " (" +
                             std::to_string(eb.u) + "," + std::to_string(eb.v) +
                             ") cross for the given outer order");
      }
    }
  }

  compute_rotation();
  trace_faces();

  const int non_loop = m - g_.num_loops();
  if (n - non_loop + static_cast<int>(faces_.size()) != 2) {
    throw InvariantViolation("Euler formula fails for traced faces");
  }
}

VertexId EmbeddedGraph::tail(Dart d) const {
  const Edge& e = g_.edge(d.edge);
  return d.forward ? e.u : e.v;
}

VertexId EmbeddedGraph::head(Dart d) const {
  const Edge& e = g_.edge(d.edge);
  return d.forward ? e.v : e.u;
}

void EmbeddedGraph::compute_rotation() {
  const int n = g_.num_vertices();
  const int m = g_.num_edges();

  // Copy index of each edge among the parallels of its vertex pair.
  std::vector<int> copy(m, 0);
  std::map<std::pair<int, int>, int> seen;
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g_.edge(e);
    if (ed.is_loop()) continue;
    copy[e] = seen[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}]++;
  }

  struct Key {
    int dist;
    int tie;
    EdgeId e;
    bool operator<(const Key& o) const {
      return std::tie(dist, tie, e) < std::tie(o.dist, o.tie, o.e);
    }
  };
  std::vector<std::vector<Key>> keys(n);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g_.edge(e);
    if (ed.is_loop()) continue;
    VertexId early = pos_[ed.u] < pos_[ed.v] ? ed.u : ed.v;
    VertexId late = g_.other_end(e, early);
    int span = pos_[late] - pos_[early];
    keys[early].push_back({span, copy[e], e});
    keys[late].push_back({n - span, -copy[e], e});
  }

  rotation_.assign(n, {});
  rot_index_.assign(2 * m, -1);
  for (VertexId v = 0; v < n; ++v) {
    std::sort(keys[v].begin(), keys[v].end());
    for (std::size_t i = 0; i < keys[v].size(); ++i) {
      EdgeId e = keys[v][i].e;
      rotation_[v].push_back(e);
      Dart out{e, g_.edge(e).u == v};
      rot_index_[dart_index(out)] = static_cast<int>(i);
    }
  }
}

void EmbeddedGraph::trace_faces() {
  const int m = g_.num_edges();
  dart_face_.assign(2 * m, -1);
  faces_.clear();

  bool any_edge = false;
  for (int d = 0; d < 2 * m; ++d) {
    if (g_.edge(d / 2).is_loop() || dart_face_[d] != -1) continue;
    any_edge = true;
    Face face;
    face.id = static_cast<int>(faces_.size());
    Dart cur = dart_from_index(d);
    while (dart_face_[dart_index(cur)] == -1) {
      dart_face_[dart_index(cur)] = face.id;
      face.boundary.push_back(cur);
      VertexId h = head(cur);
      const auto& rot = rotation_[h];
      int deg = static_cast<int>(rot.size());
      int idx = rot_index_[dart_index(twin(cur))];
      EdgeId next = rot[(idx - 1 + deg) % deg];
      cur = Dart{next, g_.edge(next).u == h};
    }
    faces_.push_back(std::move(face));
  }

  if (!any_edge) {
    faces_.push_back(Face{0, {}, true});
    outer_face_ = 0;
    return;
  }
  VertexId v0 = outer_order_.front();
  EdgeId first = rotation_[v0].front();
  Dart out{first, g_.edge(first).u == v0};
  outer_face_ = face_of(twin(out));
  faces_[outer_face_].is_outer = true;
}

EmbeddedGraph build_embedding(MultiGraph g, std::span<const VertexId> outer_order) {
  return EmbeddedGraph(std::move(g), outer_order);
}

bool is_triangulation(const EmbeddedGraph& e, TriangulationMode mode) {
  for (const auto& f : e.faces()) {
    if (f.is_outer) continue;
    if (mode == TriangulationMode::simple ? f.length() != 3 : f.length() > 3) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Blocks

std::vector<Block> blocks(const MultiGraph& g) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(n);
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) continue;
    adj[ed.u].push_back({ed.v, e});
    adj[ed.v].push_back({ed.u, e});
  }

  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edge_stack;
  std::vector<std::vector<EdgeId>> groups;
  int timer = 0;

  struct Frame {
    VertexId v;
    EdgeId via;
    std::size_t next;
  };
  for (VertexId s = 0; s < n; ++s) {
    if (disc[s] != -1) continue;
    std::vector<Frame> stack{{s, -1, 0}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (fr.next < adj[fr.v].size()) {
        auto [w, e] = adj[fr.v][fr.next++];
        if (e == fr.via) continue;
        if (disc[w] == -1) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[fr.v]) {
          edge_stack.push_back(e);
          low[fr.v] = std::min(low[fr.v], disc[w]);
        }
      } else {
        Frame done = fr;
        stack.pop_back();
        if (stack.empty()) break;
        VertexId parent = stack.back().v;
        low[parent] = std::min(low[parent], low[done.v]);
        if (low[done.v] >= disc[parent]) {
          std::vector<EdgeId> group;
          while (true) {
            EdgeId e = edge_stack.back();
            edge_stack.pop_back();
            group.push_back(e);
            if (e == done.via) break;
          }
          groups.push_back(std::move(group));
        }
      }
    }
  }

  std::vector<Block> out;
  for (auto& group : groups) {
    std::sort(group.begin(), group.end());
    Block b;
    b.edge_ids = group;
    for (EdgeId e : group) {
      b.vertices.push_back(g.edge(e).u);
      b.vertices.push_back(g.edge(e).v);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
    std::vector<Edge> local;
    for (EdgeId e : group) {
      auto idx = [&](VertexId v) {
        return static_cast<int>(std::lower_bound(b.vertices.begin(), b.vertices.end(), v) -
                                b.vertices.begin());
      };
      local.push_back({idx(g.edge(e).u), idx(g.edge(e).v)});
    }
    b.graph = MultiGraph(static_cast<int>(b.vertices.size()), std::move(local));
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(),
            [](const Block& a, const Block& b) { return a.edge_ids.front() < b.edge_ids.front(); });
  return out;
}

bool is_two_connected(const MultiGraph& g) {
  if (!g.is_connected()) return false;
  if (g.num_vertices() <= 1) return true;
  return blocks(g).size() == 1;
}

EmbeddedGraph block_embedding(const EmbeddedGraph& e, const Block& b) {
  std::vector<VertexId> order;
  for (VertexId v : e.outer_order()) {
    auto it = std::lower_bound(b.vertices.begin(), b.vertices.end(), v);
    if (it != b.vertices.end() && *it == v) {
      order.push_back(static_cast<int>(it - b.vertices.begin()));
    }
  }
  return EmbeddedGraph(b.graph, order);
}

}  // namespace stgray
