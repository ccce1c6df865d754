#include "stgray/counting.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "stgray/dualtree.hpp"
#include "stgray/error.hpp"

namespace stgray {

const BigCount& FibTable::operator()(int k) {
  if (k < 0) throw Error("negative Fibonacci index");
  while (static_cast<int>(values_.size()) <= k) {
    values_.push_back(values_[values_.size() - 1] + values_[values_.size() - 2]);
  }
  return values_[k];
}

BigCount fib(int k) {
  static thread_local FibTable table;
  return table(k);
}

BigCount count_matrix_tree(const MultiGraph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return 1;
  const int k = n - 1;  // drop row/column of vertex n-1
  std::vector<std::vector<BigCount>> a(k, std::vector<BigCount>(k, 0));
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    if (e.u < k) a[e.u][e.u] += 1;
    if (e.v < k) a[e.v][e.v] += 1;
    if (e.u < k && e.v < k) {
      a[e.u][e.v] -= 1;
      a[e.v][e.u] -= 1;
    }
  }
  // Bareiss: after step p every entry is a minor of the original matrix, so
  // the divisions are exact.
  BigCount prev = 1;
  int sign = 1;
  for (int p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      int r = p + 1;
      while (r < k && a[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (int i = p + 1; i < k; ++i) {
      for (int j = p + 1; j < k; ++j) {
        a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      }
    }
    prev = a[p][p];
  }
  BigCount det = a[k - 1][k - 1];
  return sign < 0 ? BigCount(-det) : det;
}

namespace {

struct SmallGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, no loops
};

/// Relabels vertices by (degree, sorted neighbour degrees) and returns the
/// sorted edge list as a byte string. Isomorphic graphs often, but not
/// always, share a key; a miss only costs a recomputation.
std::string encode(SmallGraph& g) {
  std::vector<int> deg(g.n, 0);
  for (auto [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::vector<int>> nbr_deg(g.n);
  for (auto [u, v] : g.edges) {
    nbr_deg[u].push_back(deg[v]);
    nbr_deg[v].push_back(deg[u]);
  }
  for (auto& x : nbr_deg) std::sort(x.begin(), x.end());
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(deg[a], nbr_deg[a]) < std::tie(deg[b], nbr_deg[b]);
  });
  std::vector<int> rank(g.n);
  for (int i = 0; i < g.n; ++i) rank[order[i]] = i;
  for (auto& [u, v] : g.edges) {
    u = rank[u];
    v = rank[v];
    if (u > v) std::swap(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  std::string key;
  key.reserve(2 + 2 * g.edges.size());
  key.push_back(static_cast<char>(g.n));
  for (auto [u, v] : g.edges) {
    key.push_back(static_cast<char>(u));
    key.push_back(static_cast<char>(v));
  }
  return key;
}

bool connected(const SmallGraph& g) {
  if (g.n <= 1) return true;
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = g.n;
  for (auto [u, v] : g.edges) {
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

class DelContract {
 public:
  BigCount count(SmallGraph g) {
    if (g.n <= 1) return 1;
    if (!connected(g)) return 0;
    std::string key = encode(g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // Delete-contract the first edge. The k copies of its vertex pair are
    // handled together: deleting them one at a time leaves k contractions,
    // all equal to G/e with the remaining copies turned into loops.
    auto [u, v] = g.edges.front();
    SmallGraph del{g.n, {}};
    int copies = 0;
    for (auto e : g.edges) {
      if (e == std::pair{u, v}) {
        ++copies;
      } else {
        del.edges.push_back(e);
      }
    }
    SmallGraph con{g.n - 1, {}};
    auto relabel = [&](int x) {
      if (x == v) x = u;
      return x > v ? x - 1 : x;
    };
    for (auto [a, b] : del.edges) {
      int x = relabel(a), y = relabel(b);
      if (x == y) continue;
      con.edges.push_back({std::min(x, y), std::max(x, y)});
    }
    BigCount result = count(std::move(del)) + BigCount(copies) * count(std::move(con));
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  std::unordered_map<std::string, BigCount> memo_;
};

}  // namespace

BigCount count_del_contract(const MultiGraph& g) {
  if (g.num_vertices() > 120) throw Error("deletion-contraction is limited to 120 vertices");
  SmallGraph s{g.num_vertices(), {}};
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    s.edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }
  return DelContract().count(std::move(s));
}

std::string FibBoundReport::to_string() const {
  return "t=" + t.str() + " bound=f_" + std::to_string(m + 1) + "=" + bound.str() +
         " equality=" + (equality ? "yes" : "no") + " predicate=" + (predicate ? "yes" : "no");
}

bool is_fibonacci_extremal(const EmbeddedGraph& e, TriangulationMode mode) {
  const MultiGraph& g = e.graph();
  MultiGraph plain(g.num_vertices());
  for (const Edge& ed : g.edges()) {
    if (!ed.is_loop()) plain.add_edge(ed.u, ed.v);
  }
  if (!is_two_connected(plain)) return false;
  if (!is_triangulation(e, mode) || !weak_dual_is_path(e)) return false;
  for (const Face& f : e.faces()) {
    if (f.is_outer || f.length() != 2) continue;
    bool touches = std::any_of(f.boundary.begin(), f.boundary.end(),
                               [&](Dart d) { return e.face_of(twin(d)) == e.outer_face(); });
    if (!touches) return false;
  }
  return true;
}

FibBoundReport check_fib_bound(const EmbeddedGraph& e, TriangulationMode mode) {
  FibBoundReport r;
  r.m = e.graph().num_edges() - e.graph().num_loops();
  r.t = count_matrix_tree(e.graph());
  r.bound = fib(r.m + 1);
  r.equality = r.t == r.bound;
  r.predicate = is_fibonacci_extremal(e, mode);
  return r;
}

EmbeddedGraph extremal_family(int triangles, int digon_ends) {
  if (triangles < 1) throw Error("extremal_family needs at least one inner face");
  if (digon_ends < 0 || digon_ends > 2) throw Error("digon_ends must be 0, 1 or 2");
  const int k = triangles;
  MultiGraph g(k + 2);
  for (int i = 1; i <= k + 1; ++i) {
    g.add_edge(0, i);
    if (i <= k) g.add_edge(i, i + 1);
  }
  if (digon_ends >= 1) g.add_edge(0, 1);
  if (digon_ends == 2) g.add_edge(0, k + 1);
  std::vector<VertexId> outer(k + 2);
  std::iota(outer.begin(), outer.end(), 0);
  return EmbeddedGraph(std::move(g), outer);
}

bool check_fib_product(int i, int j) {
  if (i < 1 || j < 1) throw Error("check_fib_product needs i, j >= 1");
  BigCount lhs = fib(i) * fib(j);
  BigCount rhs = fib(i + j - 1);
  bool equal = lhs == rhs;
  return lhs <= rhs && equal == (i == 1 || j == 1);
}

}  // namespace stgray
