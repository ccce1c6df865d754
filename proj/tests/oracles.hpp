#pragma once

// Brute-force reference implementations used only by the tests. They work
// on plain edge lists and share no code with the library beyond the value
// types.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stgray/embedgraph.hpp"
#include "stgray/spanning_tree.hpp"

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList edge_list(const stgray::MultiGraph& g) {
  EdgeList out;
  for (const auto& e : g.edges()) out.push_back({e.u, e.v});
  return out;
}

/// Edge list in label order.
inline EdgeList edge_list(const stgray::LabeledGraph& g) {
  EdgeList out;
  for (int l = 1; l <= g.num_edges(); ++l) out.push_back({g.ends(l).u, g.ends(l).v});
  return out;
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

/// `chosen[i]` selects edges[i].
inline bool is_tree(int n, const EdgeList& edges, const std::vector<char>& chosen) {
  int k = 0;
  Dsu d(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!chosen[i]) continue;
    ++k;
    if (edges[i].first == edges[i].second || !d.unite(edges[i].first, edges[i].second)) return false;
  }
  return k == n - 1;
}

/// All spanning trees as 0/1 strings (position i = edges[i]), over all 2^m subsets.
inline std::vector<std::string> all_trees(int n, const EdgeList& edges) {
  const int m = static_cast<int>(edges.size());
  std::vector<std::string> out;
  std::vector<char> chosen(m);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (std::popcount(mask) != n - 1) continue;
    for (int i = 0; i < m; ++i) chosen[i] = mask >> i & 1u;
    if (!is_tree(n, edges, chosen)) continue;
    std::string s(m, '0');
    for (int i = 0; i < m; ++i) s[i] = chosen[i] ? '1' : '0';
    out.push_back(s);
  }
  return out;
}

inline long long count_trees(int n, const EdgeList& edges) {
  if (n <= 1) return 1;
  return static_cast<long long>(all_trees(n, edges).size());
}

/// Every suffix class occupies a contiguous run.
inline bool genlex(const std::vector<std::string>& xs) {
  if (xs.empty()) return true;
  const std::size_t m = xs.front().size();
  for (std::size_t k = 1; k <= m; ++k) {
    std::set<std::string> closed;
    std::string prev;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::string suf = xs[i].substr(m - k);
      if (i > 0 && suf != prev) {
        closed.insert(prev);
        if (closed.count(suf)) return false;
      }
      prev = suf;
    }
  }
  return true;
}

/// Exchanges as (removed label, added label) over a 0/1 string in label order.
inline std::set<std::pair<int, int>> exchanges(int n, const EdgeList& edges, const std::string& tree) {
  std::set<std::pair<int, int>> out;
  const int m = static_cast<int>(edges.size());
  std::vector<char> chosen(m);
  for (int i = 0; i < m; ++i) chosen[i] = tree[i] == '1';
  for (int e = 0; e < m; ++e) {
    if (!chosen[e]) continue;
    for (int f = 0; f < m; ++f) {
      if (chosen[f]) continue;
      auto c = chosen;
      c[e] = 0;
      c[f] = 1;
      if (is_tree(n, edges, c)) out.insert({e + 1, f + 1});
    }
  }
  return out;
}

/// Hamilton path/cycle existence by permutations; n <= 9.
inline bool hamiltonian(const std::vector<std::vector<int>>& adj, bool cycle) {
  const int n = static_cast<int>(adj.size());
  if (n <= 1) return true;
  auto has = [&](int a, int b) { return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end(); };
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (cycle && p[0] != 0) break;
    bool ok = true;
    for (int i = 0; i + 1 < n && ok; ++i) ok = has(p[i], p[i + 1]);
    if (ok && cycle) ok = has(p[n - 1], p[0]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

/// Pairs of edge indices lying on a common simple cycle (or equal), by
/// enumerating all 2-regular connected edge subsets.
inline std::vector<std::vector<char>> same_block(int n, const EdgeList& edges) {
  const int m = static_cast<int>(edges.size());
  std::vector<std::vector<char>> rel(m, std::vector<char>(m, 0));
  for (int i = 0; i < m; ++i) rel[i][i] = 1;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    std::vector<int> deg(n, 0);
    Dsu d(n);
    int k = 0;
    bool loop = false;
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (edges[i].first == edges[i].second) loop = true;
      ++deg[edges[i].first];
      ++deg[edges[i].second];
      d.unite(edges[i].first, edges[i].second);
      ++k;
    }
    if (loop || k < 2) continue;
    bool ok = true;
    int root = -1;
    for (int v = 0; v < n && ok; ++v) {
      if (deg[v] == 0) continue;
      if (deg[v] != 2) ok = false;
      if (root == -1) root = d.find(v);
      else if (d.find(v) != root) ok = false;
    }
    if (!ok) continue;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if ((mask >> i & 1u) && (mask >> j & 1u)) rel[i][j] = 1;
      }
    }
  }
  return rel;
}

inline stgray::EmbeddedGraph fan(int n) {
  // hub 0, path 1..n-1, edges listed left to right
  stgray::MultiGraph g(n);
  for (int i = 1; i < n; ++i) {
    if (i > 1) g.add_edge(i - 1, i);
    g.add_edge(0, i);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return stgray::EmbeddedGraph(std::move(g), order);
}

/// Embedding from a parsed file; identity outer order when the file has none.
inline stgray::EmbeddedGraph embed(const stgray::GraphInput& in) {
  std::vector<int> order(in.graph.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  return stgray::EmbeddedGraph(in.graph, in.outer ? *in.outer : order);
}

inline std::vector<int> random_permutation(int m, std::mt19937_64& rng) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
