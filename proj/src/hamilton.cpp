#include <algorithm>

#include "stgray/error.hpp"
#include "stgray/flipgraph.hpp"

namespace stgray {

const char* to_string(HamiltonOutcome o) {
  switch (o) {
    case HamiltonOutcome::found: return "found";
    case HamiltonOutcome::none: return "none";
    case HamiltonOutcome::unknown: return "unknown";
  }
  return "?";
}

bool validate_hamilton(const FlipGraph& fg, const std::vector<int>& order, bool cycle) {
  const int n = fg.num_nodes();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int x : order) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!fg.adjacent(order[i], order[i + 1])) return false;
  }
  if (cycle && n >= 2 && !fg.adjacent(order.back(), order.front())) return false;
  return true;
}

namespace {

// Searches for a Hamilton cycle through `s` in an adjacency structure that
// may contain one virtual node (paths are cycles through it).
class CycleSearch {
 public:
  CycleSearch(std::vector<std::vector<int>> adj, int s, std::vector<char> first_ok, std::vector<char> closable,
              std::uint64_t budget)
      : adj_(std::move(adj)),
        s_(s),
        first_ok_(std::move(first_ok)),
        closable_(std::move(closable)),
        budget_(budget),
        n_(static_cast<int>(adj_.size())),
        visited_(n_, 0),
        avail_(n_, 0),
        mark_(n_, 0) {
    for (int v = 0; v < n_; ++v) avail_[v] = static_cast<int>(adj_[v].size());
  }

  HamiltonOutcome run() {
    visited_[s_] = 1;
    path_.push_back(s_);
    remaining_ = n_ - 1;
    bool ok = dfs(s_);
    if (ok) return HamiltonOutcome::found;
    return exhausted_ ? HamiltonOutcome::unknown : HamiltonOutcome::none;
  }

  const std::vector<int>& path() const { return path_; }
  std::uint64_t expansions() const { return expansions_; }

 private:
  bool dfs(int cur) {
    if (remaining_ == 0) return closable_[cur] != 0;
    if (++expansions_ > budget_) {
      exhausted_ = true;
      return false;
    }
    std::vector<int> cand;
    for (int w : adj_[cur]) {
      if (visited_[w]) continue;
      if (cur == s_ && !first_ok_[w]) continue;
      cand.push_back(w);
    }
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return std::pair(avail_[a], a) < std::pair(avail_[b], b); });

    for (int w : cand) {
      visited_[w] = 1;
      path_.push_back(w);
      --remaining_;
      const bool interior = cur != s_;
      bool ok = true;
      if (interior) {
        for (int u : adj_[cur]) {
          if (visited_[u]) continue;
          if (--avail_[u] < 2) ok = false;
        }
      }
      if (ok && remaining_ > 0) ok = connected_rest(w);
      if (ok && dfs(w)) return true;
      if (interior) {
        for (int u : adj_[cur]) {
          if (!visited_[u]) ++avail_[u];
        }
      }
      ++remaining_;
      path_.pop_back();
      visited_[w] = 0;
      if (exhausted_) return false;
    }
    return false;
  }

  // All unvisited nodes must be reachable from the current end through
  // unvisited nodes, and the start must still have an unvisited neighbour
  // that can close the cycle.
  bool connected_rest(int end) {
    bool s_reachable = false;
    for (int u : adj_[s_]) {
      if (!visited_[u] && closable_[u]) s_reachable = true;
    }
    if (!s_reachable) return false;
    ++stamp_;
    std::vector<int>& queue = queue_;
    queue.clear();
    int reached = 0;
    for (int u : adj_[end]) {
      if (!visited_[u] && mark_[u] != stamp_) {
        mark_[u] = stamp_;
        queue.push_back(u);
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      ++reached;
      for (int u : adj_[queue[i]]) {
        if (!visited_[u] && mark_[u] != stamp_) {
          mark_[u] = stamp_;
          queue.push_back(u);
        }
      }
    }
    return reached == remaining_;
  }

  std::vector<std::vector<int>> adj_;
  int s_;
  std::vector<char> first_ok_, closable_;
  std::uint64_t budget_;
  int n_;
  std::vector<char> visited_;
  std::vector<int> avail_;
  std::vector<int> mark_;
  int stamp_ = 0;
  std::vector<int> queue_;
  std::vector<int> path_;
  int remaining_ = 0;
  std::uint64_t expansions_ = 0;
  bool exhausted_ = false;
};

}  // namespace

HamiltonResult hamilton_path(const FlipGraph& fg, const HamiltonOptions& options) {
  const int n = fg.num_nodes();
  auto check = [&](int x, const char* what) {
    if (x < 0 || x >= n) throw Error(std::string(what) + " node out of range");
  };
  if (options.start) check(*options.start, "start");
  if (options.end) check(*options.end, "end");
  if (options.cycle && options.end) throw Error("a forced end node only applies to paths");

  HamiltonResult r;
  if (n == 0) {
    r.outcome = HamiltonOutcome::none;
    return r;
  }
  if (n <= 2) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    if (options.start && order.front() != *options.start) std::reverse(order.begin(), order.end());
    if (options.end && order.back() != *options.end) {
      r.outcome = HamiltonOutcome::none;
      return r;
    }
    bool ok = validate_hamilton(fg, order, options.cycle);
    r.outcome = ok ? HamiltonOutcome::found : HamiltonOutcome::none;
    if (ok) r.path = order;
    return r;
  }

  std::vector<std::vector<int>> adj = fg.adj;
  std::vector<char> first_ok(n, 1), closable(n, 0);
  int s = 0;
  if (options.cycle) {
    if (options.start) {
      s = *options.start;
    } else {
      for (int v = 1; v < n; ++v) {
        if (adj[v].size() < adj[s].size()) s = v;
      }
    }
    for (int u : adj[s]) closable[u] = 1;
  } else {
    // A Hamilton path is a Hamilton cycle through a virtual node V.
    const int virt = n;
    adj.emplace_back();
    first_ok.push_back(0);
    closable.push_back(0);
    std::vector<char> in_v(n + 1, 0);
    for (int v = 0; v < n; ++v) {
      bool first = !options.start || *options.start == v;
      bool last = !options.end || *options.end == v;
      first_ok[v] = first;
      closable[v] = last;
      if (first || last) {
        adj[virt].push_back(v);
        adj[v].push_back(virt);
      }
    }
    s = virt;
  }

  CycleSearch search(std::move(adj), s, std::move(first_ok), std::move(closable), options.budget);
  r.outcome = search.run();
  r.expansions = search.expansions();
  if (r.outcome != HamiltonOutcome::found) return r;

  std::vector<int> order = search.path();
  if (!options.cycle) {
    order.erase(order.begin());  // virtual node
  }
  if (!validate_hamilton(fg, order, options.cycle)) {
    throw InvariantViolation("Hamilton search produced an invalid certificate");
  }
  r.path = std::move(order);
  return r;
}

}  // namespace stgray
