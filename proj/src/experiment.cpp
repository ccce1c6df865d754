#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

#include "stgray/error.hpp"
#include "stgray/flipgraph.hpp"

namespace stgray {

namespace {

struct PairTable {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;  // (a, b), a < b, in mask-bit order
  std::vector<std::vector<int>> index;     // index[a][b] = bit
  std::vector<std::vector<int>> perms;     // all vertex permutations

  explicit PairTable(int n_) : n(n_), index(n_, std::vector<int>(n_, -1)) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        index[a][b] = index[b][a] = static_cast<int>(pairs.size());
        pairs.push_back({a, b});
      }
    }
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  std::uint32_t canonical(std::uint32_t mask) const {
    std::uint32_t best = mask;
    for (const auto& p : perms) {
      std::uint32_t img = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1u) img |= std::uint32_t{1} << index[p[pairs[i].first]][p[pairs[i].second]];
      }
      best = std::min(best, img);
    }
    return best;
  }

  MultiGraph graph(std::uint32_t mask) const {
    MultiGraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1u) g.add_edge(pairs[i].first, pairs[i].second);
    }
    return g;
  }
};

}  // namespace

std::vector<std::vector<VertexId>> outerplane_embeddings(const MultiGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<VertexId>> out;
  if (n == 0 || !g.is_connected()) return out;
  if (n == 1) return {{0}};
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> pos(n);
  std::vector<std::vector<std::vector<EdgeId>>> seen;
  do {
    if (n >= 3 && order[1] > order[n - 1]) continue;  // mirror image
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    bool ok = true;
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size() && ok; ++i) {
      if (edges[i].is_loop()) continue;
      int a = std::min(pos[edges[i].u], pos[edges[i].v]), b = std::max(pos[edges[i].u], pos[edges[i].v]);
      for (std::size_t j = i + 1; j < edges.size() && ok; ++j) {
        if (edges[j].is_loop()) continue;
        int c = std::min(pos[edges[j].u], pos[edges[j].v]), d = std::max(pos[edges[j].u], pos[edges[j].v]);
        if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) ok = false;
      }
    }
    if (!ok) continue;
    EmbeddedGraph e(g, order);
    std::vector<std::vector<EdgeId>> sig;
    for (const Face& f : e.faces()) {
      if (f.is_outer) continue;
      std::vector<EdgeId> ids;
      for (Dart d : f.boundary) ids.push_back(d.edge);
      std::sort(ids.begin(), ids.end());
      sig.push_back(std::move(ids));
    }
    std::sort(sig.begin(), sig.end());
    if (std::find(seen.begin(), seen.end(), sig) != seen.end()) continue;
    seen.push_back(std::move(sig));
    out.push_back(order);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

void for_each_small_graph(int n, SmallGraphFilter filter, bool dedup,
                          const std::function<void(const MultiGraph&, std::uint32_t)>& visit) {
  if (n < 1 || n > 7) throw Error("small-graph enumeration supports 1 <= n <= 7");
  PairTable table(n);
  const std::uint32_t limit = std::uint32_t{1} << table.pairs.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    int m = std::popcount(mask);
    if (filter == SmallGraphFilter::outerplane && n >= 2 && m > 2 * n - 3) continue;
    MultiGraph g = table.graph(mask);
    if (filter != SmallGraphFilter::all && !g.is_connected()) continue;
    if (filter == SmallGraphFilter::two_connected && !is_two_connected(g)) continue;
    if (dedup && table.canonical(mask) != mask) continue;
    if (filter == SmallGraphFilter::outerplane && outerplane_embeddings(g).empty()) continue;
    visit(g, mask);
  }
}

std::vector<MultiGraph> enumerate_small_graphs(int n, SmallGraphFilter filter, bool dedup) {
  std::vector<MultiGraph> out;
  for_each_small_graph(n, filter, dedup, [&](const MultiGraph& g, std::uint32_t) { out.push_back(g); });
  return out;
}

ExperimentScope parse_experiment_scope(std::string_view name) {
  if (name == "pivot") return ExperimentScope::pivot;
  if (name == "paf") return ExperimentScope::paf;
  if (name == "arborescence") return ExperimentScope::arborescence;
  throw Error("unknown experiment scope '" + std::string(name) + "' (pivot, paf, arborescence)");
}

const char* to_string(ExperimentScope s) {
  switch (s) {
    case ExperimentScope::pivot: return "pivot";
    case ExperimentScope::paf: return "paf";
    case ExperimentScope::arborescence: return "arborescence";
  }
  return "?";
}

std::string ExperimentRecord::to_string() const {
  std::string s = "graph=" + graph + " result=" + result + " time=" + std::to_string(time_ms) +
                  " nodes=" + std::to_string(nodes);
  if (discrepancy) s += " discrepancy=yes";
  return s;
}

namespace {

// Largest sizes at which every instance is claimed to succeed.
constexpr int kClaimedUndirected = 6;
constexpr int kClaimedDirected = 5;

struct Task {
  std::string id;
  int n = 0;
  std::function<FlipGraph()> build;
};

ExperimentRecord run_task(const Task& t, ExperimentScope scope, std::uint64_t budget) {
  auto t0 = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.graph = t.id;
  FlipGraph fg = t.build();
  rec.nodes = fg.num_nodes();
  HamiltonOptions opt;
  opt.budget = budget;
  opt.cycle = true;
  HamiltonResult cyc = hamilton_path(fg, opt);
  if (cyc.outcome == HamiltonOutcome::found) {
    rec.result = "cyclic";
  } else {
    opt.cycle = false;
    HamiltonResult path = hamilton_path(fg, opt);
    if (path.outcome == HamiltonOutcome::found) {
      rec.result = cyc.outcome == HamiltonOutcome::none ? "path" : "unknown";
    } else {
      rec.result = to_string(path.outcome);
    }
  }
  if (scope == ExperimentScope::arborescence) {
    rec.discrepancy = t.n <= kClaimedDirected && rec.result == "none";
  } else {
    rec.discrepancy = t.n <= kClaimedUndirected && (rec.result == "none" || rec.result == "path");
  }
  rec.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

std::vector<Task> undirected_tasks(ExperimentScope scope, int max_n) {
  std::vector<Task> tasks;
  for (int n = 2; n <= max_n; ++n) {
    auto filter = scope == ExperimentScope::pivot ? SmallGraphFilter::two_connected : SmallGraphFilter::outerplane;
    for_each_small_graph(n, filter, true, [&](const MultiGraph& g, std::uint32_t mask) {
      std::string id = "n" + std::to_string(n) + "-" + std::to_string(mask);
      if (scope == ExperimentScope::pivot) {
        tasks.push_back({id, n, [g] {
                           return build_flip_graph(LabeledGraph(g, EdgeLabeling::identity(g.num_edges())),
                                                   ExchangeKind::pivot);
                         }});
        return;
      }
      auto orders = outerplane_embeddings(g);
      for (std::size_t k = 0; k < orders.size(); ++k) {
        tasks.push_back({id + "-o" + std::to_string(k), n, [g, order = orders[k]] {
                           EmbeddedGraph e(g, order);
                           return build_flip_graph(LabeledGraph(e, EdgeLabeling::identity(g.num_edges())),
                                                   ExchangeKind::paf);
                         }});
      }
    });
  }
  return tasks;
}

// Pair states: 0 none, 1 a->b, 2 b->a, 3 both.
std::vector<Task> digraph_tasks(int max_n) {
  std::vector<Task> tasks;
  for (int n = 2; n <= max_n; ++n) {
    PairTable table(n);
    const int p = static_cast<int>(table.pairs.size());
    std::uint64_t limit = 1;
    for (int i = 0; i < p; ++i) limit *= 4;
    auto state = [](std::uint64_t code, int i) { return static_cast<int>(code >> (2 * i) & 3u); };
    for (std::uint64_t code = 0; code < limit; ++code) {
      std::uint32_t under = 0;
      for (int i = 0; i < p; ++i) {
        if (state(code, i)) under |= std::uint32_t{1} << i;
      }
      if (!is_two_connected(table.graph(under))) continue;
      bool canonical = true;
      for (const auto& perm : table.perms) {
        std::uint64_t img = 0;
        for (int i = 0; i < p; ++i) {
          int s = state(code, i);
          if (!s) continue;
          int a = perm[table.pairs[i].first], b = perm[table.pairs[i].second];
          if (a > b && s != 3) s ^= 3;
          img |= std::uint64_t(s) << (2 * table.index[a][b]);
        }
        if (img < code) {
          canonical = false;
          break;
        }
      }
      if (!canonical) continue;
      Digraph d;
      d.n = n;
      for (int i = 0; i < p; ++i) {
        auto [a, b] = table.pairs[i];
        int s = state(code, i);
        if (s & 1) d.arcs.push_back({a, b});
        if (s & 2) d.arcs.push_back({b, a});
      }
      for (int r = 0; r < n; ++r) {
        if (enumerate_arborescences(d, r).empty()) continue;
        tasks.push_back({"n" + std::to_string(n) + "-" + std::to_string(code) + "-r" + std::to_string(r), n,
                         [d, r] { return arborescence_flip_graph(d, r); }});
      }
    }
  }
  return tasks;
}

}  // namespace

ExperimentReport experiment_open_problems(const ExperimentOptions& options,
                                          const std::function<void(const ExperimentRecord&)>& on_record) {
  const int cap = options.scope == ExperimentScope::arborescence ? 5 : 6;
  if (options.max_n < 2 || options.max_n > cap) {
    throw Error(std::string("experiment '") + to_string(options.scope) + "' supports 2 <= n <= " + std::to_string(cap));
  }
  std::vector<Task> tasks = options.scope == ExperimentScope::arborescence
                                ? digraph_tasks(options.max_n)
                                : undirected_tasks(options.scope, options.max_n);

  ExperimentReport report;
  report.records.resize(tasks.size());
  std::vector<char> done(tasks.size(), 0);
  std::size_t flushed = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      ExperimentRecord rec;
      try {
        rec = run_task(tasks[i], options.scope, options.budget);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
        return;
      }
      std::lock_guard lock(mu);
      report.records[i] = std::move(rec);
      done[i] = 1;
      while (flushed < tasks.size() && done[flushed]) {
        if (on_record) on_record(report.records[flushed]);
        ++flushed;
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : report.records) {
    if (r.result == "cyclic") ++report.cyclic;
    else if (r.result == "path") ++report.path;
    else if (r.result == "none") ++report.none;
    else ++report.unknown;
    if (r.discrepancy) ++report.discrepancies;
  }
  return report;
}

}  // namespace stgray
