#include <algorithm>
#include <array>
#include <numeric>

#include "stgray/counting.hpp"
#include "stgray/error.hpp"

namespace stgray {

namespace {

struct Chord {
  int a, b;  // a < b
};

bool crosses(const Chord& x, const Chord& y) {
  return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

using Encoding = std::vector<std::array<int, 3>>;  // (a, b, multiplicity), sorted

Encoding image(const std::vector<Chord>& chords, const std::vector<int>& mult, int n, int shift, bool mirror) {
  Encoding out;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    if (mult[i] == 0) continue;
    auto map = [&](int x) {
      int y = mirror ? (n - x) % n : x;
      return (y + shift) % n;
    };
    int a = map(chords[i].a), b = map(chords[i].b);
    if (a > b) std::swap(a, b);
    out.push_back({a, b, mult[i]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Enumerator {
 public:
  Enumerator(const OuterplaneEnumOptions& o, const std::function<void(const EmbeddedGraph&)>& visit)
      : opt_(o), visit_(visit) {}

  void run() {
    const int max_n = opt_.two_connected_only ? std::max(2, opt_.max_edges) : opt_.max_edges + 1;
    if (!opt_.two_connected_only && opt_.min_edges <= 0) emit_single_vertex();
    for (int n = 2; n <= max_n; ++n) run_n(n);
  }

 private:
  void emit_single_vertex() {
    std::vector<VertexId> outer{0};
    visit_(EmbeddedGraph(MultiGraph(1), outer));
  }

  void run_n(int n) {
    n_ = n;
    chords_.clear();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) chords_.push_back({a, b});
    }
    mult_.assign(chords_.size(), 0);
    int forced = 0;
    for (const auto& c : chords_) forced += is_boundary(c) ? 1 : 0;
    if (opt_.two_connected_only && forced > opt_.max_edges) return;
    assign(0, 0);
  }

  bool is_boundary(const Chord& c) const {
    if (!opt_.two_connected_only) return false;
    return c.b == c.a + 1 || (c.a == 0 && c.b == n_ - 1);
  }

  int remaining_forced(std::size_t from) const {
    int k = 0;
    for (std::size_t i = from; i < chords_.size(); ++i) k += is_boundary(chords_[i]) ? 1 : 0;
    return k;
  }

  // Prunes partial assignments in connected mode: a vertex whose pairs are
  // all decided must have an edge, and the remaining budget must be able
  // to join the components.
  bool feasible(std::size_t next, int used) const {
    if (opt_.two_connected_only) return used + remaining_forced(next) <= opt_.max_edges;
    int done_below = next < chords_.size() ? chords_[next].a : n_;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> deg(n_, 0);
    int comps = n_;
    for (std::size_t i = 0; i < next; ++i) {
      if (mult_[i] == 0) continue;
      ++deg[chords_[i].a];
      ++deg[chords_[i].b];
      int x = find(chords_[i].a), y = find(chords_[i].b);
      if (x != y) {
        parent[x] = y;
        --comps;
      }
    }
    for (int v = 0; v < done_below; ++v) {
      if (deg[v] == 0) return false;
    }
    if (next == chords_.size()) return comps == 1;
    return opt_.max_edges - used >= comps - 1;
  }

  void assign(std::size_t i, int used) {
    if (!feasible(i, used)) return;
    if (i == chords_.size()) {
      if (used >= opt_.min_edges) emit();
      return;
    }
    const Chord& c = chords_[i];
    bool can_use = true;
    for (std::size_t j = 0; j < i && can_use; ++j) {
      if (mult_[j] > 0 && crosses(chords_[j], c)) can_use = false;
    }
    int lo = is_boundary(c) ? 1 : 0;
    if (lo == 1 && !can_use) return;
    int hi = can_use ? opt_.max_edges - used : 0;
    if (!opt_.allow_parallel) hi = std::min(hi, 1);
    for (int k = lo; k <= hi; ++k) {
      mult_[i] = k;
      assign(i + 1, used + k);
    }
    mult_[i] = 0;
  }

  void emit() {
    Encoding own = image(chords_, mult_, n_, 0, false);
    for (int mirror = 0; mirror < 2; ++mirror) {
      for (int shift = 0; shift < n_; ++shift) {
        if (image(chords_, mult_, n_, shift, mirror != 0) < own) return;
      }
    }
    MultiGraph g(n_);
    for (std::size_t i = 0; i < chords_.size(); ++i) {
      for (int k = 0; k < mult_[i]; ++k) g.add_edge(chords_[i].a, chords_[i].b);
    }
    std::vector<VertexId> outer(n_);
    std::iota(outer.begin(), outer.end(), 0);
    EmbeddedGraph e(std::move(g), outer);
    if (opt_.triangulations_only) {
      auto mode = opt_.allow_parallel ? TriangulationMode::multigraph : TriangulationMode::simple;
      if (!is_triangulation(e, mode)) return;
    }
    visit_(e);
  }

  const OuterplaneEnumOptions& opt_;
  const std::function<void(const EmbeddedGraph&)>& visit_;
  int n_ = 0;
  std::vector<Chord> chords_;
  std::vector<int> mult_;
};

}  // namespace

void for_each_outerplane(const OuterplaneEnumOptions& options,
                         const std::function<void(const EmbeddedGraph&)>& visit) {
  if (options.max_edges < 0 || options.max_edges > 14) throw Error("outerplane enumeration supports max_edges 0..14");
  Enumerator(options, visit).run();
}

std::vector<EmbeddedGraph> enumerate_outerplane(const OuterplaneEnumOptions& options) {
  std::vector<EmbeddedGraph> out;
  for_each_outerplane(options, [&](const EmbeddedGraph& e) { out.push_back(e); });
  return out;
}

}  // namespace stgray
