#include "stgray/treegen.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <unordered_set>

#include "stgray/counting.hpp"
#include "stgray/error.hpp"

namespace stgray {

TieBreak TieBreak::closest() {
  return TieBreak("closest", [](std::span<const Candidate> ties) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ties.size(); ++i) {
      if (ties[i].exchange.smaller() > ties[best].exchange.smaller()) best = i;
    }
    return best;
  }, false);
}

TieBreak TieBreak::farthest() {
  return TieBreak("farthest", [](std::span<const Candidate> ties) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < ties.size(); ++i) {
      if (ties[i].exchange.smaller() < ties[best].exchange.smaller()) best = i;
    }
    return best;
  }, false);
}

TieBreak TieBreak::random(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return TieBreak("random", [rng](std::span<const Candidate> ties) {
    std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
    return pick(*rng);
  }, false);
}

TieBreak TieBreak::prefer(ExchangeKind kind, TieBreak fallback) {
  bool faces = kind != ExchangeKind::any && kind != ExchangeKind::pivot;
  std::string name = "prefer-" + std::string(to_string(kind));
  if (fallback.name() != "closest") name += "/" + fallback.name();
  return TieBreak(std::move(name), [kind, fallback](std::span<const Candidate> ties) {
    std::vector<Candidate> allowed;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < ties.size(); ++i) {
      if (satisfies(ties[i].cls, kind)) {
        allowed.push_back(ties[i]);
        index.push_back(i);
      }
    }
    if (allowed.empty()) {
      throw InvariantViolation("tie at larger label " + std::to_string(ties.front().exchange.larger()) +
                               " has no " + std::string(to_string(kind)) + "-exchange");
    }
    return index[fallback.choose(allowed)];
  }, faces || fallback.needs_faces());
}

TieBreak TieBreak::from_name(std::string_view name) {
  if (name == "closest") return closest();
  if (name == "farthest") return farthest();
  if (name.starts_with("prefer-")) {
    std::string_view kind = name.substr(7);
    if (kind == "pivot" || kind == "pof" || kind == "pof-inner" || kind == "paf" || kind == "face") {
      return prefer(parse_exchange_kind(kind));
    }
  }
  throw Error("unknown tie-break rule '" + std::string(name) +
              "' (closest, farthest, prefer-pivot, prefer-pof, prefer-pof-inner, prefer-paf, prefer-face)");
}

std::size_t TieBreak::choose(std::span<const Candidate> ties) const {
  if (ties.empty()) throw Error("tie-break over an empty candidate set");
  std::size_t i = rule_(ties);
  assert(i < ties.size());
  return i;
}

Exchange tiebreak_closest(std::span<const Exchange> ties) {
  if (ties.empty()) throw Error("tie-break over an empty candidate set");
  std::vector<Candidate> c;
  for (const auto& ex : ties) c.push_back({ex, {}});
  return ties[TieBreak::closest().choose(c)];
}

// ---------------------------------------------------------------------------

namespace {

/// Open-addressing set of fixed-width bit keys.
class TreeSet {
 public:
  explicit TreeSet(int words) : words_(words) { rehash(1024); }

  bool contains(const std::uint64_t* key) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash(key) & mask;; i = (i + 1) & mask) {
      std::uint32_t s = slots_[i];
      if (s == kEmpty) return false;
      if (std::equal(key, key + words_, &keys_[std::size_t{s} * words_])) return true;
    }
  }

  void insert(const std::uint64_t* key) {
    if ((size_ + 1) * 2 > slots_.size()) rehash(slots_.size() * 2);
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash(key) & mask;
    while (slots_[i] != kEmpty) {
      if (std::equal(key, key + words_, &keys_[std::size_t{slots_[i]} * words_])) return;
      i = (i + 1) & mask;
    }
    slots_[i] = static_cast<std::uint32_t>(size_);
    keys_.insert(keys_.end(), key, key + words_);
    ++size_;
  }

  std::size_t size() const { return size_; }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::size_t hash(const std::uint64_t* key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < words_; ++i) {
      h ^= key[i];
      h *= 0xbf58476d1ce4e5b9ull;
      h ^= h >> 31;
    }
    return static_cast<std::size_t>(h);
  }

  void rehash(std::size_t capacity) {
    slots_.assign(capacity, kEmpty);
    std::size_t mask = capacity - 1;
    for (std::size_t k = 0; k < size_; ++k) {
      std::size_t i = hash(&keys_[k * words_]) & mask;
      while (slots_[i] != kEmpty) i = (i + 1) & mask;
      slots_[i] = static_cast<std::uint32_t>(k);
    }
  }

  int words_;
  std::size_t size_ = 0;
  std::vector<std::uint32_t> slots_;
  std::vector<std::uint64_t> keys_;
};

/// Current tree rooted at vertex 0, rebuilt per step.
struct TreeIndex {
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, label)
  std::vector<int> parent, parent_label, depth, tin, tout;
  std::vector<int> child_of_label;  // deeper endpoint of each tree label

  void build(const LabeledGraph& g, const std::vector<std::uint64_t>& bits) {
    const int n = g.num_vertices();
    const int m = g.num_edges();
    adj.assign(n, {});
    for (int l = 1; l <= m; ++l) {
      if (!((bits[(l - 1) >> 6] >> ((l - 1) & 63)) & 1u)) continue;
      const Edge& e = g.ends(l);
      adj[e.u].push_back({e.v, l});
      adj[e.v].push_back({e.u, l});
    }
    parent.assign(n, -1);
    parent_label.assign(n, 0);
    depth.assign(n, 0);
    tin.assign(n, 0);
    tout.assign(n, 0);
    child_of_label.assign(m + 1, -1);
    int timer = 0;
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    tin[0] = timer++;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < adj[v].size()) {
        auto [w, l] = adj[v][next++];
        if (l == parent_label[v]) continue;
        parent[w] = v;
        parent_label[w] = l;
        depth[w] = depth[v] + 1;
        child_of_label[l] = w;
        tin[w] = timer++;
        stack.push_back({w, 0});
      } else {
        tout[v] = timer;
        stack.pop_back();
      }
    }
  }

  bool in_subtree(int x, int root) const { return tin[root] <= tin[x] && tin[x] < tout[root]; }
};

}  // namespace

Listing algorithm_g(const LabeledGraph& g, const SpanningTree& initial, const TieBreak& tiebreak,
                    const GenOptions& options) {
  const int m = g.num_edges();
  if (initial.size() != m || !is_spanning_tree(g, initial)) {
    throw Error("initial edge set is not a spanning tree");
  }
  if (tiebreak.needs_faces() && !g.has_faces()) {
    throw Error("tie-break rule '" + tiebreak.name() + "' needs an embedded graph");
  }

  Listing out;
  out.labeling = g.labeling();
  out.initial = initial;
  out.trees.push_back(initial);

  const int words = std::max(1, (m + 63) / 64);
  TreeSet visited(words);
  std::vector<std::uint64_t> cur(words, 0);
  {
    auto w = initial.words();
    std::copy(w.begin(), w.end(), cur.begin());
  }
  visited.insert(cur.data());

  std::vector<std::uint64_t> probe(words);
  auto bit = [](int label) { return std::uint64_t{1} << ((label - 1) & 63); };
  auto word = [](int label) { return (label - 1) >> 6; };
  auto in_tree = [&](int label) { return (cur[word(label)] & bit(label)) != 0; };
  auto unvisited_after = [&](int a, int b) {
    probe = cur;
    probe[word(a)] ^= bit(a);
    probe[word(b)] ^= bit(b);
    return !visited.contains(probe.data());
  };

  TreeIndex tree;
  std::vector<Candidate> ties;
  while (!options.max_trees || out.trees.size() < *options.max_trees) {
    tree.build(g, cur);
    ties.clear();
    for (int f = 1; f <= m && ties.empty(); ++f) {
      const Edge& ef = g.ends(f);
      if (ef.is_loop()) continue;
      if (!in_tree(f)) {
        int a = ef.u, b = ef.v;
        while (a != b) {
          if (tree.depth[a] < tree.depth[b]) std::swap(a, b);
          int e = tree.parent_label[a];
          if (e < f && unvisited_after(e, f)) ties.push_back({{e, f}, {}});
          a = tree.parent[a];
        }
      } else {
        int child = tree.child_of_label[f];
        for (int e = 1; e < f; ++e) {
          if (in_tree(e)) continue;
          const Edge& ee = g.ends(e);
          if (ee.is_loop()) continue;
          if (tree.in_subtree(ee.u, child) != tree.in_subtree(ee.v, child) && unvisited_after(f, e)) {
            ties.push_back({{f, e}, {}});
          }
        }
      }
    }
    if (ties.empty()) break;
    assert(std::all_of(ties.begin(), ties.end(),
                       [&](const Candidate& c) { return c.exchange.larger() == ties.front().exchange.larger(); }));
    for (auto& c : ties) c.cls = g.classify(c.exchange);
    const Candidate& pick = ties[tiebreak.choose(ties)];

    cur[word(pick.exchange.removed)] ^= bit(pick.exchange.removed);
    cur[word(pick.exchange.added)] ^= bit(pick.exchange.added);
    visited.insert(cur.data());
    out.steps.push_back({pick.exchange, pick.cls});
    out.trees.push_back(apply(out.trees.back(), pick.exchange));
  }

  if (options.verify) {
    if (!options.max_trees || out.trees.size() < *options.max_trees) {
      MultiGraph plain(g.num_vertices());
      for (int l = 1; l <= m; ++l) plain.add_edge(g.ends(l).u, g.ends(l).v);
      BigCount expected = count_matrix_tree(plain);
      if (expected != out.trees.size()) {
        throw InvariantViolation("greedy listing has " + std::to_string(out.trees.size()) +
                                 " trees but the graph has " + expected.str());
      }
    }
    if (!verify_genlex(out.trees)) throw InvariantViolation("greedy listing is not genlex");
  }
  return out;
}

// ---------------------------------------------------------------------------

bool verify_genlex(std::span<const SpanningTree> trees) {
  if (trees.empty()) return true;
  const int m = trees.front().size();
  for (const auto& t : trees) {
    if (t.size() != m) return false;
  }
  struct Range {
    std::size_t lo, hi;
    int label;  // coordinate examined next
  };
  std::vector<Range> stack{{0, trees.size(), m}};
  while (!stack.empty()) {
    Range r = stack.back();
    stack.pop_back();
    if (r.label == 0 || r.hi - r.lo <= 1) continue;
    std::size_t split = r.hi;
    for (std::size_t i = r.lo + 1; i < r.hi; ++i) {
      if (trees[i].contains(r.label) != trees[i - 1].contains(r.label)) {
        if (split != r.hi) return false;  // second change of the last coordinate
        split = i;
      }
    }
    stack.push_back({r.lo, split, r.label - 1});
    if (split != r.hi) stack.push_back({split, r.hi, r.label - 1});
  }
  return true;
}

GrayReport verify_gray_structure(std::span<const SpanningTree> trees) {
  GrayReport rep;
  std::unordered_set<SpanningTree, SpanningTreeHash> seen;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!seen.insert(trees[i]).second) {
      rep.ok = false;
      rep.index = static_cast<long>(i);
      rep.message = "tree " + std::to_string(i) + " repeats an earlier tree";
      return rep;
    }
    if (i > 0) {
      if (trees[i].size() != trees[i - 1].size() || trees[i].count() != trees[i - 1].count()) {
        rep.ok = false;
        rep.index = static_cast<long>(i);
        rep.message = "tree " + std::to_string(i) + " has a different length or weight";
        return rep;
      }
      int d = trees[i].distance(trees[i - 1]);
      if (d != 2) {
        rep.ok = false;
        rep.index = static_cast<long>(i);
        rep.message = "trees " + std::to_string(i - 1) + " and " + std::to_string(i) + " differ in " +
                      std::to_string(d) + " positions";
        return rep;
      }
    }
  }
  return rep;
}

GrayReport verify_gray(const LabeledGraph& g, const Listing& listing, ExchangeKind required) {
  GrayReport rep;
  if (required != ExchangeKind::any && required != ExchangeKind::pivot && !g.has_faces()) {
    throw Error("class '" + std::string(to_string(required)) + "' needs an embedded graph");
  }
  MultiGraph plain(g.num_vertices());
  for (int l = 1; l <= g.num_edges(); ++l) plain.add_edge(g.ends(l).u, g.ends(l).v);
  BigCount expected = count_matrix_tree(plain);
  rep.expected_count = static_cast<std::size_t>(expected);

  for (std::size_t i = 0; i < listing.trees.size(); ++i) {
    if (!is_spanning_tree(g, listing.trees[i])) {
      rep.ok = false;
      rep.index = static_cast<long>(i);
      rep.message = "entry " + std::to_string(i) + " is not a spanning tree";
      return rep;
    }
  }
  GrayReport structure = verify_gray_structure(listing.trees);
  if (!structure.ok) {
    structure.expected_count = rep.expected_count;
    return structure;
  }
  if (expected != listing.trees.size()) {
    rep.ok = false;
    rep.message = "listing has " + std::to_string(listing.trees.size()) + " trees, graph has " + expected.str();
    return rep;
  }
  for (std::size_t i = 0; i + 1 < listing.trees.size(); ++i) {
    Exchange ex;
    for (int l = 1; l <= g.num_edges(); ++l) {
      bool a = listing.trees[i].contains(l), b = listing.trees[i + 1].contains(l);
      if (a && !b) ex.removed = l;
      if (!a && b) ex.added = l;
    }
    if (i < listing.steps.size() && !(listing.steps[i].exchange == ex)) {
      rep.ok = false;
      rep.index = static_cast<long>(i);
      rep.message = "recorded step " + std::to_string(i) + " does not match the trees";
      return rep;
    }
    if (!satisfies(g.classify(ex), required)) {
      rep.ok = false;
      rep.index = static_cast<long>(i);
      rep.message = "step " + std::to_string(i) + " (- " + std::to_string(ex.removed) + " + " +
                    std::to_string(ex.added) + ") is not a " + std::string(to_string(required)) + "-exchange";
      return rep;
    }
  }
  return rep;
}

}  // namespace stgray
