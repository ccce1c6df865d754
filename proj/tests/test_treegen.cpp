#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "stgray/counting.hpp"
#include "stgray/dualtree.hpp"
#include "stgray/error.hpp"
#include "stgray/treegen.hpp"

using namespace stgray;

namespace {

LabeledGraph fan_graph(int n) {
  EmbeddedGraph f = oracle::fan(n);
  EdgeLabeling l = dual_tree_labeling(orient_split_dual(split_dual(f), default_root(f, split_dual(f))));
  return LabeledGraph(f, l);
}

LabeledGraph file_labeled(const char* name) {
  GraphInput in = read_graph_file(std::string(STGRAY_DATA_DIR) + "/" + name);
  return LabeledGraph(oracle::embed(in), EdgeLabeling::identity(in.graph.num_edges()));
}

std::set<std::pair<int, int>> unordered(const std::vector<Exchange>& xs) {
  std::set<std::pair<int, int>> out;
  for (const auto& x : xs) out.insert({x.smaller(), x.larger()});
  return out;
}

std::vector<std::string> strings(const Listing& l) {
  std::vector<std::string> out;
  for (const auto& t : l.trees) out.push_back(t.to_string());
  return out;
}

// Replays the greedy rule on a finished listing: each step must carry the
// smallest larger label among exchanges to unvisited trees and be one of
// the tied exchanges.
bool greedy_consistent(int n, const oracle::EdgeList& edges, const Listing& l, bool closest) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i + 1 < l.trees.size(); ++i) {
    std::string cur = l.trees[i].to_string();
    seen.insert(cur);
    int best = 1 << 30;
    std::set<int> smaller;
    for (auto [rm, add] : oracle::exchanges(n, edges, cur)) {
      std::string next = cur;
      next[rm - 1] = '0';
      next[add - 1] = '1';
      if (seen.count(next)) continue;
      int big = std::max(rm, add);
      if (big < best) {
        best = big;
        smaller.clear();
      }
      if (big == best) smaller.insert(std::min(rm, add));
    }
    const Exchange& ex = l.steps[i].exchange;
    if (ex.larger() != best || !smaller.count(ex.smaller())) return false;
    if (closest && ex.smaller() != *smaller.rbegin()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("is_spanning_tree") {
  LabeledGraph g = fan_graph(5);
  CHECK(is_spanning_tree(g, SpanningTree::from_labels(7, std::vector<int>{1, 2, 5, 6})));
  CHECK_FALSE(is_spanning_tree(g, SpanningTree::from_labels(7, std::vector<int>{1, 2, 3, 6})));
  CHECK_FALSE(is_spanning_tree(g, SpanningTree::from_labels(7, std::vector<int>{1, 2, 5})));
  LabeledGraph loop(parse_graph("2 2\n0 1\n1 1\n"), EdgeLabeling::identity(2));
  CHECK(is_spanning_tree(loop, SpanningTree::from_string("10")));
  CHECK_FALSE(is_spanning_tree(loop, SpanningTree::from_string("01")));
}

TEST_CASE("fan exchange set and the closest tie-break") {
  LabeledGraph g = fan_graph(5);
  SpanningTree t = SpanningTree::from_labels(7, std::vector<int>{1, 2, 5, 6});
  auto xs = valid_exchanges(g, t);
  std::set<std::pair<int, int>> expected{{1, 3}, {2, 3}, {1, 4}, {2, 4}, {4, 5}, {5, 7}, {6, 7}};
  CHECK(unordered(xs) == expected);
  CHECK(xs.size() == 7);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    CHECK(std::make_pair(xs[i - 1].larger(), xs[i - 1].smaller()) < std::make_pair(xs[i].larger(), xs[i].smaller()));
  }
  std::vector<Exchange> ties;
  for (const auto& x : xs) {
    if (x.larger() == 4) ties.push_back(x);
  }
  CHECK(ties.size() == 2);
  Exchange pick = tiebreak_closest(ties);
  CHECK(pick.smaller() == 2);
  CHECK(pick.larger() == 4);
  CHECK_THROWS(tiebreak_closest(std::vector<Exchange>{}));
}

TEST_CASE("valid_exchanges agrees with brute force") {
  OuterplaneEnumOptions opt;
  opt.max_edges = 8;
  std::mt19937_64 rng(11);
  for_each_outerplane(opt, [&](const EmbeddedGraph& e) {
    auto perm = oracle::random_permutation(e.graph().num_edges(), rng);
    LabeledGraph g(e, EdgeLabeling::from_labels(perm));
    auto edges = oracle::edge_list(g);
    for (const auto& s : oracle::all_trees(g.num_vertices(), edges)) {
      SpanningTree t = SpanningTree::from_string(s);
      CHECK(is_spanning_tree(g, t));
      std::set<std::pair<int, int>> got;
      for (const auto& x : valid_exchanges(g, t)) got.insert({x.removed, x.added});
      CHECK(got == oracle::exchanges(g.num_vertices(), edges, s));
    }
  });
}

TEST_CASE("triangle and digon exchanges") {
  LabeledGraph tri(parse_graph("3 3\n0 1\n1 2\n0 2\n"), EdgeLabeling::identity(3));
  CHECK(valid_exchanges(tri, SpanningTree::from_string("110")).size() == 2);
  LabeledGraph digon(parse_graph("2 3\n0 1\n0 1\n0 1\n"), EdgeLabeling::identity(3));
  auto xs = valid_exchanges(digon, SpanningTree::from_string("010"));
  CHECK(unordered(xs) == std::set<std::pair<int, int>>{{1, 2}, {2, 3}});
  for (const auto& x : xs) CHECK(digon.classify(x).pivot);
}

TEST_CASE("diamond classification") {
  LabeledGraph g = file_labeled("diamond.txt");
  // labels follow the file: 1=(0,1) 2=(1,2) 3=(0,2) 4=(0,3) 5=(2,3); the
  // outer face is 0-1-2-3
  CHECK_FALSE(g.classify({1, 5}).pivot);
  CHECK_FALSE(g.classify({2, 4}).pivot);
  CHECK(g.classify({1, 5}).face);
  CHECK_FALSE(g.classify({1, 5}).face_inner);
  CHECK_FALSE(g.classify({2, 4}).paf());
  CHECK(g.classify({2, 4}).pof());
  CHECK(class_tags(g.classify({2, 4})) == "face,pof");
  CHECK(g.classify({1, 3}).pivot);
  CHECK(g.classify({1, 3}).face_inner);
  CHECK(class_tags(g.classify({1, 3})) == "pivot,face,face-inner,paf,pof");
  CHECK_FALSE(g.classify({1, 4}).face_inner);
  CHECK(g.classify({1, 4}).paf());
  // (1,2) and (0,3) share no inner face
  CHECK(class_tags(g.classify({2, 4})).find("inner") == std::string::npos);
  LabeledGraph plain(parse_graph("4 5\n0 1\n1 2\n0 2\n0 3\n2 3\n"), EdgeLabeling::identity(5));
  CHECK(class_tags(plain.classify({2, 4})).empty());
}

TEST_CASE("greedy generator on small graphs") {
  struct Case {
    const char* file;
    std::size_t count;
  };
  for (Case c : {Case{"F5.txt", 21}, Case{"triangle.txt", 3}, Case{"diamond.txt", 8}, Case{"C4.txt", 4},
                 Case{"digon.txt", 2}}) {
    CAPTURE(c.file);
    LabeledGraph g = file_labeled(c.file);
    auto trees = oracle::all_trees(g.num_vertices(), oracle::edge_list(g));
    REQUIRE(trees.size() == c.count);
    for (const char* tb : {"closest", "farthest", "prefer-pivot", "prefer-pof"}) {
      for (const auto& s : trees) {
        Listing l;
        try {
          l = algorithm_g(g, SpanningTree::from_string(s), TieBreak::from_name(tb));
        } catch (const InvariantViolation&) {
          // a preference can legitimately find no candidate on non-fan graphs
          CHECK(std::string(tb).rfind("prefer", 0) == 0);
          continue;
        }
        CHECK(l.trees.size() == c.count);
        CHECK(l.trees.front().to_string() == s);
        CHECK(oracle::genlex(strings(l)));
        auto got = strings(l);
        std::sort(got.begin(), got.end());
        auto want = trees;
        std::sort(want.begin(), want.end());
        CHECK(got == want);
        CHECK(greedy_consistent(g.num_vertices(), oracle::edge_list(g), l, std::string(tb) == "closest"));
      }
    }
  }
}

TEST_CASE("fan listing with the default start") {
  LabeledGraph g = fan_graph(5);
  Listing l = algorithm_g(g, first_spanning_tree(g), TieBreak::closest());
  CHECK(l.trees.size() == 21);
  CHECK(l.trees.front().to_string() == "1101010");
  CHECK(l.trees[5].to_string() == "1100110");
  CHECK(l.steps[5].exchange == Exchange{2, 4});
  // starts at the L-shaped tree and ends at its mirror image, one exchange away
  CHECK(l.trees.back().to_string() == "0101011");
  CHECK(l.trees.front().distance(l.trees.back()) == 2);
  for (const auto& s : l.steps) CHECK(s.cls.paf());
  CHECK(verify_gray(g, l, ExchangeKind::paf).ok);
}

TEST_CASE("tie-break rules") {
  std::vector<Candidate> ties{{{1, 5}, {true, false, false}}, {{5, 3}, {false, true, true}}, {{2, 5}, {true, true, true}}};
  CHECK(TieBreak::closest().choose(ties) == 1);
  CHECK(TieBreak::farthest().choose(ties) == 0);
  CHECK(TieBreak::prefer(ExchangeKind::paf).choose(ties) == 2);
  CHECK(TieBreak::prefer(ExchangeKind::pivot).choose(ties) == 2);
  CHECK(TieBreak::prefer(ExchangeKind::pivot, TieBreak::farthest()).choose(ties) == 0);
  std::vector<Candidate> none{{{1, 5}, {false, false, false}}};
  CHECK_THROWS_AS(TieBreak::prefer(ExchangeKind::pivot).choose(none), InvariantViolation);
  TieBreak r1 = TieBreak::random(5), r2 = TieBreak::random(5);
  for (int i = 0; i < 20; ++i) {
    std::size_t a = r1.choose(ties);
    CHECK(a == r2.choose(ties));
    CHECK(a < ties.size());
  }
  CHECK_THROWS_AS(TieBreak::from_name("nearest"), Error);
  CHECK(TieBreak::from_name("prefer-paf").needs_faces());
  CHECK_FALSE(TieBreak::from_name("closest").needs_faces());
  LabeledGraph plain(parse_graph("3 3\n0 1\n1 2\n0 2\n"), EdgeLabeling::identity(3));
  CHECK_THROWS_AS(algorithm_g(plain, SpanningTree::from_string("110"), TieBreak::from_name("prefer-face")), Error);
  CHECK_THROWS_AS(algorithm_g(plain, SpanningTree::from_string("111"), TieBreak::closest()), Error);
}

TEST_CASE("genlex examples") {
  auto vec = [](std::initializer_list<const char*> xs) {
    std::vector<SpanningTree> out;
    for (const char* x : xs) out.push_back(SpanningTree::from_string(x));
    return out;
  };
  CHECK(verify_genlex(vec({"00", "10", "01", "11"})));
  CHECK(verify_genlex(vec({"10", "00", "11", "01"})));
  CHECK_FALSE(verify_genlex(vec({"00", "01", "10", "11"})));
  CHECK_FALSE(verify_genlex(vec({"001", "100", "011", "101"})));
  CHECK(verify_genlex(vec({})));
  CHECK(verify_genlex(vec({"1"})));
}

TEST_CASE("genlex agrees with the suffix oracle") {
  std::mt19937_64 rng(2024);
  int agree_true = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 64);
    const int k = 1 + static_cast<int>(rng() % 12);
    const int used = std::min(m, 1 + static_cast<int>(rng() % 5));
    std::set<std::string> pool;
    for (int i = 0; i < k; ++i) {
      std::string s(m, '0');
      for (int j = m - used; j < m; ++j) s[j] = rng() % 2 ? '1' : '0';
      if (m > used && rng() % 2) s[rng() % (m - used)] = '1';
      pool.insert(s);
    }
    std::vector<std::string> xs(pool.begin(), pool.end());
    if (trial % 3 == 0) {
      // reflected order by suffix is always genlex
      std::sort(xs.begin(), xs.end(), [](std::string a, std::string b) {
        std::reverse(a.begin(), a.end());
        std::reverse(b.begin(), b.end());
        return a < b;
      });
    } else {
      std::shuffle(xs.begin(), xs.end(), rng);
    }
    std::vector<SpanningTree> ts;
    for (const auto& s : xs) ts.push_back(SpanningTree::from_string(s));
    bool want = oracle::genlex(xs);
    CHECK(verify_genlex(ts) == want);
    agree_true += want;
  }
  CHECK(agree_true > 1000);
}

TEST_CASE("verify_gray reports the first bad entry") {
  LabeledGraph g = fan_graph(5);
  Listing l = algorithm_g(g, first_spanning_tree(g), TieBreak::closest());
  Listing dup = l;
  dup.trees[4] = dup.trees[2];
  GrayReport r = verify_gray(g, dup, ExchangeKind::any);
  CHECK_FALSE(r.ok);
  CHECK(r.index >= 0);
  CHECK(r.index <= 4);

  Listing shortl = l;
  shortl.trees.pop_back();
  shortl.steps.pop_back();
  GrayReport rs = verify_gray(g, shortl, ExchangeKind::any);
  CHECK_FALSE(rs.ok);
  CHECK(rs.expected_count == 21);

  // the fan listing is all pivot, but a farthest listing of the diamond is not
  LabeledGraph d = file_labeled("diamond.txt");
  bool some_fail = false;
  for (const auto& s : oracle::all_trees(4, oracle::edge_list(d))) {
    Listing ld = algorithm_g(d, SpanningTree::from_string(s), TieBreak::farthest());
    CHECK(verify_gray(d, ld, ExchangeKind::any).ok);
    some_fail = some_fail || !verify_gray(d, ld, ExchangeKind::pivot).ok;
  }
  CHECK(some_fail);

  CHECK(verify_gray_structure(l.trees).ok);
  std::vector<SpanningTree> far{SpanningTree::from_string("1100"), SpanningTree::from_string("0011")};
  CHECK_FALSE(verify_gray_structure(far).ok);
}

TEST_CASE("max_trees truncates without verification") {
  LabeledGraph g = fan_graph(8);
  GenOptions opt;
  opt.max_trees = 10;
  Listing l = algorithm_g(g, first_spanning_tree(g), TieBreak::closest(), opt);
  CHECK(l.trees.size() == 10);
  CHECK(l.steps.size() == 9);
}

TEST_CASE("listing round-trip") {
  LabeledGraph g = fan_graph(5);
  Listing l = algorithm_g(g, first_spanning_tree(g), TieBreak::closest());
  std::ostringstream os;
  write_listing(os, g, l, "closest");
  const std::string text = os.str();
  CHECK(text.rfind("# stgray listing n=5 m=7 tiebreak=closest\n", 0) == 0);
  CHECK(text.find("# summary count=21 expected=21 genlex=yes pivot=yes face=yes paf=yes pof=yes") != std::string::npos);
  ParsedListing p = parse_listing(text);
  REQUIRE(p.labeling);
  CHECK(*p.labeling == g.labeling());
  Listing back = to_listing(p, g);
  CHECK(back.trees == l.trees);
  REQUIRE(back.steps.size() == l.steps.size());
  for (std::size_t i = 0; i < l.steps.size(); ++i) {
    CHECK(back.steps[i].exchange == l.steps[i].exchange);
    CHECK(back.steps[i].cls == l.steps[i].cls);
  }
  ParsedListing bare = parse_listing("1101010\n1100110\n");
  CHECK(bare.steps.size() == 1);
  CHECK_FALSE(bare.steps[0].has_value());
  CHECK(to_listing(bare, g).steps[0].exchange == Exchange{4, 5});
}

TEST_CASE("listing parse errors") {
  auto line_of = [](const char* text) {
    try {
      parse_listing(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("- 1 + 2\n110\n") == 1);
  CHECK(line_of("110\n- 1 + 3\n- 1 + 3\n011\n") == 3);
  CHECK(line_of("110\n- 1 + 3\n") == 2);
  CHECK(line_of("110\n1100\n") == 2);
  CHECK(line_of("110\n1a0\n") == 2);
  CHECK(line_of("110\n- 1 + 9\n011\n") == 2);
  CHECK(line_of("# labels 0 1\n110\n") > 0);
  CHECK(line_of("110\n011\n") == -1);
}

TEST_CASE("listings with a gap or a wrong step are rejected") {
  LabeledGraph g = fan_graph(5);
  CHECK_THROWS_AS(to_listing(parse_listing("1101010\n0110110\n"), g), Error);
  CHECK_THROWS_AS(to_listing(parse_listing("1101010\n- 1 + 3\n1100110\n"), g), Error);
  CHECK_THROWS_AS(to_listing(parse_listing("110\n101\n"), g), Error);
}
