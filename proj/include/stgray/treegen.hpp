#pragma once

// Greedy Gray-code generation of spanning trees.
//
// Starting from an initial tree, each step applies the exchange that
// minimises the larger of its two labels among all exchanges leading to an
// unvisited tree. Exchanges sharing that larger label form a tie, which is
// resolved by a TieBreak. Listings are genlex and complete for every
// labeling, initial tree and tie-breaking rule.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgray/spanning_tree.hpp"

namespace stgray {

struct Candidate {
  Exchange exchange;
  ExchangeClass cls;
};

/// Picks one exchange out of a non-empty tie set. All candidates share the
/// same larger label and differ only in the smaller one.
class TieBreak {
 public:
  using Rule = std::function<std::size_t(std::span<const Candidate>)>;

  /// Maximise the smaller label.
  static TieBreak closest();
  /// Minimise the smaller label.
  static TieBreak farthest();
  /// Uniform choice from a seeded generator.
  static TieBreak random(std::uint64_t seed);
  /// Restrict to candidates of `kind`, then defer to `fallback`. An empty
  /// restriction raises InvariantViolation.
  static TieBreak prefer(ExchangeKind kind, TieBreak fallback = closest());
  /// closest | farthest | prefer-pivot | prefer-pof | prefer-pof-inner |
  /// prefer-paf | prefer-face. Throws Error for other names.
  static TieBreak from_name(std::string_view name);

  const std::string& name() const { return name_; }
  bool needs_faces() const { return needs_faces_; }
  std::size_t choose(std::span<const Candidate> ties) const;

 private:
  TieBreak(std::string name, Rule rule, bool needs_faces)
      : name_(std::move(name)), rule_(std::move(rule)), needs_faces_(needs_faces) {}

  std::string name_;
  Rule rule_;
  bool needs_faces_ = false;
};

/// The exchange with the largest smaller label. Throws on an empty set.
Exchange tiebreak_closest(std::span<const Exchange> ties);

struct Step {
  Exchange exchange;
  ExchangeClass cls;
};

struct Listing {
  std::vector<SpanningTree> trees;
  std::vector<Step> steps;  // steps[i] turns trees[i] into trees[i+1]
  EdgeLabeling labeling;
  SpanningTree initial;
};

struct GenOptions {
  /// Stop after this many trees; completeness is then not checked.
  std::optional<std::size_t> max_trees;
  /// Check completeness against the matrix-tree count and the genlex
  /// property before returning; a mismatch raises InvariantViolation.
  bool verify = true;
};

/// Throws Error if `initial` is not a spanning tree or the rule needs face
/// information that `g` lacks.
Listing algorithm_g(const LabeledGraph& g, const SpanningTree& initial, const TieBreak& tiebreak,
                    const GenOptions& options = {});

/// Every group of vectors sharing a suffix is contiguous.
bool verify_genlex(std::span<const SpanningTree> trees);
inline bool verify_genlex(const Listing& l) { return verify_genlex(l.trees); }

struct GrayReport {
  bool ok = true;
  std::string message;   // first violation
  long index = -1;       // index of the offending tree/step, -1 if none
  std::size_t expected_count = 0;
};

/// Checks spanning-tree validity, no repetition, completeness against the
/// matrix-tree count, distance 2 between consecutive trees, and that every
/// step belongs to `required`. Step classes are recomputed from `g`.
GrayReport verify_gray(const LabeledGraph& g, const Listing& listing, ExchangeKind required);

/// Step-level checks that need no graph: no repetition, equal weights,
/// distance 2 between neighbours.
GrayReport verify_gray_structure(std::span<const SpanningTree> trees);

// ---------------------------------------------------------------------------
// Line-oriented listing format
//
//   # stgray listing n=<n> m=<m> tiebreak=<name>
//   # labels <edge id of label 1> ... <edge id of label m>
//   <chi vector, label 1 leftmost>
//   - <removed> + <added> [<classes>]
//   <chi vector>
//   ...
//   # summary count=<k> expected=<t> genlex=yes|no pivot=yes|no ...

void write_listing(std::ostream& os, const LabeledGraph& g, const Listing& listing,
                   std::string_view tiebreak_name);

struct ParsedListing {
  std::vector<SpanningTree> trees;
  std::vector<std::optional<Exchange>> steps;  // absent when the file has no step line
  std::optional<EdgeLabeling> labeling;
};

/// Throws ParseError with a line number on malformed input.
ParsedListing parse_listing(std::string_view text);

/// Rebuilds a Listing, deriving any missing step from consecutive vectors.
/// Throws Error if consecutive vectors do not differ in exactly two positions
/// or a recorded step disagrees with the vectors.
Listing to_listing(const ParsedListing& parsed, const LabeledGraph& g);

}  // namespace stgray
