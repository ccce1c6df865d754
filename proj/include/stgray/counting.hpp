#pragma once

// Exact spanning-tree counts and the Fibonacci extremal bound for
// outerplane multigraphs.

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stgray/embedgraph.hpp"

namespace stgray {

using BigCount = boost::multiprecision::cpp_int;

/// f_0 = 0, f_1 = 1, f_{k+1} = f_k + f_{k-1}; grows on demand.
class FibTable {
 public:
  const BigCount& operator()(int k);

 private:
  std::vector<BigCount> values_{0, 1};
};

BigCount fib(int k);

/// Determinant of a reduced Laplacian by fraction-free elimination. Parallel
/// edges add multiplicity, loops are ignored, disconnected graphs give 0.
BigCount count_matrix_tree(const MultiGraph& g);

/// t(G) = t(G - e) + t(G / e) over non-loop edges, memoised on a relabelled
/// encoding of the multigraph. Contraction drops the loops it creates.
BigCount count_del_contract(const MultiGraph& g);

struct FibBoundReport {
  int m = 0;
  BigCount t;
  BigCount bound;        // f_{m+1}
  bool equality = false;   // t == bound
  bool predicate = false;  // 2-connected triangulation, path weak dual, digons on the outer face
  bool bound_holds() const { return t <= bound; }
  bool consistent() const { return bound_holds() && equality == predicate; }
  /// "t=<t> bound=f_<m+1>=<bound> equality=yes|no predicate=yes|no"
  std::string to_string() const;
};

/// The structural side of the equality case.
bool is_fibonacci_extremal(const EmbeddedGraph& e, TriangulationMode mode);

FibBoundReport check_fib_bound(const EmbeddedGraph& e,
                               TriangulationMode mode = TriangulationMode::multigraph);

/// Fan with `triangles` inner triangles (hub 0, path 1..triangles+1) plus a
/// digon on the outer spoke at each of the first `digon_ends` path ends.
/// Its weak dual is a path, so t = f_{m+1}. Throws for triangles < 1 or
/// digon_ends outside 0..2.
EmbeddedGraph extremal_family(int triangles, int digon_ends);

/// f_i * f_j <= f_{i+j-1} with equality iff i == 1 or j == 1.
bool check_fib_product(int i, int j);

// ---------------------------------------------------------------------------
// Outerplane multigraph enumeration
//
// Vertices sit on a circle in order 0..n-1 and the graph is a multiset of
// pairwise non-crossing chords. Dihedral duplicates are removed.

struct OuterplaneEnumOptions {
  int max_edges = 6;
  int min_edges = 1;
  bool two_connected_only = true;
  bool allow_parallel = true;
  /// Only graphs with every inner face of length <= 3 (<= 3 with parallel
  /// edges, == 3 otherwise).
  bool triangulations_only = false;
};

/// Calls `visit` with each embedded graph. Edges are listed by chord with
/// parallel copies adjacent; the outer order is the identity.
void for_each_outerplane(const OuterplaneEnumOptions& options,
                         const std::function<void(const EmbeddedGraph&)>& visit);

std::vector<EmbeddedGraph> enumerate_outerplane(const OuterplaneEnumOptions& options);

}  // namespace stgray
