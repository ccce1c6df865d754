#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numeric>

#include "stgray/counting.hpp"
#include "stgray/dualtree.hpp"
#include "stgray/error.hpp"
#include "stgray/flipgraph.hpp"
#include "stgray/treegen.hpp"

namespace py = pybind11;
using namespace stgray;

namespace {

py::int_ to_py(const BigCount& x) { return py::int_(py::str(x.str())); }

EmbeddedGraph embed(const GraphInput& in) {
  std::vector<VertexId> order(in.graph.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  return EmbeddedGraph(in.graph, in.outer ? *in.outer : order);
}

EdgeLabeling labeling_for(const EmbeddedGraph& e, std::optional<int> root) {
  if (!is_two_connected(e.graph()) || e.graph().has_loops()) {
    if (root) throw Error("root selection needs a 2-connected graph");
    return per_block_labeling(e);
  }
  SplitDual s = split_dual(e);
  int r = root ? s.num_inner + *root : default_root(e, s);
  return dual_tree_labeling(orient_split_dual(std::move(s), r));
}

}  // namespace

PYBIND11_MODULE(_stgray, m) {
  m.doc() = "Genlex Gray codes of spanning trees of outerplane graphs";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  m.def("fib", [](int k) { return to_py(fib(k)); }, py::arg("k"));

  m.def(
      "count",
      [](const std::string& text) {
        MultiGraph g = parse_graph(text);
        return py::make_tuple(to_py(count_matrix_tree(g)), to_py(count_del_contract(g)));
      },
      py::arg("graph"), "(matrix-tree count, deletion-contraction count) of an edge-list text");

  m.def(
      "fib_bound",
      [](const std::string& text) { return check_fib_bound(embed(parse_graph_input(text))).to_string(); },
      py::arg("graph"));

  m.def(
      "dual_labeling",
      [](const std::string& text, std::optional<int> root) {
        return labeling_for(embed(parse_graph_input(text)), root).labels();
      },
      py::arg("graph"), py::arg("root") = py::none(), "Label of every edge id");

  m.def(
      "generate",
      [](const std::string& text, const std::string& tiebreak, std::optional<std::vector<int>> initial,
         std::optional<int> root) {
        EmbeddedGraph e = embed(parse_graph_input(text));
        LabeledGraph g(e, labeling_for(e, root));
        SpanningTree start = initial ? SpanningTree::from_labels(g.num_edges(), *initial) : first_spanning_tree(g);
        Listing l = algorithm_g(g, start, TieBreak::from_name(tiebreak));
        std::vector<std::string> trees;
        for (const auto& t : l.trees) trees.push_back(t.to_string());
        std::vector<py::tuple> steps;
        for (const auto& s : l.steps) {
          steps.push_back(py::make_tuple(s.exchange.removed, s.exchange.added, class_tags(s.cls)));
        }
        return py::make_tuple(trees, steps);
      },
      py::arg("graph"), py::arg("tiebreak") = "closest", py::arg("initial") = py::none(),
      py::arg("root") = py::none(), "(characteristic vectors, steps) of the greedy listing");

  m.def(
      "verify_genlex",
      [](const std::vector<std::string>& vectors) {
        std::vector<SpanningTree> trees;
        for (const auto& v : vectors) trees.push_back(SpanningTree::from_string(v));
        return verify_genlex(trees);
      },
      py::arg("vectors"));

  m.def(
      "hamilton",
      [](const std::string& text, const std::string& restriction, bool cycle) {
        EmbeddedGraph e = embed(parse_graph_input(text));
        LabeledGraph g(e, EdgeLabeling::identity(e.graph().num_edges()));
        FlipGraph fg = build_flip_graph(g, parse_exchange_kind(restriction));
        HamiltonOptions opt;
        opt.cycle = cycle;
        HamiltonResult r = hamilton_path(fg, opt);
        return py::make_tuple(std::string(to_string(r.outcome)), r.path);
      },
      py::arg("graph"), py::arg("restriction") = "any", py::arg("cycle") = true);
}
