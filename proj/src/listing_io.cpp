#include <charconv>
#include <ostream>
#include <sstream>

#include "stgray/counting.hpp"
#include "stgray/error.hpp"
#include "stgray/treegen.hpp"

namespace stgray {

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int to_int(std::string_view tok, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

void write_listing(std::ostream& os, const LabeledGraph& g, const Listing& listing,
                   std::string_view tiebreak_name) {
  os << "# stgray listing n=" << g.num_vertices() << " m=" << g.num_edges() << " tiebreak=" << tiebreak_name
     << "\n# labels";
  for (EdgeId e : listing.labeling.order()) os << ' ' << e;
  os << '\n';

  bool pivot = true, face = g.has_faces(), paf = g.has_faces(), pof = g.has_faces();
  for (std::size_t i = 0; i < listing.trees.size(); ++i) {
    if (i > 0) {
      const Step& s = listing.steps[i - 1];
      os << "- " << s.exchange.removed << " + " << s.exchange.added;
      std::string tags = class_tags(s.cls);
      if (!tags.empty()) os << " [" << tags << ']';
      os << '\n';
      pivot = pivot && s.cls.pivot;
      face = face && s.cls.face;
      paf = paf && s.cls.paf();
      pof = pof && s.cls.pof();
    }
    os << listing.trees[i].to_string() << '\n';
  }

  MultiGraph plain(g.num_vertices());
  for (int l = 1; l <= g.num_edges(); ++l) plain.add_edge(g.ends(l).u, g.ends(l).v);
  os << "# summary count=" << listing.trees.size() << " expected=" << count_matrix_tree(plain)
     << " genlex=" << yes_no(verify_genlex(listing.trees)) << " pivot=" << yes_no(pivot);
  if (g.has_faces()) {
    os << " face=" << yes_no(face) << " paf=" << yes_no(paf) << " pof=" << yes_no(pof);
  }
  os << '\n';
}

ParsedListing parse_listing(std::string_view text) {
  ParsedListing out;
  std::optional<Exchange> pending;
  bool have_pending = false;
  int line_no = 0, pending_line = 0;
  std::size_t pos = 0;
  int width = -1;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "#") {
      if (tok.size() >= 2 && tok[1] == "labels") {
        std::vector<EdgeId> order;
        for (std::size_t i = 2; i < tok.size(); ++i) order.push_back(to_int(tok[i], line_no));
        try {
          out.labeling = EdgeLabeling::from_order(std::move(order));
        } catch (const Error& e) {
          throw ParseError(line_no, std::string("bad label line: ") + e.what());
        }
      }
    } else if (tok[0][0] == '#') {
      // comment without a space
    } else if (tok[0] == "-") {
      if (tok.size() < 4 || tok[2] != "+") throw ParseError(line_no, "step line must read '- <e> + <f> [classes]'");
      if (out.trees.empty()) throw ParseError(line_no, "step line before the first tree");
      if (have_pending) throw ParseError(line_no, "two step lines in a row");
      Exchange ex{to_int(tok[1], line_no), to_int(tok[3], line_no)};
      if (ex.removed < 1 || ex.added < 1 || ex.removed > width || ex.added > width) {
        throw ParseError(line_no, "step label out of range 1.." + std::to_string(width));
      }
      pending = ex;
      have_pending = true;
      pending_line = line_no;
    } else {
      if (tok.size() != 1) throw ParseError(line_no, "unexpected content '" + std::string(line) + "'");
      SpanningTree t;
      try {
        t = SpanningTree::from_string(tok[0]);
      } catch (const Error&) {
        throw ParseError(line_no, "characteristic vector must consist of 0 and 1");
      }
      if (width == -1) width = t.size();
      if (t.size() != width) {
        throw ParseError(line_no, "vector length " + std::to_string(t.size()) + " differs from " + std::to_string(width));
      }
      if (!out.trees.empty()) out.steps.push_back(pending);
      pending.reset();
      have_pending = false;
      out.trees.push_back(std::move(t));
    }
    if (end == text.size()) break;
  }
  if (have_pending) throw ParseError(pending_line, "listing ends with a step line");
  if (out.labeling && width != -1 && out.labeling->size() != width) {
    throw ParseError(line_no, "label line has " + std::to_string(out.labeling->size()) + " entries for vectors of length " +
                                  std::to_string(width));
  }
  return out;
}

Listing to_listing(const ParsedListing& parsed, const LabeledGraph& g) {
  Listing out;
  out.labeling = g.labeling();
  out.trees = parsed.trees;
  if (!out.trees.empty()) out.initial = out.trees.front();
  for (const auto& t : out.trees) {
    if (t.size() != g.num_edges()) {
      throw Error("listing vectors have length " + std::to_string(t.size()) + " but the graph has " +
                  std::to_string(g.num_edges()) + " edges");
    }
  }
  for (std::size_t i = 0; i + 1 < out.trees.size(); ++i) {
    const auto& a = out.trees[i];
    const auto& b = out.trees[i + 1];
    if (a.distance(b) != 2 || a.count() != b.count()) {
      throw Error("entries " + std::to_string(i) + " and " + std::to_string(i + 1) +
                  " do not differ by a single exchange (distance " + std::to_string(a.distance(b)) + ")");
    }
    Exchange ex;
    for (int l = 1; l <= g.num_edges(); ++l) {
      if (a.contains(l) && !b.contains(l)) ex.removed = l;
      if (!a.contains(l) && b.contains(l)) ex.added = l;
    }
    if (i < parsed.steps.size() && parsed.steps[i] && !(*parsed.steps[i] == ex)) {
      throw Error("recorded step " + std::to_string(i) + " (- " + std::to_string(parsed.steps[i]->removed) + " + " +
                  std::to_string(parsed.steps[i]->added) + ") disagrees with the vectors");
    }
    out.steps.push_back({ex, g.classify(ex)});
  }
  return out;
}

}  // namespace stgray
