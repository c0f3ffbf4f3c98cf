#ifndef PHI_TEXT_FORMAT_HPP
#define PHI_TEXT_FORMAT_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/error.hpp"
#include "phi/matrix_solver.hpp"
#include "phi/names.hpp"
#include "phi/quiver.hpp"
#include "phi/trivial_extension.hpp"

namespace phi {

// Line-oriented text format, '#' starts a comment.
//
//   vertex v1 v2 ...            arrow name src tgt
//   zero a1 a2 ... ak           commute a1 ... ak = b1 ... bm
//   cycle a1 ... ak             rel2 a1 ... ak
//   poset / elem x y z / le x y
//
// Parsing normalizes: vertices sorted by name, arrows sorted by name.

enum class DocumentKind { algebra, presentation, poset };

struct Document {
  DocumentKind kind = DocumentKind::algebra;
  Quiver quiver;
  std::vector<Path> zero;
  std::vector<CommutativityPair> commute;
  std::vector<std::vector<ArrowId>> cycles;
  std::optional<std::vector<Path>> rel2;
  std::optional<Poset> poset;
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line.substr(0, line.find('#')));
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

inline std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    auto words = tokens(line);
    if (!words.empty()) out.push_back({n, std::move(words)});
  }
  return out;
}

template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

inline std::string join(const std::vector<std::string>& words, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) out += (i ? sep : "") + words[i];
  return out;
}

inline Poset parse_poset(const std::vector<Line>& lines) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
  std::size_t last = 0;
  for (const auto& l : lines) {
    const auto& w = l.words;
    last = l.number;
    if (w[0] == "poset") {
      if (w.size() != 1) throw ParseError(l.number, "'poset' takes no arguments");
    } else if (w[0] == "elem") {
      elements.insert(elements.end(), w.begin() + 1, w.end());
    } else if (w[0] == "le") {
      if (w.size() != 3) throw ParseError(l.number, "expected 'le x y'");
      leq.emplace_back(w[1], w[2]);
    } else {
      throw ParseError(l.number, "unexpected keyword '" + w[0] + "' in a poset file");
    }
  }
  std::sort(elements.begin(), elements.end(), NaturalLess{});
  for (const auto& l : lines)
    if (l.words[0] == "le")
      for (std::size_t k = 1; k < 3; ++k)
        if (!std::binary_search(elements.begin(), elements.end(), l.words[k], NaturalLess{}))
          throw ParseError(l.number, "unknown element '" + l.words[k] + "'");
  return at_line(last, [&] { return Poset::generated_by(elements, leq); });
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  const auto lines = detail::content_lines(text);
  Document doc;
  if (!lines.empty() && lines.front().words[0] == "poset") {
    doc.kind = DocumentKind::poset;
    doc.poset = detail::parse_poset(lines);
    return doc;
  }

  // first pass: the quiver
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> arrows;
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w[0] == "vertex") {
      if (w.size() < 2) throw ParseError(l.number, "'vertex' needs at least one name");
      vertices.insert(vertices.end(), w.begin() + 1, w.end());
    } else if (w[0] == "arrow") {
      if (w.size() != 4) throw ParseError(l.number, "expected 'arrow name source target'");
      vertices.push_back(w[2]);
      vertices.push_back(w[3]);
      arrows.emplace_back(l.number, w);
    } else if (w[0] != "zero" && w[0] != "commute" && w[0] != "cycle" && w[0] != "rel2") {
      throw ParseError(l.number, "unknown keyword '" + w[0] + "'");
    }
  }
  std::sort(vertices.begin(), vertices.end(), NaturalLess{});
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::stable_sort(arrows.begin(), arrows.end(),
                   [](const auto& x, const auto& y) { return natural_compare(x.second[1], y.second[1]) < 0; });
  for (const auto& v : vertices) doc.quiver.add_vertex(v);
  for (const auto& [n, w] : arrows) detail::at_line(n, [&] { return doc.quiver.add_arrow(w[1], w[2], w[3]); });

  // second pass: relations and cycles
  auto path = [&](const detail::Line& l, std::vector<std::string> names) {
    if (names.empty()) throw ParseError(l.number, "empty path");
    for (const auto& name : names)
      if (!doc.quiver.find_arrow(name)) throw ParseError(l.number, "unknown arrow '" + name + "'");
    return detail::at_line(l.number, [&] { return Path::of(doc.quiver, names); });
  };
  bool rel2_seen = false;
  for (const auto& l : lines) {
    const auto& w = l.words;
    std::vector<std::string> rest(w.begin() + 1, w.end());
    if (w[0] == "zero") {
      doc.zero.push_back(path(l, rest));
    } else if (w[0] == "commute") {
      auto eq = std::find(rest.begin(), rest.end(), "=");
      if (eq == rest.end() || std::find(eq + 1, rest.end(), "=") != rest.end())
        throw ParseError(l.number, "expected 'commute p = q'");
      doc.commute.push_back({path(l, {rest.begin(), eq}), path(l, {eq + 1, rest.end()})});
    } else if (w[0] == "cycle") {
      if (rest.empty()) throw ParseError(l.number, "empty cycle");
      std::vector<ArrowId> ids;
      for (const auto& name : rest) {
        auto a = doc.quiver.find_arrow(name);
        if (!a) throw ParseError(l.number, "unknown arrow '" + name + "'");
        ids.push_back(*a);
      }
      detail::at_line(l.number, [&] { return make_cycle(doc.quiver, ids); });
      doc.cycles.push_back(std::move(ids));
    } else if (w[0] == "rel2") {
      if (!doc.rel2) doc.rel2.emplace();
      doc.rel2->push_back(path(l, rest));
      rel2_seen = true;
    }
  }
  if (!doc.cycles.empty()) {
    doc.kind = DocumentKind::presentation;
    for (const auto& l : lines)
      if (l.words[0] == "zero" || l.words[0] == "commute")
        throw ParseError(l.number, "relations are not allowed next to 'cycle' lines");
  } else if (rel2_seen) {
    throw ParseError(lines.back().number, "'rel2' lines need 'cycle' lines");
  }
  // validate relations now so errors carry a line number
  if (doc.kind == DocumentKind::algebra) {
    std::size_t n = 0;
    for (const auto& l : lines)
      if (l.words[0] == "zero" || l.words[0] == "commute") n = l.number;
    detail::at_line(n, [&] { return BoundAlgebra(doc.quiver, doc.zero, doc.commute); });
  }
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::parse, "cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline BoundAlgebra to_algebra(const Document& doc) {
  if (doc.kind != DocumentKind::algebra) fail(ErrorKind::parse, "expected a bound quiver algebra");
  return BoundAlgebra(doc.quiver, doc.zero, doc.commute);
}

inline TrivExtPresentation to_presentation(const Document& doc) {
  if (doc.kind != DocumentKind::presentation) fail(ErrorKind::parse, "expected a presentation with 'cycle' lines");
  return complete_presentation(doc.quiver, doc.cycles, doc.rel2);
}

inline Poset to_poset(const Document& doc) {
  if (doc.kind != DocumentKind::poset) fail(ErrorKind::parse, "expected a poset");
  return *doc.poset;
}

inline BoundAlgebra parse_algebra(const std::string& text) { return to_algebra(parse_document(text)); }
inline TrivExtPresentation parse_presentation(const std::string& text) { return to_presentation(parse_document(text)); }
inline Poset parse_poset(const std::string& text) { return to_poset(parse_document(text)); }

// Emission

namespace detail {

inline void emit_quiver(std::ostringstream& out, const Quiver& q) {
  std::vector<std::string> vertices = q.vertex_names();
  std::sort(vertices.begin(), vertices.end(), NaturalLess{});
  if (!vertices.empty()) out << "vertex " << join(vertices) << "\n";
  std::vector<const Arrow*> arrows;
  for (const auto& a : q.arrows()) arrows.push_back(&a);
  std::sort(arrows.begin(), arrows.end(), [](const Arrow* x, const Arrow* y) { return natural_compare(x->name, y->name) < 0; });
  for (const Arrow* a : arrows)
    out << "arrow " << a->name << " " << q.vertex_name(a->source) << " " << q.vertex_name(a->target) << "\n";
}

inline std::vector<std::string> sorted_lines(std::vector<std::vector<std::string>> rows, const std::string& prefix) {
  std::sort(rows.begin(), rows.end(), natural_less);
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(prefix + join(r));
  return out;
}

}  // namespace detail

inline std::string emit(const BoundAlgebra& a) {
  std::ostringstream out;
  const Quiver& q = a.quiver();
  detail::emit_quiver(out, q);
  std::vector<std::vector<std::string>> zeros;
  for (const auto& p : a.zero_paths()) zeros.push_back(arrow_names(q, p));
  for (const auto& l : detail::sorted_lines(zeros, "zero ")) out << l << "\n";
  std::vector<std::vector<std::string>> pairs;
  for (const auto& c : a.commutativity_pairs()) {
    auto x = arrow_names(q, c.first), y = arrow_names(q, c.second);
    if (natural_less(y, x)) std::swap(x, y);
    x.push_back("=");
    x.insert(x.end(), y.begin(), y.end());
    pairs.push_back(std::move(x));
  }
  for (const auto& l : detail::sorted_lines(pairs, "commute ")) out << l << "\n";
  return out.str();
}

inline std::string emit(const TrivExtPresentation& t) {
  std::ostringstream out;
  const Quiver& q = t.quiver;
  detail::emit_quiver(out, q);
  std::vector<std::vector<std::string>> cycles;
  for (const auto& c : t.cycles) {
    std::vector<std::string> w;
    for (ArrowId a : c.word) w.push_back(q.arrow(a).name);
    cycles.push_back(std::move(w));
  }
  for (const auto& l : detail::sorted_lines(cycles, "cycle ")) out << l << "\n";
  std::vector<std::vector<std::string>> rel2;
  for (const auto& p : t.rel2) rel2.push_back(arrow_names(q, p));
  for (const auto& l : detail::sorted_lines(rel2, "rel2 ")) out << l << "\n";
  std::vector<std::vector<std::string>> rel1;
  for (const auto& p : t.rel1) rel1.push_back(arrow_names(q, p));
  for (const auto& l : detail::sorted_lines(rel1, "# rel1 ")) out << l << "\n";
  std::vector<std::vector<std::string>> rel3;
  for (const auto& c : t.rel3) {
    auto x = arrow_names(q, c.first), y = arrow_names(q, c.second);
    if (natural_less(y, x)) std::swap(x, y);
    x.push_back("=");
    x.insert(x.end(), y.begin(), y.end());
    rel3.push_back(std::move(x));
  }
  for (const auto& l : detail::sorted_lines(rel3, "# rel3 ")) out << l << "\n";
  return out.str();
}

inline std::string emit(const Poset& p) {
  std::ostringstream out;
  std::vector<std::string> elements = p.elements();
  std::sort(elements.begin(), elements.end(), NaturalLess{});
  out << "poset\n";
  if (!elements.empty()) out << "elem " << detail::join(elements) << "\n";
  const Quiver h = hasse(p);
  std::vector<std::vector<std::string>> covers;
  for (const auto& a : h.arrows()) covers.push_back({h.vertex_name(a.source), h.vertex_name(a.target)});
  for (const auto& l : detail::sorted_lines(covers, "le ")) out << l << "\n";
  return out.str();
}

// Matrix files: header `rels R cycles C arrows N`, an optional `labels l1 ... lN` line, then N rows
// of R+C digits.

inline MatrixInstance parse_matrix(const std::string& text) {
  const auto lines = detail::content_lines(text);
  if (lines.empty()) throw ParseError(1, "empty matrix file");
  const auto& h = lines.front();
  if (h.words.size() != 6 || h.words[0] != "rels" || h.words[2] != "cycles" || h.words[4] != "arrows")
    throw ParseError(h.number, "expected 'rels R cycles C arrows N'");
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6)
      throw ParseError(h.number, "'" + s + "' is not a count");
    return std::stoul(s);
  };
  MatrixInstance m;
  m.rels = number(h.words[1]);
  m.cycles = number(h.words[3]);
  const std::size_t n = number(h.words[5]);
  std::size_t next = 1;
  if (next < lines.size() && lines[next].words[0] == "labels") {
    m.labels.assign(lines[next].words.begin() + 1, lines[next].words.end());
    if (m.labels.size() != n) throw ParseError(lines[next].number, "expected " + std::to_string(n) + " labels");
    ++next;
  } else {
    m.labels = default_matrix_labels(n);
  }
  for (; next < lines.size(); ++next) {
    const auto& l = lines[next];
    std::vector<int> row;
    for (const auto& w : l.words) {
      if (w != "0" && w != "1") throw ParseError(l.number, "entries must be 0 or 1, got '" + w + "'");
      row.push_back(w == "1");
    }
    if (row.size() != m.rels + m.cycles)
      throw ParseError(l.number, "expected " + std::to_string(m.rels + m.cycles) + " entries");
    m.rows.push_back(std::move(row));
  }
  if (m.rows.size() != n)
    throw ParseError(lines.back().number, "expected " + std::to_string(n) + " rows, got " + std::to_string(m.rows.size()));
  return m;
}

inline std::string emit(const MatrixInstance& m) {
  std::ostringstream out;
  out << "rels " << m.rels << " cycles " << m.cycles << " arrows " << m.arrows() << "\n";
  if (m.labels != default_matrix_labels(m.arrows())) out << "labels " << detail::join(m.labels) << "\n";
  for (const auto& row : m.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  return out.str();
}

/// Graphviz rendering of a quiver.
inline std::string to_dot(const Quiver& q, const std::vector<ArrowId>& highlight = {}) {
  std::ostringstream out;
  out << "digraph Q {\n";
  for (const auto& v : q.vertex_names()) out << "  \"" << v << "\";\n";
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const Arrow& x = q.arrow(a);
    out << "  \"" << q.vertex_name(x.source) << "\" -> \"" << q.vertex_name(x.target) << "\" [label=\"" << x.name << "\"";
    if (std::find(highlight.begin(), highlight.end(), a) != highlight.end()) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace phi

#endif  // PHI_TEXT_FORMAT_HPP
