// phi: command-line front end for the bound-quiver toolkit.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phi/cutting.hpp"
#include "phi/error.hpp"
#include "phi/json_report.hpp"
#include "phi/matrix_solver.hpp"
#include "phi/path_space.hpp"
#include "phi/text_format.hpp"
#include "phi/trivial_extension.hpp"

namespace {

using namespace phi;

struct Config {
  std::string format = "text";
  std::string input;
  bool include_hereditary = false;
  std::string dedup = "iso";
  std::size_t path_cap = 0;
  unsigned workers = 1;
  std::string match_dir;
  bool with_roundtrip = false;
  std::vector<std::string> sigma;
  bool heuristic = false;
  bool compare = false;
  std::vector<std::string> checks;
};

std::string braces(const std::vector<std::string>& names) { return "{" + detail::join(names, ",") + "}"; }

std::string indent(const std::string& text, const std::string& pad = "    ") {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += pad + line + "\n";
  return out;
}

Json envelope(const std::string& command) { return Json{{"schema", kJsonSchema}, {"command", command}}; }

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

/// Trivial extension of an algebra file, or the completed presentation of a presentation file.
TrivExtPresentation load_presentation(const Document& doc) {
  if (doc.kind == DocumentKind::presentation) return to_presentation(doc);
  if (doc.kind == DocumentKind::algebra) return trivial_extension(to_algebra(doc));
  return trivial_extension(incidence_presentation(to_poset(doc)));
}

std::vector<std::pair<std::string, BoundAlgebra>> load_library(const std::string& dir) {
  std::vector<std::pair<std::string, BoundAlgebra>> out;
  if (dir.empty()) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      auto doc = parse_document(read_file(f.string()));
      if (doc.kind == DocumentKind::algebra && doc.quiver.arrow_count() > 0)
        out.emplace_back(f.stem().string(), to_algebra(doc));
    } catch (const Error&) {
      // matrices and other non-algebra files
    }
  }
  return out;
}

int cmd_poset(const Config& c) {
  const BoundAlgebra a = incidence_presentation(parse_poset(read_file(c.input)));
  if (c.format == "json") {
    Json j = envelope("poset");
    j["algebra"] = emit(a);
    print_json(j);
  } else {
    std::cout << emit(a);
  }
  return 0;
}

int cmd_check(const Config& c) {
  const Document doc = parse_document(read_file(c.input));
  const BoundAlgebra a = doc.kind == DocumentKind::poset ? incidence_presentation(to_poset(doc)) : to_algebra(doc);
  const Quiver& q = a.quiver();
  Json r = Json::object();
  if (is_acyclic(q) && !q.has_parallel_arrows()) {
    const PathSpace ps = build_path_space(a);
    r["schurian"] = is_schurian(ps);
    r["incidence"] = is_incidence(ps);
    r["hereditary"] = is_hereditary(ps);
    r["gentle"] = is_gentle(ps);
    r["path_equal"] = is_path_equal(ps);
  } else {
    r["incidence"] = false;
  }
  r["acyclic"] = is_acyclic(q);
  r["connected"] = is_connected(q);
  if (is_acyclic(q)) {
    Json b = Json::array();
    for (const auto& x : bypasses(q))
      b.push_back(Json{{"arrow", q.arrow(x.arrow).name}, {"path", arrow_names(q, x.path)}});
    r["bypasses"] = b;
  }
  r["graph_type"] = to_string(classify_graph(q));

  // selectors narrow the output; incidence is always shown
  std::map<std::string, std::string> field{{"schurian", "schurian"}, {"incidence", "incidence"},
                                           {"hereditary", "hereditary"}, {"gentle", "gentle"},
                                           {"bypass", "bypasses"}, {"classify", "graph_type"}};
  if (!c.checks.empty()) {
    Json narrowed = Json::object();
    for (const auto& [key, value] : r.items()) {
      bool keep = key == "incidence";
      for (const auto& s : c.checks) keep = keep || field[s] == key;
      if (keep) narrowed[key] = value;
    }
    r = narrowed;
  }
  if (c.format == "json") {
    Json j = envelope("check");
    j["result"] = r;
    print_json(j);
  } else {
    for (const auto& [key, value] : r.items()) {
      if (key == "bypasses") {
        std::cout << "bypasses=" << value.size() << "\n";
        for (const auto& x : value)
          std::cout << "  " << x["arrow"].get<std::string>() << " ~ "
                    << detail::join(x["path"].get<std::vector<std::string>>()) << "\n";
      } else {
        std::cout << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  }
  return 0;
}

int cmd_trivext(const Config& c) {
  const TrivExtPresentation t = load_presentation(parse_document(read_file(c.input)));
  if (c.format == "json") {
    Json j = envelope("trivext");
    j["result"] = to_json(t);
    print_json(j);
  } else {
    std::cout << emit(t);
    for (const auto& d : t.diagnostics) std::cout << "# diagnostic: " << d << "\n";
  }
  return 0;
}

DedupMode dedup_mode(const std::string& s) {
  if (s == "none") return DedupMode::none;
  if (s == "iso-op") return DedupMode::iso_op;
  return DedupMode::iso;
}

int cmd_cuts(const Config& c) {
  const TrivExtPresentation t = load_presentation(parse_document(read_file(c.input)));
  CutOptions options;
  options.dedup = dedup_mode(c.dedup);
  options.include_hereditary = c.include_hereditary;
  options.with_roundtrip = c.with_roundtrip;
  options.workers = c.workers;
  CutSummary s = incidence_cuts(t, options);
  match_reports(s.reported, load_library(c.match_dir));

  if (c.format == "json") {
    Json j = envelope("cuts");
    j["result"] = to_json(s, t, options);
    print_json(j);
    return 0;
  }
  std::cout << "cutting sets: " << s.cutting_sets << "\n";
  std::cout << "incidence-defining: " << s.incidence_sets << "\n";
  std::cout << "classes (" << to_string(options.dedup) << "): " << s.classes << "\n";
  for (const auto& r : s.reported) {
    std::cout << "class " << r.iso_class << ": sigma " << braces(r.sigma.names(t.quiver))
              << (r.flags.hereditary ? " hereditary" : " non-hereditary") << " graph " << to_string(r.graph_type);
    if (!r.flags.connected) std::cout << " disconnected";
    if (r.flags.gentle) std::cout << " gentle";
    if (r.matches) std::cout << " matches " << *r.matches;
    if (r.round_trip) std::cout << " roundtrip " << to_string(*r.round_trip);
    std::cout << "\n  members:";
    for (const auto& other : s.incidence)
      if (other.iso_class == r.iso_class) std::cout << " " << braces(other.sigma.names(t.quiver));
    std::cout << "\n  quotient:\n" << indent(emit(r.quotient));
  }
  for (const auto& d : s.diagnostics) std::cout << "diagnostic: " << d << "\n";
  return 0;
}

int cmd_roundtrip(const Config& c) {
  const TrivExtPresentation t = load_presentation(parse_document(read_file(c.input)));
  std::vector<CuttingSet> sets;
  if (!c.sigma.empty()) {
    sets.push_back(make_cutting_set(t.quiver, c.sigma));
  } else {
    for (const auto& r : incidence_cuts(t, CutOptions{DedupMode::none, true, false, c.workers}).incidence)
      sets.push_back(r.sigma);
  }
  Json results = Json::array();
  bool all_hold = true;
  for (const auto& s : sets) {
    RoundTrip r = roundtrip(t, s);
    all_hold = all_hold && r != RoundTrip::fails;
    results.push_back(Json{{"sigma", s.names(t.quiver)}, {"roundtrip", to_string(r)}});
  }
  if (c.format == "json") {
    Json j = envelope("roundtrip");
    j["result"] = results;
    print_json(j);
  } else {
    for (const auto& r : results)
      std::cout << braces(r["sigma"].get<std::vector<std::string>>()) << " " << r["roundtrip"].get<std::string>() << "\n";
  }
  return all_hold ? 0 : 1;
}

int cmd_matrix(const Config& c) {
  const std::string text = read_file(c.input);
  MatrixInstance m;
  {
    std::istringstream in(text);
    std::string first;
    for (std::string line; std::getline(in, line);) {
      auto words = detail::tokens(line);
      if (!words.empty()) {
        first = words[0];
        break;
      }
    }
    m = first == "rels" ? parse_matrix(text) : encode(load_presentation(parse_document(text)));
  }
  if (c.compare) {
    const MatrixComparison r = compare_solvers(m);
    if (c.format == "json") {
      Json j = envelope("matrix-solve");
      j["result"] = Json{{"complete", to_json(m, r.complete)}, {"heuristic", to_json(m, r.heuristic)},
                         {"missing", to_json(m, r.missing)}, {"extra", to_json(m, r.extra)},
                         {"duplicates", r.duplicates}, {"heuristic_authoritative", false}};
      print_json(j);
    } else {
      std::cout << "complete: " << r.complete.size() << "\n";
      std::cout << "heuristic (non-authoritative): " << r.heuristic.size() << " announced, " << r.duplicates
                << " duplicates\n";
      for (const auto& s : r.missing) std::cout << "missing " << braces(solution_labels(m, s)) << "\n";
      for (const auto& s : r.extra) std::cout << "extra " << braces(solution_labels(m, s)) << "\n";
    }
    return 0;
  }
  const auto sols = c.heuristic ? solve_heuristic(m) : solve(m);
  if (c.format == "json") {
    Json j = envelope("matrix-solve");
    j["mode"] = c.heuristic ? "heuristic (non-authoritative)" : "complete";
    j["result"] = to_json(m, sols);
    print_json(j);
  } else {
    if (c.heuristic) std::cout << "# heuristic mode: output may be incomplete\n";
    for (const auto& s : sols) std::cout << "Answer " << detail::join(solution_labels(m, s), ",") << "\n";
  }
  return 0;
}

int cmd_oppose(const Config& c) {
  const Document doc = parse_document(read_file(c.input));
  std::string text;
  if (doc.kind == DocumentKind::presentation) {
    text = emit(opposite(to_presentation(doc)));
  } else {
    const BoundAlgebra a = doc.kind == DocumentKind::poset ? incidence_presentation(to_poset(doc)) : to_algebra(doc);
    text = emit(opposite(a));
  }
  if (c.format == "json") {
    Json j = envelope("oppose");
    j["result"] = text;
    print_json(j);
  } else {
    std::cout << text;
  }
  return 0;
}

int cmd_dot(const Config& c) {
  const Document doc = parse_document(read_file(c.input));
  const Quiver q = doc.kind == DocumentKind::poset ? hasse(to_poset(doc)) : doc.quiver;
  std::cout << to_dot(q);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incidence algebras, trivial extensions and cutting sets"};
  app.require_subcommand(1);
  Config c;
  std::string command;

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", c.input, "input file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--path-cap", c.path_cap, "maximum number of paths in a path space");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  auto* poset = app.add_subcommand("poset", "incidence algebra presentation of a poset");
  common(poset);
  auto* check = app.add_subcommand("check", "structural predicates of an algebra");
  common(check);
  for (const char* flag : {"schurian", "incidence", "hereditary", "gentle", "bypass", "classify"}) {
    std::string name = flag;
    check->add_flag_callback("--" + name, [&c, name] { c.checks.push_back(name); }, "show " + name);
  }
  auto* trivext = app.add_subcommand("trivext", "trivial extension presentation");
  common(trivext);
  auto* cuts = app.add_subcommand("cuts", "cutting sets defining incidence algebras");
  common(cuts);
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "threads used by the enumeration")->check(CLI::Range(1u, 256u));
  };
  add_search(cuts);
  cuts->add_flag("--include-hereditary", c.include_hereditary, "also report hereditary quotients");
  cuts->add_option("--dedup", c.dedup, "identify quotients up to isomorphism (iso) and opposite (iso-op)")
      ->check(CLI::IsMember({"none", "iso", "iso-op"}));
  cuts->add_option("--match-dir", c.match_dir, "directory of algebra files to match quotients against")
      ->check(CLI::ExistingDirectory);
  cuts->add_flag("--roundtrip", c.with_roundtrip, "check T(A') against T for every reported cut");
  auto* rt = app.add_subcommand("roundtrip", "check T(cut(T, sigma)) against T");
  common(rt);
  add_search(rt);
  rt->add_option("--sigma", c.sigma, "cutting set (default: every incidence-defining one)")->delimiter(',');
  auto* matrix = app.add_subcommand("matrix-solve", "solve a 0/1 relation/cycle matrix");
  common(matrix);
  auto* heuristic = matrix->add_flag("--heuristic", c.heuristic, "emulate the original search order");
  matrix->add_flag("--compare", c.compare, "compare complete and heuristic solutions")->excludes(heuristic);
  auto* oppose = app.add_subcommand("oppose", "opposite algebra or presentation");
  common(oppose);
  auto* dot = app.add_subcommand("dot", "Graphviz text of the quiver");
  common(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (c.path_cap > 0) setenv("PHI_PATH_CAP", std::to_string(c.path_cap).c_str(), 1);
  try {
    if (command == "poset") return cmd_poset(c);
    if (command == "check") return cmd_check(c);
    if (command == "trivext") return cmd_trivext(c);
    if (command == "cuts") return cmd_cuts(c);
    if (command == "roundtrip") return cmd_roundtrip(c);
    if (command == "matrix-solve") return cmd_matrix(c);
    if (command == "oppose") return cmd_oppose(c);
    if (command == "dot") return cmd_dot(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::resource_limit ? 2 : 1;
  }
  return 1;
}
