#ifndef PHI_JSON_REPORT_HPP
#define PHI_JSON_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "phi/cutting.hpp"
#include "phi/matrix_solver.hpp"
#include "phi/path_space.hpp"
#include "phi/text_format.hpp"
#include "phi/trivial_extension.hpp"

namespace phi {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchema = 1;

inline Json path_json(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return Json{{"trivial", q.vertex_name(p.source())}};
  return arrow_names(q, p);
}

inline Json to_json(const CutFlags& f) {
  return Json{{"incidence", f.incidence}, {"hereditary", f.hereditary}, {"gentle", f.gentle},
              {"connected", f.connected}, {"acyclic", f.acyclic}};
}

inline Json to_json(const TrivExtPresentation& t) {
  const Quiver& q = t.quiver;
  Json cycles = Json::array();
  for (const auto& c : t.cycles) {
    Json w = Json::array();
    for (ArrowId a : c.word) w.push_back(q.arrow(a).name);
    cycles.push_back(Json{{"base", c.base}, {"word", w}});
  }
  Json rel1 = Json::array(), rel2 = Json::array(), rel3 = Json::array();
  for (const auto& p : t.rel1) rel1.push_back(path_json(q, p));
  for (const auto& p : t.rel2) rel2.push_back(path_json(q, p));
  for (const auto& c : t.rel3) rel3.push_back(Json::array({path_json(q, c.first), path_json(q, c.second)}));
  Json classes = Json::array();
  for (const auto& m : t.maximal_classes) {
    Json members = Json::array();
    for (const auto& p : m.members) members.push_back(path_json(q, p));
    classes.push_back(Json{{"added_arrow", m.added_arrow}, {"members", members}});
  }
  Json out{{"presentation", emit(t)}, {"cycles", cycles}, {"rel1", rel1}, {"rel2", rel2}, {"rel3", rel3}};
  if (!t.maximal_classes.empty()) out["maximal_paths"] = classes;
  out["diagnostics"] = t.diagnostics;
  return out;
}

inline Json to_json(const CutReport& r, const Quiver& tq) {
  Json out{{"sigma", r.sigma.names(tq)},
           {"quotient", emit(r.quotient)},
           {"flags", to_json(r.flags)},
           {"graph_type", to_string(r.graph_type)},
           {"iso_class", r.iso_class},
           {"all_rel2_hit", r.all_rel2_hit}};
  out["matches"] = r.matches ? Json(*r.matches) : Json(nullptr);
  out["roundtrip"] = r.round_trip ? Json(to_string(*r.round_trip)) : Json(nullptr);
  return out;
}

inline Json to_json(const CutSummary& s, const TrivExtPresentation& t, const CutOptions& options) {
  Json reports = Json::array();
  for (const auto& r : s.reported) {
    Json j = to_json(r, t.quiver);
    Json members = Json::array();
    for (const auto& other : s.incidence)
      if (other.iso_class == r.iso_class) members.push_back(other.sigma.names(t.quiver));
    j["class_members"] = members;
    reports.push_back(std::move(j));
  }
  return Json{{"cutting_sets", s.cutting_sets},
              {"incidence_sets", s.incidence_sets},
              {"classes", s.classes},
              {"dedup", to_string(options.dedup)},
              {"include_hereditary", options.include_hereditary},
              {"reports", reports},
              {"diagnostics", s.diagnostics}};
}

inline Json to_json(const MatrixInstance& m, const std::vector<MatrixSolution>& sols) {
  Json out = Json::array();
  for (const auto& s : sols) out.push_back(solution_labels(m, s));
  return out;
}

}  // namespace phi

#endif  // PHI_JSON_REPORT_HPP
