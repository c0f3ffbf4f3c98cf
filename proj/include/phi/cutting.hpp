#ifndef PHI_CUTTING_HPP
#define PHI_CUTTING_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/error.hpp"
#include "phi/isomorphism.hpp"
#include "phi/names.hpp"
#include "phi/path_space.hpp"
#include "phi/quiver.hpp"
#include "phi/trivial_extension.hpp"

namespace phi {

/// Arrow subset of a trivial extension; ids are kept in natural order of their names.
struct CuttingSet {
  std::vector<ArrowId> arrows;

  bool contains(ArrowId a) const { return std::find(arrows.begin(), arrows.end(), a) != arrows.end(); }

  std::vector<std::string> names(const Quiver& q) const {
    std::vector<std::string> out;
    for (ArrowId a : arrows) out.push_back(q.arrow(a).name);
    return out;
  }

  friend bool operator==(const CuttingSet&, const CuttingSet&) = default;
};

inline CuttingSet make_cutting_set(const Quiver& q, std::vector<ArrowId> arrows) {
  std::sort(arrows.begin(), arrows.end(),
            [&](ArrowId x, ArrowId y) { return natural_compare(q.arrow(x).name, q.arrow(y).name) < 0; });
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  return CuttingSet{std::move(arrows)};
}

inline CuttingSet make_cutting_set(const Quiver& q, const std::vector<std::string>& names) {
  std::vector<ArrowId> ids;
  for (const auto& n : names) ids.push_back(q.arrow_id(n));
  return make_cutting_set(q, std::move(ids));
}

inline bool is_cutting_set(const TrivExtPresentation& t, const CuttingSet& s) {
  return std::all_of(t.cycles.begin(), t.cycles.end(), [&](const ElementaryCycle& c) {
    return std::count_if(s.arrows.begin(), s.arrows.end(), [&](ArrowId a) { return c.contains(a); }) == 1;
  });
}

namespace detail {

inline void sort_cutting_sets(const Quiver& q, std::vector<CuttingSet>& sets) {
  std::sort(sets.begin(), sets.end(), [&](const CuttingSet& x, const CuttingSet& y) {
    if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
    return natural_less(x.names(q), y.names(q));
  });
}

inline bool meets(const Path& p, const CuttingSet& s) {
  return std::any_of(p.arrows().begin(), p.arrows().end(), [&](ArrowId a) { return s.contains(a); });
}

}  // namespace detail

/// Every arrow set meeting each elementary cycle exactly once. Backtracks over cycles sorted by
/// arrow-set size; the arrows of the first cycle are split across `workers` threads.
inline std::vector<CuttingSet> enumerate_cutting_sets(const TrivExtPresentation& t, unsigned workers = 1) {
  const Quiver& q = t.quiver;
  std::vector<std::size_t> order(t.cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return t.cycles[x].length() < t.cycles[y].length(); });
  std::vector<std::vector<std::size_t>> cycles_of(q.arrow_count());
  for (std::size_t c = 0; c < t.cycles.size(); ++c)
    for (ArrowId a : t.cycles[c].arrow_set) cycles_of[a].push_back(c);
  auto candidates = [&](std::size_t c) {
    std::vector<ArrowId> arrows = t.cycles[c].arrow_set;
    std::sort(arrows.begin(), arrows.end(),
              [&](ArrowId x, ArrowId y) { return natural_compare(q.arrow(x).name, q.arrow(y).name) < 0; });
    return arrows;
  };

  // explores every completion of `chosen`, starting at position `depth` of `order`
  auto explore = [&](std::vector<ArrowId> chosen, std::vector<int> hits, std::size_t depth) {
    std::vector<CuttingSet> found;
    auto search = [&](auto&& self, std::size_t d) -> void {
      while (d < order.size() && hits[order[d]] == 1) ++d;
      if (d == order.size()) {
        found.push_back(make_cutting_set(q, chosen));
        return;
      }
      for (ArrowId a : candidates(order[d])) {
        bool ok = true;
        for (std::size_t c : cycles_of[a])
          if (++hits[c] > 1) ok = false;
        if (ok) {
          chosen.push_back(a);
          self(self, d + 1);
          chosen.pop_back();
        }
        for (std::size_t c : cycles_of[a]) --hits[c];
      }
    };
    search(search, depth);
    return found;
  };

  std::vector<CuttingSet> result;
  if (order.empty()) {
    result.push_back(CuttingSet{});
    return result;
  }
  const auto top = candidates(order.front());
  std::vector<std::vector<CuttingSet>> parts(top.size());
  auto run_branch = [&](std::size_t i) {
    std::vector<int> hits(t.cycles.size(), 0);
    for (std::size_t c : cycles_of[top[i]]) ++hits[c];
    parts[i] = explore({top[i]}, std::move(hits), 1);
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < top.size(); ++i) run_branch(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < top.size(); i += workers) run_branch(i);
      }));
    for (auto& j : jobs) j.get();
  }
  for (auto& p : parts) result.insert(result.end(), p.begin(), p.end());
  detail::sort_cutting_sets(q, result);
  return result;
}

/// Exhaustive 2^N scan over arrow subsets.
inline std::vector<CuttingSet> brute_force_cuts(const TrivExtPresentation& t, std::size_t max_arrows = 20) {
  const std::size_t n = t.quiver.arrow_count();
  if (n > max_arrows)
    fail(ErrorKind::resource_limit, std::to_string(n) + " arrows exceed the brute-force limit of " + std::to_string(max_arrows));
  std::vector<std::uint64_t> masks;
  for (const auto& c : t.cycles) {
    std::uint64_t m = 0;
    for (ArrowId a : c.arrow_set) m |= std::uint64_t{1} << a;
    masks.push_back(m);
  }
  std::vector<CuttingSet> result;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = std::all_of(masks.begin(), masks.end(), [&](std::uint64_t m) { return std::popcount(s & m) == 1; });
    if (!ok) continue;
    std::vector<ArrowId> arrows;
    for (ArrowId a = 0; a < n; ++a)
      if (s >> a & 1) arrows.push_back(a);
    result.push_back(make_cutting_set(t.quiver, std::move(arrows)));
  }
  detail::sort_cutting_sets(t.quiver, result);
  return result;
}

/// The quotient KQ_T / <I_T, Σ> presented on the quiver without the arrows of Σ.
inline BoundAlgebra cut(const TrivExtPresentation& t, const CuttingSet& s) {
  if (!is_cutting_set(t, s)) fail(ErrorKind::contract, "arrow set is not a cutting set");
  const Quiver& qt = t.quiver;
  Quiver q;
  for (const auto& v : qt.vertex_names()) q.add_vertex(v);
  std::vector<ArrowId> image(qt.arrow_count(), qt.arrow_count());
  for (ArrowId a = 0; a < qt.arrow_count(); ++a)
    if (!s.contains(a)) image[a] = q.add_arrow(qt.arrow(a).name, qt.arrow(a).source, qt.arrow(a).target);
  auto map = [&](const Path& p) {
    std::vector<ArrowId> arrows;
    for (ArrowId a : p.arrows()) arrows.push_back(image[a]);
    return Path::of(q, std::move(arrows));
  };

  for (const auto& p : t.rel1)
    if (!detail::meets(p, s)) fail(ErrorKind::contract, "type-1 relation survives the cut: " + to_string(qt, p));
  std::vector<Path> zeros;
  for (const auto& p : t.rel2)
    if (!detail::meets(p, s)) zeros.push_back(map(p));
  std::vector<CommutativityPair> pairs;
  for (const auto& c : t.rel3) {
    const bool first = detail::meets(c.first, s), second = detail::meets(c.second, s);
    if (!first && !second) {
      pairs.push_back({map(c.first), map(c.second)});
    } else if (first != second) {
      const Path& survivor = first ? c.second : c.first;
      if (survivor.length() < 2)
        fail(ErrorKind::contract, "cut leaves the arrow '" + to_string(qt, survivor) + "' equal to zero");
      zeros.push_back(map(survivor));
    }
  }
  return BoundAlgebra(std::move(q), std::move(zeros), std::move(pairs));
}

enum class RoundTrip { holds, fails, not_applicable };

inline const char* to_string(RoundTrip r) {
  switch (r) {
    case RoundTrip::holds: return "holds";
    case RoundTrip::fails: return "fails";
    case RoundTrip::not_applicable: return "not-applicable";
  }
  return "?";
}

/// Whether T(cut(t, s)) is isomorphic to t as a typed presentation.
inline RoundTrip roundtrip(const TrivExtPresentation& t, const CuttingSet& s) {
  const BoundAlgebra quotient = cut(t, s);
  const Quiver& q = quotient.quiver();
  if (!is_acyclic(q) || q.has_parallel_arrows()) return RoundTrip::not_applicable;
  const PathSpace ps = build_path_space(quotient);
  if (!is_schurian(ps) || !is_path_equal(ps)) return RoundTrip::not_applicable;
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (q.in_arrows(v).empty() && q.out_arrows(v).empty()) return RoundTrip::not_applicable;
  return are_isomorphic(trivial_extension(quotient), t) ? RoundTrip::holds : RoundTrip::fails;
}

struct CutFlags {
  bool incidence = false;
  bool hereditary = false;
  bool gentle = false;
  bool connected = false;
  bool acyclic = false;
};

struct CutReport {
  CuttingSet sigma;
  BoundAlgebra quotient;
  CutFlags flags;
  GraphType graph_type;
  bool all_rel2_hit = false;  // the check made by the original search program
  bool rel3_paired = false;   // every type-3 pair meets sigma on both sides or on neither
  std::size_t iso_class = 0;  // 1-based after dedup
  std::optional<std::string> matches;
  std::optional<RoundTrip> round_trip;
};

enum class DedupMode { none, iso, iso_op };

inline const char* to_string(DedupMode m) {
  switch (m) {
    case DedupMode::none: return "none";
    case DedupMode::iso: return "iso";
    case DedupMode::iso_op: return "iso-op";
  }
  return "?";
}

struct CutOptions {
  DedupMode dedup = DedupMode::iso;
  bool include_hereditary = false;
  bool with_roundtrip = false;
  unsigned workers = 1;
};

struct CutSummary {
  std::size_t cutting_sets = 0;
  std::size_t incidence_sets = 0;
  std::size_t classes = 0;
  std::vector<CutReport> incidence;   // every incidence-defining cutting set, canonical order
  std::vector<CutReport> reported;    // one representative per class, filtered by the options
  std::vector<std::string> diagnostics;
};

inline CutReport classify_cut(const TrivExtPresentation& t, const CuttingSet& s) {
  CutReport r{s, cut(t, s), {}, {}, {}, {}, {}, {}, {}};
  const Quiver& q = r.quotient.quiver();
  r.flags.connected = is_connected(q);
  r.flags.acyclic = is_acyclic(q);
  r.graph_type = classify_graph(q);
  if (r.flags.acyclic && !q.has_parallel_arrows()) {
    const PathSpace ps = build_path_space(r.quotient);
    r.flags.incidence = is_incidence(ps);
    r.flags.hereditary = is_hereditary(ps);
    r.flags.gentle = is_gentle(ps);
  }
  r.all_rel2_hit = std::all_of(t.rel2.begin(), t.rel2.end(), [&](const Path& p) { return detail::meets(p, s); });
  r.rel3_paired = std::all_of(t.rel3.begin(), t.rel3.end(), [&](const CommutativityPair& c) {
    return detail::meets(c.first, s) == detail::meets(c.second, s);
  });
  return r;
}

/// Enumerates cutting sets, keeps those whose quotient is an incidence algebra and groups them
/// into isomorphism classes (optionally up to opposite). `reported` holds the first member of
/// every class, hereditary classes only when requested.
inline CutSummary incidence_cuts(const TrivExtPresentation& t, const CutOptions& options = {}) {
  CutSummary out;
  const auto sets = enumerate_cutting_sets(t, options.workers);
  out.cutting_sets = sets.size();

  std::vector<std::optional<CutReport>> reports(sets.size());
  auto classify = [&](std::size_t i) {
    reports[i] = classify_cut(t, sets[i]);
    if (options.with_roundtrip && reports[i]->flags.incidence) reports[i]->round_trip = roundtrip(t, sets[i]);
  };
  if (options.workers <= 1) {
    for (std::size_t i = 0; i < sets.size(); ++i) classify(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < options.workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < sets.size(); i += options.workers) classify(i);
      }));
    for (auto& j : jobs) j.get();
  }

  for (auto& r : reports) {
    if (r->flags.incidence != r->all_rel2_hit)
      out.diagnostics.push_back("cutting set {" + [&] {
        std::string s;
        for (const auto& n : r->sigma.names(t.quiver)) s += (s.empty() ? "" : ",") + n;
        return s;
      }() + "}: incidence=" + (r->flags.incidence ? "true" : "false") +
                                " but all-type-2-hit=" + (r->all_rel2_hit ? "true" : "false"));
    if (r->flags.incidence) out.incidence.push_back(std::move(*r));
  }
  out.incidence_sets = out.incidence.size();

  std::vector<std::size_t> representatives;
  for (std::size_t i = 0; i < out.incidence.size(); ++i) {
    auto& r = out.incidence[i];
    for (std::size_t k = 0; k < representatives.size() && options.dedup != DedupMode::none; ++k) {
      const auto& rep = out.incidence[representatives[k]];
      bool same = options.dedup == DedupMode::iso ? are_isomorphic(r.quotient, rep.quotient)
                                                  : are_isomorphic_up_to_opposite(r.quotient, rep.quotient);
      if (same) {
        r.iso_class = k + 1;
        break;
      }
    }
    if (r.iso_class == 0) {
      representatives.push_back(i);
      r.iso_class = representatives.size();
    }
  }
  out.classes = representatives.size();
  for (std::size_t i : representatives)
    if (options.include_hereditary || !out.incidence[i].flags.hereditary) out.reported.push_back(out.incidence[i]);
  return out;
}

/// Names a library algebra isomorphic to each reported quotient. Direct isomorphisms are
/// preferred; otherwise an algebra whose opposite matches is named with the suffix "^op".
inline void match_reports(std::vector<CutReport>& reports,
                          const std::vector<std::pair<std::string, BoundAlgebra>>& library) {
  for (auto& r : reports) {
    const Quiver& q = r.quotient.quiver();
    for (int pass = 0; pass < 2 && !r.matches; ++pass) {
      for (const auto& [name, algebra] : library) {
        if (algebra.quiver().vertex_count() != q.vertex_count() || algebra.quiver().arrow_count() != q.arrow_count())
          continue;
        if (are_isomorphic(r.quotient, pass == 0 ? algebra : opposite(algebra))) {
          r.matches = pass == 0 ? name : name + "^op";
          break;
        }
      }
    }
  }
}

}  // namespace phi

#endif  // PHI_CUTTING_HPP
