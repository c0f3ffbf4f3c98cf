#ifndef PHI_TRIVIAL_EXTENSION_HPP
#define PHI_TRIVIAL_EXTENSION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/error.hpp"
#include "phi/isomorphism.hpp"
#include "phi/names.hpp"
#include "phi/path_space.hpp"
#include "phi/quiver.hpp"

namespace phi {

/// One equality class of maximal paths of A, together with the arrow added for it in T(A).
struct MaximalPathClass {
  Path representative;
  std::vector<Path> members;
  std::string added_arrow;
};

/// Elementary cycle of a trivial extension, stored as a cyclic arrow word rotated to start at
/// the arrow with the least name.
struct ElementaryCycle {
  std::string base;  // added arrow; empty when the cycle was supplied directly
  std::vector<ArrowId> word;
  std::vector<ArrowId> arrow_set;  // sorted ids

  std::size_t length() const noexcept { return word.size(); }

  bool contains(ArrowId a) const { return std::binary_search(arrow_set.begin(), arrow_set.end(), a); }

  std::optional<std::size_t> position(ArrowId a) const {
    auto it = std::find(word.begin(), word.end(), a);
    if (it == word.end()) return std::nullopt;
    return static_cast<std::size_t>(it - word.begin());
  }

  /// The closed path of the cycle starting at word position `start`.
  Path rotation(const Quiver& q, std::size_t start) const {
    std::vector<ArrowId> arrows;
    for (std::size_t k = 0; k < word.size(); ++k) arrows.push_back(word[(start + k) % word.size()]);
    return Path::of(q, std::move(arrows));
  }
};

/// Quiver-with-relations presentation of a trivial extension: elementary cycles plus the
/// generators of types 1 (cycle wraps), 2 (minimal monomials outside every single cycle) and
/// 3 (differences of parallel paths with a common nontrivial supplement).
struct TrivExtPresentation {
  Quiver quiver;
  std::vector<ElementaryCycle> cycles;
  std::vector<Path> rel1;
  std::vector<Path> rel2;
  std::vector<CommutativityPair> rel3;
  std::optional<BoundAlgebra> origin;
  std::vector<MaximalPathClass> maximal_classes;
  std::vector<std::string> diagnostics;
};

/// Validates a closed simple arrow word and rotates it to start at its least arrow name.
inline ElementaryCycle make_cycle(const Quiver& q, std::vector<ArrowId> word, std::string base = {}) {
  if (word.size() < 2) fail(ErrorKind::invalid_presentation, "elementary cycles have length at least two");
  std::vector<VertexId> visited;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const Arrow& a = q.arrow(word[i]);
    const Arrow& next = q.arrow(word[(i + 1) % word.size()]);
    if (a.target != next.source)
      fail(ErrorKind::invalid_presentation, "cycle does not compose at '" + a.name + "' -> '" + next.name + "'");
    visited.push_back(a.source);
  }
  std::sort(visited.begin(), visited.end());
  if (std::adjacent_find(visited.begin(), visited.end()) != visited.end())
    fail(ErrorKind::invalid_presentation, "cycle passes through a vertex twice");
  std::size_t start = 0;
  for (std::size_t i = 1; i < word.size(); ++i)
    if (natural_compare(q.arrow(word[i]).name, q.arrow(word[start]).name) < 0) start = i;
  std::rotate(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(start), word.end());
  ElementaryCycle c;
  c.base = std::move(base);
  c.arrow_set = word;
  std::sort(c.arrow_set.begin(), c.arrow_set.end());
  c.word = std::move(word);
  return c;
}

/// The supplement of `g` in `c`: the path of the cycle from t(g) back to s(g); the trivial path at
/// s(g) when g runs once around the whole cycle.
inline Path supplement(const Quiver& q, const Path& g, const ElementaryCycle& c) {
  if (g.is_trivial()) fail(ErrorKind::contract, "supplement of a trivial path");
  auto start = c.position(g.arrows().front());
  const std::size_t n = c.length();
  if (!start || g.length() > n) fail(ErrorKind::contract, "path is not a subword of the cycle");
  for (std::size_t k = 0; k < g.length(); ++k)
    if (c.word[(*start + k) % n] != g.arrows()[k]) fail(ErrorKind::contract, "path is not a subword of the cycle");
  if (g.length() == n) return Path::trivial(g.source());
  std::vector<ArrowId> rest;
  for (std::size_t k = g.length(); k < n; ++k) rest.push_back(c.word[(*start + k) % n]);
  return Path::of(q, std::move(rest));
}

namespace detail {

inline void sort_paths(const Quiver& q, std::vector<Path>& paths) {
  std::sort(paths.begin(), paths.end(), PathNameLess{&q});
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
}

inline CommutativityPair make_pair_sorted(const Quiver& q, Path x, Path y) {
  if (PathNameLess{&q}(y, x)) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

inline void sort_pairs(const Quiver& q, std::vector<CommutativityPair>& pairs) {
  PathNameLess less{&q};
  std::sort(pairs.begin(), pairs.end(), [&](const CommutativityPair& x, const CommutativityPair& y) {
    if (less(x.first, y.first)) return true;
    if (less(y.first, x.first)) return false;
    return less(x.second, y.second);
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

inline void sort_cycles(const Quiver& q, std::vector<ElementaryCycle>& cycles) {
  auto names = [&](const ElementaryCycle& c) {
    std::vector<std::string> out;
    for (ArrowId a : c.word) out.push_back(q.arrow(a).name);
    return out;
  };
  std::sort(cycles.begin(), cycles.end(),
            [&](const ElementaryCycle& x, const ElementaryCycle& y) { return natural_less(names(x), names(y)); });
}

inline bool subset_of_some_cycle(const std::vector<ArrowId>& arrows, const std::vector<ElementaryCycle>& cycles) {
  return std::any_of(cycles.begin(), cycles.end(), [&](const ElementaryCycle& c) {
    return std::all_of(arrows.begin(), arrows.end(), [&](ArrowId a) { return c.contains(a); });
  });
}

}  // namespace detail

/// For a cycle of length n: its n rotations followed by one more (wrapping) arrow.
inline std::vector<Path> relations_type1(const Quiver& q, const std::vector<ElementaryCycle>& cycles) {
  std::vector<Path> out;
  for (const auto& c : cycles) {
    for (std::size_t r = 0; r < c.length(); ++r) {
      std::vector<ArrowId> arrows;
      for (std::size_t k = 0; k <= c.length(); ++k) arrows.push_back(c.word[(r + k) % c.length()]);
      out.push_back(Path::of(q, std::move(arrows)));
    }
  }
  detail::sort_paths(q, out);
  return out;
}

/// Minimal paths whose arrows lie in no single elementary cycle while those of every proper
/// subpath do.
inline std::vector<Path> relations_type2(const Quiver& q, const std::vector<ElementaryCycle>& cycles) {
  std::set<std::vector<ArrowId>> prefixes;
  for (const auto& c : cycles)
    for (std::size_t start = 0; start < c.length(); ++start)
      for (std::size_t len = 1; len <= c.length(); ++len) {
        std::vector<ArrowId> w;
        for (std::size_t k = 0; k < len; ++k) w.push_back(c.word[(start + k) % c.length()]);
        prefixes.insert(std::move(w));
      }
  std::set<std::vector<ArrowId>> found;
  for (const auto& prefix : prefixes) {
    for (ArrowId a : q.out_arrows(q.arrow(prefix.back()).target)) {
      std::vector<ArrowId> candidate = prefix;
      candidate.push_back(a);
      if (detail::subset_of_some_cycle(candidate, cycles)) continue;
      std::vector<ArrowId> suffix(candidate.begin() + 1, candidate.end());
      if (!detail::subset_of_some_cycle(suffix, cycles)) continue;
      found.insert(std::move(candidate));
    }
  }
  std::vector<Path> out;
  for (const auto& w : found) out.push_back(Path::of(q, w));
  detail::sort_paths(q, out);
  return out;
}

/// Pairs of distinct parallel paths sharing a nontrivial supplement in two elementary cycles.
inline std::vector<CommutativityPair> relations_type3(const Quiver& q, const std::vector<ElementaryCycle>& cycles) {
  std::vector<CommutativityPair> out;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& ci = cycles[i];
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      const auto& cj = cycles[j];
      const std::size_t ni = ci.length(), nj = cj.length();
      for (std::size_t start = 0; start < ni; ++start) {
        auto start_j = cj.position(ci.word[start]);
        if (!start_j) continue;
        // longest common run beginning at this arrow; every prefix of it is a common supplement
        for (std::size_t len = 1; len < ni && len < nj; ++len) {
          if (ci.word[(start + len - 1) % ni] != cj.word[(*start_j + len - 1) % nj]) break;
          std::vector<ArrowId> gi, gj;
          for (std::size_t k = len; k < ni; ++k) gi.push_back(ci.word[(start + k) % ni]);
          for (std::size_t k = len; k < nj; ++k) gj.push_back(cj.word[(*start_j + k) % nj]);
          if (gi == gj) continue;
          out.push_back(detail::make_pair_sorted(q, Path::of(q, gi), Path::of(q, gj)));
        }
      }
    }
  }
  detail::sort_pairs(q, out);
  return out;
}

/// Fills in the relations of a presentation given by its quiver and elementary cycles. A supplied
/// type-2 list is compared against the recomputed one and any difference is recorded in
/// `diagnostics`; the recomputed list is kept.
inline TrivExtPresentation complete_presentation(Quiver quiver, const std::vector<std::vector<ArrowId>>& cycle_words,
                                                 const std::optional<std::vector<Path>>& supplied_rel2 = std::nullopt,
                                                 const std::vector<std::string>& bases = {}) {
  TrivExtPresentation t;
  t.quiver = std::move(quiver);
  if (cycle_words.empty()) fail(ErrorKind::invalid_presentation, "no elementary cycles");
  for (std::size_t i = 0; i < cycle_words.size(); ++i)
    t.cycles.push_back(make_cycle(t.quiver, cycle_words[i], i < bases.size() ? bases[i] : std::string{}));
  detail::sort_cycles(t.quiver, t.cycles);
  for (std::size_t i = 0; i + 1 < t.cycles.size(); ++i)
    if (t.cycles[i].word == t.cycles[i + 1].word)
      fail(ErrorKind::invalid_presentation, "duplicate elementary cycle");
  for (std::size_t i = 0; i < t.cycles.size(); ++i)
    for (std::size_t j = i + 1; j < t.cycles.size(); ++j)
      if (t.cycles[i].arrow_set == t.cycles[j].arrow_set)
        t.diagnostics.push_back("cycles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " have the same arrow set");
  for (ArrowId a = 0; a < t.quiver.arrow_count(); ++a) {
    bool covered = std::any_of(t.cycles.begin(), t.cycles.end(), [&](const auto& c) { return c.contains(a); });
    if (!covered)
      fail(ErrorKind::invalid_presentation, "arrow '" + t.quiver.arrow(a).name + "' lies in no elementary cycle");
  }
  t.rel1 = relations_type1(t.quiver, t.cycles);
  t.rel2 = relations_type2(t.quiver, t.cycles);
  t.rel3 = relations_type3(t.quiver, t.cycles);
  if (supplied_rel2) {
    std::vector<Path> given = *supplied_rel2;
    detail::sort_paths(t.quiver, given);
    for (const auto& p : given)
      if (!std::binary_search(t.rel2.begin(), t.rel2.end(), p, PathNameLess{&t.quiver}))
        t.diagnostics.push_back("supplied type-2 relation not recomputed: " + to_string(t.quiver, p));
    for (const auto& p : t.rel2)
      if (!std::binary_search(given.begin(), given.end(), p, PathNameLess{&t.quiver}))
        t.diagnostics.push_back("recomputed type-2 relation not supplied: " + to_string(t.quiver, p));
  }
  return t;
}

inline TrivExtPresentation complete_presentation(Quiver quiver, const std::vector<std::vector<std::string>>& cycle_words,
                                                 const std::optional<std::vector<std::vector<std::string>>>& rel2 = std::nullopt) {
  std::vector<std::vector<ArrowId>> words;
  for (const auto& w : cycle_words) {
    std::vector<ArrowId> ids;
    for (const auto& name : w) ids.push_back(quiver.arrow_id(name));
    words.push_back(std::move(ids));
  }
  std::optional<std::vector<Path>> supplied;
  if (rel2) {
    supplied.emplace();
    for (const auto& w : *rel2) supplied->push_back(Path::of(quiver, w));
  }
  return complete_presentation(std::move(quiver), words, supplied);
}

/// Equality classes of maximal paths of a schurian algebra whose parallel nonzero paths are
/// equal. Classes are ordered by representative; added arrows continue the input's numbering
/// when every arrow label is <prefix><number> with a common prefix, otherwise they are β1, β2, ...
inline std::vector<MaximalPathClass> maximal_paths(const PathSpace& ps) {
  const Quiver& q = ps.quiver();
  if (!is_schurian(ps)) fail(ErrorKind::unsupported_input, "algebra is not schurian");
  if (!is_path_equal(ps)) fail(ErrorKind::unsupported_input, "parallel nonzero paths are not all equal");

  std::vector<MaximalPathClass> classes;
  for (VertexId a = 0; a < q.vertex_count(); ++a) {
    for (VertexId b = 0; b < q.vertex_count(); ++b) {
      if (a == b) continue;
      std::vector<Path> members;
      for (const auto& p : ps.paths(a, b))
        if (!ps.is_zero_path(p)) members.push_back(p);
      if (members.empty()) continue;
      const Path& p = members.front();
      bool maximal = true;
      for (ArrowId x : q.in_arrows(a))
        if (!ps.is_zero_path(compose(Path::of(q, std::vector<ArrowId>{x}), p))) maximal = false;
      for (ArrowId x : q.out_arrows(b))
        if (!ps.is_zero_path(compose(p, Path::of(q, std::vector<ArrowId>{x})))) maximal = false;
      if (!maximal) continue;
      std::sort(members.begin(), members.end(), PathNameLess{&q});
      classes.push_back(MaximalPathClass{members.front(), std::move(members), {}});
    }
  }
  std::sort(classes.begin(), classes.end(), [&](const auto& x, const auto& y) {
    return PathNameLess{&q}(x.representative, y.representative);
  });

  std::optional<std::string> prefix;
  unsigned long next = 0;
  bool numbered = q.arrow_count() > 0;
  for (const auto& arrow : q.arrows()) {
    auto split = split_numbered(arrow.name);
    if (!split || (prefix && *prefix != split->first)) {
      numbered = false;
      break;
    }
    prefix = split->first;
    next = std::max(next, split->second);
  }
  auto taken = [&](const std::string& name) { return q.find_arrow(name).has_value(); };
  unsigned long fallback = 0;
  for (auto& c : classes) {
    if (numbered) {
      c.added_arrow = *prefix + std::to_string(++next);
    } else {
      do {
        c.added_arrow = "β" + std::to_string(++fallback);
      } while (taken(c.added_arrow));
    }
  }
  return classes;
}

inline std::vector<MaximalPathClass> maximal_paths(const BoundAlgebra& a) { return maximal_paths(build_path_space(a)); }

/// Presentation of T(A) for a schurian algebra A with acyclic quiver whose parallel nonzero
/// paths are equal.
inline TrivExtPresentation trivial_extension(const BoundAlgebra& a) {
  const PathSpace ps = build_path_space(a);
  const Quiver& qa = a.quiver();
  for (VertexId v = 0; v < qa.vertex_count(); ++v)
    if (qa.in_arrows(v).empty() && qa.out_arrows(v).empty())
      fail(ErrorKind::unsupported_input, "isolated vertex '" + qa.vertex_name(v) + "' would need a loop");
  auto classes = maximal_paths(ps);

  Quiver qt = qa;
  std::vector<std::vector<ArrowId>> words;
  std::vector<std::string> bases;
  for (const auto& c : classes) {
    ArrowId beta = qt.add_arrow(c.added_arrow, c.representative.target(), c.representative.source());
    for (const auto& member : c.members) {
      std::vector<ArrowId> w{beta};
      w.insert(w.end(), member.arrows().begin(), member.arrows().end());
      words.push_back(std::move(w));
      bases.push_back(c.added_arrow);
    }
  }
  TrivExtPresentation t = complete_presentation(std::move(qt), words, std::nullopt, bases);
  t.origin = a;
  t.maximal_classes = std::move(classes);
  return t;
}

/// Arrow-wise reversal of every part of the presentation.
inline TrivExtPresentation opposite(const TrivExtPresentation& t) {
  TrivExtPresentation out;
  out.quiver = opposite(t.quiver);
  for (const auto& c : t.cycles) {
    std::vector<ArrowId> w(c.word.rbegin(), c.word.rend());
    out.cycles.push_back(make_cycle(out.quiver, std::move(w), c.base));
  }
  detail::sort_cycles(out.quiver, out.cycles);
  for (const auto& p : t.rel1) out.rel1.push_back(opposite(out.quiver, p));
  for (const auto& p : t.rel2) out.rel2.push_back(opposite(out.quiver, p));
  for (const auto& c : t.rel3)
    out.rel3.push_back(detail::make_pair_sorted(out.quiver, opposite(out.quiver, c.first), opposite(out.quiver, c.second)));
  detail::sort_paths(out.quiver, out.rel1);
  detail::sort_paths(out.quiver, out.rel2);
  detail::sort_pairs(out.quiver, out.rel3);
  if (t.origin) out.origin = opposite(*t.origin);
  return out;
}

/// Quiver isomorphism carrying the elementary cycles and the relations of each type onto
/// those of `y`.
inline std::optional<Isomorphism> find_isomorphism(const TrivExtPresentation& x, const TrivExtPresentation& y) {
  if (x.cycles.size() != y.cycles.size() || x.rel1.size() != y.rel1.size() || x.rel2.size() != y.rel2.size() ||
      x.rel3.size() != y.rel3.size())
    return std::nullopt;
  const Quiver& qy = y.quiver;
  std::set<std::vector<ArrowId>> cycles_y;
  for (const auto& c : y.cycles) cycles_y.insert(c.word);
  std::set<std::vector<ArrowId>> rel1_y, rel2_y;
  for (const auto& p : y.rel1) rel1_y.insert(p.arrows());
  for (const auto& p : y.rel2) rel2_y.insert(p.arrows());
  std::set<std::pair<std::vector<ArrowId>, std::vector<ArrowId>>> rel3_y;
  for (const auto& c : y.rel3) rel3_y.emplace(std::minmax(c.first.arrows(), c.second.arrows()));

  std::optional<Isomorphism> found;
  for_each_quiver_isomorphism(x.quiver, qy, [&](const Isomorphism& iso) {
    for (const auto& c : x.cycles) {
      std::vector<ArrowId> w;
      for (ArrowId a : c.word) w.push_back(iso.arrow_map[a]);
      if (!cycles_y.contains(make_cycle(qy, std::move(w)).word)) return false;
    }
    for (const auto& p : x.rel1)
      if (!rel1_y.contains(iso.apply(qy, p).arrows())) return false;
    for (const auto& p : x.rel2)
      if (!rel2_y.contains(iso.apply(qy, p).arrows())) return false;
    for (const auto& c : x.rel3)
      if (!rel3_y.contains(std::minmax(iso.apply(qy, c.first).arrows(), iso.apply(qy, c.second).arrows())))
        return false;
    found = iso;
    return true;
  });
  return found;
}

inline bool are_isomorphic(const TrivExtPresentation& x, const TrivExtPresentation& y) {
  return find_isomorphism(x, y).has_value();
}

}  // namespace phi

#endif  // PHI_TRIVIAL_EXTENSION_HPP
