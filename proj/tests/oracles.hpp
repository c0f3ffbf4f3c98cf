// Independent reference computations used by the tests. Nothing here calls the search or
// elimination code under test; only the plain data types (Quiver, Path, BoundAlgebra,
// TrivExtPresentation) are shared.
#ifndef PHI_TESTS_ORACLES_HPP
#define PHI_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/quiver.hpp"
#include "phi/trivial_extension.hpp"

namespace oracle {

using phi::ArrowId;
using phi::BoundAlgebra;
using phi::Path;
using phi::Quiver;
using phi::VertexId;
using Word = std::vector<ArrowId>;

inline std::string corpus(const std::string& name) { return std::string(PHI_CORPUS_DIR) + "/" + name; }

/// All arrow words of length 1..max_len, by plain extension.
inline std::vector<Word> words_up_to(const Quiver& q, std::size_t max_len) {
  std::vector<Word> out, frontier;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) frontier.push_back({a});
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      out.push_back(w);
      for (ArrowId b = 0; b < q.arrow_count(); ++b)
        if (q.arrow(b).source == q.arrow(w.back()).target) {
          Word x = w;
          x.push_back(b);
          next.push_back(std::move(x));
        }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Every path a -> b of an acyclic quiver as (source, target, word); trivial paths have empty words.
struct AnyPath {
  VertexId source, target;
  Word word;
  bool operator<(const AnyPath& o) const { return std::tie(source, target, word) < std::tie(o.source, o.target, o.word); }
  bool operator==(const AnyPath& o) const = default;
};

inline std::vector<AnyPath> all_paths(const Quiver& q) {
  std::vector<AnyPath> out;
  for (VertexId v = 0; v < q.vertex_count(); ++v) out.push_back({v, v, {}});
  for (const auto& w : words_up_to(q, q.vertex_count()))
    out.push_back({q.arrow(w.front()).source, q.arrow(w.back()).target, w});
  std::sort(out.begin(), out.end());
  return out;
}

/// Two-sided ideal of a bound algebra, row-reduced modulo a large prime. Generators have
/// coefficients +-1, so on the small quivers of the tests the rank agrees with the rational one.
class ModIdeal {
 public:
  static constexpr std::int64_t P = 2147483647;

  explicit ModIdeal(const BoundAlgebra& a) : q_(a.quiver()) {
    paths_ = all_paths(q_);
    for (std::size_t i = 0; i < paths_.size(); ++i) index_[paths_[i]] = i;
    std::vector<std::vector<std::pair<Word, std::int64_t>>> gens;
    for (const auto& z : a.zero_paths()) gens.push_back({{z.arrows(), 1}});
    for (const auto& c : a.commutativity_pairs()) gens.push_back({{c.first.arrows(), 1}, {c.second.arrows(), P - 1}});
    for (const auto& g : gens) {
      const VertexId s = q_.arrow(g.front().first.front()).source;
      const VertexId t = q_.arrow(g.front().first.back()).target;
      for (const auto& u : paths_) {
        if (u.target != s) continue;
        for (const auto& v : paths_) {
          if (v.source != t) continue;
          std::map<std::size_t, std::int64_t> row;
          for (const auto& [w, c] : g) {
            Word full = u.word;
            full.insert(full.end(), w.begin(), w.end());
            full.insert(full.end(), v.word.begin(), v.word.end());
            row[index_.at({u.source, v.target, full})] = c;
          }
          add(u.source, v.target, row);
        }
      }
    }
  }

  std::size_t rank(VertexId a, VertexId b) const {
    auto it = blocks_.find({a, b});
    return it == blocks_.end() ? 0 : it->second.size();
  }

  std::size_t count(VertexId a, VertexId b) const {
    return std::count_if(paths_.begin(), paths_.end(), [&](const AnyPath& p) { return p.source == a && p.target == b; });
  }

  std::size_t dimension(VertexId a, VertexId b) const { return count(a, b) - rank(a, b); }

  bool contains(VertexId a, VertexId b, std::map<std::size_t, std::int64_t> v) const {
    auto it = blocks_.find({a, b});
    if (it != blocks_.end()) reduce(it->second, v);
    return v.empty();
  }

  bool is_zero(const Path& p) const {
    return contains(p.source(), p.target(), {{index_.at({p.source(), p.target(), p.arrows()}), 1}});
  }

  bool equal(const Path& p, const Path& r) const {
    if (p == r) return true;
    return contains(p.source(), p.target(),
                    {{index_.at({p.source(), p.target(), p.arrows()}), 1}, {index_.at({r.source(), r.target(), r.arrows()}), P - 1}});
  }

  const std::vector<AnyPath>& paths() const { return paths_; }

 private:
  using Row = std::map<std::size_t, std::int64_t>;

  static std::int64_t inv(std::int64_t x) {
    std::int64_t r = 1, e = P - 2;
    x %= P;
    while (e) {
      if (e & 1) r = r * x % P;
      x = x * x % P;
      e >>= 1;
    }
    return r;
  }

  static void reduce(const std::map<std::size_t, Row>& basis, Row& v) {
    for (const auto& [pivot, row] : basis) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      const std::int64_t f = it->second;
      for (const auto& [k, c] : row) {
        std::int64_t x = ((v[k] - f * c) % P + P) % P;
        if (x == 0) v.erase(k); else v[k] = x;
      }
    }
  }

  void add(VertexId a, VertexId b, Row v) {
    auto& basis = blocks_[{a, b}];
    reduce(basis, v);
    if (v.empty()) return;
    const std::size_t pivot = v.begin()->first;
    const std::int64_t s = inv(v.begin()->second);
    for (auto& [k, c] : v) c = c * s % P;
    for (auto& [p, row] : basis) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const std::int64_t f = it->second;
      for (const auto& [k, c] : v) {
        std::int64_t x = ((row[k] - f * c) % P + P) % P;
        if (x == 0) row.erase(k); else row[k] = x;
      }
    }
    basis[pivot] = std::move(v);
  }

  Quiver q_;
  std::vector<AnyPath> paths_;
  std::map<AnyPath, std::size_t> index_;
  std::map<std::pair<VertexId, VertexId>, std::map<std::size_t, Row>> blocks_;
};

/// Literal reading of "incidence algebra": the quiver is the Hasse quiver of its reachability
/// order and the ideal equals the span generated by all differences of parallel paths.
inline bool is_incidence(const BoundAlgebra& a) {
  const Quiver& q = a.quiver();
  const auto paths = all_paths(q);
  // Hasse: an arrow x -> y with another path x -> y of length >= 2 is a bypass
  for (ArrowId e = 0; e < q.arrow_count(); ++e)
    for (const auto& p : paths)
      if (p.word.size() >= 2 && p.source == q.arrow(e).source && p.target == q.arrow(e).target) return false;
  std::vector<phi::CommutativityPair> all;
  for (const auto& x : paths)
    for (const auto& y : paths)
      if (x.source == y.source && x.target == y.target && x.word < y.word && !x.word.empty() &&
          (x.word.size() >= 2 || y.word.size() >= 2))
        all.push_back({Path::of(q, x.word), Path::of(q, y.word)});
  const BoundAlgebra reference(q, {}, all);
  const ModIdeal ia(a), ir(reference);
  for (VertexId s = 0; s < q.vertex_count(); ++s)
    for (VertexId t = 0; t < q.vertex_count(); ++t) {
      if (ia.rank(s, t) != ir.rank(s, t)) return false;
      for (const auto& c : all)
        if (c.first.source() == s && c.first.target() == t && !ia.equal(c.first, c.second)) return false;
    }
  return true;
}

/// Every vertex permutation, keeping those carrying arrows to arrows and the ideal onto the ideal.
inline bool isomorphic(const BoundAlgebra& x, const BoundAlgebra& y) {
  const Quiver& qx = x.quiver();
  const Quiver& qy = y.quiver();
  if (qx.vertex_count() != qy.vertex_count() || qx.arrow_count() != qy.arrow_count()) return false;
  const std::size_t n = qx.vertex_count();
  const ModIdeal iy(y);
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<ArrowId> amap(qx.arrow_count());
    bool ok = true;
    for (ArrowId a = 0; a < qx.arrow_count() && ok; ++a) {
      auto img = qy.arrow_between(perm[qx.arrow(a).source], perm[qx.arrow(a).target]);
      if (!img) ok = false; else amap[a] = *img;
    }
    if (!ok) continue;
    auto map = [&](const Path& p) {
      Word w;
      for (ArrowId a : p.arrows()) w.push_back(amap[a]);
      return Path::of(qy, w);
    };
    std::vector<Path> zeros;
    for (const auto& z : x.zero_paths()) zeros.push_back(map(z));
    std::vector<phi::CommutativityPair> pairs;
    for (const auto& c : x.commutativity_pairs()) pairs.push_back({map(c.first), map(c.second)});
    const BoundAlgebra image(qy, zeros, pairs);
    const ModIdeal ix(image);
    for (VertexId s = 0; s < n && ok; ++s)
      for (VertexId t = 0; t < n && ok; ++t) ok = ix.rank(s, t) == iy.rank(s, t);
    for (const auto& z : zeros) ok = ok && iy.is_zero(z);
    for (const auto& c : pairs) ok = ok && iy.equal(c.first, c.second);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::size_t max_cycle_length(const phi::TrivExtPresentation& t) {
  std::size_t m = 0;
  for (const auto& c : t.cycles) m = std::max(m, c.length());
  return m;
}

inline bool inside_one_cycle(const phi::TrivExtPresentation& t, const Word& w) {
  for (const auto& c : t.cycles)
    if (std::all_of(w.begin(), w.end(), [&](ArrowId a) { return c.contains(a); })) return true;
  return false;
}

/// Type-2 generators straight from the definition, over all words up to length max+2.
inline std::set<Word> rel2(const phi::TrivExtPresentation& t) {
  std::set<Word> out;
  for (const auto& w : words_up_to(t.quiver, max_cycle_length(t) + 2)) {
    if (w.size() < 2 || inside_one_cycle(t, w)) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < w.size() && minimal; ++i)
      for (std::size_t j = i + 1; j <= w.size() && minimal; ++j)
        if (j - i < w.size() && !inside_one_cycle(t, Word(w.begin() + i, w.begin() + j))) minimal = false;
    if (minimal) out.insert(w);
  }
  return out;
}

/// Supplements of `w` as a proper cyclic subword of some cycle, found by trying every rotation.
inline std::set<Word> supplements(const phi::TrivExtPresentation& t, const Word& w) {
  std::set<Word> out;
  for (const auto& c : t.cycles) {
    const std::size_t n = c.length();
    if (w.size() >= n) continue;
    for (std::size_t r = 0; r < n; ++r) {
      Word rot;
      for (std::size_t k = 0; k < n; ++k) rot.push_back(c.word[(r + k) % n]);
      if (std::equal(w.begin(), w.end(), rot.begin())) out.insert(Word(rot.begin() + w.size(), rot.end()));
    }
  }
  return out;
}

/// Type-3 pairs straight from the definition: distinct words sharing a nontrivial supplement.
inline std::set<std::pair<Word, Word>> rel3(const phi::TrivExtPresentation& t) {
  std::vector<std::pair<Word, std::set<Word>>> candidates;
  for (const auto& w : words_up_to(t.quiver, max_cycle_length(t))) {
    auto s = supplements(t, w);
    if (!s.empty()) candidates.emplace_back(w, std::move(s));
  }
  std::set<std::pair<Word, Word>> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const auto& [x, sx] = candidates[i];
      const auto& [y, sy] = candidates[j];
      bool common = std::any_of(sx.begin(), sx.end(), [&](const Word& s) { return sy.contains(s); });
      if (common) out.insert(std::minmax(x, y));
    }
  return out;
}

/// Cutting sets by scanning all arrow subsets with std::set bookkeeping.
inline std::set<std::set<std::string>> cutting_sets(const phi::TrivExtPresentation& t) {
  std::set<std::set<std::string>> out;
  const std::size_t n = t.quiver.arrow_count();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& c : t.cycles) {
      int hits = 0;
      for (ArrowId a : c.word) hits += (mask >> a) & 1;
      ok = ok && hits == 1;
    }
    if (!ok) continue;
    std::set<std::string> s;
    for (ArrowId a = 0; a < n; ++a)
      if (mask >> a & 1) s.insert(t.quiver.arrow(a).name);
    out.insert(s);
  }
  return out;
}

/// Random order on n elements: a random DAG relation on a shuffled labelling, closed transitively
/// by the caller through Poset::generated_by.
inline std::vector<std::pair<std::string, std::string>> random_order(std::mt19937& rng, std::size_t n, double p) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) out.emplace_back("p" + std::to_string(label[i]), "p" + std::to_string(label[j]));
  return out;
}

inline std::vector<std::string> element_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i));
  return out;
}

}  // namespace oracle

#endif  // PHI_TESTS_ORACLES_HPP
