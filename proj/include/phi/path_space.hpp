#ifndef PHI_PATH_SPACE_HPP
#define PHI_PATH_SPACE_HPP

#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phi/bound_algebra.hpp"
#include "phi/error.hpp"
#include "phi/quiver.hpp"

namespace phi {

using Rational = boost::multiprecision::cpp_rational;

/// Sparse vector over a path basis: (basis index, nonzero coefficient), sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

inline constexpr std::size_t kDefaultPathCap = 200000;

/// Path-count cap: PHI_PATH_CAP when set to a positive integer, otherwise 200000.
inline std::size_t default_path_cap() {
  if (const char* env = std::getenv("PHI_PATH_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultPathCap;
}

/// x + factor * y
inline SparseVector add_scaled(const SparseVector& x, const Rational& factor, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, factor * y[j].second);
      ++j;
    } else {
      Rational v = x[i].second + factor * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Subspace kept in reduced row echelon form over the rationals.
class EchelonBasis {
 public:
  SparseVector reduce(SparseVector v) const {
    SparseVector original = v;
    for (const auto& [index, coeff] : original) {
      auto row = rows_.find(index);
      if (row == rows_.end()) continue;
      // pivot columns of other rows are zero in `row`, so one pass suffices
      auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, std::size_t k) { return e.first < k; });
      if (it == v.end() || it->first != index) continue;
      Rational c = it->second;
      v = add_scaled(v, -c, row->second);
    }
    return v;
  }

  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  /// Adds v to the span; returns true when the rank grows.
  bool insert(const SparseVector& v) {
    SparseVector w = reduce(v);
    if (w.empty()) return false;
    const std::size_t pivot = w.front().first;
    Rational lead = w.front().second;
    for (auto& e : w) e.second /= lead;
    for (auto& [p, row] : rows_) {
      auto it = std::lower_bound(row.begin(), row.end(), pivot, [](const auto& e, std::size_t k) { return e.first < k; });
      if (it == row.end() || it->first != pivot) continue;
      Rational c = it->second;
      row = add_scaled(row, -c, w);
    }
    rows_.emplace(pivot, std::move(w));
    return true;
  }

  std::size_t rank() const noexcept { return rows_.size(); }
  const std::map<std::size_t, SparseVector>& rows() const noexcept { return rows_; }

 private:
  std::map<std::size_t, SparseVector> rows_;
};

/// Exact description of KQ/I for acyclic Q: for each ordered vertex pair (a, b) the basis of all
/// paths a -> b and the subspace of that basis lying in I.
class PathSpace {
 public:
  static PathSpace build(const BoundAlgebra& algebra, std::size_t path_cap = default_path_cap()) {
    const Quiver& q = algebra.quiver();
    q.require_simple("build_path_space");
    auto order = topological_order(q);
    if (!order) fail(ErrorKind::unsupported_input, "build_path_space needs an acyclic quiver");

    PathSpace ps;
    ps.algebra_ = std::make_shared<const BoundAlgebra>(algebra);
    const std::size_t n = q.vertex_count();
    ps.n_ = n;
    ps.blocks_.resize(n * n);

    std::size_t total = 0;
    for (VertexId v = 0; v < n; ++v) {
      std::vector<ArrowId> stack;
      auto dfs = [&](auto&& self, VertexId u) -> void {
        if (++total > path_cap)
          fail(ErrorKind::resource_limit, "path count exceeds cap of " + std::to_string(path_cap));
        Block& block = ps.blocks_[v * n + u];
        block.index.emplace(stack, block.paths.size());
        block.paths.push_back(stack.empty() ? Path::trivial(v) : Path::of(q, stack));
        for (ArrowId a : q.out_arrows(u)) {
          stack.push_back(a);
          self(self, q.arrow(a).target);
          stack.pop_back();
        }
      };
      dfs(dfs, v);
    }

    auto add_generator = [&](const Path& lhs, const Path* rhs) {
      const VertexId x = lhs.source(), y = lhs.target();
      for (VertexId a = 0; a < n; ++a) {
        const Block& left = ps.blocks_[a * n + x];
        if (left.paths.empty()) continue;
        for (VertexId b = 0; b < n; ++b) {
          const Block& right = ps.blocks_[y * n + b];
          if (right.paths.empty()) continue;
          Block& target = ps.blocks_[a * n + b];
          for (const Path& u : left.paths) {
            for (const Path& v : right.paths) {
              SparseVector vec;
              vec.emplace_back(target.lookup(u, lhs, v), Rational(1));
              if (rhs) {
                std::size_t j = target.lookup(u, *rhs, v);
                vec.emplace_back(j, Rational(-1));
                std::sort(vec.begin(), vec.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
              }
              target.ideal.insert(vec);
            }
          }
        }
      }
    };
    for (const auto& p : algebra.zero_paths()) add_generator(p, nullptr);
    for (const auto& c : algebra.commutativity_pairs()) add_generator(c.first, &c.second);
    return ps;
  }

  const BoundAlgebra& algebra() const noexcept { return *algebra_; }
  const Quiver& quiver() const noexcept { return algebra_->quiver(); }
  std::size_t vertex_count() const noexcept { return n_; }

  /// Basis of all paths a -> b (trivial path first when a == b).
  const std::vector<Path>& paths(VertexId a, VertexId b) const { return blocks_.at(a * n_ + b).paths; }

  std::size_t rank(VertexId a, VertexId b) const { return blocks_.at(a * n_ + b).ideal.rank(); }

  /// dim e_a A e_b, counting paths a -> b modulo I.
  std::size_t dimension(VertexId a, VertexId b) const { return paths(a, b).size() - rank(a, b); }

  std::size_t total_paths() const {
    std::size_t total = 0;
    for (const auto& b : blocks_) total += b.paths.size();
    return total;
  }

  bool is_zero_path(const Path& p) const {
    const Block& block = blocks_.at(p.source() * n_ + p.target());
    return block.ideal.contains({{block.position(p), Rational(1)}});
  }

  bool paths_equal(const Path& p, const Path& q) const {
    if (p.source() != q.source() || p.target() != q.target())
      fail(ErrorKind::contract, "paths_equal needs parallel paths");
    if (p == q) return true;
    const Block& block = blocks_.at(p.source() * n_ + p.target());
    std::size_t i = block.position(p), j = block.position(q);
    SparseVector vec{{std::min(i, j), Rational(i < j ? 1 : -1)}, {std::max(i, j), Rational(i < j ? -1 : 1)}};
    return block.ideal.contains(vec);
  }

  /// Membership of a linear combination of paths a -> b in I.
  bool in_ideal(VertexId a, VertexId b, const SparseVector& v) const { return blocks_.at(a * n_ + b).ideal.contains(v); }

  std::size_t position(const Path& p) const { return blocks_.at(p.source() * n_ + p.target()).position(p); }

  const EchelonBasis& relation_basis(VertexId a, VertexId b) const { return blocks_.at(a * n_ + b).ideal; }

 private:
  struct Block {
    std::vector<Path> paths;
    std::map<std::vector<ArrowId>, std::size_t> index;
    EchelonBasis ideal;

    std::size_t position(const Path& p) const {
      auto it = index.find(p.arrows());
      if (it == index.end()) fail(ErrorKind::contract, "path is not a path of this quiver block");
      return it->second;
    }

    std::size_t lookup(const Path& u, const Path& mid, const Path& v) const {
      std::vector<ArrowId> word = u.arrows();
      word.insert(word.end(), mid.arrows().begin(), mid.arrows().end());
      word.insert(word.end(), v.arrows().begin(), v.arrows().end());
      return index.at(word);
    }
  };

  std::shared_ptr<const BoundAlgebra> algebra_;
  std::size_t n_ = 0;
  std::vector<Block> blocks_;
};

inline PathSpace build_path_space(const BoundAlgebra& algebra, std::size_t path_cap = default_path_cap()) {
  return PathSpace::build(algebra, path_cap);
}

// ---------------------------------------------------------------------------
// Predicates

inline bool is_schurian(const PathSpace& ps) {
  for (VertexId a = 0; a < ps.vertex_count(); ++a)
    for (VertexId b = 0; b < ps.vertex_count(); ++b)
      if (ps.dimension(a, b) > 1) return false;
  return true;
}

/// Parallel nonzero paths are equal in the algebra.
inline bool is_path_equal(const PathSpace& ps) {
  for (VertexId a = 0; a < ps.vertex_count(); ++a) {
    for (VertexId b = 0; b < ps.vertex_count(); ++b) {
      const Path* first_nonzero = nullptr;
      for (const auto& p : ps.paths(a, b)) {
        if (ps.is_zero_path(p)) continue;
        if (!first_nonzero)
          first_nonzero = &p;
        else if (!ps.paths_equal(*first_nonzero, p))
          return false;
      }
    }
  }
  return true;
}

/// No bypass, and for every vertex pair joined by a path all parallel paths are equal and nonzero.
inline bool is_incidence(const PathSpace& ps) {
  if (!bypasses(ps.quiver()).empty()) return false;
  for (VertexId a = 0; a < ps.vertex_count(); ++a) {
    for (VertexId b = 0; b < ps.vertex_count(); ++b) {
      const auto& paths = ps.paths(a, b);
      if (paths.empty()) continue;
      if (ps.is_zero_path(paths.front())) return false;
      for (std::size_t i = 1; i < paths.size(); ++i)
        if (!ps.paths_equal(paths.front(), paths[i])) return false;
    }
  }
  return true;
}

inline bool is_hereditary(const PathSpace& ps) {
  for (VertexId a = 0; a < ps.vertex_count(); ++a)
    for (VertexId b = 0; b < ps.vertex_count(); ++b)
      if (ps.rank(a, b) != 0) return false;
  return true;
}

/// Gentle conditions checked on the given presentation; requires every generator to be a
/// zero path of length two.
inline bool is_gentle(const PathSpace& ps) {
  const BoundAlgebra& alg = ps.algebra();
  const Quiver& q = alg.quiver();
  if (!alg.commutativity_pairs().empty()) return false;
  for (const auto& p : alg.zero_paths())
    if (p.length() != 2) return false;
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (q.out_arrows(v).size() > 2 || q.in_arrows(v).size() > 2) return false;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    std::size_t after_alive = 0, after_killed = 0, before_alive = 0, before_killed = 0;
    for (ArrowId b : q.out_arrows(q.arrow(a).target)) {
      bool zero = ps.is_zero_path(Path::of(q, std::vector<ArrowId>{a, b}));
      ++(zero ? after_killed : after_alive);
    }
    for (ArrowId b : q.in_arrows(q.arrow(a).source)) {
      bool zero = ps.is_zero_path(Path::of(q, std::vector<ArrowId>{b, a}));
      ++(zero ? before_killed : before_alive);
    }
    if (after_alive > 1 || before_alive > 1 || after_killed > 1 || before_killed > 1) return false;
  }
  return true;
}

inline bool is_schurian(const BoundAlgebra& a) { return is_schurian(build_path_space(a)); }
inline bool is_hereditary(const BoundAlgebra& a) { return is_hereditary(build_path_space(a)); }
inline bool is_gentle(const BoundAlgebra& a) { return is_gentle(build_path_space(a)); }
inline bool is_path_equal(const BoundAlgebra& a) { return is_path_equal(build_path_space(a)); }

/// Algebras whose quiver has an oriented cycle are never incidence algebras.
inline bool is_incidence(const BoundAlgebra& a) {
  if (!is_acyclic(a.quiver())) return false;
  return is_incidence(build_path_space(a));
}

/// Incidence algebra of a poset: its Hasse quiver with a generating set of commutativity
/// relations. Vertex pairs are processed by increasing longest-path length, and a pair (p0, p)
/// is added only when p is not already identified with p0 by relations on shorter pairs.
inline BoundAlgebra incidence_presentation(const Poset& poset) {
  Quiver q = hasse(poset);
  const std::size_t n = q.vertex_count();

  std::vector<std::vector<Path>> block(n * n);
  std::vector<std::size_t> longest(n * n, 0);
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      if (a != b) {
        block[a * n + b] = parallel_paths(q, a, b);
        for (const auto& p : block[a * n + b]) longest[a * n + b] = std::max(longest[a * n + b], p.length());
      }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      if (block[a * n + b].size() >= 2) pairs.emplace_back(a, b);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& x, const auto& y) { return longest[x.first * n + x.second] < longest[y.first * n + y.second]; });

  std::vector<CommutativityPair> relations;
  for (const auto& [a, b] : pairs) {
    const auto& paths = block[a * n + b];
    std::map<std::vector<ArrowId>, std::size_t> pos;
    for (std::size_t i = 0; i < paths.size(); ++i) pos.emplace(paths[i].arrows(), i);
    std::vector<std::size_t> parent(paths.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    // identifications u r v ~ u r' v induced by existing relations
    for (const auto& rel : relations) {
      const VertexId x = rel.first.source(), y = rel.first.target();
      std::vector<Path> lefts, rights;
      if (a == x)
        lefts.push_back(Path::trivial(a));
      else
        lefts = block[a * n + x];
      if (y == b)
        rights.push_back(Path::trivial(b));
      else
        rights = block[y * n + b];
      for (const auto& u : lefts)
        for (const auto& v : rights) {
          auto i = pos.find(compose(compose(u, rel.first), v).arrows());
          auto j = pos.find(compose(compose(u, rel.second), v).arrows());
          if (i != pos.end() && j != pos.end()) parent[find(i->second)] = find(j->second);
        }
    }
    for (std::size_t i = 1; i < paths.size(); ++i) {
      if (find(i) == find(0)) continue;
      relations.push_back({paths[0], paths[i]});
      parent[find(i)] = find(0);
    }
  }
  return BoundAlgebra(std::move(q), {}, std::move(relations));
}

}  // namespace phi

#endif  // PHI_PATH_SPACE_HPP
