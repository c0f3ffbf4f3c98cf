#ifndef PHI_ISOMORPHISM_HPP
#define PHI_ISOMORPHISM_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/path_space.hpp"
#include "phi/quiver.hpp"

namespace phi {

/// Bijection between two quivers: vertex_map[v] and arrow_map[a] are images in the second quiver.
struct Isomorphism {
  std::vector<VertexId> vertex_map;
  std::vector<ArrowId> arrow_map;

  Path apply(const Quiver& target, const Path& p) const {
    if (p.is_trivial()) return Path::trivial(vertex_map.at(p.source()));
    std::vector<ArrowId> arrows;
    arrows.reserve(p.length());
    for (ArrowId a : p.arrows()) arrows.push_back(arrow_map.at(a));
    return Path::of(target, std::move(arrows));
  }

  Isomorphism inverse() const {
    Isomorphism inv;
    inv.vertex_map.resize(vertex_map.size());
    inv.arrow_map.resize(arrow_map.size());
    for (std::size_t v = 0; v < vertex_map.size(); ++v) inv.vertex_map[vertex_map[v]] = v;
    for (std::size_t a = 0; a < arrow_map.size(); ++a) inv.arrow_map[arrow_map[a]] = a;
    return inv;
  }
};

/// Calls `visit(iso)` for every isomorphism x -> y of quivers without parallel arrows, stopping
/// as soon as `visit` returns true. Returns whether a visit returned true.
///
/// Plain backtracking over vertices (highest degree first, then neighbours), pruned by
/// (in-degree, out-degree, loop) signatures and adjacency consistency with mapped vertices.
template <class Visitor>
bool for_each_quiver_isomorphism(const Quiver& x, const Quiver& y, Visitor&& visit) {
  x.require_simple("isomorphism");
  y.require_simple("isomorphism");
  const std::size_t n = x.vertex_count();
  if (n != y.vertex_count() || x.arrow_count() != y.arrow_count()) return false;

  auto adjacency = [](const Quiver& q) {
    const std::size_t m = q.vertex_count();
    std::vector<char> adj(m * m, 0);
    for (const auto& a : q.arrows()) adj[a.source * m + a.target] = 1;
    return adj;
  };
  const auto adj_x = adjacency(x), adj_y = adjacency(y);
  auto signature = [](const Quiver& q, VertexId v) {
    return std::pair(q.in_arrows(v).size(), q.out_arrows(v).size());
  };

  // vertex order: connected sweep starting from the largest degree
  std::vector<VertexId> order;
  std::vector<char> placed(n, 0);
  while (order.size() < n) {
    VertexId start = n;
    std::size_t best = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::size_t deg = x.in_arrows(v).size() + x.out_arrows(v).size();
      if (start == n || deg > best) {
        start = v;
        best = deg;
      }
    }
    std::vector<VertexId> queue{start};
    placed[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      VertexId v = queue[head];
      order.push_back(v);
      auto push = [&](VertexId u) {
        if (!placed[u]) {
          placed[u] = 1;
          queue.push_back(u);
        }
      };
      for (ArrowId a : x.out_arrows(v)) push(x.arrow(a).target);
      for (ArrowId a : x.in_arrows(v)) push(x.arrow(a).source);
    }
  }

  Isomorphism iso;
  iso.vertex_map.assign(n, n);
  std::vector<char> used(n, 0);

  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) {
      iso.arrow_map.assign(x.arrow_count(), 0);
      for (ArrowId a = 0; a < x.arrow_count(); ++a) {
        auto image = y.arrow_between(iso.vertex_map[x.arrow(a).source], iso.vertex_map[x.arrow(a).target]);
        if (!image) return false;
        iso.arrow_map[a] = *image;
      }
      return visit(static_cast<const Isomorphism&>(iso));
    }
    const VertexId v = order[depth];
    for (VertexId w = 0; w < n; ++w) {
      if (used[w] || signature(x, v) != signature(y, w)) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < depth && consistent; ++k) {
        VertexId u = order[k], image = iso.vertex_map[u];
        if (adj_x[v * n + u] != adj_y[w * n + image] || adj_x[u * n + v] != adj_y[image * n + w]) consistent = false;
      }
      if (!consistent) continue;
      iso.vertex_map[v] = w;
      used[w] = 1;
      if (self(self, depth + 1)) return true;
      used[w] = 0;
      iso.vertex_map[v] = n;
    }
    return false;
  };
  return search(search, 0);
}

/// Isomorphism of bound algebras: a quiver isomorphism carrying the ideal of `x` onto the ideal
/// of `y`. For acyclic quivers ideals are compared exactly through path spaces (every generator
/// of one side maps into the other ideal). Cyclic quivers fall back to comparing the normalized
/// generator sets.
inline std::optional<Isomorphism> find_isomorphism(const BoundAlgebra& x, const BoundAlgebra& y) {
  const Quiver& qx = x.quiver();
  const Quiver& qy = y.quiver();
  if (qx.vertex_count() != qy.vertex_count() || qx.arrow_count() != qy.arrow_count()) return std::nullopt;

  std::optional<Isomorphism> found;
  if (is_acyclic(qx) && is_acyclic(qy)) {
    const PathSpace px = build_path_space(x);
    const PathSpace py = build_path_space(y);
    auto maps_into = [](const BoundAlgebra& from, const PathSpace& to, const Isomorphism& iso) {
      const Quiver& target = to.quiver();
      for (const auto& p : from.zero_paths())
        if (!to.is_zero_path(iso.apply(target, p))) return false;
      for (const auto& c : from.commutativity_pairs())
        if (!to.paths_equal(iso.apply(target, c.first), iso.apply(target, c.second))) return false;
      return true;
    };
    for_each_quiver_isomorphism(qx, qy, [&](const Isomorphism& iso) {
      if (!maps_into(x, py, iso) || !maps_into(y, px, iso.inverse())) return false;
      found = iso;
      return true;
    });
    return found;
  }

  for_each_quiver_isomorphism(qx, qy, [&](const Isomorphism& iso) {
    std::vector<Path> zeros;
    for (const auto& p : x.zero_paths()) zeros.push_back(iso.apply(qy, p));
    std::vector<CommutativityPair> pairs;
    for (const auto& c : x.commutativity_pairs()) pairs.push_back({iso.apply(qy, c.first), iso.apply(qy, c.second)});
    BoundAlgebra image(qy, std::move(zeros), std::move(pairs));
    if (image.zero_paths() != y.zero_paths() || image.commutativity_pairs() != y.commutativity_pairs()) return false;
    found = iso;
    return true;
  });
  return found;
}

inline bool are_isomorphic(const BoundAlgebra& x, const BoundAlgebra& y) { return find_isomorphism(x, y).has_value(); }

/// x is isomorphic to y or to the opposite of y.
inline bool are_isomorphic_up_to_opposite(const BoundAlgebra& x, const BoundAlgebra& y) {
  return are_isomorphic(x, y) || are_isomorphic(x, opposite(y));
}

}  // namespace phi

#endif  // PHI_ISOMORPHISM_HPP
