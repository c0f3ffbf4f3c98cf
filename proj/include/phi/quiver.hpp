#ifndef PHI_QUIVER_HPP
#define PHI_QUIVER_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phi/error.hpp"
#include "phi/names.hpp"

namespace phi {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  std::string name;
  VertexId source;
  VertexId target;
};

/// Finite quiver with named vertices and named arrows. Ids are dense and follow insertion order.
///
/// Loops and multiple parallel arrows are representable; algebraic operations reject them.
class Quiver {
 public:
  Quiver() = default;

  VertexId add_vertex(std::string name) {
    if (name.empty()) fail(ErrorKind::invalid_quiver, "empty vertex name");
    if (vertex_index_.contains(name)) fail(ErrorKind::invalid_quiver, "duplicate vertex '" + name + "'");
    VertexId id = vertices_.size();
    vertex_index_.emplace(name, id);
    vertices_.push_back(std::move(name));
    out_.emplace_back();
    in_.emplace_back();
    return id;
  }

  VertexId ensure_vertex(const std::string& name) {
    if (auto found = find_vertex(name)) return *found;
    return add_vertex(name);
  }

  ArrowId add_arrow(std::string name, VertexId source, VertexId target) {
    if (name.empty()) fail(ErrorKind::invalid_quiver, "empty arrow name");
    if (source >= vertices_.size() || target >= vertices_.size())
      fail(ErrorKind::invalid_quiver, "arrow '" + name + "' has an undeclared endpoint");
    if (arrow_index_.contains(name)) fail(ErrorKind::invalid_quiver, "duplicate arrow '" + name + "'");
    ArrowId id = arrows_.size();
    arrow_index_.emplace(name, id);
    arrows_.push_back(Arrow{std::move(name), source, target});
    out_[source].push_back(id);
    in_[target].push_back(id);
    return id;
  }

  ArrowId add_arrow(std::string name, std::string_view source, std::string_view target) {
    VertexId s = ensure_vertex(std::string(source));
    return add_arrow(std::move(name), s, ensure_vertex(std::string(target)));
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const std::vector<std::string>& vertex_names() const noexcept { return vertices_; }

  std::optional<VertexId> find_vertex(std::string_view name) const {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<ArrowId> find_arrow(std::string_view name) const {
    auto it = arrow_index_.find(std::string(name));
    if (it == arrow_index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId vertex(std::string_view name) const {
    if (auto v = find_vertex(name)) return *v;
    fail(ErrorKind::invalid_quiver, "unknown vertex '" + std::string(name) + "'");
  }

  ArrowId arrow_id(std::string_view name) const {
    if (auto a = find_arrow(name)) return *a;
    fail(ErrorKind::invalid_quiver, "unknown arrow '" + std::string(name) + "'");
  }

  std::span<const ArrowId> out_arrows(VertexId v) const { return out_.at(v); }
  std::span<const ArrowId> in_arrows(VertexId v) const { return in_.at(v); }

  bool has_loops() const {
    return std::any_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.source == a.target; });
  }

  bool has_parallel_arrows() const {
    std::vector<std::pair<VertexId, VertexId>> ends;
    ends.reserve(arrows_.size());
    for (const auto& a : arrows_) ends.emplace_back(a.source, a.target);
    std::sort(ends.begin(), ends.end());
    return std::adjacent_find(ends.begin(), ends.end()) != ends.end();
  }

  /// Throws unsupported_input unless the quiver has neither loops nor parallel arrows.
  void require_simple(std::string_view operation) const {
    if (has_loops()) fail(ErrorKind::unsupported_input, std::string(operation) + ": quiver has a loop");
    if (has_parallel_arrows())
      fail(ErrorKind::unsupported_input, std::string(operation) + ": quiver has multiple parallel arrows");
  }

  /// Arrow from `source` to `target`, if exactly one exists.
  std::optional<ArrowId> arrow_between(VertexId source, VertexId target) const {
    std::optional<ArrowId> found;
    for (ArrowId a : out_.at(source)) {
      if (arrows_[a].target != target) continue;
      if (found) return std::nullopt;
      found = a;
    }
    return found;
  }

  friend bool operator==(const Quiver& lhs, const Quiver& rhs) {
    if (lhs.vertices_ != rhs.vertices_ || lhs.arrows_.size() != rhs.arrows_.size()) return false;
    for (std::size_t i = 0; i < lhs.arrows_.size(); ++i) {
      const auto& a = lhs.arrows_[i];
      const auto& b = rhs.arrows_[i];
      if (a.name != b.name || a.source != b.source || a.target != b.target) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, ArrowId, std::less<>> arrow_index_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<std::vector<ArrowId>> in_;
};

/// A path of a quiver, composed left to right: arrows a1 a2 ... ak with t(ai) = s(ai+1).
/// The empty arrow list is the trivial path at `source()`.
class Path {
 public:
  static Path trivial(VertexId v) { return Path(v, v, {}); }

  static Path of(const Quiver& q, std::vector<ArrowId> arrows) {
    if (arrows.empty()) fail(ErrorKind::composition, "a nontrivial path needs at least one arrow");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i) {
      if (q.arrow(arrows[i]).target != q.arrow(arrows[i + 1]).source)
        fail(ErrorKind::composition, "arrows '" + q.arrow(arrows[i]).name + "' and '" + q.arrow(arrows[i + 1]).name +
                                         "' do not compose");
    }
    VertexId s = q.arrow(arrows.front()).source;
    VertexId t = q.arrow(arrows.back()).target;
    return Path(s, t, std::move(arrows));
  }

  static Path of(const Quiver& q, const std::vector<std::string>& names) {
    std::vector<ArrowId> ids;
    ids.reserve(names.size());
    for (const auto& n : names) ids.push_back(q.arrow_id(n));
    return of(q, std::move(ids));
  }

  static Path of(const Quiver& q, std::initializer_list<std::string_view> names) {
    std::vector<ArrowId> ids;
    for (auto n : names) ids.push_back(q.arrow_id(n));
    return of(q, std::move(ids));
  }

  VertexId source() const noexcept { return source_; }
  VertexId target() const noexcept { return target_; }
  std::size_t length() const noexcept { return arrows_.size(); }
  bool is_trivial() const noexcept { return arrows_.empty(); }
  const std::vector<ArrowId>& arrows() const noexcept { return arrows_; }

  bool contains_arrow(ArrowId a) const { return std::find(arrows_.begin(), arrows_.end(), a) != arrows_.end(); }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  friend Path compose(const Path&, const Path&);
  Path(VertexId s, VertexId t, std::vector<ArrowId> arrows) : source_(s), target_(t), arrows_(std::move(arrows)) {}

  VertexId source_ = 0;
  VertexId target_ = 0;
  std::vector<ArrowId> arrows_;
};

inline Path compose(const Path& p, const Path& q) {
  if (p.target() != q.source()) fail(ErrorKind::composition, "target of the first path differs from source of the second");
  std::vector<ArrowId> arrows = p.arrows();
  arrows.insert(arrows.end(), q.arrows().begin(), q.arrows().end());
  return Path(p.source(), q.target(), std::move(arrows));
}

inline std::vector<std::string> arrow_names(const Quiver& q, const Path& p) {
  std::vector<std::string> names;
  names.reserve(p.length());
  for (ArrowId a : p.arrows()) names.push_back(q.arrow(a).name);
  return names;
}

/// Space-separated arrow names, or "e_<vertex>" for a trivial path.
inline std::string to_string(const Quiver& q, const Path& p) {
  if (p.is_trivial()) return "e_" + q.vertex_name(p.source());
  std::string out;
  for (ArrowId a : p.arrows()) {
    if (!out.empty()) out += ' ';
    out += q.arrow(a).name;
  }
  return out;
}

/// Orders paths by their arrow-name sequences (natural label order), trivial paths first by vertex name.
struct PathNameLess {
  const Quiver* quiver;
  bool operator()(const Path& lhs, const Path& rhs) const {
    if (lhs.is_trivial() != rhs.is_trivial()) return lhs.is_trivial();
    if (lhs.is_trivial())
      return natural_compare(quiver->vertex_name(lhs.source()), quiver->vertex_name(rhs.source())) < 0;
    return natural_less(arrow_names(*quiver, lhs), arrow_names(*quiver, rhs));
  }
};

// ---------------------------------------------------------------------------
// Posets

/// A finite poset stored as a dense order matrix.
class Poset {
 public:
  /// Strict constructor: `leq` must already be reflexive, antisymmetric and transitive.
  static Poset from_relation(std::vector<std::string> elements,
                             const std::vector<std::pair<std::string, std::string>>& leq) {
    Poset p(std::move(elements));
    for (const auto& [x, y] : leq) p.set(p.index(x), p.index(y));
    p.validate();
    return p;
  }

  /// Order generated by `leq`: reflexive-transitive closure, then antisymmetry is checked.
  static Poset generated_by(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& leq) {
    Poset p(std::move(elements));
    for (std::size_t i = 0; i < p.size(); ++i) p.set(i, i);
    for (const auto& [x, y] : leq) p.set(p.index(x), p.index(y));
    for (std::size_t k = 0; k < p.size(); ++k)
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p.leq(i, k))
          for (std::size_t j = 0; j < p.size(); ++j)
            if (p.leq(k, j)) p.set(i, j);
    p.validate();
    return p;
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const std::string& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  bool leq(std::size_t i, std::size_t j) const { return order_[i * size() + j] != 0; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }

  std::size_t index(std::string_view name) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      if (elements_[i] == name) return i;
    fail(ErrorKind::invalid_poset, "unknown element '" + std::string(name) + "'");
  }

  std::vector<std::pair<std::string, std::string>> relation() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (leq(i, j)) out.emplace_back(elements_[i], elements_[j]);
    return out;
  }

  friend bool operator==(const Poset&, const Poset&) = default;

 private:
  explicit Poset(std::vector<std::string> elements) : elements_(std::move(elements)) {
    std::vector<std::string> sorted = elements_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorKind::invalid_poset, "duplicate element");
    order_.assign(elements_.size() * elements_.size(), 0);
  }

  void set(std::size_t i, std::size_t j) { order_[i * size() + j] = 1; }

  void validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
      if (!leq(i, i)) fail(ErrorKind::invalid_poset, "not reflexive at '" + elements_[i] + "'");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq(i, j) && leq(j, i))
          fail(ErrorKind::invalid_poset, "not antisymmetric: '" + elements_[i] + "' and '" + elements_[j] + "'");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (leq(i, k))
          for (std::size_t j = 0; j < n; ++j)
            if (leq(k, j) && !leq(i, j))
              fail(ErrorKind::invalid_poset,
                   "not transitive: '" + elements_[i] + "' <= '" + elements_[k] + "' <= '" + elements_[j] + "'");
  }

  std::vector<std::string> elements_;
  std::vector<char> order_;
};

// ---------------------------------------------------------------------------
// Structural predicates

/// Vertices in topological order, or nullopt when the quiver has an oriented cycle.
inline std::optional<std::vector<VertexId>> topological_order(const Quiver& q) {
  std::vector<std::size_t> indegree(q.vertex_count(), 0);
  for (const auto& a : q.arrows()) ++indegree[a.target];
  std::vector<VertexId> order;
  order.reserve(q.vertex_count());
  for (VertexId v = 0; v < q.vertex_count(); ++v)
    if (indegree[v] == 0) order.push_back(v);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (ArrowId a : q.out_arrows(order[head])) {
      VertexId t = q.arrow(a).target;
      if (--indegree[t] == 0) order.push_back(t);
    }
  }
  if (order.size() != q.vertex_count()) return std::nullopt;
  return order;
}

inline bool is_acyclic(const Quiver& q) { return topological_order(q).has_value(); }

/// All paths from `from` to `to`; includes the trivial path when from == to.
inline std::vector<Path> parallel_paths(const Quiver& q, VertexId from, VertexId to) {
  if (!is_acyclic(q)) fail(ErrorKind::unsupported_input, "parallel_paths needs an acyclic quiver");
  std::vector<Path> out;
  if (from == to) {
    out.push_back(Path::trivial(from));
    return out;
  }
  // reach[v]: `to` is reachable from v
  std::vector<char> reach(q.vertex_count(), 0);
  auto order = *topological_order(q);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    if (v == to) reach[v] = 1;
    for (ArrowId a : q.out_arrows(v))
      if (reach[q.arrow(a).target]) reach[v] = 1;
  }
  std::vector<ArrowId> stack;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (v == to) {
      out.push_back(Path::of(q, stack));
      return;
    }
    for (ArrowId a : q.out_arrows(v)) {
      if (!reach[q.arrow(a).target]) continue;
      stack.push_back(a);
      self(self, q.arrow(a).target);
      stack.pop_back();
    }
  };
  if (reach[from]) dfs(dfs, from);
  std::sort(out.begin(), out.end(), PathNameLess{&q});
  return out;
}

struct Bypass {
  ArrowId arrow;
  Path path;
};

/// Pairs (arrow, path) where the path is parallel to and distinct from the arrow.
inline std::vector<Bypass> bypasses(const Quiver& q) {
  std::vector<Bypass> out;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const auto& arrow = q.arrow(a);
    if (arrow.source == arrow.target) continue;
    for (auto& p : parallel_paths(q, arrow.source, arrow.target)) {
      if (p.length() == 1 && p.arrows().front() == a) continue;
      out.push_back(Bypass{a, std::move(p)});
    }
  }
  return out;
}

/// Reachability matrix (reflexive), row-major.
inline std::vector<char> reachability(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  std::vector<char> reach(n * n, 0);
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> stack{v};
    reach[v * n + v] = 1;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (ArrowId a : q.out_arrows(u)) {
        VertexId t = q.arrow(a).target;
        if (!reach[v * n + t]) {
          reach[v * n + t] = 1;
          stack.push_back(t);
        }
      }
    }
  }
  return reach;
}

/// Hasse quiver: one arrow per covering relation, named "<x>_<y>".
inline Quiver hasse(const Poset& p) {
  Quiver q;
  for (const auto& e : p.elements()) q.add_vertex(e);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!p.less(i, j)) continue;
      bool covers = true;
      for (std::size_t k = 0; k < p.size() && covers; ++k)
        if (p.less(i, k) && p.less(k, j)) covers = false;
      if (covers) q.add_arrow(p.element(i) + "_" + p.element(j), i, j);
    }
  }
  return q;
}

inline Quiver opposite(const Quiver& q) {
  Quiver out;
  for (const auto& v : q.vertex_names()) out.add_vertex(v);
  for (const auto& a : q.arrows()) out.add_arrow(a.name, a.target, a.source);
  return out;
}

/// The reversed path in the opposite quiver (same arrow ids, reversed order).
inline Path opposite(const Quiver& opposite_quiver, const Path& p) {
  if (p.is_trivial()) return p;
  std::vector<ArrowId> reversed(p.arrows().rbegin(), p.arrows().rend());
  return Path::of(opposite_quiver, std::move(reversed));
}

inline bool is_connected(const Quiver& q) {
  if (q.vertex_count() == 0) return true;
  std::vector<char> seen(q.vertex_count(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    auto visit = [&](VertexId u) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
    };
    for (ArrowId a : q.out_arrows(v)) visit(q.arrow(a).target);
    for (ArrowId a : q.in_arrows(v)) visit(q.arrow(a).source);
  }
  return count == q.vertex_count();
}

// ---------------------------------------------------------------------------
// Underlying graph classification

enum class GraphFamily { A, A_tilde, D, D_tilde, E, E_tilde, other };

struct GraphType {
  GraphFamily family = GraphFamily::other;
  std::size_t n = 0;

  friend bool operator==(const GraphType&, const GraphType&) = default;
};

/// "A5", "~A5", "D4", "~D4", "E6", "~E7", "other".
inline std::string to_string(const GraphType& t) {
  switch (t.family) {
    case GraphFamily::A: return "A" + std::to_string(t.n);
    case GraphFamily::A_tilde: return "~A" + std::to_string(t.n);
    case GraphFamily::D: return "D" + std::to_string(t.n);
    case GraphFamily::D_tilde: return "~D" + std::to_string(t.n);
    case GraphFamily::E: return "E" + std::to_string(t.n);
    case GraphFamily::E_tilde: return "~E" + std::to_string(t.n);
    case GraphFamily::other: return "other";
  }
  return "other";
}

/// Dynkin / extended Dynkin type of the underlying undirected multigraph.
inline GraphType classify_graph(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  const GraphType other{};
  if (n == 0 || !is_connected(q) || q.has_loops()) return other;

  // undirected simple adjacency; a doubled edge only survives as ~A1
  std::map<std::pair<VertexId, VertexId>, std::size_t> multiplicity;
  for (const auto& a : q.arrows()) ++multiplicity[std::minmax(a.source, a.target)];
  for (const auto& [edge, count] : multiplicity) {
    if (count == 1) continue;
    if (count == 2 && n == 2 && q.arrow_count() == 2) return {GraphFamily::A_tilde, 1};
    return other;
  }
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [edge, count] : multiplicity) {
    adj[edge.first].push_back(edge.second);
    adj[edge.second].push_back(edge.first);
  }
  const std::size_t edges = multiplicity.size();

  if (edges == n) {
    bool cycle = std::all_of(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 2; });
    if (cycle && n >= 3) return {GraphFamily::A_tilde, n - 1};
    return other;
  }
  if (edges != n - 1) return other;

  std::vector<VertexId> branch;
  for (VertexId v = 0; v < n; ++v) {
    if (adj[v].size() > 4) return other;
    if (adj[v].size() >= 3) branch.push_back(v);
  }
  if (branch.empty()) return {GraphFamily::A, n};

  // number of vertices on the arm leaving `center` through `first`
  auto arm_length = [&](VertexId center, VertexId first) {
    std::size_t len = 1;
    VertexId prev = center, cur = first;
    while (adj[cur].size() == 2) {
      VertexId next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    return adj[cur].size() == 1 ? len : 0;  // 0: the arm ends at another branch vertex
  };

  if (branch.size() == 1) {
    VertexId c = branch.front();
    std::vector<std::size_t> arms;
    for (VertexId u : adj[c]) arms.push_back(arm_length(c, u));
    std::sort(arms.begin(), arms.end());
    if (arms.size() == 4) {
      if (arms == std::vector<std::size_t>{1, 1, 1, 1}) return {GraphFamily::D_tilde, 4};
      return other;
    }
    if (arms[0] == 1 && arms[1] == 1) return {GraphFamily::D, n};
    if (arms == std::vector<std::size_t>{1, 2, 2}) return {GraphFamily::E, 6};
    if (arms == std::vector<std::size_t>{1, 2, 3}) return {GraphFamily::E, 7};
    if (arms == std::vector<std::size_t>{1, 2, 4}) return {GraphFamily::E, 8};
    if (arms == std::vector<std::size_t>{2, 2, 2}) return {GraphFamily::E_tilde, 6};
    if (arms == std::vector<std::size_t>{1, 3, 3}) return {GraphFamily::E_tilde, 7};
    if (arms == std::vector<std::size_t>{1, 2, 5}) return {GraphFamily::E_tilde, 8};
    return other;
  }
  if (branch.size() == 2) {
    for (VertexId c : branch) {
      if (adj[c].size() != 3) return other;
      std::size_t leaves = 0;
      for (VertexId u : adj[c])
        if (adj[u].size() == 1) ++leaves;
      if (leaves != 2) return other;
    }
    return {GraphFamily::D_tilde, n - 1};
  }
  return other;
}

}  // namespace phi

#endif  // PHI_QUIVER_HPP
