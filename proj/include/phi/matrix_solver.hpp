#ifndef PHI_MATRIX_SOLVER_HPP
#define PHI_MATRIX_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phi/error.hpp"
#include "phi/names.hpp"
#include "phi/trivial_extension.hpp"

namespace phi {

/// 0/1 membership of arrows (rows) in type-2 relations and elementary cycles (columns, relations
/// first).
struct MatrixInstance {
  std::size_t rels = 0;
  std::size_t cycles = 0;
  std::vector<std::vector<int>> rows;
  std::vector<std::string> labels;  // one per row; alfa1, alfa2, ... when not given

  std::size_t arrows() const noexcept { return rows.size(); }
  int at(std::size_t arrow, std::size_t column) const { return rows[arrow][column]; }

  const std::string& label(std::size_t arrow) const { return labels.at(arrow); }
};

/// A solution as a sorted list of row indices.
using MatrixSolution = std::vector<std::size_t>;

inline std::vector<std::string> default_matrix_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("alfa" + std::to_string(i));
  return out;
}

/// Size limits of the original form (arrows < 30, cycles < 10, relations < 50); zero relations are
/// accepted. Also requires 0/1 entries and at least two arrows per cycle.
inline void validate(const MatrixInstance& m) {
  auto invalid = [](const std::string& why) { fail(ErrorKind::invalid_information, why); };
  if (m.arrows() < 1 || m.arrows() >= 30) invalid("arrow count must be between 1 and 29");
  if (m.cycles < 1 || m.cycles >= 10) invalid("cycle count must be between 1 and 9");
  if (m.rels >= 50) invalid("relation count must be below 50");
  if (m.labels.size() != m.arrows()) invalid("one label per arrow row is required");
  for (const auto& row : m.rows) {
    if (row.size() != m.rels + m.cycles) invalid("row length differs from rels + cycles");
    for (int x : row)
      if (x != 0 && x != 1) invalid("entries must be 0 or 1");
  }
  for (std::size_t c = 0; c < m.cycles; ++c) {
    int ones = 0;
    for (const auto& row : m.rows) ones += row[m.rels + c];
    if (ones < 2) invalid("cycle column " + std::to_string(c + 1) + " has fewer than two arrows");
  }
}

inline bool is_matrix_solution(const MatrixInstance& m, const MatrixSolution& s) {
  for (std::size_t j = 0; j < m.rels + m.cycles; ++j) {
    int sum = 0;
    for (std::size_t i : s) sum += m.at(i, j);
    if (j < m.rels ? sum == 0 : sum != 1) return false;
  }
  return true;
}

namespace detail {

inline void sort_solutions(std::vector<MatrixSolution>& sols) {
  for (auto& s : sols) std::sort(s.begin(), s.end());
  std::sort(sols.begin(), sols.end(), [](const MatrixSolution& x, const MatrixSolution& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
}

}  // namespace detail

/// Every row subset with each relation column covered at least once and each cycle column
/// exactly once. Rows lying in no cycle are free and are enumerated as well.
inline std::vector<MatrixSolution> solve(const MatrixInstance& m) {
  validate(m);
  const std::size_t n = m.arrows();
  std::vector<std::size_t> free_rows;
  for (std::size_t i = 0; i < n; ++i) {
    bool in_cycle = false;
    for (std::size_t c = 0; c < m.cycles; ++c) in_cycle = in_cycle || m.at(i, m.rels + c);
    if (!in_cycle) free_rows.push_back(i);
  }
  std::vector<MatrixSolution> out;
  std::vector<int> hits(m.cycles, 0);
  MatrixSolution chosen;

  auto finish = [&] {
    const std::size_t k = free_rows.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      MatrixSolution s = chosen;
      for (std::size_t b = 0; b < k; ++b)
        if (mask >> b & 1) s.push_back(free_rows[b]);
      std::sort(s.begin(), s.end());
      if (is_matrix_solution(m, s)) out.push_back(std::move(s));
    }
  };
  auto search = [&](auto&& self, std::size_t c) -> void {
    while (c < m.cycles && hits[c] == 1) ++c;
    if (c == m.cycles) {
      finish();
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!m.at(i, m.rels + c)) continue;
      bool ok = true;
      for (std::size_t d = 0; d < m.cycles; ++d)
        if (m.at(i, m.rels + d) && ++hits[d] > 1) ok = false;
      if (ok) {
        chosen.push_back(i);
        self(self, c + 1);
        chosen.pop_back();
      }
      for (std::size_t d = 0; d < m.cycles; ++d)
        if (m.at(i, m.rels + d)) --hits[d];
    }
  };
  search(search, 0);
  detail::sort_solutions(out);
  return out;
}

/// Re-enactment of the original search program: repeatedly takes the arrow lying in most
/// type-2 relations as reference, drops arrows sharing a cycle with it and tries combinations
/// of the rest in decreasing size. Reports solutions in the order the program would announce
/// them, duplicates included. Not guaranteed complete.
inline std::vector<MatrixSolution> solve_heuristic(const MatrixInstance& m) {
  validate(m);
  const std::size_t n = m.arrows(), rels = m.rels, cics = m.cycles;
  auto rel_count = [&](std::size_t i) {
    int s = 0;
    for (std::size_t j = 0; j < rels; ++j) s += m.at(i, j);
    return s;
  };
  auto cycle_count = [&](std::size_t i) {
    int s = 0;
    for (std::size_t j = rels; j < rels + cics; ++j) s += m.at(i, j);
    return s;
  };
  std::vector<std::size_t> queue(n);
  for (std::size_t i = 0; i < n; ++i) queue[i] = i;
  std::stable_sort(queue.begin(), queue.end(), [&](std::size_t x, std::size_t y) { return rel_count(x) > rel_count(y); });

  std::vector<char> retired(n, 0);  // earlier references
  std::vector<MatrixSolution> out;
  auto try_sum = [&](std::size_t ref, const std::vector<std::size_t>& others) {
    std::vector<int> sum(rels + cics, 0);
    for (std::size_t j = 0; j < rels + cics; ++j) {
      sum[j] = m.at(ref, j);
      for (std::size_t i : others) sum[j] += m.at(i, j);
    }
    for (std::size_t j = 0; j < rels; ++j)
      if (sum[j] == 0) return;
    for (std::size_t j = rels; j < rels + cics; ++j)
      if (sum[j] != 1) return;
    MatrixSolution s{ref};
    s.insert(s.end(), others.begin(), others.end());
    out.push_back(std::move(s));
  };

  std::size_t head = 0;
  while (head < queue.size() && static_cast<long>(cics) * rel_count(queue[head]) >= static_cast<long>(rels)) {
    const std::size_t ref = queue[head];
    int corte = static_cast<int>(cics) - cycle_count(ref);
    std::vector<char> excluded = retired;
    for (std::size_t j = rels; j < rels + cics; ++j)
      if (m.at(ref, j))
        for (std::size_t i = 0; i < n; ++i)
          if (m.at(i, j)) excluded[i] = 1;
    if (corte == 0) {
      try_sum(ref, {});
    } else {
      std::vector<std::size_t> pool;
      for (std::size_t i = 0; i < n; ++i)
        if (!excluded[i] && i != ref) pool.push_back(i);
      for (; corte > 0; --corte) {
        std::vector<std::size_t> combo;
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t right) {
          if (right == 0) {
            try_sum(ref, combo);
            return;
          }
          for (std::size_t i = left; i + right <= pool.size(); ++i) {
            combo.push_back(pool[i]);
            rec(i + 1, right - 1);
            combo.pop_back();
          }
        };
        rec(0, static_cast<std::size_t>(corte));
      }
    }
    retired[ref] = 1;
    ++head;
    if (queue.size() - head <= 1) break;
  }
  return out;
}

struct MatrixComparison {
  std::vector<MatrixSolution> complete;
  std::vector<MatrixSolution> heuristic;  // as announced, normalized to sorted sets
  std::vector<MatrixSolution> missing;    // in complete, never announced
  std::vector<MatrixSolution> extra;      // announced, not in complete
  std::size_t duplicates = 0;
};

inline MatrixComparison compare_solvers(const MatrixInstance& m) {
  MatrixComparison r;
  r.complete = solve(m);
  r.heuristic = solve_heuristic(m);
  for (auto& s : r.heuristic) std::sort(s.begin(), s.end());
  std::vector<MatrixSolution> unique = r.heuristic;
  detail::sort_solutions(unique);
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  r.duplicates = r.heuristic.size() - unique.size();
  for (const auto& s : r.complete)
    if (!std::binary_search(unique.begin(), unique.end(), s, [](const auto& x, const auto& y) {
          return x.size() != y.size() ? x.size() < y.size() : x < y;
        }))
      r.missing.push_back(s);
  for (const auto& s : unique)
    if (std::find(r.complete.begin(), r.complete.end(), s) == r.complete.end()) r.extra.push_back(s);
  return r;
}

/// Matrix of a presentation: arrows occurring in type-2 relations first, then the others, each
/// group in natural name order.
inline MatrixInstance encode(const TrivExtPresentation& t) {
  const Quiver& q = t.quiver;
  std::vector<ArrowId> in_rel2, rest;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    bool used = std::any_of(t.rel2.begin(), t.rel2.end(), [&](const Path& p) { return p.contains_arrow(a); });
    (used ? in_rel2 : rest).push_back(a);
  }
  auto by_name = [&](ArrowId x, ArrowId y) { return natural_compare(q.arrow(x).name, q.arrow(y).name) < 0; };
  std::sort(in_rel2.begin(), in_rel2.end(), by_name);
  std::sort(rest.begin(), rest.end(), by_name);
  in_rel2.insert(in_rel2.end(), rest.begin(), rest.end());

  MatrixInstance m;
  m.rels = t.rel2.size();
  m.cycles = t.cycles.size();
  for (ArrowId a : in_rel2) {
    std::vector<int> row;
    for (const auto& p : t.rel2) row.push_back(p.contains_arrow(a) ? 1 : 0);
    for (const auto& c : t.cycles) row.push_back(c.contains(a) ? 1 : 0);
    m.rows.push_back(std::move(row));
    m.labels.push_back(q.arrow(a).name);
  }
  return m;
}

inline std::vector<std::string> solution_labels(const MatrixInstance& m, const MatrixSolution& s) {
  std::vector<std::string> out;
  for (std::size_t i : s) out.push_back(m.label(i));
  std::sort(out.begin(), out.end(), NaturalLess{});
  return out;
}

}  // namespace phi

#endif  // PHI_MATRIX_SOLVER_HPP
