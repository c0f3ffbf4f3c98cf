// Generated families of trivial extensions used by the lemma suites.
#ifndef PHI_TESTS_GENERATORS_HPP
#define PHI_TESTS_GENERATORS_HPP

#include <optional>
#include <string>
#include <vector>

#include "phi/bound_algebra.hpp"
#include "phi/quiver.hpp"
#include "phi/trivial_extension.hpp"

namespace gen {

/// Hereditary algebra on the line v1 - v2 - ... - vn; bit i of `orientation` set means the arrow
/// between v(i+1) and v(i+2) points right.
struct LineAlgebra {
  std::size_t n;
  unsigned orientation;
  phi::BoundAlgebra algebra;
};

inline LineAlgebra line_algebra(std::size_t n, unsigned orientation) {
  phi::Quiver q;
  for (std::size_t i = 1; i <= n; ++i) q.add_vertex("v" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::string left = "v" + std::to_string(i + 1), right = "v" + std::to_string(i + 2);
    if (orientation >> i & 1)
      q.add_arrow("x" + std::to_string(i + 1), left, right);
    else
      q.add_arrow("x" + std::to_string(i + 1), right, left);
  }
  return {n, orientation, phi::BoundAlgebra(q)};
}

/// Orientations of A_n whose trivial extension has at least two elementary cycles, one of
/// length at least three.
inline std::vector<LineAlgebra> line_family(std::size_t n) {
  std::vector<LineAlgebra> out;
  for (unsigned o = 0; o < (1u << (n - 1)); ++o) {
    // maximal paths are the maximal runs of equal orientation
    std::size_t runs = 1, longest = 1, current = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if ((o >> i & 1) == (o >> (i - 1) & 1)) {
        ++current;
      } else {
        ++runs;
        current = 1;
      }
      longest = std::max(longest, current);
    }
    if (runs >= 2 && longest >= 2) out.push_back(line_algebra(n, o));
  }
  return out;
}

/// The arrows the lemma names at one end of the line: the arrow of A at the end vertex and the
/// added arrow at the end vertex; also the length of the elementary cycle through them.
struct LineEnd {
  phi::ArrowId end_arrow;
  phi::ArrowId added_arrow;
  std::size_t cycle_length;
};

inline LineEnd line_end(const phi::TrivExtPresentation& t, const std::string& end_vertex, const std::string& end_arrow) {
  const phi::Quiver& q = t.quiver;
  const phi::ArrowId a = q.arrow_id(end_arrow);
  const phi::VertexId v = q.vertex(end_vertex);
  for (const auto& c : t.cycles) {
    if (!c.contains(a)) continue;
    const phi::ArrowId b = q.arrow_id(c.base);
    if (q.arrow(b).source == v || q.arrow(b).target == v) return {a, b, c.length()};
  }
  return {a, a, 0};
}

/// Three elementary cycles: C1 = a1..am l1..lk, C2 = l1..lk g1..gn and C3 = t1..tj bp b, with C3
/// meeting C2 only in the vertex after g_attach.
struct ThreeCycleParams {
  std::size_t m, n, lambda, theta, attach;
};

inline phi::TrivExtPresentation three_cycles(const ThreeCycleParams& p) {
  phi::Quiver q;
  // lambda runs S -> ... -> Y; alpha and gamma run Y -> ... -> S
  auto chain = [&](const std::string& prefix, std::size_t len, const std::string& from, const std::string& to,
                   const std::string& inner) {
    std::vector<std::string> names;
    std::string prev = from;
    for (std::size_t i = 1; i <= len; ++i) {
      std::string next = i == len ? to : inner + std::to_string(i);
      names.push_back(prefix + std::to_string(i));
      q.add_arrow(names.back(), prev, next);
      prev = next;
    }
    return names;
  };
  auto lambda = chain("l", p.lambda, "S", "Y", "L");
  auto alpha = chain("a", p.m, "Y", "S", "A");
  auto gamma = chain("g", p.n, "Y", "S", "G");
  const std::string attach = "G" + std::to_string(p.attach);
  q.add_arrow("b", attach, "B");
  auto theta = chain("t", p.theta, "B", "Top", "T");
  q.add_arrow("bp", "Top", attach);

  std::vector<std::vector<std::string>> cycles(3);
  cycles[0] = alpha;
  cycles[0].insert(cycles[0].end(), lambda.begin(), lambda.end());
  cycles[1] = lambda;
  cycles[1].insert(cycles[1].end(), gamma.begin(), gamma.end());
  cycles[2] = theta;
  cycles[2].push_back("bp");
  cycles[2].push_back("b");
  return phi::complete_presentation(q, cycles);
}

inline std::vector<ThreeCycleParams> three_cycle_family() {
  std::vector<ThreeCycleParams> out;
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 2; n <= 4; ++n)
      for (std::size_t l = 1; l <= 2; ++l)
        for (std::size_t t = 1; t <= 2; ++t)
          for (std::size_t k = 1; k < n; ++k) out.push_back({m, n, l, t, k});
  return out;
}

}  // namespace gen

#endif  // PHI_TESTS_GENERATORS_HPP
