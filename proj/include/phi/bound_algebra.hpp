#ifndef PHI_BOUND_ALGEBRA_HPP
#define PHI_BOUND_ALGEBRA_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "phi/error.hpp"
#include "phi/quiver.hpp"

namespace phi {

/// Unordered pair of parallel paths p, q generating the relation p - q. Stored with first < second.
struct CommutativityPair {
  Path first;
  Path second;

  friend auto operator<=>(const CommutativityPair&, const CommutativityPair&) = default;
  friend bool operator==(const CommutativityPair&, const CommutativityPair&) = default;
};

/// KQ/I presented by monomial generators (zero paths) and commutativity generators.
///
/// Generators are validated on construction: zero paths have length >= 2, the two sides of a
/// commutativity pair are parallel, distinct and not both single arrows. Generator lists are
/// normalized (sorted by arrow-name sequence, duplicates removed).
class BoundAlgebra {
 public:
  BoundAlgebra() = default;

  explicit BoundAlgebra(Quiver quiver, std::vector<Path> zero_paths = {},
                        std::vector<CommutativityPair> commutativity_pairs = {})
      : quiver_(std::move(quiver)), zero_paths_(std::move(zero_paths)), commutativity_(std::move(commutativity_pairs)) {
    PathNameLess less{&quiver_};
    for (const auto& p : zero_paths_) {
      check_path(p);
      if (p.length() < 2)
        fail(ErrorKind::invalid_relation, "zero relation '" + to_string(quiver_, p) + "' has length < 2");
    }
    for (auto& c : commutativity_) {
      check_path(c.first);
      check_path(c.second);
      if (c.first.is_trivial() || c.second.is_trivial())
        fail(ErrorKind::invalid_relation, "commutativity relation with a trivial side");
      if (c.first.source() != c.second.source() || c.first.target() != c.second.target())
        fail(ErrorKind::invalid_relation, "commutativity relation '" + to_string(quiver_, c.first) + " = " +
                                              to_string(quiver_, c.second) + "' joins non-parallel paths");
      if (c.first == c.second) fail(ErrorKind::invalid_relation, "commutativity relation with equal sides");
      if (c.first.length() < 2 && c.second.length() < 2)
        fail(ErrorKind::invalid_relation, "commutativity relation between two arrows");
      if (less(c.second, c.first)) std::swap(c.first, c.second);
    }
    std::sort(zero_paths_.begin(), zero_paths_.end(), less);
    zero_paths_.erase(std::unique(zero_paths_.begin(), zero_paths_.end()), zero_paths_.end());
    auto pair_less = [&](const CommutativityPair& x, const CommutativityPair& y) {
      if (less(x.first, y.first)) return true;
      if (less(y.first, x.first)) return false;
      return less(x.second, y.second);
    };
    std::sort(commutativity_.begin(), commutativity_.end(), pair_less);
    commutativity_.erase(std::unique(commutativity_.begin(), commutativity_.end()), commutativity_.end());
  }

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Path>& zero_paths() const noexcept { return zero_paths_; }
  const std::vector<CommutativityPair>& commutativity_pairs() const noexcept { return commutativity_; }

  bool has_relations() const noexcept { return !zero_paths_.empty() || !commutativity_.empty(); }

  friend bool operator==(const BoundAlgebra&, const BoundAlgebra&) = default;

 private:
  void check_path(const Path& p) const {
    for (ArrowId a : p.arrows())
      if (a >= quiver_.arrow_count()) fail(ErrorKind::invalid_relation, "relation uses an unknown arrow");
    if (!p.is_trivial()) (void)Path::of(quiver_, p.arrows());
  }

  Quiver quiver_;
  std::vector<Path> zero_paths_;
  std::vector<CommutativityPair> commutativity_;
};

inline BoundAlgebra opposite(const BoundAlgebra& a) {
  Quiver q = opposite(a.quiver());
  std::vector<Path> zeros;
  for (const auto& p : a.zero_paths()) zeros.push_back(opposite(q, p));
  std::vector<CommutativityPair> pairs;
  for (const auto& c : a.commutativity_pairs()) pairs.push_back({opposite(q, c.first), opposite(q, c.second)});
  return BoundAlgebra(std::move(q), std::move(zeros), std::move(pairs));
}

}  // namespace phi

#endif  // PHI_BOUND_ALGEBRA_HPP
