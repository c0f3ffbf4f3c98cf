#ifndef PHI_NAMES_HPP
#define PHI_NAMES_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phi {

/// Orders labels so that embedded integers compare numerically: a2 < a10 < b1.
inline int natural_compare(std::string_view lhs, std::string_view rhs) {
  std::size_t i = 0, j = 0;
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < lhs.size() && j < rhs.size()) {
    if (is_digit(lhs[i]) && is_digit(rhs[j])) {
      std::size_t ie = i, je = j;
      while (ie < lhs.size() && is_digit(lhs[ie])) ++ie;
      while (je < rhs.size() && is_digit(rhs[je])) ++je;
      std::string_view a = lhs.substr(i, ie - i), b = rhs.substr(j, je - j);
      while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
      while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      if (int c = a.compare(b); c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
    } else {
      if (lhs[i] != rhs[j]) return static_cast<unsigned char>(lhs[i]) < static_cast<unsigned char>(rhs[j]) ? -1 : 1;
      ++i;
      ++j;
    }
  }
  if (i == lhs.size() && j == rhs.size()) return lhs.compare(rhs) < 0 ? -1 : (lhs == rhs ? 0 : 1);
  return i == lhs.size() ? -1 : 1;
}

struct NaturalLess {
  bool operator()(std::string_view lhs, std::string_view rhs) const { return natural_compare(lhs, rhs) < 0; }
};

inline bool natural_less(const std::vector<std::string>& lhs, const std::vector<std::string>& rhs) {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), NaturalLess{});
}

/// Splits a label such as "a12" into ("a", 12). Labels without a trailing integer yield nullopt.
inline std::optional<std::pair<std::string, unsigned long>> split_numbered(std::string_view label) {
  std::size_t k = label.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(label[k - 1]))) --k;
  if (k == label.size() || k == 0 || label.size() - k > 9) return std::nullopt;
  return std::make_pair(std::string(label.substr(0, k)), std::stoul(std::string(label.substr(k))));
}

}  // namespace phi

#endif  // PHI_NAMES_HPP
