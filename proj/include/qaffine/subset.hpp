#pragma once

#include "qaffine/integer.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qaffine {

/// A subset w of {1..n} (stored 0-based as a bit mask, n <= 63).
class Subset {
 public:
  Subset() = default;
  Subset(std::size_t n, std::uint64_t bits) : n_(n), bits_(bits) {
    if (n > 63) throw StructuralError("Subset: n must be at most 63");
    if (n < 64 && (bits >> n) != 0) throw StructuralError("Subset: element out of range");
  }
  static Subset from_elements(std::size_t n, const std::vector<std::size_t>& zero_based) {
    std::uint64_t b = 0;
    for (auto i : zero_based) {
      if (i >= n) throw StructuralError("Subset: element out of range");
      b |= std::uint64_t{1} << i;
    }
    return Subset(n, b);
  }

  std::size_t universe() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> complement_elements() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (!contains(i)) out.push_back(i);
    return out;
  }
  std::vector<bool> mask() const {
    std::vector<bool> m(n_);
    for (std::size_t i = 0; i < n_; ++i) m[i] = contains(i);
    return m;
  }
  bool is_subset_of(const Subset& o) const { return (bits_ & ~o.bits_) == 0; }

  /// "{1,3}" with 1-based indices.
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (auto i : elements()) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
    return s + "}";
  }

  bool operator==(const Subset&) const = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t bits_ = 0;
};

/// All 2^n subsets, ordered by size and then lexicographically by their
/// ascending element lists.
inline std::vector<Subset> all_subsets(std::size_t n) {
  if (n > 20) throw StructuralError("all_subsets: n too large to enumerate");
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) out.emplace_back(n, b);
  std::stable_sort(out.begin(), out.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return out;
}

}  // namespace qaffine
