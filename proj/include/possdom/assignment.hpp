#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace possdom {

inline constexpr int kMaxPackedArity = 64;

/// Mask with a single bit for coordinate `j` (1-based) of an `n`-bit vector.
/// Coordinate 1 is the most significant bit, so numeric order on packed
/// vectors equals lexicographic order on their 0/1 strings.
constexpr std::uint64_t coord_bit(int n, int j) { return std::uint64_t{1} << (n - j); }

constexpr std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A point of {0,1}^n, n <= 64.
struct Assignment {
  int n = 0;
  std::uint64_t bits = 0;

  bool operator[](int j) const { return (bits & coord_bit(n, j)) != 0; }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int j = 1; j <= n; ++j)
      if ((*this)[j]) s[static_cast<std::size_t>(j - 1)] = '1';
    return s;
  }

  /// Throws InputError on a non-binary character or a string longer than 64.
  static Assignment from_string(std::string_view s);

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace possdom
