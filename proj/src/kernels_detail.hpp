#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "possdom/boolfn.hpp"
#include "possdom/domain.hpp"
#include "possdom/kernels.hpp"

namespace possdom::kernels::detail {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// Scans the tuples whose first row is member `first`, in order, and returns
/// the offset of the first failure inside that block.
inline std::optional<std::uint64_t> scan_block(const Domain& d, const CompiledAggregator& f, TupleCheck check,
                                               std::size_t first) {
  const auto members = d.members();
  const std::size_t m = members.size();
  const int k = f.k;
  std::uint64_t rows[kMaxFnArity];
  std::size_t digit[kMaxFnArity] = {};
  rows[0] = members[first];
  for (int i = 1; i < k; ++i) rows[i] = members[0];
  for (std::uint64_t offset = 0;; ++offset) {
    const std::uint64_t out = f.apply(std::span<const std::uint64_t>(rows, static_cast<std::size_t>(k)));
    bool ok;
    if (check == TupleCheck::Closure) {
      ok = d.contains(out);
    } else {
      ok = false;
      for (int i = 0; i < k && !ok; ++i) ok = rows[i] == out;
    }
    if (!ok) return offset;
    int pos = k - 1;
    while (pos >= 1) {
      if (++digit[pos] < m) {
        rows[pos] = members[digit[pos]];
        break;
      }
      digit[pos] = 0;
      rows[pos] = members[0];
      --pos;
    }
    if (pos < 1) return std::nullopt;
  }
}

inline std::uint64_t shrink_one(std::span<const std::uint64_t> members, int n, std::uint64_t a) {
  // A sub-clause of the maxterm of a is satisfied by m iff m differs from a on
  // one of its variables.
  std::uint64_t vars = full_mask(n);
  for (int j = 1; j <= n; ++j) {
    const std::uint64_t trial = vars & ~coord_bit(n, j);
    bool all_sat = true;
    for (auto m : members)
      if (((m ^ a) & trial) == 0) {
        all_sat = false;
        break;
      }
    if (all_sat) vars = trial;
  }
  return vars;
}

inline bool satisfies_all(std::span<const PackedClause> clauses, std::uint64_t a) {
  for (const auto& c : clauses)
    if (!c.satisfied_by(a)) return false;
  return true;
}

}  // namespace possdom::kernels::detail
