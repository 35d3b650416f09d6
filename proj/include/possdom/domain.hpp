#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "possdom/assignment.hpp"
#include "possdom/formula.hpp"

namespace possdom {

class BoolFn;

/// Membership test over packed vectors: a dense bitmap for small arity, a
/// hash set otherwise.
class MembershipIndex {
public:
  MembershipIndex() = default;
  MembershipIndex(int n, std::span<const std::uint64_t> members);

  bool contains(std::uint64_t bits) const {
    if (dense_) return (bitmap_[bits >> 6] >> (bits & 63)) & 1;
    return hashed_.contains(bits);
  }

private:
  bool dense_ = true;
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<std::uint64_t> hashed_;
};

inline constexpr int kDenseIndexMaxArity = 22;

/// A finite set of n-bit vectors, stored sorted.
class Domain {
public:
  Domain() = default;
  /// Throws InputError on duplicate members or members wider than n.
  Domain(int n, std::vector<std::uint64_t> members);
  /// Like the constructor but collapses duplicates.
  static Domain from_unsorted(int n, std::vector<std::uint64_t> members);
  static Domain full_cube(int n);

  int arity() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const std::uint64_t> members() const { return members_; }
  Assignment member(std::size_t i) const { return {n_, members_[i]}; }

  bool contains(std::uint64_t bits) const { return index_.contains(bits); }
  bool contains(const Assignment& a) const { return a.n == n_ && index_.contains(a.bits); }
  const MembershipIndex& index() const { return index_; }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.n_ == b.n_ && a.members_ == b.members_;
  }

private:
  int n_ = 0;
  std::vector<std::uint64_t> members_;
  MembershipIndex index_;
};

/// Rejects ragged rows, non-binary characters, duplicate rows and empty domains.
Domain parse_domain(std::string_view text);
std::string render_domain(const Domain& d);

struct DegeneracyReport {
  bool non_degenerate = true;
  /// (coordinate, forced bit), ascending by coordinate.
  std::vector<std::pair<int, bool>> fixed_coordinates;
};

/// Throws InputError on an empty domain.
DegeneracyReport degeneracy(const Domain& d);

/// Projection onto `idx` (ascending, 1-based, non-empty). Duplicates collapse.
Domain project(const Domain& d, const VarSet& idx);

Domain rename_domain(const Domain& d, const VarSet& vars);

/// Policy for operations whose theory assumes a non-degenerate domain.
enum class DegeneracyPolicy { Strict, Permissive };

/// Throws InputError when `d` is degenerate.
void require_non_degenerate(const Domain& d);

inline constexpr std::uint64_t kDefaultTupleCap = 10'000'000;

/// Componentwise closure of `d` under the k-ary function `f`. Throws
/// CapExceeded when |d|^k > tuple_cap.
bool is_closed_under(const Domain& d, const BoolFn& f, std::uint64_t tuple_cap = kDefaultTupleCap);

/// Closure under the ternary sum mod 2.
bool is_affine(const Domain& d, std::uint64_t tuple_cap = kDefaultTupleCap);

/// Throws InputError unless every index is in 1..n; returns the sorted,
/// de-duplicated set.
VarSet checked_var_set(const VarSet& vars, int n);

}  // namespace possdom
