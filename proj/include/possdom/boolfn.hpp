#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "possdom/assignment.hpp"

namespace possdom {

inline constexpr int kMaxFnArity = 6;

/// A k-ary Boolean function as a 2^k-entry truth table. Row index is the
/// input read as binary with the first argument most significant.
class BoolFn {
public:
  BoolFn() = default;
  /// Throws InputError unless 1 <= k <= 6; bits above row 2^k-1 are dropped.
  BoolFn(int arity, std::uint64_t table);

  int arity() const { return k_; }
  std::uint64_t table() const { return table_; }
  std::size_t rows() const { return std::size_t{1} << k_; }

  bool at(std::uint32_t row) const { return (table_ >> row) & 1; }
  bool operator()(std::span<const bool> args) const;
  bool operator()(std::initializer_list<bool> args) const {
    return (*this)(std::span<const bool>(args.begin(), args.size()));
  }

  /// Table as a 2^k character string, row 0 first.
  std::string bits() const;
  /// Inverse of bits(); the string length fixes the arity.
  static BoolFn from_bits(std::string_view bits);

  friend bool operator==(const BoolFn&, const BoolFn&) = default;

private:
  int k_ = 1;
  std::uint64_t table_ = 0b10;
};

/// Row index of the input (a_1..a_k) for a k-ary table.
std::uint32_t row_of(std::span<const bool> args);

/// and, or (any arity), and3, or3, maj, xor3, id, pr<d> (with arity k).
/// Throws InputError on an unknown name or incompatible arity.
BoolFn named_fn(std::string_view name, int k);
BoolFn projection(int d, int k);

/// Short name of a well-known function of this arity, if any.
std::optional<std::string> known_name(const BoolFn& f);

bool is_unanimous(const BoolFn& f);
/// d if f is pr_d^k.
std::optional<int> projection_index(const BoolFn& f);
bool is_anonymous(const BoolFn& f);
bool is_monotone(const BoolFn& f);
bool is_1_immune(const BoolFn& f);
/// g(x,x,y) = g(x,y,x) = g(y,x,x) for a ternary g.
bool is_commutative_ternary(const BoolFn& f);

/// f with its arguments permuted: result(x_1..x_k) = f(x_{p[0]}..x_{p[k-1]}),
/// p holding 1-based argument positions.
BoolFn permute_args(const BoolFn& f, std::span<const int> p);

/// An n-tuple of k-ary functions applied issue by issue.
class Aggregator {
public:
  Aggregator() = default;
  /// Throws InputError if empty or arities differ.
  explicit Aggregator(std::vector<BoolFn> components);
  static Aggregator systematic(const BoolFn& f, int n);

  int issues() const { return static_cast<int>(fns_.size()); }
  int arity() const { return fns_.front().arity(); }
  const std::vector<BoolFn>& components() const { return fns_; }
  const BoolFn& operator[](std::size_t j) const { return fns_[j]; }

  friend bool operator==(const Aggregator&, const Aggregator&) = default;

private:
  std::vector<BoolFn> fns_;
};

/// Per-row coordinate masks: bit j of mask[row] is f_j(row). Lets an
/// aggregator be applied to k packed rows with a handful of word operations.
struct CompiledAggregator {
  int n = 0;
  int k = 0;
  std::vector<std::uint64_t> row_masks;

  explicit CompiledAggregator(const Aggregator& f);

  std::uint64_t apply(std::span<const std::uint64_t> rows) const {
    const std::uint64_t all = full_mask(n);
    std::uint64_t out = 0;
    for (std::size_t r = 0; r < row_masks.size(); ++r) {
      std::uint64_t m = row_masks[r];
      if (m == 0) continue;
      for (int i = 0; i < k && m; ++i) {
        const bool bit = (r >> (k - 1 - i)) & 1;
        m &= bit ? rows[static_cast<std::size_t>(i)] : (~rows[static_cast<std::size_t>(i)] & all);
      }
      out |= m;
    }
    return out;
  }
};

/// Componentwise application to k rows of length n.
Assignment apply(const Aggregator& f, std::span<const Assignment> rows);

bool is_dictatorial(const Aggregator& f);
bool is_projection_aggregator(const Aggregator& f);
bool is_systematic(const Aggregator& f);
bool is_anonymous(const Aggregator& f);
bool is_monotone(const Aggregator& f);
bool is_strongdem(const Aggregator& f);
bool is_locally_nondictatorial(const Aggregator& f);

/// h_j(x) = f_j(g^1_j(x), ..., g^k_j(x)).
Aggregator superpose(const Aggregator& f, std::span<const Aggregator> gs);
/// e_j(x,y,z) = f_j(g_j(x,y,z), g_j(y,z,x), g_j(z,x,y)).
Aggregator diamond(const Aggregator& f, const Aggregator& g);
/// h_j(x,y,z) = f_j(f_j(x,y,z), f_j(x,y,z), g_j(x,y,z)).
Aggregator star(const Aggregator& f, const Aggregator& g);

/// Aggregator text format: `a <n> <k>` then one component per line, either a
/// known name or `t <2^k bits>`.
Aggregator parse_aggregator(std::string_view text);
std::string render_aggregator(const Aggregator& f);

/// Human-readable component list such as "(and, or, pr1)".
std::string describe(const Aggregator& f);

}  // namespace possdom
