#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "possdom/assignment.hpp"

namespace possdom {

class Domain;

/// Sorted, duplicate-free list of 1-based variable indices.
using VarSet = std::vector<int>;

struct Literal {
  int var = 0;
  bool positive = true;

  int dimacs() const { return positive ? var : -var; }
  Literal negated() const { return {var, !positive}; }
  bool satisfied_by(const Assignment& a) const { return a[var] == positive; }

  static Literal from_dimacs(int v) { return {v < 0 ? -v : v, v > 0}; }

  friend bool operator==(const Literal&, const Literal&) = default;
};

enum class ClauseKind { Or, Xor, Generalized };

/// A disjunctive clause, a parity clause, or a disjunction of literals with a
/// single parity block appended. Literal order is preserved as written.
struct Clause {
  ClauseKind kind = ClauseKind::Or;
  std::vector<Literal> or_literals;
  std::vector<Literal> xor_literals;

  static Clause disjunction(std::vector<Literal> lits) { return {ClauseKind::Or, std::move(lits), {}}; }
  static Clause parity(std::vector<Literal> lits) { return {ClauseKind::Xor, {}, std::move(lits)}; }
  static Clause generalized(std::vector<Literal> or_part, std::vector<Literal> xor_part) {
    return {ClauseKind::Generalized, std::move(or_part), std::move(xor_part)};
  }

  /// Variables in written order: or-part first, then xor-part.
  std::vector<int> variables() const;
  std::size_t size() const { return or_literals.size() + xor_literals.size(); }

  bool satisfied_by(const Assignment& a) const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

/// Conjunction of clauses over variables x1..xn. Immutable once built; the
/// constructor enforces every clause invariant.
class Formula {
public:
  Formula() = default;
  Formula(int num_vars, std::vector<Clause> clauses);

  int num_vars() const { return n_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }

  /// Variables that occur in at least one clause, ascending.
  VarSet occurring_variables() const;
  /// Sum of clause sizes.
  std::size_t length() const;

  friend bool operator==(const Formula&, const Formula&) = default;

private:
  int n_ = 0;
  std::vector<Clause> clauses_;
};

Formula parse_formula(std::string_view text);
std::string render_formula(const Formula& f);

/// Throws InputError if a.n != f.num_vars().
bool evaluate(const Formula& f, const Assignment& a);

/// All models of `f`. Throws CapExceeded when n > enumeration_cap.
Domain models(const Formula& f, int enumeration_cap = 24);

/// Flip the polarity of every literal whose variable is in `vars`.
Formula rename(const Formula& f, const VarSet& vars);

/// Complement the coordinates in `vars`.
Assignment flip(const Assignment& a, const VarSet& vars);

/// A clause over at most 64 variables as bit masks, for the enumeration kernels.
struct PackedClause {
  ClauseKind kind = ClauseKind::Or;
  std::uint64_t or_pos = 0;
  std::uint64_t or_neg = 0;
  std::uint64_t xor_vars = 0;
  bool xor_negations_odd = false;

  bool satisfied_by(std::uint64_t bits) const;
};

/// Throws InputError when f.num_vars() > 64.
std::vector<PackedClause> pack(const Formula& f);

}  // namespace possdom
