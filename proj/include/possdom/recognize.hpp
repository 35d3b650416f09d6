#pragma once

#include <optional>
#include <string>
#include <vector>

#include "possdom/formula.hpp"

namespace possdom {

struct SyntacticFlags {
  bool horn = true;
  bool dual_horn = true;
  bool bijunctive = true;
  bool affine = true;
};

/// One pass over the clauses. Horn and dual Horn are only possible for
/// formulas made of disjunctive clauses.
SyntacticFlags check_syntactic_class(const Formula& f);

struct SeparabilityWitness {
  VarSet part1;
  VarSet part2;
};

/// Throws InputError when fewer than two variables occur in f.
std::optional<SeparabilityWitness> check_separable(const Formula& f);

struct RphWitness {
  VarSet renamed;     // V*
  VarSet admissible;  // V0, V* is a subset
};

/// Implication-graph recognizer. Variables of parity blocks are excluded from
/// V0. Every accepted witness has passed verify_partially_horn.
std::optional<RphWitness> check_renamable_partially_horn(const Formula& f);

/// Throws InputError on an empty or out-of-range V0.
bool verify_partially_horn(const Formula& f, const VarSet& v0);

/// Largest admissible set without renaming, if non-empty.
std::optional<VarSet> check_partially_horn(const Formula& f);

/// Renaming that makes f Horn. Only formulas of disjunctive clauses qualify.
std::optional<VarSet> check_renamable_horn(const Formula& f);

struct PicReport {
  std::optional<SeparabilityWitness> separable;
  std::optional<RphWitness> renamable_partially_horn;
  bool affine = false;

  bool accepted() const { return separable || renamable_partially_horn || affine; }
};

/// Runs all three branches.
PicReport check_pic(const Formula& f);

struct LpicWitness {
  VarSet renamed;  // V*, subset of v0
  VarSet v0;
  VarSet v1;
  VarSet v2;
};

std::optional<LpicWitness> check_lpic(const Formula& f);

/// Throws InputError unless v0, v1, v2 partition 1..n and renamed is a
/// subset of v0.
bool verify_lpic(const Formula& f, const LpicWitness& w);

struct FormulaClassReport {
  SyntacticFlags syntactic;
  std::optional<VarSet> renamable_horn;
  std::optional<SeparabilityWitness> separable;  // empty also when < 2 variables occur
  std::optional<VarSet> partially_horn;
  std::optional<RphWitness> renamable_partially_horn;
  bool pic = false;
  std::optional<LpicWitness> lpic;
  /// Set when some clause is a parity or generalized clause: the partially
  /// Horn notions are then the extension excluding parity variables from V0.
  bool mixed_clause_extension = false;
};

FormulaClassReport classify_formula(const Formula& f);

std::string format_var_set(const VarSet& s);

}  // namespace possdom
