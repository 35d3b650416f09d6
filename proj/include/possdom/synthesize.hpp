#pragma once

#include <optional>
#include <variant>

#include "possdom/domain.hpp"
#include "possdom/formula.hpp"
#include "possdom/recognize.hpp"

namespace possdom {

struct PrimeFormula {
  Formula formula;  // disjunctive clauses only
  bool prime_certified = false;
};

/// Maxterm shrinking followed by greedy redundancy pruning. Both Mod = d and
/// primality are re-checked; a failure throws VerificationFailure.
PrimeFormula prime_cnf(const Domain& d, int enumeration_cap = 24);

/// True iff every clause is a prime implicate of d: satisfied by all members,
/// and dropping any one literal yields a clause some member falsifies.
bool is_prime_for(const Formula& f, const Domain& d);

/// All-parity formula with model set d, or nothing when d is not affine.
std::optional<Formula> affine_formula(const Domain& d, int enumeration_cap = 24);

enum class SynthesisClass { Separable, RenamablePartiallyHorn, Affine, Lpic };

const char* to_string(SynthesisClass c);

struct SynthesisResult {
  Formula formula;
  SynthesisClass cls = SynthesisClass::Separable;
  std::optional<SeparabilityWitness> separable;
  std::optional<RphWitness> rph;
  std::optional<LpicWitness> lpic;
  /// Coordinates fixed in a degenerate input (permissive policy only).
  std::vector<std::pair<int, bool>> fixed_coordinates;
};

struct SynthesisOptions {
  DegeneracyPolicy policy = DegeneracyPolicy::Strict;
  int enumeration_cap = 24;
};

/// Possibility integrity constraint for d, or nothing when d is an
/// impossibility domain.
std::optional<SynthesisResult> pic_for(const Domain& d, const SynthesisOptions& opt = {});

/// Local possibility integrity constraint for d, or nothing.
std::optional<SynthesisResult> lpic_for(const Domain& d, const SynthesisOptions& opt = {});

}  // namespace possdom
