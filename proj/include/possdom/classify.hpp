#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "possdom/boolfn.hpp"
#include "possdom/domain.hpp"
#include "possdom/synthesize.hpp"

namespace possdom {

struct AggregatorCheck {
  bool ok = false;
  /// Member rows of the first failing tuple.
  std::vector<Assignment> counterexample;
};

/// Closure of d under f. Throws InputError on a shape mismatch or a
/// non-unanimous component, CapExceeded when |d|^k > tuple_cap.
AggregatorCheck is_aggregator(const Aggregator& f, const Domain& d,
                              std::uint64_t tuple_cap = kDefaultTupleCap);

/// True iff f maps every k-tuple of members to one of its inputs.
AggregatorCheck is_generalized_dictatorship(const Aggregator& f, const Domain& d,
                                            std::uint64_t tuple_cap = kDefaultTupleCap);

struct Verdict {
  bool holds = false;
  std::optional<Aggregator> witness;
  /// How a negative verdict was reached, or how the witness was built.
  std::string method;
};

struct SystematicFamily {
  bool and_closed = false;
  bool or_closed = false;
  bool maj_closed = false;
  bool xor_closed = false;
};

struct DomainClassification {
  Verdict possibility;
  Verdict local_possibility;
  Verdict anonymous;
  Verdict monotone_nondictatorial;
  Verdict strongdem;
  Verdict non_generalized_dictatorship;
  SystematicFamily systematic;
  std::optional<SynthesisResult> pic;
  std::optional<SynthesisResult> lpic;
};

struct ClassifyOptions {
  DegeneracyPolicy policy = DegeneracyPolicy::Strict;
  int enumeration_cap = 24;
  std::uint64_t tuple_cap = kDefaultTupleCap;
};

/// Throws InputError when |d| < 2 or (strict policy) d is degenerate.
DomainClassification classify_domain(const Domain& d, const ClassifyOptions& opt = {});

/// Binary aggregator read off a pic: projections for a separable split,
/// or/and on the renamed/unrenamed part of V0 for a partially Horn witness.
Aggregator binary_witness(const SynthesisResult& pic, int n);
/// Ternary aggregator read off an lpic witness.
Aggregator ternary_witness(const LpicWitness& w, int n);

}  // namespace possdom
