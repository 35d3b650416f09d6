#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "possdom/boolfn.hpp"
#include "possdom/domain.hpp"

namespace possdom {

enum class CandidateSet {
  BinaryUnanimous,           // and, or, pr1, pr2
  TernaryCommutative,        // and3, or3, maj, xor3
  TernaryCommutativeNoXor,   // and3, or3, maj
  AllUnanimous,              // every unanimous k-ary table
};

enum class Property {
  NonDictatorial,
  LocallyNonDictatorial,
  Anonymous,
  MonotoneNonDictatorial,
  StrongDem,
  NotGeneralizedDictatorship,
  Any,
};

struct SearchSpaceSpec {
  CandidateSet candidates = CandidateSet::BinaryUnanimous;
  int arity = 2;  // used by AllUnanimous only
  std::uint64_t coordinate_cap = 1u << 20;  // |candidates|^n
  std::uint64_t tuple_cap = 10'000'000;
};

std::vector<BoolFn> candidates(const SearchSpaceSpec& spec);

bool satisfies(const Aggregator& f, Property p, const Domain& d);

/// First aggregator in lexicographic candidate order that maps d into itself
/// and has the property. The result is re-verified before it is returned.
std::optional<Aggregator> brute_property(const Domain& d, Property p, const SearchSpaceSpec& spec);

std::optional<Aggregator> brute_binary(const Domain& d);
std::optional<Aggregator> brute_ternary_commutative(const Domain& d, bool allow_xor);

struct CensusVerdicts {
  bool possibility = false;
  bool local_possibility = false;
  bool strongdem = false;
  bool anonymous = false;
  bool monotone = false;
  bool non_generalized_dictatorship = false;

  friend bool operator==(const CensusVerdicts&, const CensusVerdicts&) = default;
};

struct CensusEntry {
  std::string domain_bits;  // membership of each of the 2^n points, point 0 first
  Domain domain;
  CensusVerdicts theory;
  CensusVerdicts oracle;
  bool match = false;
  /// Round trip of the synthesized formulas (models equal d, recognizer accepts).
  bool synthesis_ok = true;
};

struct CensusReport {
  int n = 0;
  std::vector<CensusEntry> entries;
  std::size_t mismatches() const;
};

/// Every non-degenerate domain over n <= 3 with at least two members.
std::vector<Domain> census_domains(int n);
/// `count` distinct non-degenerate domains over n coordinates drawn with the
/// given seed.
std::vector<Domain> sample_domains(int n, std::size_t count, std::uint64_t seed);

CensusVerdicts theory_verdicts(const Domain& d, bool* synthesis_ok = nullptr);
CensusVerdicts oracle_verdicts(const Domain& d);

CensusReport census(const std::vector<Domain>& domains, int n);

std::string membership_string(const Domain& d);

}  // namespace possdom
