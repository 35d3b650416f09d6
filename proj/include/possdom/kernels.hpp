#pragma once

// Hot loops, each in a serial reference form and an OpenMP form. The two must
// return identical results; the dispatching wrappers pick one by problem size.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "possdom/boolfn.hpp"
#include "possdom/domain.hpp"
#include "possdom/formula.hpp"

namespace possdom::kernels {

enum class TupleCheck {
  Closure,       // image must be a member of the domain
  Conservative,  // image must equal one of the input rows
};

/// k-tuples of members are numbered with the first row as the most
/// significant base-|d| digit. Returns the smallest failing tuple index.
std::optional<std::uint64_t> first_violation_serial(const Domain& d, const CompiledAggregator& f,
                                                    TupleCheck check);
std::optional<std::uint64_t> first_violation_omp(const Domain& d, const CompiledAggregator& f,
                                                 TupleCheck check);
std::optional<std::uint64_t> first_violation(const Domain& d, const CompiledAggregator& f,
                                             TupleCheck check);

/// Member positions of tuple number `index`.
std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t domain_size, int k);

/// Packed models of the clauses over n variables, ascending.
std::vector<std::uint64_t> enumerate_models_serial(int n, std::span<const PackedClause> clauses);
std::vector<std::uint64_t> enumerate_models_omp(int n, std::span<const PackedClause> clauses);
std::vector<std::uint64_t> enumerate_models(int n, std::span<const PackedClause> clauses);

/// For every non-member a (ascending), the variable mask of the maxterm of a
/// after greedy literal deletion in ascending variable order. The literal
/// signs are implied by a: variable j appears positive iff a_j = 0.
struct ShrunkClause {
  std::uint64_t non_member = 0;
  std::uint64_t vars = 0;
};
std::vector<ShrunkClause> shrink_maxterms_serial(const Domain& d);
std::vector<ShrunkClause> shrink_maxterms_omp(const Domain& d);
std::vector<ShrunkClause> shrink_maxterms(const Domain& d);

/// Work sizes below which the wrappers stay serial.
inline constexpr std::uint64_t kParallelTupleThreshold = 1u << 16;
inline constexpr int kParallelModelArity = 14;
inline constexpr std::uint64_t kParallelShrinkWork = 1u << 18;

}  // namespace possdom::kernels
