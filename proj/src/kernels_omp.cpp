#include <omp.h>

#include <atomic>

#include "kernels_detail.hpp"

namespace possdom::kernels {

std::optional<std::uint64_t> first_violation_omp(const Domain& d, const CompiledAggregator& f, TupleCheck check) {
  if (d.empty()) return std::nullopt;
  const std::uint64_t block = detail::ipow(d.size(), f.k - 1);
  const auto m = static_cast<std::int64_t>(d.size());
  std::atomic<std::uint64_t> best{UINT64_MAX};

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t first = 0; first < m; ++first) {
    const std::uint64_t start = static_cast<std::uint64_t>(first) * block;
    if (start >= best.load(std::memory_order_relaxed)) continue;
    if (auto off = detail::scan_block(d, f, check, static_cast<std::size_t>(first))) {
      const std::uint64_t idx = start + *off;
      std::uint64_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
      }
    }
  }
  const std::uint64_t r = best.load();
  if (r == UINT64_MAX) return std::nullopt;
  return r;
}

std::vector<std::uint64_t> enumerate_models_omp(int n, std::span<const PackedClause> clauses) {
  constexpr int kChunkBits = 12;
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunk = std::min<std::uint64_t>(total, std::uint64_t{1} << kChunkBits);
  const auto chunks = static_cast<std::int64_t>(total / chunk);
  std::vector<std::vector<std::uint64_t>> parts(static_cast<std::size_t>(chunks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < chunks; ++c) {
    auto& part = parts[static_cast<std::size_t>(c)];
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
    for (std::uint64_t a = lo; a < lo + chunk; ++a)
      if (detail::satisfies_all(clauses, a)) part.push_back(a);
  }
  std::vector<std::uint64_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<ShrunkClause> shrink_maxterms_omp(const Domain& d) {
  const int n = d.arity();
  std::vector<ShrunkClause> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a)
    if (!d.contains(a)) out.push_back({a, 0});
  const auto count = static_cast<std::int64_t>(out.size());

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& c = out[static_cast<std::size_t>(i)];
    c.vars = detail::shrink_one(d.members(), n, c.non_member);
  }
  return out;
}

std::optional<std::uint64_t> first_violation(const Domain& d, const CompiledAggregator& f, TupleCheck check) {
  if (detail::ipow(d.size(), f.k) >= kParallelTupleThreshold && d.size() > 1)
    return first_violation_omp(d, f, check);
  return first_violation_serial(d, f, check);
}

std::vector<std::uint64_t> enumerate_models(int n, std::span<const PackedClause> clauses) {
  if (n >= kParallelModelArity) return enumerate_models_omp(n, clauses);
  return enumerate_models_serial(n, clauses);
}

std::vector<ShrunkClause> shrink_maxterms(const Domain& d) {
  const std::uint64_t work = (std::uint64_t{1} << d.arity()) * d.size() * static_cast<std::uint64_t>(d.arity());
  if (work >= kParallelShrinkWork) return shrink_maxterms_omp(d);
  return shrink_maxterms_serial(d);
}

}  // namespace possdom::kernels
