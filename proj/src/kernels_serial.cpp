#include "kernels_detail.hpp"

namespace possdom::kernels {

std::vector<std::size_t> decode_tuple(std::uint64_t index, std::size_t domain_size, int k) {
  std::vector<std::size_t> out(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::size_t>(index % domain_size);
    index /= domain_size;
  }
  return out;
}

std::optional<std::uint64_t> first_violation_serial(const Domain& d, const CompiledAggregator& f,
                                                    TupleCheck check) {
  if (d.empty()) return std::nullopt;
  const std::uint64_t block = detail::ipow(d.size(), f.k - 1);
  for (std::size_t first = 0; first < d.size(); ++first)
    if (auto off = detail::scan_block(d, f, check, first)) return first * block + *off;
  return std::nullopt;
}

std::vector<std::uint64_t> enumerate_models_serial(int n, std::span<const PackedClause> clauses) {
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a)
    if (detail::satisfies_all(clauses, a)) out.push_back(a);
  return out;
}

std::vector<ShrunkClause> shrink_maxterms_serial(const Domain& d) {
  const int n = d.arity();
  std::vector<ShrunkClause> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t a = 0; a < total; ++a)
    if (!d.contains(a)) out.push_back({a, detail::shrink_one(d.members(), n, a)});
  return out;
}

}  // namespace possdom::kernels
