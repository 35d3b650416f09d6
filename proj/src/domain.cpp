#include "possdom/domain.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "possdom/boolfn.hpp"
#include "possdom/errors.hpp"
#include "possdom/kernels.hpp"

namespace possdom {

MembershipIndex::MembershipIndex(int n, std::span<const std::uint64_t> members) {
  dense_ = n <= kDenseIndexMaxArity;
  if (dense_) {
    bitmap_.assign(((std::size_t{1} << n) + 63) / 64, 0);
    for (auto m : members) bitmap_[m >> 6] |= std::uint64_t{1} << (m & 63);
  } else {
    hashed_.reserve(members.size() * 2);
    hashed_.insert(members.begin(), members.end());
  }
}

Domain::Domain(int n, std::vector<std::uint64_t> members) : n_(n), members_(std::move(members)) {
  if (n < 1 || n > kMaxPackedArity) throw InputError("domain arity must be in 1..64");
  const std::uint64_t all = full_mask(n);
  for (auto m : members_)
    if (m & ~all) throw InputError("domain member wider than " + std::to_string(n) + " coordinates");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw InputError("duplicate domain member");
  index_ = MembershipIndex(n_, members_);
}

Domain Domain::from_unsorted(int n, std::vector<std::uint64_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Domain(n, std::move(members));
}

Domain Domain::full_cube(int n) {
  if (n < 1 || n > 24) throw InputError("full cube only for arity 1..24");
  std::vector<std::uint64_t> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Domain(n, std::move(all));
}

Domain parse_domain(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::uint64_t> rows;
  std::unordered_map<std::uint64_t, int> first_line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t");
    std::string_view body = std::string_view(line).substr(first, last - first + 1);
    if (body[0] == 'c' && (body.size() == 1 || body[1] == ' ' || body[1] == '\t')) continue;
    if (n < 0) {
      std::istringstream hs{std::string(body)};
      std::string tag;
      long long v = -1;
      std::string extra;
      if (!(hs >> tag >> v) || tag != "d" || (hs >> extra))
        throw ParseError("expected header 'd <n>'", lineno, static_cast<int>(first) + 1);
      if (v < 1 || v > kMaxPackedArity) throw ParseError("arity must be in 1..64", lineno, static_cast<int>(first) + 1);
      n = static_cast<int>(v);
      continue;
    }
    if (body.size() != static_cast<std::size_t>(n))
      throw ParseError("row has " + std::to_string(body.size()) + " entries, expected " + std::to_string(n), lineno,
                       static_cast<int>(first) + 1);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] != '0' && body[i] != '1')
        throw ParseError(std::string("non-binary character '") + body[i] + "'", lineno,
                         static_cast<int>(first + i) + 1);
      bits = (bits << 1) | static_cast<std::uint64_t>(body[i] == '1');
    }
    auto [it, fresh] = first_line.emplace(bits, lineno);
    if (!fresh)
      throw ParseError("duplicate row (first seen on line " + std::to_string(it->second) + ")", lineno,
                       static_cast<int>(first) + 1);
    rows.push_back(bits);
  }
  if (n < 0) throw ParseError("missing header 'd <n>'", lineno + 1, 1);
  if (rows.empty()) throw ParseError("empty domain", lineno + 1, 1);
  return Domain(n, std::move(rows));
}

std::string render_domain(const Domain& d) {
  std::string out = "d " + std::to_string(d.arity()) + "\n";
  for (std::size_t i = 0; i < d.size(); ++i) out += d.member(i).to_string() + "\n";
  return out;
}

DegeneracyReport degeneracy(const Domain& d) {
  if (d.empty()) throw InputError("degeneracy of an empty domain");
  std::uint64_t ones = 0, zeros = 0;
  const std::uint64_t all = full_mask(d.arity());
  for (auto m : d.members()) {
    ones |= m;
    zeros |= ~m & all;
  }
  DegeneracyReport r;
  for (int j = 1; j <= d.arity(); ++j) {
    const std::uint64_t b = coord_bit(d.arity(), j);
    if (!(ones & b)) r.fixed_coordinates.emplace_back(j, false);
    else if (!(zeros & b)) r.fixed_coordinates.emplace_back(j, true);
  }
  r.non_degenerate = r.fixed_coordinates.empty();
  return r;
}

void require_non_degenerate(const Domain& d) {
  auto r = degeneracy(d);
  if (r.non_degenerate) return;
  std::string msg = "degenerate domain: coordinate";
  for (auto [j, b] : r.fixed_coordinates) msg += " x" + std::to_string(j) + "=" + (b ? "1" : "0");
  throw InputError(msg);
}

VarSet checked_var_set(const VarSet& vars, int n) {
  VarSet s = vars;
  for (int v : s)
    if (v < 1 || v > n) throw InputError("index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Domain project(const Domain& d, const VarSet& idx) {
  VarSet s = checked_var_set(idx, d.arity());
  if (s.empty()) throw InputError("projection onto an empty index set");
  const int m = static_cast<int>(s.size());
  std::vector<std::uint64_t> out;
  out.reserve(d.size());
  for (auto bits : d.members()) {
    std::uint64_t r = 0;
    for (int t = 0; t < m; ++t)
      if (bits & coord_bit(d.arity(), s[static_cast<std::size_t>(t)])) r |= coord_bit(m, t + 1);
    out.push_back(r);
  }
  return Domain::from_unsorted(m, std::move(out));
}

Domain rename_domain(const Domain& d, const VarSet& vars) {
  std::uint64_t mask = 0;
  for (int v : checked_var_set(vars, d.arity())) mask |= coord_bit(d.arity(), v);
  std::vector<std::uint64_t> out(d.members().begin(), d.members().end());
  for (auto& m : out) m ^= mask;
  return Domain(d.arity(), std::move(out));
}

bool is_closed_under(const Domain& d, const BoolFn& f, std::uint64_t tuple_cap) {
  const int k = f.arity();
  long double tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= static_cast<long double>(d.size());
  if (tuples > static_cast<long double>(tuple_cap))
    throw CapExceeded("closure check over " + std::to_string(d.size()) + "^" + std::to_string(k) +
                      " tuples exceeds cap " + std::to_string(tuple_cap));
  CompiledAggregator compiled(Aggregator::systematic(f, d.arity()));
  return !kernels::first_violation(d, compiled, kernels::TupleCheck::Closure).has_value();
}

bool is_affine(const Domain& d, std::uint64_t tuple_cap) {
  return is_closed_under(d, named_fn("xor3", 3), tuple_cap);
}

}  // namespace possdom
