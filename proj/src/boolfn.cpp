#include "possdom/boolfn.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "possdom/errors.hpp"

namespace possdom {

BoolFn::BoolFn(int arity, std::uint64_t table) : k_(arity) {
  if (arity < 1 || arity > kMaxFnArity)
    throw InputError("function arity " + std::to_string(arity) + " outside 1.." + std::to_string(kMaxFnArity));
  const std::size_t r = rows();
  table_ = r == 64 ? table : (table & ((std::uint64_t{1} << r) - 1));
}

std::uint32_t row_of(std::span<const bool> args) {
  std::uint32_t r = 0;
  for (bool b : args) r = (r << 1) | static_cast<std::uint32_t>(b);
  return r;
}

bool BoolFn::operator()(std::span<const bool> args) const {
  if (static_cast<int>(args.size()) != k_)
    throw InputError("function of arity " + std::to_string(k_) + " applied to " + std::to_string(args.size()) +
                     " arguments");
  return at(row_of(args));
}

std::string BoolFn::bits() const {
  std::string s(rows(), '0');
  for (std::size_t r = 0; r < rows(); ++r)
    if (at(static_cast<std::uint32_t>(r))) s[r] = '1';
  return s;
}

BoolFn BoolFn::from_bits(std::string_view bits) {
  const std::size_t len = bits.size();
  if (len < 2 || len > 64 || !std::has_single_bit(len))
    throw InputError("truth table length " + std::to_string(len) + " is not 2^k for k in 1..6");
  std::uint64_t t = 0;
  for (std::size_t r = 0; r < len; ++r) {
    if (bits[r] != '0' && bits[r] != '1') throw InputError("non-binary character in truth table");
    if (bits[r] == '1') t |= std::uint64_t{1} << r;
  }
  return BoolFn(std::countr_zero(len), t);
}

namespace {

template <class Pred>
BoolFn tabulate(int k, Pred pred) {
  if (k < 1 || k > kMaxFnArity) throw InputError("function arity " + std::to_string(k) + " out of range");
  std::uint64_t t = 0;
  for (std::uint32_t r = 0; r < (1u << k); ++r)
    if (pred(r)) t |= std::uint64_t{1} << r;
  return BoolFn(k, t);
}

bool arg(std::uint32_t row, int i, int k) { return (row >> (k - i)) & 1; }  // 1-based argument i

}  // namespace

BoolFn projection(int d, int k) {
  if (d < 1 || d > k) throw InputError("projection pr" + std::to_string(d) + " needs arity >= " + std::to_string(d));
  return tabulate(k, [&](std::uint32_t r) { return arg(r, d, k); });
}

BoolFn named_fn(std::string_view name, int k) {
  auto need = [&](int want) {
    if (k != want)
      throw InputError(std::string(name) + " has arity " + std::to_string(want) + ", requested " + std::to_string(k));
  };
  const int all_ones = k >= 1 && k <= kMaxFnArity ? (1 << k) - 1 : 0;
  if (name == "and") return tabulate(k, [&](std::uint32_t r) { return static_cast<int>(r) == all_ones; });
  if (name == "or") return tabulate(k, [&](std::uint32_t r) { return r != 0; });
  if (name == "xor") return tabulate(k, [&](std::uint32_t r) { return std::popcount(r) % 2 == 1; });
  if (name == "and3") return need(3), named_fn("and", 3);
  if (name == "or3") return need(3), named_fn("or", 3);
  if (name == "xor3") return need(3), named_fn("xor", 3);
  if (name == "maj") {
    if (k % 2 == 0) throw InputError("maj needs odd arity");
    return tabulate(k, [&](std::uint32_t r) { return 2 * std::popcount(r) > k; });
  }
  if (name == "id") return need(1), projection(1, 1);
  if (name.size() >= 3 && name.substr(0, 2) == "pr") {
    int d = 0;
    for (char c : name.substr(2)) {
      if (c < '0' || c > '9') throw InputError("unknown function '" + std::string(name) + "'");
      d = d * 10 + (c - '0');
      if (d > kMaxFnArity) break;
    }
    return projection(d, k);
  }
  throw InputError("unknown function '" + std::string(name) + "'");
}

std::optional<std::string> known_name(const BoolFn& f) {
  const int k = f.arity();
  if (k == 1 && f == projection(1, 1)) return "id";
  if (auto d = projection_index(f)) return "pr" + std::to_string(*d);
  if (k == 3) {
    for (const char* n : {"and3", "or3", "maj", "xor3"})
      if (f == named_fn(n, 3)) return std::string(n);
    return std::nullopt;
  }
  for (const char* n : {"and", "or"})
    if (f == named_fn(n, k)) return std::string(n);
  return std::nullopt;
}

bool is_unanimous(const BoolFn& f) { return !f.at(0) && f.at(static_cast<std::uint32_t>(f.rows() - 1)); }

std::optional<int> projection_index(const BoolFn& f) {
  for (int d = 1; d <= f.arity(); ++d)
    if (f == projection(d, f.arity())) return d;
  return std::nullopt;
}

bool is_anonymous(const BoolFn& f) {
  // Output must depend only on the number of ones.
  std::array<int, kMaxFnArity + 1> seen;
  seen.fill(-1);
  for (std::uint32_t r = 0; r < f.rows(); ++r) {
    int& s = seen[static_cast<std::size_t>(std::popcount(r))];
    const int v = f.at(r);
    if (s == -1) s = v;
    else if (s != v) return false;
  }
  return true;
}

bool is_monotone(const BoolFn& f) {
  for (std::uint32_t r = 0; r < f.rows(); ++r)
    for (int i = 0; i < f.arity(); ++i)
      if (!(r & (1u << i)) && f.at(r) && !f.at(r | (1u << i))) return false;
  return true;
}

bool is_1_immune(const BoolFn& f) {
  for (int i = 0; i < f.arity(); ++i) {
    const std::uint32_t bit = 1u << i;
    bool found = false;
    for (std::uint32_t r = 0; r < f.rows() && !found; ++r)
      if (!(r & bit) && f.at(r) == f.at(r | bit)) found = true;
    if (!found) return false;
  }
  return true;
}

bool is_commutative_ternary(const BoolFn& f) {
  if (f.arity() != 3) return false;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y <= 1; ++y) {
      const bool a = f({x != 0, x != 0, y != 0});
      const bool b = f({x != 0, y != 0, x != 0});
      const bool c = f({y != 0, x != 0, x != 0});
      if (a != b || b != c) return false;
    }
  return true;
}

BoolFn permute_args(const BoolFn& f, std::span<const int> p) {
  const int k = f.arity();
  if (static_cast<int>(p.size()) != k) throw InputError("permutation length differs from arity");
  return tabulate(k, [&](std::uint32_t r) {
    std::uint32_t src = 0;
    for (int i = 0; i < k; ++i) {
      const int from = p[static_cast<std::size_t>(i)];
      if (from < 1 || from > k) throw InputError("argument position out of range");
      src = (src << 1) | static_cast<std::uint32_t>(arg(r, from, k));
    }
    return f.at(src);
  });
}

Aggregator::Aggregator(std::vector<BoolFn> components) : fns_(std::move(components)) {
  if (fns_.empty()) throw InputError("aggregator needs at least one component");
  if (static_cast<int>(fns_.size()) > kMaxPackedArity) throw InputError("aggregator wider than 64 issues");
  for (const auto& g : fns_)
    if (g.arity() != fns_.front().arity()) throw InputError("aggregator components differ in arity");
}

Aggregator Aggregator::systematic(const BoolFn& f, int n) {
  return Aggregator(std::vector<BoolFn>(static_cast<std::size_t>(n), f));
}

CompiledAggregator::CompiledAggregator(const Aggregator& f) : n(f.issues()), k(f.arity()) {
  row_masks.assign(std::size_t{1} << k, 0);
  for (std::uint32_t r = 0; r < row_masks.size(); ++r)
    for (int j = 1; j <= n; ++j)
      if (f[static_cast<std::size_t>(j - 1)].at(r)) row_masks[r] |= coord_bit(n, j);
}

Assignment apply(const Aggregator& f, std::span<const Assignment> rows) {
  if (static_cast<int>(rows.size()) != f.arity())
    throw InputError("aggregator of arity " + std::to_string(f.arity()) + " applied to " +
                     std::to_string(rows.size()) + " rows");
  std::vector<std::uint64_t> packed;
  for (const auto& a : rows) {
    if (a.n != f.issues())
      throw InputError("row of length " + std::to_string(a.n) + " for an aggregator on " +
                       std::to_string(f.issues()) + " issues");
    packed.push_back(a.bits);
  }
  return {f.issues(), CompiledAggregator(f).apply(packed)};
}

bool is_dictatorial(const Aggregator& f) {
  auto d = projection_index(f[0]);
  return d && is_systematic(f);
}

bool is_projection_aggregator(const Aggregator& f) {
  return std::all_of(f.components().begin(), f.components().end(),
                     [](const BoolFn& g) { return projection_index(g).has_value(); });
}

bool is_systematic(const Aggregator& f) {
  return std::all_of(f.components().begin(), f.components().end(), [&](const BoolFn& g) { return g == f[0]; });
}

bool is_anonymous(const Aggregator& f) {
  return std::all_of(f.components().begin(), f.components().end(),
                     [](const BoolFn& g) { return is_anonymous(g); });
}

bool is_monotone(const Aggregator& f) {
  return std::all_of(f.components().begin(), f.components().end(),
                     [](const BoolFn& g) { return is_monotone(g); });
}

bool is_strongdem(const Aggregator& f) {
  return std::all_of(f.components().begin(), f.components().end(), [](const BoolFn& g) { return is_1_immune(g); });
}

bool is_locally_nondictatorial(const Aggregator& f) {
  return std::none_of(f.components().begin(), f.components().end(),
                      [](const BoolFn& g) { return projection_index(g).has_value(); });
}

Aggregator superpose(const Aggregator& f, std::span<const Aggregator> gs) {
  const int k = f.arity();
  if (static_cast<int>(gs.size()) != k)
    throw InputError("superposition of a " + std::to_string(k) + "-ary aggregator needs " + std::to_string(k) +
                     " inner aggregators");
  const int l = gs[0].arity();
  for (const auto& g : gs)
    if (g.issues() != f.issues() || g.arity() != l) throw InputError("superposition shape mismatch");
  std::vector<BoolFn> out;
  for (std::size_t j = 0; j < static_cast<std::size_t>(f.issues()); ++j) {
    out.push_back(tabulate(l, [&](std::uint32_t r) {
      std::uint32_t inner = 0;
      for (const auto& g : gs) inner = (inner << 1) | static_cast<std::uint32_t>(g[j].at(r));
      return f[j].at(inner);
    }));
  }
  return Aggregator(std::move(out));
}

namespace {

void require_ternary(const Aggregator& f, const Aggregator& g) {
  if (f.arity() != 3 || g.arity() != 3) throw InputError("operator defined for ternary aggregators only");
  if (f.issues() != g.issues()) throw InputError("aggregators differ in the number of issues");
}

Aggregator permuted(const Aggregator& g, std::span<const int> p) {
  std::vector<BoolFn> out;
  for (const auto& c : g.components()) out.push_back(permute_args(c, p));
  return Aggregator(std::move(out));
}

}  // namespace

Aggregator diamond(const Aggregator& f, const Aggregator& g) {
  require_ternary(f, g);
  const int yzx[] = {2, 3, 1};
  const int zxy[] = {3, 1, 2};
  const Aggregator inner[] = {g, permuted(g, yzx), permuted(g, zxy)};
  return superpose(f, inner);
}

Aggregator star(const Aggregator& f, const Aggregator& g) {
  require_ternary(f, g);
  const Aggregator inner[] = {f, f, g};
  return superpose(f, inner);
}

Aggregator parse_aggregator(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1, k = -1;
  std::vector<BoolFn> comps;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    std::string extra;
    if (n < 0) {
      if (tok != "a" || !(ls >> n >> k) || (ls >> extra)) throw ParseError("expected header 'a <n> <k>'", lineno, 1);
      if (n < 1 || n > kMaxPackedArity) throw ParseError("issue count must be in 1..64", lineno, 1);
      if (k < 1 || k > kMaxFnArity) throw ParseError("arity must be in 1..6", lineno, 1);
      continue;
    }
    try {
      if (tok == "t") {
        std::string bits;
        if (!(ls >> bits) || (ls >> extra)) throw InputError("expected 't <bits>'");
        BoolFn f = BoolFn::from_bits(bits);
        if (f.arity() != k) throw InputError("table has arity " + std::to_string(f.arity()) + ", header says " + std::to_string(k));
        comps.push_back(f);
      } else {
        if (ls >> extra) throw InputError("trailing text after function name");
        comps.push_back(named_fn(tok, k));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), lineno, 1);
    }
  }
  if (n < 0) throw ParseError("missing header 'a <n> <k>'", lineno + 1, 1);
  if (static_cast<int>(comps.size()) != n)
    throw ParseError("header declares " + std::to_string(n) + " components, found " + std::to_string(comps.size()),
                     lineno + 1, 1);
  return Aggregator(std::move(comps));
}

std::string render_aggregator(const Aggregator& f) {
  std::string out = "a " + std::to_string(f.issues()) + " " + std::to_string(f.arity()) + "\n";
  for (const auto& g : f.components()) {
    auto name = known_name(g);
    out += name ? *name : "t " + g.bits();
    out += '\n';
  }
  return out;
}

std::string describe(const Aggregator& f) {
  std::string out = "(";
  for (std::size_t j = 0; j < f.components().size(); ++j) {
    if (j) out += ", ";
    auto name = known_name(f[j]);
    out += name ? *name : "t:" + f[j].bits();
  }
  return out + ")";
}

}  // namespace possdom
