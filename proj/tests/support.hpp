#pragma once

// Shared fixtures for the test binaries: the worked example formulas, small
// domain builders, and brute-force reference implementations that do not
// reuse the library's packed kernels or recognizers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "possdom/boolfn.hpp"
#include "possdom/domain.hpp"
#include "possdom/formula.hpp"

namespace testing_support {

using namespace possdom;

// Worked examples, written in the extended DIMACS format.
inline const char* const kPhi1 = "p ecnf 5 3\n1 2 -3 0\n-1 3 4 0\n-2 3 -5 0\n";
inline const char* const kPhi1Star = "p ecnf 5 3\n-1 -2 3 0\n1 -3 -4 0\n2 -3 -5 0\n";
inline const char* const kPhi2 = "p ecnf 5 3\n-1 2 3 4 0\n1 -2 -3 0\n4 5 0\n";
inline const char* const kPhi3 = "p ecnf 5 3\n-1 2 3 0\n1 -2 -3 0\n4 5 0\n";
inline const char* const kPhi4 = "p ecnf 4 4\n1 -2 0\n-1 2 0\n-2 -3 0\n-1 3 4 0\n";
inline const char* const kPhi5 = "p ecnf 4 3\n1 -2 0\n2 -3 0\n-1 3 4 0\n";
inline const char* const kPhi6 = "p ecnf 5 3\n-1 2 3 4 0\n1 -2 -3 0\n-4 5 0\n";
inline const char* const kPhi6Star = "p ecnf 5 3\n-1 2 3 -4 0\n1 -2 -3 0\n4 -5 0\n";
inline const char* const kPhi7 = "p ecnf 3 2\n-1 2 3 0\n1 -2 -3 0\n";
inline const char* const kPhi8 = "p ecnf 4 2\n-1 2 3 4 0\n-2 -3 -4 0\n";
inline const char* const kPhi9 = "p ecnf 6 4\n-1 2 3 0\n1 -2 -3 0\n-4 5 6 0\n4 -5 -6 0\n";
inline const char* const kPhi10 = "p ecnf 3 2\n-1 2 3 0\n1 2 -3 0\n";
inline const char* const kPhi11 = "p ecnf 3 4\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n-1 -2 -3 0\n";
inline const char* const kPhi12 = "p ecnf 3 3\n-1 2 0\n2 -3 0\n-1 -2 3 0\n";
inline const char* const kPhi13 = "p ecnf 4 2\n-1 2 0\n2 3 4 0\n";
inline const char* const kPhi14 = "p ecnf 3 1\nx 1 2 3 0\n";

inline Formula phi(const char* text) { return parse_formula(text); }
inline Domain mod(const char* text) { return models(parse_formula(text)); }

inline Domain dom(int n, std::initializer_list<const char*> rows) {
  std::vector<std::uint64_t> ms;
  for (const char* r : rows) ms.push_back(Assignment::from_string(r).bits);
  return Domain::from_unsorted(n, ms);
}

inline VarSet vars(std::initializer_list<int> v) { return VarSet(v); }

// ---- brute-force references -------------------------------------------

inline bool bit_of(std::uint64_t a, int n, int var) { return (a >> (n - var)) & 1; }

inline bool lit_true(const Literal& l, std::uint64_t a, int n) { return bit_of(a, n, l.var) == l.positive; }

inline bool brute_clause(const Clause& c, std::uint64_t a, int n) {
  bool any_or = false;
  for (const auto& l : c.or_literals) any_or = any_or || lit_true(l, a, n);
  int xor_true = 0;
  for (const auto& l : c.xor_literals) xor_true += lit_true(l, a, n);
  switch (c.kind) {
    case ClauseKind::Or: return any_or;
    case ClauseKind::Xor: return xor_true % 2 == 1;
    case ClauseKind::Generalized: return any_or || xor_true % 2 == 1;
  }
  return false;
}

inline std::vector<std::uint64_t> brute_models(const Formula& f) {
  std::vector<std::uint64_t> out;
  const int n = f.num_vars();
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool ok = true;
    for (const auto& c : f.clauses()) ok = ok && brute_clause(c, a, n);
    if (ok) out.push_back(a);
  }
  return out;
}

inline std::vector<int> clause_vars(const Clause& c) {
  std::vector<int> v;
  for (const auto& l : c.or_literals) v.push_back(l.var);
  for (const auto& l : c.xor_literals) v.push_back(l.var);
  return v;
}

// Definition check of "partially Horn with admissible set V0" on an
// already-renamed formula; V0 given as a membership mask over 1..n.
inline bool brute_partially_horn(const Formula& f, const std::vector<char>& in) {
  bool nonempty = false;
  for (std::size_t v = 1; v < in.size(); ++v) nonempty = nonempty || in[v];
  if (!nonempty) return false;
  for (const auto& c : f.clauses()) {
    const auto vs = clause_vars(c);
    const bool inside = std::all_of(vs.begin(), vs.end(), [&](int v) { return in[static_cast<std::size_t>(v)]; });
    if (c.kind == ClauseKind::Or && inside) {
      int pos = 0;
      for (const auto& l : c.or_literals) pos += l.positive;
      if (pos > 1) return false;
      continue;
    }
    for (const auto& l : c.or_literals)
      if (in[static_cast<std::size_t>(l.var)] && l.positive) return false;
    for (const auto& l : c.xor_literals)
      if (in[static_cast<std::size_t>(l.var)]) return false;
  }
  return true;
}

inline std::vector<char> mask_to_membership(std::uint64_t mask, int n) {
  std::vector<char> in(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) in[static_cast<std::size_t>(v)] = (mask >> (v - 1)) & 1;
  return in;
}

inline VarSet mask_to_set(std::uint64_t mask, int n) {
  VarSet s;
  for (int v = 1; v <= n; ++v)
    if ((mask >> (v - 1)) & 1) s.push_back(v);
  return s;
}

inline std::uint64_t set_to_mask(const VarSet& s) {
  std::uint64_t m = 0;
  for (int v : s) m |= std::uint64_t{1} << (v - 1);
  return m;
}

// Largest V0 (as a mask) admissible under some renaming, 0 if none.
inline std::uint64_t brute_max_rph(const Formula& f) {
  const int n = f.num_vars();
  std::uint64_t best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const Formula g = rename(f, mask_to_set(s, n));
    for (std::uint64_t v0 = 1; v0 < (std::uint64_t{1} << n); ++v0)
      if (__builtin_popcountll(v0) > __builtin_popcountll(best) && brute_partially_horn(g, mask_to_membership(v0, n)))
        best = v0;
  }
  return best;
}

// True iff some superset of v0 strictly larger passes under some renaming.
inline bool brute_rph_superset_exists(const Formula& f, std::uint64_t v0) {
  const int n = f.num_vars();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const Formula g = rename(f, mask_to_set(s, n));
    for (std::uint64_t w = 1; w < (std::uint64_t{1} << n); ++w)
      if ((w & v0) == v0 && w != v0 && brute_partially_horn(g, mask_to_membership(w, n))) return true;
  }
  return false;
}

inline std::uint64_t brute_max_ph(const Formula& f) {
  const int n = f.num_vars();
  std::uint64_t best = 0;
  for (std::uint64_t v0 = 1; v0 < (std::uint64_t{1} << n); ++v0)
    if (__builtin_popcountll(v0) > __builtin_popcountll(best) && brute_partially_horn(f, mask_to_membership(v0, n)))
      best = v0;
  return best;
}

// Occurring variables split into two non-empty parts with no clause across.
inline bool brute_separable(const Formula& f) {
  const auto occ = f.occurring_variables();
  const std::size_t m = occ.size();
  if (m < 2) return false;
  for (std::uint64_t part = 1; part + 1 < (std::uint64_t{1} << m); ++part) {
    std::vector<char> side(static_cast<std::size_t>(f.num_vars()) + 1, 0);
    for (std::size_t i = 0; i < m; ++i) side[static_cast<std::size_t>(occ[i])] = (part >> i) & 1;
    bool ok = true;
    for (const auto& c : f.clauses()) {
      const auto vs = clause_vars(c);
      for (int v : vs) ok = ok && side[static_cast<std::size_t>(v)] == side[static_cast<std::size_t>(vs.front())];
    }
    if (ok) return true;
  }
  return false;
}

// Role per variable: 0 = V0 as written, 1 = V0 renamed, 2 = V1, 3 = V2.
inline bool lpic_roles_ok(const Formula& f, const std::vector<int>& role) {
  const int n = f.num_vars();
  VarSet renamed;
  std::vector<char> in0(static_cast<std::size_t>(n) + 1, 0);
  bool any0 = false;
  for (int v = 1; v <= n; ++v) {
    const int r = role[static_cast<std::size_t>(v)];
    if (r == 1) renamed.push_back(v);
    if (r <= 1) in0[static_cast<std::size_t>(v)] = 1, any0 = true;
  }
  const Formula g = rename(f, renamed);
  if (any0 && !brute_partially_horn(g, in0)) return false;
  for (const auto& c : g.clauses()) {
    int c1 = 0, c2 = 0;
    for (int v : clause_vars(c)) {
      c1 += role[static_cast<std::size_t>(v)] == 2;
      c2 += role[static_cast<std::size_t>(v)] == 3;
    }
    if (c1 > 2 || (c1 && c2)) return false;
    // Parity syntax only appears as the V2 part of a generalized clause.
    for (const auto& l : c.xor_literals)
      if (role[static_cast<std::size_t>(l.var)] != 3) return false;
    if (c2 == 0) continue;
    // A (V0,V2)-generalized clause: or-part in V0, parity part in V2. An OR
    // clause qualifies with a single V2 literal as its parity part.
    for (const auto& l : c.or_literals)
      if (role[static_cast<std::size_t>(l.var)] > 1 && !(c.kind == ClauseKind::Or && c2 == 1 && role[static_cast<std::size_t>(l.var)] == 3))
        return false;
  }
  return true;
}

inline bool brute_lpic(const Formula& f) {
  const int n = f.num_vars();
  std::vector<int> role(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
    for (int v = 1; v <= n; ++v) role[static_cast<std::size_t>(v)] = static_cast<int>((code >> (2 * (v - 1))) & 3);
    if (lpic_roles_ok(f, role)) return true;
  }
  return false;
}

// Closure of d under F by direct enumeration of k-tuples.
inline bool brute_closed(const Aggregator& F, const Domain& d) {
  const int n = d.arity(), k = F.arity();
  const auto& ms = d.members();
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::uint64_t out = 0;
    for (int j = 1; j <= n; ++j) {
      std::uint32_t row = 0;
      for (int t = 0; t < k; ++t) row = (row << 1) | static_cast<std::uint32_t>(bit_of(ms[idx[static_cast<std::size_t>(t)]], n, j));
      if (F[static_cast<std::size_t>(j - 1)].at(row)) out |= std::uint64_t{1} << (n - j);
    }
    if (!std::binary_search(ms.begin(), ms.end(), out)) return false;
    int t = k - 1;
    while (t >= 0 && ++idx[static_cast<std::size_t>(t)] == ms.size()) idx[static_cast<std::size_t>(t--)] = 0;
    if (t < 0) return true;
  }
}

// ---- random generators --------------------------------------------------

inline Formula random_formula(std::mt19937_64& rng, int max_vars, int max_clauses, bool mixed) {
  std::uniform_int_distribution<int> nv(1, max_vars);
  const int n = nv(rng);
  std::uniform_int_distribution<int> nc(0, max_clauses);
  const int m = nc(rng);
  std::vector<Clause> cls;
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) pool[static_cast<std::size_t>(v - 1)] = v;
  for (int i = 0; i < m; ++i) {
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<int> len(1, std::min(n, 4));
    const int s = len(rng);
    std::vector<Literal> lits;
    for (int t = 0; t < s; ++t) lits.push_back({pool[static_cast<std::size_t>(t)], (rng() & 1) != 0});
    const int kind = mixed ? static_cast<int>(rng() % 6) : 0;
    if (kind == 4) {
      cls.push_back(Clause::parity(std::move(lits)));
    } else if (kind == 5 && s >= 2) {
      const auto cut = lits.begin() + 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(s - 1));
      cls.push_back(Clause::generalized({lits.begin(), cut}, {cut, lits.end()}));
    } else {
      cls.push_back(Clause::disjunction(std::move(lits)));
    }
  }
  return Formula(n, std::move(cls));
}

inline Domain random_domain(std::mt19937_64& rng, int n, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  std::vector<std::uint64_t> ms;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a)
    if (coin(rng)) ms.push_back(a);
  if (ms.empty()) ms.push_back(0);
  return Domain(n, ms);
}

}  // namespace testing_support
