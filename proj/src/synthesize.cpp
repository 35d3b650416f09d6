#include "possdom/synthesize.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "possdom/errors.hpp"
#include "possdom/kernels.hpp"

namespace possdom {

namespace {

void check_enumeration_cap(const Domain& d, int cap) {
  if (d.empty()) throw InputError("synthesis from an empty domain");
  if (d.arity() > cap || d.arity() > 30)
    throw CapExceeded("synthesis over " + std::to_string(d.arity()) + " coordinates exceeds enumeration cap " +
                      std::to_string(cap));
}

// Calls visit(b) for every b with b & vars == signs.
template <class Visit>
void for_each_falsifier(int n, std::uint64_t vars, std::uint64_t signs, Visit visit) {
  const std::uint64_t free = full_mask(n) & ~vars;
  std::uint64_t sub = free;
  for (;;) {
    visit(signs | sub);
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
}

Clause clause_from(int n, std::uint64_t vars, std::uint64_t non_member) {
  std::vector<Literal> lits;
  for (int j = 1; j <= n; ++j)
    if (vars & coord_bit(n, j)) lits.push_back({j, (non_member & coord_bit(n, j)) == 0});
  return Clause::disjunction(std::move(lits));
}

}  // namespace

bool is_prime_for(const Formula& f, const Domain& d) {
  const int n = d.arity();
  if (f.num_vars() != n) throw InputError("formula and domain differ in arity");
  for (const auto& c : f.clauses()) {
    if (c.kind != ClauseKind::Or) return false;
    std::uint64_t pos = 0, neg = 0;
    for (const auto& l : c.or_literals) (l.positive ? pos : neg) |= coord_bit(n, l.var);
    auto falsified = [&](std::uint64_t m, std::uint64_t p, std::uint64_t q) { return ((m & p) | (~m & q)) == 0; };
    for (auto m : d.members())
      if (falsified(m, pos, neg)) return false;
    for (const auto& l : c.or_literals) {
      const std::uint64_t b = coord_bit(n, l.var);
      const std::uint64_t p = pos & ~b, q = neg & ~b;
      bool someone = false;
      for (auto m : d.members())
        if (falsified(m, p, q)) {
          someone = true;
          break;
        }
      if (!someone) return false;
    }
  }
  return true;
}

PrimeFormula prime_cnf(const Domain& d, int enumeration_cap) {
  check_enumeration_cap(d, enumeration_cap);
  const int n = d.arity();
  auto shrunk = kernels::shrink_maxterms(d);

  // Distinct clauses, in order of the first non-member producing them.
  struct Candidate {
    std::uint64_t vars;
    std::uint64_t signs;  // non-member bits on vars: the unique falsifying pattern
    std::size_t order;
  };
  std::vector<Candidate> cands;
  {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> seen;
    for (const auto& s : shrunk) {
      const auto key = std::pair{s.vars, s.non_member & s.vars};
      if (seen.emplace(key, cands.size()).second) cands.push_back({key.first, key.second, cands.size()});
    }
  }

  // Greedy redundancy pruning, longest clauses first. A clause may go when
  // every point it falsifies is falsified by another kept clause.
  std::vector<std::uint32_t> cover(std::size_t{1} << n, 0);
  for (const auto& c : cands) for_each_falsifier(n, c.vars, c.signs, [&](std::uint64_t b) { ++cover[b]; });
  std::vector<std::size_t> by_len(cands.size());
  std::iota(by_len.begin(), by_len.end(), 0);
  std::stable_sort(by_len.begin(), by_len.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(cands[a].vars) > std::popcount(cands[b].vars);
  });
  std::vector<char> keep(cands.size(), 1);
  for (auto i : by_len) {
    bool redundant = true;
    for_each_falsifier(n, cands[i].vars, cands[i].signs, [&](std::uint64_t b) { redundant = redundant && cover[b] >= 2; });
    if (!redundant) continue;
    keep[i] = 0;
    for_each_falsifier(n, cands[i].vars, cands[i].signs, [&](std::uint64_t b) { --cover[b]; });
  }

  std::vector<Clause> clauses;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (keep[i]) clauses.push_back(clause_from(n, cands[i].vars, cands[i].signs));
  PrimeFormula out{Formula(n, std::move(clauses)), false};
  if (!(models(out.formula, enumeration_cap) == d)) throw VerificationFailure("prime formula has the wrong models");
  if (!is_prime_for(out.formula, d)) throw VerificationFailure("prime formula has a non-prime clause");
  out.prime_certified = true;
  return out;
}

std::optional<Formula> affine_formula(const Domain& d, int enumeration_cap) {
  check_enumeration_cap(d, enumeration_cap);
  if (!is_affine(d)) return std::nullopt;
  const PrimeFormula p = prime_cnf(d, enumeration_cap);
  std::vector<Clause> clauses;
  for (const auto& c : p.formula.clauses()) clauses.push_back(Clause::parity(c.or_literals));
  Formula f(d.arity(), std::move(clauses));
  if (!(models(f, enumeration_cap) == d)) throw VerificationFailure("parity formula has the wrong models");
  return f;
}

const char* to_string(SynthesisClass c) {
  switch (c) {
    case SynthesisClass::Separable: return "separable";
    case SynthesisClass::RenamablePartiallyHorn: return "renamable-partially-horn";
    case SynthesisClass::Affine: return "affine";
    case SynthesisClass::Lpic: return "lpic";
  }
  return "?";
}

namespace {

std::optional<SynthesisResult> pic_core(const Domain& d, int cap) {
  SynthesisResult r;
  if (auto a = affine_formula(d, cap)) {
    r.formula = std::move(*a);
    r.cls = SynthesisClass::Affine;
    return r;
  }
  r.formula = prime_cnf(d, cap).formula;
  if (r.formula.occurring_variables().size() >= 2) r.separable = check_separable(r.formula);
  r.rph = check_renamable_partially_horn(r.formula);
  if (r.separable) r.cls = SynthesisClass::Separable;
  else if (r.rph) r.cls = SynthesisClass::RenamablePartiallyHorn;
  else return std::nullopt;
  return r;
}

struct UnionFind {
  std::vector<int> root;
  explicit UnionFind(int n) : root(static_cast<std::size_t>(n) + 1) { std::iota(root.begin(), root.end(), 0); }
  int find(int x) {
    while (root[static_cast<std::size_t>(x)] != x)
      x = root[static_cast<std::size_t>(x)] = root[static_cast<std::size_t>(root[static_cast<std::size_t>(x)])];
    return x;
  }
  void join(int a, int b) {
    a = find(a), b = find(b);
    root[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

bool closed_under(const Domain& d, const std::vector<BoolFn>& fs) {
  return !kernels::first_violation(d, CompiledAggregator(Aggregator(fs)), kernels::TupleCheck::Closure).has_value();
}

// Remaps clause variables through `to` (1-based local index -> variable).
std::vector<Literal> remap(const std::vector<Literal>& lits, const VarSet& to) {
  std::vector<Literal> out;
  for (const auto& l : lits) out.push_back({to[static_cast<std::size_t>(l.var - 1)], l.positive});
  return out;
}

// The prime-formula route: clauses reaching outside V0 are grouped by
// connected pieces of their outside parts; pieces of 2-literal outside parts
// stay as they are, pieces whose outside sub-formula is affine get parity
// blocks. Empty when the route does not produce a verified lpic.
std::optional<Formula> lpic_from_prime(const Formula& phi, const std::vector<char>& in_v0, const Domain& d, int cap) {
  const int n = d.arity();
  const auto& cls = phi.clauses();
  UnionFind uf(n);
  std::vector<std::vector<Literal>> outside(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (const auto& l : cls[i].or_literals)
      if (!in_v0[static_cast<std::size_t>(l.var)]) outside[i].push_back(l);
    for (std::size_t t = 1; t < outside[i].size(); ++t) uf.join(outside[i][t - 1].var, outside[i][t].var);
  }
  std::map<int, std::vector<std::size_t>> pieces;
  for (std::size_t i = 0; i < cls.size(); ++i)
    if (!outside[i].empty()) pieces[uf.find(outside[i].front().var)].push_back(i);
  std::vector<char> to_parity(cls.size(), 0);
  for (const auto& [rt, members] : pieces) {
    bool narrow = true;
    for (auto i : members) narrow = narrow && outside[i].size() <= 2;
    if (narrow) continue;
    VarSet vars;
    for (auto i : members)
      for (const auto& l : outside[i]) vars.push_back(l.var);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Clause> sub;
    for (auto i : members) {
      std::vector<Literal> lits;
      for (const auto& l : outside[i]) {
        const auto at = std::lower_bound(vars.begin(), vars.end(), l.var) - vars.begin();
        lits.push_back({static_cast<int>(at) + 1, l.positive});
      }
      sub.push_back(Clause::disjunction(std::move(lits)));
    }
    if (!is_affine(models(Formula(static_cast<int>(vars.size()), std::move(sub)), cap))) return std::nullopt;
    for (auto i : members) to_parity[i] = 1;
  }
  std::vector<Clause> out;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (!to_parity[i]) {
      out.push_back(cls[i]);
      continue;
    }
    std::vector<Literal> head;
    for (const auto& l : cls[i].or_literals)
      if (in_v0[static_cast<std::size_t>(l.var)]) head.push_back(l);
    out.push_back(head.empty() ? Clause::parity(outside[i]) : Clause::generalized(std::move(head), outside[i]));
  }
  Formula f(n, std::move(out));
  if (!(models(f, cap) == d) || !check_lpic(f)) return std::nullopt;
  return f;
}

// V0 and its renaming come from the prime formula. When the prime-formula
// route fails, the variables outside V0 fall into pieces joined by clauses;
// each piece takes maj or xor3, tested semantically with pr1 on every other
// outside coordinate, and the formula is built as in the existence proof: a Horn formula on V0 plus, for every
// V0-pattern a of the renamed domain, "a -> bijunctive(B1_a)" and
// "a -> affine(B2_a)".
std::optional<SynthesisResult> lpic_core(const Domain& d, int cap) {
  const int n = d.arity();
  const Formula phi = prime_cnf(d, cap).formula;
  const auto rph = check_renamable_partially_horn(phi);
  VarSet v0, renamed;
  if (rph) v0 = rph->admissible, renamed = rph->renamed;
  std::vector<char> in_v0(static_cast<std::size_t>(n) + 1, 0);
  for (int v : v0) in_v0[static_cast<std::size_t>(v)] = 1;

  SynthesisResult r;
  r.cls = SynthesisClass::Lpic;
  if (static_cast<int>(v0.size()) == n) {
    r.formula = phi;
  } else {
    if (auto f = lpic_from_prime(phi, in_v0, d, cap)) {
      r.formula = std::move(*f);
      r.lpic = check_lpic(r.formula);
      return r;
    }
    UnionFind uf(n);
    for (const auto& c : phi.clauses()) {
      int prev = 0;
      for (const auto& l : c.or_literals) {
        if (in_v0[static_cast<std::size_t>(l.var)]) continue;
        if (prev) uf.join(prev, l.var);
        prev = l.var;
      }
    }
    std::map<int, VarSet> pieces;
    for (int v = 1; v <= n; ++v)
      if (!in_v0[static_cast<std::size_t>(v)]) pieces[uf.find(v)].push_back(v);

    std::vector<BoolFn> base(static_cast<std::size_t>(n), projection(1, 3));
    for (int v : v0) base[static_cast<std::size_t>(v - 1)] = named_fn("and3", 3);
    for (int v : renamed) base[static_cast<std::size_t>(v - 1)] = named_fn("or3", 3);
    const BoolFn maj = named_fn("maj", 3), minority = named_fn("xor3", 3);
    VarSet v1, v2;
    std::vector<BoolFn> full = base;
    for (const auto& [rt, vars] : pieces) {
      std::optional<BoolFn> pick;
      for (const BoolFn& g : {maj, minority}) {
        auto trial = base;
        for (int v : vars) trial[static_cast<std::size_t>(v - 1)] = g;
        if (closed_under(d, trial)) {
          pick = g;
          break;
        }
      }
      if (!pick) return std::nullopt;
      for (int v : vars) {
        full[static_cast<std::size_t>(v - 1)] = *pick;
        (*pick == maj ? v1 : v2).push_back(v);
      }
    }
    if (!closed_under(d, full)) return std::nullopt;
    std::sort(v1.begin(), v1.end());
    std::sort(v2.begin(), v2.end());

    const Domain star = rename_domain(d, renamed);
    std::vector<Clause> out;
    if (!v0.empty()) {
      const Formula horn = prime_cnf(project(star, v0), cap).formula;
      for (const auto& c : horn.clauses()) out.push_back(Clause::disjunction(remap(c.or_literals, v0)));
    }
    // Members grouped by their V0 pattern.
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_pattern;
    std::uint64_t v0_mask = 0;
    for (int v : v0) v0_mask |= coord_bit(n, v);
    for (auto m : star.members()) by_pattern[m & v0_mask].push_back(m);
    auto restrict_to = [&](const std::vector<std::uint64_t>& ms, const VarSet& idx) {
      return project(Domain::from_unsorted(n, ms), idx);
    };
    for (const auto& [pattern, ms] : by_pattern) {
      std::vector<Literal> head;
      for (int v : v0)
        if (pattern & coord_bit(n, v)) head.push_back({v, false});
      if (!v1.empty()) {
        const Formula psi = prime_cnf(restrict_to(ms, v1), cap).formula;
        for (const auto& c : psi.clauses()) {
          auto lits = head;
          for (const auto& l : remap(c.or_literals, v1)) lits.push_back(l);
          out.push_back(Clause::disjunction(std::move(lits)));
        }
      }
      if (!v2.empty()) {
        const auto chi = affine_formula(restrict_to(ms, v2), cap);
        if (!chi) throw VerificationFailure("xor3-closed extension set is not affine");
        for (const auto& c : chi->clauses()) {
          auto block = remap(c.xor_literals, v2);
          out.push_back(head.empty() ? Clause::parity(std::move(block)) : Clause::generalized(head, std::move(block)));
        }
      }
    }
    r.formula = rename(Formula(n, std::move(out)), renamed);
  }
  if (!(models(r.formula, cap) == d)) throw VerificationFailure("lpic synthesis changed the model set");
  r.lpic = check_lpic(r.formula);
  if (!r.lpic) throw VerificationFailure("synthesized formula is not recognized as an lpic");
  return r;
}

template <class Core>
std::optional<SynthesisResult> with_policy(const Domain& d, const SynthesisOptions& opt, Core core) {
  check_enumeration_cap(d, opt.enumeration_cap);
  const auto deg = degeneracy(d);
  if (deg.non_degenerate) return core(d, opt.enumeration_cap);
  if (opt.policy == DegeneracyPolicy::Strict) require_non_degenerate(d);

  // Permissive: synthesize on the free coordinates and pin the others with
  // unit clauses.
  const int n = d.arity();
  VarSet free;
  for (int j = 1, t = 0; j <= n; ++j) {
    if (t < static_cast<int>(deg.fixed_coordinates.size()) && deg.fixed_coordinates[static_cast<std::size_t>(t)].first == j) {
      ++t;
      continue;
    }
    free.push_back(j);
  }
  SynthesisResult r;
  bool parity_units = true;
  std::vector<Clause> clauses;
  if (!free.empty()) {
    auto inner = core(project(d, free), opt.enumeration_cap);
    if (!inner) return std::nullopt;
    r.cls = inner->cls;
    parity_units = inner->cls == SynthesisClass::Affine;
    for (auto c : inner->formula.clauses()) {
      for (auto& l : c.or_literals) l.var = free[static_cast<std::size_t>(l.var - 1)];
      for (auto& l : c.xor_literals) l.var = free[static_cast<std::size_t>(l.var - 1)];
      clauses.push_back(std::move(c));
    }
  } else {
    r.cls = SynthesisClass::Affine;
  }
  for (auto [j, b] : deg.fixed_coordinates) {
    std::vector<Literal> unit{{j, b}};
    clauses.push_back(parity_units ? Clause::parity(unit) : Clause::disjunction(unit));
  }
  r.formula = Formula(n, std::move(clauses));
  r.fixed_coordinates = deg.fixed_coordinates;
  if (!(models(r.formula, opt.enumeration_cap) == d)) throw VerificationFailure("permissive synthesis changed the model set");

  // Re-derive the witness on the final formula.
  if (r.cls == SynthesisClass::Lpic) {
    r.lpic = check_lpic(r.formula);
    if (!r.lpic) throw VerificationFailure("permissive lpic output not recognized");
  } else if (r.cls != SynthesisClass::Affine) {
    const auto pic = check_pic(r.formula);
    r.separable = pic.separable;
    r.rph = pic.renamable_partially_horn;
    if (r.separable) r.cls = SynthesisClass::Separable;
    else if (r.rph) r.cls = SynthesisClass::RenamablePartiallyHorn;
    else throw VerificationFailure("permissive pic output not recognized");
  }
  return r;
}

}  // namespace

std::optional<SynthesisResult> pic_for(const Domain& d, const SynthesisOptions& opt) {
  return with_policy(d, opt, pic_core);
}

std::optional<SynthesisResult> lpic_for(const Domain& d, const SynthesisOptions& opt) {
  return with_policy(d, opt, lpic_core);
}

}  // namespace possdom
