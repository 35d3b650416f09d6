#include "possdom/oracle.hpp"

#include <omp.h>

#include <bit>
#include <cmath>
#include <exception>
#include <random>
#include <set>

#include "possdom/classify.hpp"
#include "possdom/errors.hpp"
#include "possdom/recognize.hpp"
#include "possdom/synthesize.hpp"

namespace possdom {

std::vector<BoolFn> candidates(const SearchSpaceSpec& spec) {
  switch (spec.candidates) {
    case CandidateSet::BinaryUnanimous:
      return {named_fn("and", 2), named_fn("or", 2), projection(1, 2), projection(2, 2)};
    case CandidateSet::TernaryCommutative:
      return {named_fn("and3", 3), named_fn("or3", 3), named_fn("maj", 3), named_fn("xor3", 3)};
    case CandidateSet::TernaryCommutativeNoXor:
      return {named_fn("and3", 3), named_fn("or3", 3), named_fn("maj", 3)};
    case CandidateSet::AllUnanimous: {
      const int k = spec.arity;
      if (k < 1 || k > 4) throw InputError("all-table search supports arity 1..4");
      std::vector<BoolFn> out;
      const std::uint64_t rows = std::uint64_t{1} << k;
      for (std::uint64_t t = 0; t < (std::uint64_t{1} << rows); ++t) {
        BoolFn f(k, t);
        if (is_unanimous(f)) out.push_back(f);
      }
      return out;
    }
  }
  return {};
}

bool satisfies(const Aggregator& f, Property p, const Domain& d) {
  switch (p) {
    case Property::NonDictatorial: return !is_dictatorial(f);
    case Property::LocallyNonDictatorial: return is_locally_nondictatorial(f);
    case Property::Anonymous: return is_anonymous(f);
    case Property::MonotoneNonDictatorial: return is_monotone(f) && !is_dictatorial(f);
    case Property::StrongDem: return is_strongdem(f);
    case Property::NotGeneralizedDictatorship: return !is_generalized_dictatorship(f, d).ok;
    case Property::Any: return true;
  }
  return false;
}

std::optional<Aggregator> brute_property(const Domain& d, Property p, const SearchSpaceSpec& spec) {
  const auto cands = candidates(spec);
  const int n = d.arity();
  const int k = cands.front().arity();
  if (spec.candidates == CandidateSet::AllUnanimous) {
    const long double tables = static_cast<long double>(n) * std::pow(2.0L, static_cast<long double>(1u << k));
    if (tables > 1e6L) throw CapExceeded("all-table search space n*2^(2^k) exceeds 10^6");
  }
  if (std::pow(static_cast<long double>(cands.size()), n) > static_cast<long double>(spec.coordinate_cap))
    throw CapExceeded("search space " + std::to_string(cands.size()) + "^" + std::to_string(n) + " exceeds cap");
  if (std::pow(static_cast<long double>(d.size()), k) > static_cast<long double>(spec.tuple_cap))
    throw CapExceeded("closure checks over " + std::to_string(d.size()) + "^" + std::to_string(k) + " tuples exceed cap");

  // Prefix projections: a tuple can only close d if each prefix closes the
  // projection of d onto that prefix, so the first find is unaffected.
  std::vector<Domain> prefix;
  for (int p2 = 1; p2 <= n; ++p2) {
    VarSet idx;
    for (int j = 1; j <= p2; ++j) idx.push_back(j);
    prefix.push_back(project(d, idx));
  }
  std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
  std::vector<BoolFn> fs;
  int depth = 0;
  for (;;) {
    // Try candidate choice[depth] at this depth.
    if (choice[static_cast<std::size_t>(depth)] == cands.size()) {
      if (depth == 0) return std::nullopt;
      choice[static_cast<std::size_t>(depth)] = 0;
      --depth;
      fs.pop_back();
      ++choice[static_cast<std::size_t>(depth)];
      continue;
    }
    fs.resize(static_cast<std::size_t>(depth));
    fs.push_back(cands[choice[static_cast<std::size_t>(depth)]]);
    const Aggregator partial(fs);
    if (!is_aggregator(partial, prefix[static_cast<std::size_t>(depth)], spec.tuple_cap).ok) {
      fs.pop_back();
      ++choice[static_cast<std::size_t>(depth)];
      continue;
    }
    if (depth + 1 < n) {
      ++depth;
      continue;
    }
    if (satisfies(partial, p, d)) {
      if (!is_aggregator(partial, d, spec.tuple_cap).ok || !satisfies(partial, p, d))
        throw VerificationFailure("oracle find failed re-verification");
      return partial;
    }
    fs.pop_back();
    ++choice[static_cast<std::size_t>(depth)];
  }
}

std::optional<Aggregator> brute_binary(const Domain& d) {
  return brute_property(d, Property::NonDictatorial, {CandidateSet::BinaryUnanimous});
}

std::optional<Aggregator> brute_ternary_commutative(const Domain& d, bool allow_xor) {
  return brute_property(d, Property::Any,
                        {allow_xor ? CandidateSet::TernaryCommutative : CandidateSet::TernaryCommutativeNoXor, 3});
}

std::size_t CensusReport::mismatches() const {
  std::size_t m = 0;
  for (const auto& e : entries) m += !e.match || !e.synthesis_ok;
  return m;
}

std::vector<Domain> census_domains(int n) {
  if (n < 1 || n > 3) throw InputError("exhaustive census only for n in 1..3");
  const unsigned points = 1u << n;
  std::vector<Domain> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << points); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<std::uint64_t> members;
    for (unsigned p = 0; p < points; ++p)
      if (mask >> p & 1) members.push_back(p);
    Domain d(n, std::move(members));
    if (degeneracy(d).non_degenerate) out.push_back(std::move(d));
  }
  return out;
}

std::vector<Domain> sample_domains(int n, std::size_t count, std::uint64_t seed) {
  if (n < 2 || n > 6) throw InputError("sampled census supports n in 2..6");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  const unsigned points = 1u << n;
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Domain> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * count + 1000) throw CapExceeded("could not draw enough distinct domains");
    std::vector<std::uint64_t> members;
    for (unsigned p = 0; p < points; ++p)
      if (coin(rng)) members.push_back(p);
    if (members.size() < 2) continue;
    Domain d(n, members);
    if (!degeneracy(d).non_degenerate || !seen.insert(members).second) continue;
    out.push_back(std::move(d));
  }
  return out;
}

CensusVerdicts theory_verdicts(const Domain& d, bool* synthesis_ok) {
  const auto c = classify_domain(d);
  CensusVerdicts v;
  v.possibility = c.possibility.holds;
  v.local_possibility = c.local_possibility.holds;
  v.strongdem = c.strongdem.holds;
  v.anonymous = c.anonymous.holds;
  v.monotone = c.monotone_nondictatorial.holds;
  v.non_generalized_dictatorship = c.non_generalized_dictatorship.holds;
  if (synthesis_ok) {
    bool ok = true;
    if (c.pic) ok = ok && models(c.pic->formula) == d && check_pic(c.pic->formula).accepted();
    if (c.lpic) ok = ok && models(c.lpic->formula) == d && check_lpic(c.lpic->formula).has_value();
    *synthesis_ok = ok;
  }
  return v;
}

CensusVerdicts oracle_verdicts(const Domain& d) {
  CensusVerdicts v;
  const SearchSpaceSpec bin{CandidateSet::BinaryUnanimous, 2};
  const SearchSpaceSpec ter{CandidateSet::TernaryCommutative, 3};
  const SearchSpaceSpec ter_no_xor{CandidateSet::TernaryCommutativeNoXor, 3};
  v.possibility = brute_binary(d).has_value() || is_affine(d);
  v.local_possibility = brute_ternary_commutative(d, true).has_value();
  v.strongdem = brute_property(d, Property::StrongDem, ter_no_xor).has_value();
  v.anonymous = brute_property(d, Property::Anonymous, ter).has_value();
  v.monotone = brute_property(d, Property::MonotoneNonDictatorial, bin).has_value();
  v.non_generalized_dictatorship = brute_property(d, Property::NotGeneralizedDictatorship, bin).has_value() ||
                                   brute_property(d, Property::NotGeneralizedDictatorship, ter).has_value();
  return v;
}

std::string membership_string(const Domain& d) {
  std::string s(std::size_t{1} << d.arity(), '0');
  for (auto m : d.members()) s[m] = '1';
  return s;
}

CensusReport census(const std::vector<Domain>& domains, int n) {
  CensusReport r;
  r.n = n;
  r.entries.resize(domains.size());
  std::vector<std::exception_ptr> errors(domains.size());
  const auto count = static_cast<std::int64_t>(domains.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i) {
    auto& e = r.entries[static_cast<std::size_t>(i)];
    try {
      e.domain = domains[static_cast<std::size_t>(i)];
      e.domain_bits = membership_string(e.domain);
      e.theory = theory_verdicts(e.domain, &e.synthesis_ok);
      e.oracle = oracle_verdicts(e.domain);
      e.match = e.theory == e.oracle;
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& ex : errors)
    if (ex) std::rethrow_exception(ex);
  return r;
}

}  // namespace possdom
