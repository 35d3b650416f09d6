#include "possdom/classify.hpp"

#include <algorithm>
#include <bit>

#include "possdom/errors.hpp"
#include "possdom/kernels.hpp"

namespace possdom {

namespace {

void check_shape(const Aggregator& f, const Domain& d, std::uint64_t tuple_cap) {
  if (f.issues() != d.arity())
    throw InputError("aggregator has " + std::to_string(f.issues()) + " components, domain has " +
                     std::to_string(d.arity()) + " coordinates");
  long double tuples = 1;
  for (int i = 0; i < f.arity(); ++i) tuples *= static_cast<long double>(d.size());
  if (tuples > static_cast<long double>(tuple_cap))
    throw CapExceeded("checking " + std::to_string(d.size()) + "^" + std::to_string(f.arity()) +
                      " tuples exceeds cap " + std::to_string(tuple_cap));
}

AggregatorCheck run(const Aggregator& f, const Domain& d, kernels::TupleCheck check) {
  AggregatorCheck r;
  const auto bad = kernels::first_violation(d, CompiledAggregator(f), check);
  r.ok = !bad.has_value();
  if (bad)
    for (auto i : kernels::decode_tuple(*bad, d.size(), f.arity())) r.counterexample.push_back(d.member(i));
  return r;
}

Aggregator build(const std::vector<std::string>& names, int k) {
  std::vector<BoolFn> fs;
  for (const auto& s : names) fs.push_back(named_fn(s, k));
  return Aggregator(std::move(fs));
}

}  // namespace

AggregatorCheck is_aggregator(const Aggregator& f, const Domain& d, std::uint64_t tuple_cap) {
  check_shape(f, d, tuple_cap);
  for (std::size_t j = 0; j < f.components().size(); ++j)
    if (!is_unanimous(f[j])) throw InputError("component " + std::to_string(j + 1) + " is not unanimous");
  return run(f, d, kernels::TupleCheck::Closure);
}

AggregatorCheck is_generalized_dictatorship(const Aggregator& f, const Domain& d, std::uint64_t tuple_cap) {
  check_shape(f, d, tuple_cap);
  return run(f, d, kernels::TupleCheck::Conservative);
}

Aggregator binary_witness(const SynthesisResult& pic, int n) {
  std::vector<std::string> names(static_cast<std::size_t>(n), "pr1");
  if (pic.separable) {
    // Everything outside part1, free coordinates included, follows the second voter.
    for (int j = 1; j <= n; ++j)
      if (!std::binary_search(pic.separable->part1.begin(), pic.separable->part1.end(), j))
        names[static_cast<std::size_t>(j - 1)] = "pr2";
  } else if (pic.rph) {
    for (int v : pic.rph->admissible) names[static_cast<std::size_t>(v - 1)] = "and";
    for (int v : pic.rph->renamed) names[static_cast<std::size_t>(v - 1)] = "or";
  } else {
    throw InputError("binary witness needs a separable or renamable partially Horn constraint");
  }
  return build(names, 2);
}

Aggregator ternary_witness(const LpicWitness& w, int n) {
  std::vector<std::string> names(static_cast<std::size_t>(n), "maj");
  for (int v : w.v0) names[static_cast<std::size_t>(v - 1)] = "and3";
  for (int v : w.renamed) names[static_cast<std::size_t>(v - 1)] = "or3";
  for (int v : w.v2) names[static_cast<std::size_t>(v - 1)] = "xor3";
  return build(names, 3);
}

namespace {

// For a binary aggregator made of and/or only that is a generalized
// dictatorship: flip the or-coordinates so it becomes all-and, order the
// flipped domain by inclusion, and use and on the coordinates owned by the
// top element alone, or elsewhere.
Aggregator symmetric_non_gd(const Aggregator& b, const Domain& d) {
  const int n = d.arity();
  const BoolFn orf = named_fn("or", 2), andf = named_fn("and", 2);
  VarSet flipped;
  for (int j = 1; j <= n; ++j)
    if (b[static_cast<std::size_t>(j - 1)] == orf) flipped.push_back(j);
  const Domain star = rename_domain(d, flipped);
  std::vector<std::uint64_t> chain(star.members().begin(), star.members().end());
  std::sort(chain.begin(), chain.end(), [](auto x, auto y) { return std::popcount(x) < std::popcount(y); });
  for (std::size_t i = 1; i < chain.size(); ++i)
    if ((chain[i - 1] & ~chain[i]) != 0) throw VerificationFailure("flipped domain is not a chain");
  const std::uint64_t top = chain.back(), below = chain[chain.size() - 2];
  const std::uint64_t only_top = top & ~below;
  std::vector<BoolFn> g;
  for (int j = 1; j <= n; ++j) {
    const bool use_and = (only_top & coord_bit(n, j)) != 0;
    const bool was_flipped = std::binary_search(flipped.begin(), flipped.end(), j);
    g.push_back(use_and != was_flipped ? andf : orf);
  }
  return Aggregator(std::move(g));
}

Verdict positive(Aggregator w, std::string method) { return {true, std::move(w), std::move(method)}; }
Verdict negative(std::string method) { return {false, std::nullopt, std::move(method)}; }

void require(bool ok, const char* what) {
  if (!ok) throw VerificationFailure(std::string("witness check failed: ") + what);
}

DomainClassification classify_core(const Domain& d, const ClassifyOptions& opt) {
  const int n = d.arity();
  const std::uint64_t cap = opt.tuple_cap;
  DomainClassification c;
  SynthesisOptions sopt{DegeneracyPolicy::Strict, opt.enumeration_cap};

  const Formula prime = prime_cnf(d, opt.enumeration_cap).formula;
  SynthesisResult binary_source;
  binary_source.formula = prime;
  if (prime.occurring_variables().size() >= 2) binary_source.separable = check_separable(prime);
  binary_source.rph = check_renamable_partially_horn(prime);
  const bool has_binary = binary_source.separable || binary_source.rph;
  const bool affine = is_affine(d, cap);
  std::optional<Aggregator> binary;
  if (has_binary) {
    binary = binary_witness(binary_source, n);
    require(is_aggregator(*binary, d, cap).ok, "binary aggregator");
    require(!is_dictatorial(*binary), "binary non-dictatorial");
  }
  const Aggregator minority = Aggregator::systematic(named_fn("xor3", 3), n);

  c.pic = pic_for(d, sopt);
  if (c.pic.has_value() != (has_binary || affine)) throw VerificationFailure("pic synthesis disagrees with recognizers");
  if (binary) c.possibility = positive(*binary, binary_source.separable ? "separable" : "renamable-partially-horn");
  else if (affine) c.possibility = positive(minority, "affine");
  else c.possibility = negative("pic-synthesis-reject");
  if (c.possibility.witness)
    require(is_aggregator(*c.possibility.witness, d, cap).ok && !is_dictatorial(*c.possibility.witness), "possibility");

  c.lpic = lpic_for(d, sopt);
  if (c.lpic) {
    const Aggregator t = ternary_witness(*c.lpic->lpic, n);
    require(is_aggregator(t, d, cap).ok && is_locally_nondictatorial(t), "local possibility");
    require(is_anonymous(t), "anonymous");
    c.local_possibility = positive(t, "lpic");
    c.anonymous = positive(t, "lpic");
    if (c.lpic->lpic->v2.empty()) {
      require(is_strongdem(t), "strongdem");
      c.strongdem = positive(t, "parity-free-lpic");
    } else {
      c.strongdem = negative("lpic-needs-parity");
    }
  } else {
    c.local_possibility = negative("lpic-synthesis-reject");
    c.anonymous = negative("lpic-synthesis-reject");
    c.strongdem = negative("lpic-synthesis-reject");
  }

  if (binary) {
    require(is_monotone(*binary), "monotone");
    c.monotone_nondictatorial = positive(*binary, c.possibility.method);
  } else {
    c.monotone_nondictatorial = negative("prime-formula-neither-separable-nor-rph");
  }

  if (!c.possibility.holds) {
    c.non_generalized_dictatorship = negative("impossibility-domain");
  } else if (d.size() < 3) {
    c.non_generalized_dictatorship = negative("two-element-domain");
  } else {
    std::optional<Aggregator> g;
    std::string how;
    if (affine && !is_generalized_dictatorship(minority, d, cap).ok) {
      g = minority;
      how = "minority";
    } else if (binary && !is_generalized_dictatorship(*binary, d, cap).ok) {
      g = binary;
      how = "binary-witness";
    } else if (binary) {
      g = symmetric_non_gd(*binary, d);
      how = "chain-construction";
    }
    require(g.has_value(), "non-generalized-dictatorship witness exists");
    require(is_aggregator(*g, d, cap).ok && !is_generalized_dictatorship(*g, d, cap).ok, "non-generalized-dictatorship");
    c.non_generalized_dictatorship = positive(*g, how);
  }

  c.systematic.and_closed = is_closed_under(d, named_fn("and", 2), cap);
  c.systematic.or_closed = is_closed_under(d, named_fn("or", 2), cap);
  c.systematic.maj_closed = is_closed_under(d, named_fn("maj", 3), cap);
  c.systematic.xor_closed = affine;
  return c;
}

// Extends a witness on the free coordinates with `fill` on the fixed ones.
std::optional<Aggregator> lift(const std::optional<Aggregator>& w, const VarSet& free, int n) {
  if (!w) return std::nullopt;
  const int k = w->arity();
  std::vector<BoolFn> fs(static_cast<std::size_t>(n), named_fn(k == 1 ? "id" : "and", k));
  for (std::size_t t = 0; t < free.size(); ++t) fs[static_cast<std::size_t>(free[t] - 1)] = (*w)[t];
  return Aggregator(std::move(fs));
}

}  // namespace

DomainClassification classify_domain(const Domain& d, const ClassifyOptions& opt) {
  if (d.size() < 2) throw InputError("classification needs at least two members");
  const auto deg = degeneracy(d);
  if (deg.non_degenerate) return classify_core(d, opt);
  if (opt.policy == DegeneracyPolicy::Strict) require_non_degenerate(d);

  VarSet free;
  for (int j = 1; j <= d.arity(); ++j)
    if (std::none_of(deg.fixed_coordinates.begin(), deg.fixed_coordinates.end(),
                     [&](const auto& p) { return p.first == j; }))
      free.push_back(j);
  DomainClassification c = classify_core(project(d, free), opt);
  const int n = d.arity();
  for (Verdict* v : {&c.possibility, &c.local_possibility, &c.anonymous, &c.monotone_nondictatorial, &c.strongdem,
                     &c.non_generalized_dictatorship}) {
    v->witness = lift(v->witness, free, n);
    if (v->witness) require(is_aggregator(*v->witness, d, opt.tuple_cap).ok, "lifted witness");
  }
  SynthesisOptions sopt{DegeneracyPolicy::Permissive, opt.enumeration_cap};
  c.pic = pic_for(d, sopt);
  c.lpic = lpic_for(d, sopt);
  c.systematic.and_closed = is_closed_under(d, named_fn("and", 2), opt.tuple_cap);
  c.systematic.or_closed = is_closed_under(d, named_fn("or", 2), opt.tuple_cap);
  c.systematic.maj_closed = is_closed_under(d, named_fn("maj", 3), opt.tuple_cap);
  c.systematic.xor_closed = is_affine(d, opt.tuple_cap);
  return c;
}

}  // namespace possdom
