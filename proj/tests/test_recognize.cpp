#include <gtest/gtest.h>

#include "possdom/errors.hpp"
#include "possdom/recognize.hpp"
#include "support.hpp"

using namespace possdom;
using namespace testing_support;

namespace {

bool brute_renamable_horn(const Formula& f) {
  const int n = f.num_vars();
  for (const auto& c : f.clauses())
    if (c.kind != ClauseKind::Or) return false;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    const Formula g = rename(f, mask_to_set(s, n));
    for (const auto& c : g.clauses()) {
      int pos = 0;
      for (const auto& l : c.or_literals) pos += l.positive;
      ok = ok && pos <= 1;
    }
    if (ok) return true;
  }
  return false;
}

void expect_sound_separation(const Formula& f, const SeparabilityWitness& w) {
  ASSERT_FALSE(w.part1.empty());
  ASSERT_FALSE(w.part2.empty());
  VarSet all = w.part1;
  all.insert(all.end(), w.part2.begin(), w.part2.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, f.occurring_variables());
  for (const auto& c : f.clauses()) {
    const auto vs = clause_vars(c);
    const auto in1 = [&](int v) { return std::binary_search(w.part1.begin(), w.part1.end(), v); };
    EXPECT_TRUE(std::all_of(vs.begin(), vs.end(), in1) || std::none_of(vs.begin(), vs.end(), in1));
  }
}

}  // namespace

TEST(Syntactic, Examples) {
  EXPECT_TRUE(check_syntactic_class(phi(kPhi1Star)).horn);
  EXPECT_FALSE(check_syntactic_class(phi(kPhi1)).horn);
  const auto x = check_syntactic_class(phi(kPhi14));
  EXPECT_TRUE(x.affine);
  EXPECT_FALSE(x.horn);
  EXPECT_FALSE(x.bijunctive);
  const auto b = check_syntactic_class(parse_formula("p ecnf 2 2\n1 2 0\n-1 2 0\n"));
  EXPECT_TRUE(b.bijunctive);
  EXPECT_TRUE(b.dual_horn);
  EXPECT_FALSE(b.horn);
  EXPECT_FALSE(b.affine);
}

TEST(Separable, Examples) {
  const auto w = check_separable(phi(kPhi3));
  ASSERT_TRUE(w);
  VarSet a = w->part1, b = w->part2;
  if (a.front() != 1) std::swap(a, b);
  EXPECT_EQ(a, (VarSet{1, 2, 3}));
  EXPECT_EQ(b, (VarSet{4, 5}));
  EXPECT_FALSE(check_separable(phi(kPhi1)));
  EXPECT_FALSE(check_separable(phi(kPhi2)));
  EXPECT_TRUE(check_separable(phi(kPhi9)));
  EXPECT_THROW(check_separable(parse_formula("p ecnf 3 1\n2 0\n")), InputError);
}

TEST(Separable, AgreesWithBruteForceAndIgnoresOrder) {
  std::mt19937_64 rng(31);
  int accepted = 0;
  for (int i = 0; i < 3000; ++i) {
    const Formula f = random_formula(rng, 8, 6, true);
    if (f.occurring_variables().size() < 2) continue;
    const auto w = check_separable(f);
    ASSERT_EQ(w.has_value(), brute_separable(f)) << render_formula(f);
    if (w) expect_sound_separation(f, *w), ++accepted;

    auto cls = f.clauses();
    std::shuffle(cls.begin(), cls.end(), rng);
    for (auto& c : cls) {
      std::shuffle(c.or_literals.begin(), c.or_literals.end(), rng);
      std::shuffle(c.xor_literals.begin(), c.xor_literals.end(), rng);
    }
    EXPECT_EQ(check_separable(Formula(f.num_vars(), cls)).has_value(), w.has_value());
  }
  EXPECT_GT(accepted, 100);
}

TEST(PartiallyHorn, Examples) {
  EXPECT_TRUE(verify_partially_horn(phi(kPhi4), {1, 2}));
  const auto v4 = check_partially_horn(phi(kPhi4));
  ASSERT_TRUE(v4);
  const VarSet want{1, 2};
  EXPECT_TRUE(std::includes(v4->begin(), v4->end(), want.begin(), want.end()));
  for (std::uint64_t s = 1; s < 16; ++s) EXPECT_FALSE(verify_partially_horn(phi(kPhi5), mask_to_set(s, 4)));
  EXPECT_FALSE(check_partially_horn(phi(kPhi5)));
  EXPECT_FALSE(check_partially_horn(phi(kPhi2)));
  EXPECT_FALSE(check_partially_horn(phi(kPhi3)));
  const auto v8 = check_partially_horn(phi(kPhi8));
  ASSERT_TRUE(v8);
  EXPECT_TRUE(std::binary_search(v8->begin(), v8->end(), 1));
  EXPECT_THROW(verify_partially_horn(phi(kPhi4), {}), InputError);
  EXPECT_THROW(verify_partially_horn(phi(kPhi4), {5}), InputError);
}

TEST(PartiallyHorn, VerifyMatchesDefinition) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 1500; ++i) {
    const Formula f = random_formula(rng, 6, 6, true);
    const int n = f.num_vars();
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s)
      ASSERT_EQ(verify_partially_horn(f, mask_to_set(s, n)), brute_partially_horn(f, mask_to_membership(s, n)))
          << render_formula(f) << format_var_set(mask_to_set(s, n));
  }
}

TEST(PartiallyHorn, ReturnsLargestAdmissibleSet) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 1500; ++i) {
    const Formula f = random_formula(rng, 6, 7, true);
    const auto got = check_partially_horn(f);
    const std::uint64_t best = brute_max_ph(f);
    ASSERT_EQ(got.has_value(), best != 0) << render_formula(f);
    if (got) {
      EXPECT_TRUE(verify_partially_horn(f, *got));
      EXPECT_EQ(got->size(), static_cast<std::size_t>(__builtin_popcountll(best)));
    }
  }
}

TEST(RenamableHorn, Examples) {
  EXPECT_EQ(check_renamable_horn(phi(kPhi1)), (VarSet{1, 2, 3, 4}));
  EXPECT_FALSE(check_renamable_horn(phi(kPhi2)));
  EXPECT_FALSE(check_renamable_horn(phi(kPhi14)));
}

TEST(RenamableHorn, AgreesWithBruteForce) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, 7, 8, i % 4 == 0);
    const auto got = check_renamable_horn(f);
    ASSERT_EQ(got.has_value(), brute_renamable_horn(f)) << render_formula(f);
    if (got) EXPECT_TRUE(check_syntactic_class(rename(f, *got)).horn);
  }
}

TEST(Rph, Examples) {
  const auto w6 = check_renamable_partially_horn(phi(kPhi6));
  ASSERT_TRUE(w6);
  EXPECT_EQ(w6->admissible, (VarSet{4, 5}));
  EXPECT_EQ(w6->renamed, (VarSet{4, 5}));
  EXPECT_FALSE(check_renamable_partially_horn(phi(kPhi7)));
  for (const char* t : {kPhi2, kPhi3, kPhi5, kPhi1}) {
    const Formula f = phi(t);
    const auto w = check_renamable_partially_horn(f);
    ASSERT_TRUE(w) << t;
    EXPECT_TRUE(verify_partially_horn(rename(f, w->renamed), w->admissible));
  }
  // phi2, phi3: the pure positive x4 is admissible once renamed.
  const auto w2 = check_renamable_partially_horn(phi(kPhi2));
  EXPECT_TRUE(std::binary_search(w2->admissible.begin(), w2->admissible.end(), 4));
}

TEST(Rph, AgreesWithBruteForceAndIsMaximal) {
  std::mt19937_64 rng(35);
  int accepted = 0;
  for (int i = 0; i < 3000; ++i) {
    const Formula f = random_formula(rng, 6, 8, i % 3 == 0);
    const auto w = check_renamable_partially_horn(f);
    const std::uint64_t best = brute_max_rph(f);
    ASSERT_EQ(w.has_value(), best != 0) << render_formula(f);
    if (!w) continue;
    ++accepted;
    ASSERT_TRUE(std::includes(w->admissible.begin(), w->admissible.end(), w->renamed.begin(), w->renamed.end()));
    ASSERT_TRUE(brute_partially_horn(rename(f, w->renamed), mask_to_membership(set_to_mask(w->admissible), f.num_vars())));
    ASSERT_FALSE(brute_rph_superset_exists(f, set_to_mask(w->admissible)))
        << render_formula(f) << " V0=" << format_var_set(w->admissible);
  }
  EXPECT_GT(accepted, 200);
}

TEST(Pic, Examples) {
  EXPECT_FALSE(check_pic(phi(kPhi7)).accepted());
  EXPECT_TRUE(check_pic(phi(kPhi8)).accepted());
  EXPECT_TRUE(check_pic(phi(kPhi14)).affine);
  EXPECT_TRUE(check_pic(phi(kPhi3)).separable);
}

TEST(Lpic, Examples) {
  EXPECT_FALSE(check_lpic(phi(kPhi8)));
  EXPECT_FALSE(brute_lpic(phi(kPhi8)));
  const auto w10 = check_lpic(phi(kPhi10));
  ASSERT_TRUE(w10);
  EXPECT_TRUE(verify_lpic(phi(kPhi10), *w10));
  EXPECT_TRUE(verify_lpic(phi(kPhi10), LpicWitness{{2}, {2}, {1, 3}, {}}));
  EXPECT_FALSE(verify_lpic(phi(kPhi6Star), LpicWitness{{}, {4, 5}, {1, 2, 3}, {}}));
  const Formula bij = parse_formula("p ecnf 3 3\n1 2 0\n-2 -3 0\n1 -3 0\n");
  EXPECT_TRUE(verify_lpic(bij, LpicWitness{{}, {}, {1, 2, 3}, {}}));
  EXPECT_TRUE(check_lpic(bij));
  EXPECT_TRUE(verify_lpic(phi(kPhi14), LpicWitness{{}, {}, {}, {1, 2, 3}}));
  EXPECT_TRUE(check_lpic(phi(kPhi14)));
  EXPECT_THROW(verify_lpic(phi(kPhi14), LpicWitness{{}, {1}, {}, {2}}), InputError);
  EXPECT_THROW(verify_lpic(phi(kPhi14), LpicWitness{{3}, {1}, {2}, {3}}), InputError);
}

TEST(Lpic, VerifyMatchesDefinition) {
  std::mt19937_64 rng(36);
  for (int i = 0; i < 400; ++i) {
    const Formula f = random_formula(rng, 4, 5, true);
    const int n = f.num_vars();
    std::vector<int> role(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); ++code) {
      LpicWitness w;
      for (int v = 1; v <= n; ++v) {
        const int r = static_cast<int>((code >> (2 * (v - 1))) & 3);
        role[static_cast<std::size_t>(v)] = r;
        if (r == 1) w.renamed.push_back(v);
        (r <= 1 ? w.v0 : r == 2 ? w.v1 : w.v2).push_back(v);
      }
      ASSERT_EQ(verify_lpic(f, w), lpic_roles_ok(f, role)) << render_formula(f) << " code " << code;
    }
  }
}

TEST(Lpic, AgreesWithBruteForce) {
  std::mt19937_64 rng(37);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 1500; ++i) {
    const Formula f = random_formula(rng, 5, 7, i % 2 == 0);
    const auto w = check_lpic(f);
    ASSERT_EQ(w.has_value(), brute_lpic(f)) << render_formula(f);
    if (w) {
      EXPECT_TRUE(verify_lpic(f, *w));
      ++accepted;
    } else {
      ++rejected;
    }
  }
  EXPECT_GT(accepted, 100);
  EXPECT_GT(rejected, 100);
}

TEST(ClassReport, ImplicationsOnRandomFormulas) {
  std::mt19937_64 rng(38);
  for (int i = 0; i < 10000; ++i) {
    const Formula f = random_formula(rng, 8, 12, i % 2 == 0);
    const FormulaClassReport r = classify_formula(f);
    const bool ph = r.partially_horn.has_value();
    const bool rph = r.renamable_partially_horn.has_value();
    if (r.syntactic.horn && !f.empty()) ASSERT_TRUE(ph) << render_formula(f);
    if (ph) ASSERT_TRUE(rph) << render_formula(f);
    if (rph) ASSERT_TRUE(r.pic);
    if (r.syntactic.bijunctive) ASSERT_TRUE(r.lpic) << render_formula(f);
    if (r.syntactic.affine) ASSERT_TRUE(r.pic && r.lpic) << render_formula(f);
    if (r.lpic && !r.lpic->v0.empty()) ASSERT_TRUE(rph) << render_formula(f);
    if (r.renamable_horn) ASSERT_TRUE(r.lpic);
    ASSERT_EQ(r.pic, r.separable.has_value() || rph || r.syntactic.affine);
  }
}
