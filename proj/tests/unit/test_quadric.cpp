#include <gtest/gtest.h>

#include "parafourier/quadric.hpp"
#include "parafourier/sampling.hpp"
#include "parafourier/suites.hpp"

using namespace parafourier;

namespace {

QuadricPtr quadric(int d, int q, std::size_t budget = kDefaultBudget) {
  return enumerate_quadric(d, CharacterContext::make(FieldSpec::from_q(q)), budget);
}

/// Independent count of pairs (u, w) in F_q^d x F_q^d with <u, w> = 0.
std::size_t brute_count(int d, int q) {
  auto f = Field::make(FieldSpec::from_q(q));
  const std::size_t side = std::size_t(ipow(q, d));
  std::size_t n = 0;
  for (std::size_t a = 0; a < side; ++a)
    for (std::size_t b = 0; b < side; ++b) {
      std::size_t ra = a, rb = b;
      Code s = 0;
      for (int k = 0; k < d; ++k, ra /= std::size_t(q), rb /= std::size_t(q)) s = f->add(s, f->mul(Code(ra % q), Code(rb % q)));
      n += s == 0;
    }
  return n;
}

}  // namespace

TEST(Quadric, PointCountsAgreeWithBruteForceAndFormula) {
  EXPECT_EQ(quadric(2, 3)->size(), 33u);
  EXPECT_EQ(quadric(3, 3)->size(), 261u);
  EXPECT_EQ(quadric(4, 3)->size(), 2241u);
  for (int d = 1; d <= 3; ++d)
    for (int q : {2, 3, 4, 5}) EXPECT_EQ(quadric(d, q, 1u << 20)->size(), brute_count(d, q)) << d << " " << q;
}

TEST(Quadric, LineQuadricOverF2) {
  auto X = quadric(1, 2);
  ASSERT_EQ(X->size(), 3u);
  EXPECT_EQ(X->points()->decode(0), (std::vector<Code>{0, 0}));
  EXPECT_EQ(X->points()->decode(1), (std::vector<Code>{0, 1}));
  EXPECT_EQ(X->points()->decode(2), (std::vector<Code>{1, 0}));
}

TEST(Quadric, CapsAndBudget) {
  EXPECT_THROW(quadric(5, 2), std::invalid_argument);
  EXPECT_THROW(quadric(4, 7, 1u << 30), std::invalid_argument);
  EXPECT_THROW(quadric(3, 7, 1000), BudgetExceeded);
  try {
    quadric(3, 7, 1000);
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), 17101u);
  }
}

TEST(Quadric, KernelExamples) {
  auto X = quadric(2, 3);
  auto K = X->kernel_operator();
  for (std::size_t y = 0; y < X->size(); ++y) EXPECT_EQ(K.kernel(X->zero_index(), y), CyclotomicNumber::rational(3, -1));
  const FieldPtr& f = X->field();
  auto e = [&](int a) { return FieldElement(f, Code(a)); };
  QuadricPoint x{{e(1), e(0)}, {e(0), e(1)}}, y{{e(0), e(1)}, {e(1), e(0)}};
  EXPECT_EQ(quadric_kernel(*X->ctx(), x, y), CyclotomicNumber::rational(3, 2));
  EXPECT_EQ(K.kernel(X->index_of(x), X->index_of(y)), CyclotomicNumber::rational(3, 2));
}

TEST(Quadric, TransformExamples) {
  auto X = quadric(2, 3);
  auto one = FunctionOnSet::constant(X->points(), CyclotomicNumber::one(3));
  EXPECT_EQ(fourier_raw(*X, one)[X->zero_index()], CyclotomicNumber::rational(3, -33));
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    std::size_t x = rng.below(X->size());
    auto out = fourier_raw(*X, FunctionOnSet::delta(X->points(), x));
    for (std::size_t y = 0; y < X->size(); y += 4) EXPECT_EQ(out[y], X->kernel_operator().kernel(x, y));
  }
}

TEST(Quadric, SpecialProjectorExamples) {
  auto X = quadric(2, 3);
  EXPECT_TRUE(project_special(*X, FunctionOnSet::delta(X->points(), X->zero_index())).is_zero());
  EXPECT_TRUE(project_special(*X, FunctionOnSet::constant(X->points(), CyclotomicNumber::one(3))).is_zero());
  const std::size_t x = 5;
  auto expected = FunctionOnSet::delta(X->points(), x);
  for (Code l = 1; l < 3; ++l) expected -= FunctionOnSet::delta(X->points(), X->scaled(x, l)).scaled(BigRational(1, 2));
  EXPECT_EQ(project_special(*X, FunctionOnSet::delta(X->points(), x)), expected);
  EXPECT_TRUE(is_special(*X, expected));
  EXPECT_FALSE(is_special(*X, FunctionOnSet::delta(X->points(), x)));
}

TEST(Quadric, InversionOnEverySpecialGeneratorAtD2Q3) {
  auto X = quadric(2, 3);
  auto F = X->kernel_operator();
  for (std::size_t x = 0; x < X->size(); ++x) {
    auto g = project_special(*X, FunctionOnSet::delta(X->points(), x));
    EXPECT_EQ(F.apply(F.apply(g)), g.scaled(81)) << "x = " << x;
  }
}

TEST(Quadric, InversionFailsOffTheSpecialSpace) {
  auto X = quadric(2, 3);
  auto F = X->kernel_operator();
  auto d0 = FunctionOnSet::delta(X->points(), X->zero_index());
  EXPECT_NE(F.apply(F.apply(d0)), d0.scaled(81));
}

TEST(Quadric, InversionHoldsOnSeededSpecialCombinations) {
  for (int q : {4, 5}) {
    auto X = quadric(2, q);
    Rng rng{std::uint64_t(q)};
    auto f = project_special(*X, random_function(X->points(), rng, 6));
    auto F = X->kernel_operator();
    EXPECT_EQ(F.apply(F.apply(f)), f.scaled(BigRational::power(q, 4))) << "q = " << q;
  }
}

TEST(Quadric, CaseFormulaRows) {
  EXPECT_EQ(case_sum_formula(Stratum::OriginBoth, 2, 3), BigRational(33));
  EXPECT_EQ(case_sum_formula(Stratum::EqualNonzero, 2, 3), BigRational(60));
  EXPECT_EQ(case_sum_formula(Stratum::ProportionalDistinct, 2, 3), BigRational(-21));
  EXPECT_EQ(case_sum_formula(Stratum::OneZero, 2, 3), BigRational(6));
  EXPECT_EQ(case_sum_formula(Stratum::NonPropOrthogonal, 2, 3), BigRational(6));
  EXPECT_EQ(case_sum_formula(Stratum::NonPropGeneric, 2, 3), BigRational(-3));
  EXPECT_EQ(case_sum_formula(Stratum::NonPropGeneric, 3, 5), BigRational(-25));
}

TEST(Quadric, ClassifierExamples) {
  auto X = quadric(2, 3);
  const std::size_t o = X->zero_index(), x = 5;
  EXPECT_EQ(classify_pair(*X, o, o), Stratum::OriginBoth);
  EXPECT_EQ(classify_pair(*X, x, x), Stratum::EqualNonzero);
  EXPECT_EQ(classify_pair(*X, x, X->scaled(x, 2)), Stratum::ProportionalDistinct);
  EXPECT_EQ(classify_pair(*X, x, o), Stratum::OneZero);
  EXPECT_EQ(classify_pair(*X, o, x), Stratum::OneZero);
}

TEST(Quadric, DoubleSumsMatchEveryRowAtD2Q3) {
  auto X = quadric(2, 3);
  Rng rng(0);
  for (const auto& r : check_casesfor(*X, true, 0, rng)) EXPECT_TRUE(r.pass) << r.name << ": " << r.details;
  EXPECT_EQ(double_kernel_sum(*X, X->zero_index(), X->zero_index()), CyclotomicNumber::rational(3, 33));
}

TEST(Quadric, DoubleSumsOnSampledPairsAtD3Q3) {
  auto X = quadric(3, 3);
  Rng rng(4);
  for (const auto& r : check_casesfor(*X, false, 40, rng)) EXPECT_TRUE(r.pass) << r.name << ": " << r.details;
}
