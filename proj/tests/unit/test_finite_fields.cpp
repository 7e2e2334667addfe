#include <gtest/gtest.h>

#include "parafourier/finite_field.hpp"

using namespace parafourier;

namespace {

FieldPtr field(int q) { return Field::make(FieldSpec::from_q(q)); }

FieldPtr field_any(int q) {
  try {
    return field(q);
  } catch (const std::invalid_argument&) {
    FieldSpec base = FieldSpec::from_q(q == 16 || q == 32 ? 2 : q == 25 ? 5 : q == 27 ? 3 : 7);
    int m = 0;
    for (int r = q; r > 1; r /= base.p()) ++m;
    return Field::make(FieldSpec(base.p(), m, FieldSpec::first_irreducible(base.p(), m)));
  }
}

FieldElement el(const FieldPtr& f, int code) { return FieldElement(f, Code(code)); }

}  // namespace

TEST(FiniteField, SmallArithmeticExamples) {
  auto f3 = field(3), f4 = field(4), f5 = field(5);
  EXPECT_EQ(el(f3, 2) + el(f3, 2), el(f3, 1));
  // alpha has code 2 in F_4 = F_2[x]/(x^2 + x + 1); alpha^2 = alpha + 1.
  EXPECT_EQ(el(f4, 2) * el(f4, 2), el(f4, 3));
  EXPECT_EQ(el(f3, 2).inverse(), el(f3, 2));
  EXPECT_EQ(el(f5, 2).inverse(), el(f5, 3));
  EXPECT_EQ(el(f4, 2).inverse(), el(f4, 3));
  EXPECT_EQ(el(f4, 2).trace(), el(f4, 1));
  EXPECT_EQ(el(f4, 1).trace(), el(f4, 0));
  for (int a = 0; a < 5; ++a) EXPECT_EQ(el(f5, a).trace(), el(f5, a));
}

TEST(FiniteField, EnumerationOrder) {
  auto f3 = enumerate_field(field(3));
  ASSERT_EQ(f3.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(f3[std::size_t(i)].code(), i);
  auto f4 = enumerate_field(field(4));
  EXPECT_EQ(f4[2].coeffs(), (std::vector<int>{0, 1}));
  EXPECT_EQ(f4[3].coeffs(), (std::vector<int>{1, 1}));
  auto u5 = enumerate_units(field(5));
  ASSERT_EQ(u5.size(), 4u);
  EXPECT_EQ(u5.front().code(), 1);
  EXPECT_EQ(u5.back().code(), 4);
}

TEST(FiniteField, ShippedDefaultModuli) {
  EXPECT_EQ(FieldSpec::from_q(4).modulus(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(FieldSpec::from_q(8).modulus(), (std::vector<int>{1, 1, 0, 1}));
  EXPECT_EQ(FieldSpec::from_q(9).modulus(), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(FieldSpec::from_q(7).m(), 1);
}

TEST(FiniteField, RejectsInvalidFields) {
  EXPECT_THROW(FieldSpec::from_q(6), std::invalid_argument);
  EXPECT_THROW(FieldSpec::from_q(1), std::invalid_argument);
  EXPECT_THROW(FieldSpec::from_q(64), std::invalid_argument);
  EXPECT_THROW(FieldSpec::from_q(53), std::invalid_argument);
  EXPECT_THROW(FieldSpec::from_q(16), std::invalid_argument);
  EXPECT_THROW(FieldSpec::from_q(4, {1, 0, 1}), std::invalid_argument);  // x^2 + 1 = (x + 1)^2 over F_2
  EXPECT_THROW(FieldSpec::from_q(9, {1, 0, 2}), std::invalid_argument);  // not monic after reduction
  EXPECT_NO_THROW(FieldSpec::from_q(16, {1, 1, 0, 0, 1}));
  EXPECT_THROW(FieldElement(field(3), 3), std::invalid_argument);
  EXPECT_THROW(el(field(3), 1) + el(field(5), 1), std::invalid_argument);
}

TEST(FiniteField, FirstIrreducibleIsIrreducible) {
  for (auto [p, m] : {std::pair{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}, {5, 2}, {7, 2}})
    EXPECT_TRUE(FieldSpec::is_irreducible(FieldSpec::first_irreducible(p, m), p)) << p << "^" << m;
}

class FieldAxioms : public ::testing::TestWithParam<int> {};

TEST_P(FieldAxioms, ExhaustiveAxiomsFrobeniusAndTrace) {
  auto f = field_any(GetParam());
  const int q = f->q();
  auto all = enumerate_field(f);
  const FieldElement zero = el(f, 0), one = el(f, 1);
  for (const auto& a : all) {
    EXPECT_EQ(a + zero, a);
    EXPECT_EQ(a * one, a);
    EXPECT_EQ(a + (-a), zero);
    EXPECT_EQ(a.pow(q), a);
    EXPECT_LT(a.trace().code(), f->p());
    if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), one);
    for (const auto& b : all) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a + b).trace(), a.trace() + b.trace());
      if (q <= 16)
        for (const auto& c : all) EXPECT_EQ(a * (b + c), a * b + a * c);
    }
  }
  int nonzero_trace = 0;
  for (const auto& a : all) nonzero_trace += a.trace().is_zero() ? 0 : 1;
  EXPECT_EQ(nonzero_trace, q - q / f->p());
}

INSTANTIATE_TEST_SUITE_P(Sizes, FieldAxioms, ::testing::Values(2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49));
