#include <gtest/gtest.h>

#include <cmath>

#include "parafourier/characters.hpp"

using namespace parafourier;

namespace {

CyclotomicNumber cyc(int p, std::vector<BigRational> c) { return CyclotomicNumber(p, std::move(c)); }

ContextPtr context(int q) {
  if (q == 16) return CharacterContext::make(FieldSpec(2, 4, FieldSpec::first_irreducible(2, 4)));
  if (q == 25) return CharacterContext::make(FieldSpec(5, 2, FieldSpec::first_irreducible(5, 2)));
  if (q == 27) return CharacterContext::make(FieldSpec(3, 3, FieldSpec::first_irreducible(3, 3)));
  if (q == 32) return CharacterContext::make(FieldSpec(2, 5, FieldSpec::first_irreducible(2, 5)));
  if (q == 49) return CharacterContext::make(FieldSpec(7, 2, FieldSpec::first_irreducible(7, 2)));
  return CharacterContext::make(FieldSpec::from_q(q));
}

}  // namespace

TEST(Psi, Examples) {
  auto c3 = context(3), c4 = context(4);
  EXPECT_EQ(c3->psi(0), CyclotomicNumber::one(3));
  EXPECT_EQ(c3->psi(2), cyc(3, {-1, -1}));
  EXPECT_EQ(c4->psi(2), CyclotomicNumber::rational(2, -1));
}

TEST(Kloosterman, SmallTablesMatchIndependentEnumeration) {
  // Tables computed outside this library by summing over units directly.
  auto c3 = context(3);
  EXPECT_EQ(c3->kl_table(), (std::vector<CyclotomicNumber>{cyc(3, {-1, 0}), cyc(3, {-1, 0}), cyc(3, {2, 0})}));
  auto c2 = context(2);
  EXPECT_EQ(c2->kl_table(), (std::vector<CyclotomicNumber>{cyc(2, {-1}), cyc(2, {1})}));
  auto c4 = context(4);
  EXPECT_EQ(c4->kl_table(), (std::vector<CyclotomicNumber>{cyc(2, {-1}), cyc(2, {3}), cyc(2, {-1}), cyc(2, {-1})}));
  auto c5 = context(5);
  EXPECT_EQ(c5->kl_table(), (std::vector<CyclotomicNumber>{cyc(5, {-1, 0, 0, 0}), cyc(5, {2, 0, 1, 1}), cyc(5, {0, 0, 2, 2}),
                                                           cyc(5, {-2, 0, -2, -2}), cyc(5, {1, 0, -1, -1})}));
  auto c7 = context(7);
  EXPECT_EQ(c7->kl(1), cyc(7, {-2, 0, -1, -2, -2, -1}));
  EXPECT_EQ(c7->kl(6), cyc(7, {2, 0, 2, 0, 0, 2}));
}

TEST(Kloosterman, MultiplierTwistsTheCharacter) {
  auto plain = context(5);
  auto twisted = CharacterContext::make(FieldSpec::from_q(5), 2);
  for (int x = 0; x < 5; ++x) EXPECT_EQ(twisted->psi(Code(x)), plain->psi(plain->field()->mul(2, Code(x))));
  EXPECT_THROW(CharacterContext::make(FieldSpec::from_q(5), 0), std::invalid_argument);
}

class CharacterSums : public ::testing::TestWithParam<int> {};

TEST_P(CharacterSums, OrthogonalityAdditivityAndKloostermanIdentities) {
  auto ctx = context(GetParam());
  const int q = ctx->q(), p = ctx->p();
  const Field& f = *ctx->field();
  CyclotomicNumber psum = CyclotomicNumber::zero(p), klsum = CyclotomicNumber::zero(p);
  for (int x = 0; x < q; ++x) {
    psum += ctx->psi(Code(x));
    klsum += ctx->kl(Code(x));
    EXPECT_EQ(ctx->kl(Code(x)).conj(), ctx->kl(Code(x)));
    EXPECT_LE(std::abs(ctx->kl(Code(x)).to_complex()), 2 * std::sqrt(double(q)) + 1e-6);
    EXPECT_EQ(kloosterman(*ctx, FieldElement(ctx->field(), Code(x))), ctx->kl(Code(x)));
    for (int y = 0; y < q; y += 3) EXPECT_EQ(ctx->psi(f.add(Code(x), Code(y))), ctx->psi(Code(x)) * ctx->psi(Code(y)));
  }
  EXPECT_TRUE(psum.is_zero());
  EXPECT_TRUE(klsum.is_zero());
  EXPECT_EQ(ctx->kl(0), CyclotomicNumber::rational(p, -1));
}

INSTANTIATE_TEST_SUITE_P(Sizes, CharacterSums, ::testing::Values(2, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49));
