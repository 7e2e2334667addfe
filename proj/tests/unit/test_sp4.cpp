#include <gtest/gtest.h>

#include "parafourier/sampling.hpp"
#include "parafourier/sp4.hpp"
#include "parafourier/suites.hpp"

using namespace parafourier;

namespace {

ContextPtr context(int q) { return CharacterContext::make(FieldSpec::from_q(q)); }

Vec4 unit(const FieldPtr& f, int k) {
  Vec4 e(4, FieldElement(f, 0));
  e[std::size_t(k)] = FieldElement(f, 1);
  return e;
}

}  // namespace

TEST(Sp4, FormExamples) {
  auto f = Field::make(FieldSpec::from_q(5));
  EXPECT_TRUE(omega(unit(f, 0), unit(f, 3)).is_one());
  EXPECT_EQ(omega(unit(f, 1), unit(f, 2)), FieldElement(f, 4));
  EXPECT_TRUE(is_symplectic(RectMatrix::identity(f, 4)));
  EXPECT_FALSE(is_symplectic(RectMatrix::identity(f, 4).scaled(2)));
  EXPECT_EQ(embed_levi(RectMatrix::identity(f, 2)), RectMatrix::identity(f, 4));
}

TEST(Sp4, LeviEmbeddingIsSymplecticHomomorphism) {
  auto f = Field::make(FieldSpec::from_q(7));
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    RectMatrix a = RectMatrix::random_invertible(f, 2, rng), b = RectMatrix::random_invertible(f, 2, rng);
    EXPECT_TRUE(is_symplectic(embed_levi(a)));
    EXPECT_EQ(embed_levi(a * b), embed_levi(a) * embed_levi(b));
  }
  EXPECT_THROW(levi_lower_block(RectMatrix::from_ints(f, 2, 2, {1, 2, 2, 4})), std::domain_error);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(is_symplectic(random_symplectic(f, rng)));
}

TEST(Sp4, ModelsOfIdentityAndSlipper) {
  auto f = Field::make(FieldSpec::from_q(3));
  RectMatrix I = RectMatrix::identity(f, 4);
  SiegelPoint x = siegel_model(I), y = siegel_model_op(I);
  EXPECT_EQ(x.v1, unit(f, 0));
  EXPECT_EQ(x.v2, unit(f, 1));
  EXPECT_EQ(y.v1, unit(f, 2));
  EXPECT_EQ(y.v2, unit(f, 3));
  // The pairing is minus the upper-left block of h^-1 g; at g = h = 1 that is -1.
  EXPECT_EQ(slipper_sp4(x, y), RectMatrix::identity(f, 2).scaled(2));
  EXPECT_EQ(slipper_block_oracle(I, I), RectMatrix::identity(f, 2));
  SiegelPoint zero{Vec4(4, FieldElement(f, 0)), Vec4(4, FieldElement(f, 0))};
  EXPECT_EQ(slipper_sp4(zero, y), RectMatrix(f, 2, 2));
}

TEST(Sp4, SlipperAgreesWithMatrixOracleUpToSign) {
  auto f = Field::make(FieldSpec::from_q(5));
  Rng rng(10);
  for (int i = 0; i < 30; ++i) {
    RectMatrix g = random_symplectic(f, rng), h = random_symplectic(f, rng);
    SiegelPoint x = siegel_model(g), y = siegel_model_op(h);
    RectMatrix block = slipper_block_oracle(g, h);
    EXPECT_EQ(slipper_sp4(x, y), block.scaled(4));
    EXPECT_EQ(block.element(0, 0) + block.element(1, 1), sp4_kernel_argument(x, y));
  }
}

TEST(Sp4, QuadricCoordinates) {
  auto f = Field::make(FieldSpec::from_q(3));
  QuadricPoint x = to_quadric_coords({unit(f, 0), unit(f, 1)});
  EXPECT_EQ(x.u, unit(f, 0));
  // u_dual_j = omega(e_j, e2): only omega(e3, e2) = 1 survives.
  EXPECT_EQ(x.u_dual, unit(f, 2));
  EXPECT_TRUE(dot(x.u, x.u_dual).is_zero());
  QuadricPoint z = to_quadric_coords({Vec4(4, FieldElement(f, 0)), Vec4(4, FieldElement(f, 0))});
  EXPECT_EQ(z.u_dual, Vec4(4, FieldElement(f, 0)));
}

TEST(Sp4, TransformOfOriginDelta) {
  SiegelCase s(context(3));
  EXPECT_EQ(s.set()->size(), 2241u);
  auto out = sp4_fourier(s, FunctionOnSet::delta(s.set(), 0));
  for (std::size_t y = 0; y < s.set()->size(); y += 7) EXPECT_EQ(out[y], CyclotomicNumber::rational(3, BigRational(-1, 81)));
}

TEST(Sp4, KernelEqualityAndInvolution) {
  for (int q : {2, 3}) {
    auto ctx = context(q);
    SiegelCase s(ctx);
    auto quad = enumerate_quadric(4, ctx);
    Rng rng{std::uint64_t(q)};
    auto k = check_sp4_kernel_equality(s, *quad, rng, 0);
    EXPECT_TRUE(k.pass) << k.details;
    auto inv = check_sp4_involution(s, *quad, rng, 10);
    EXPECT_TRUE(inv.pass) << inv.details;
  }
}

TEST(Sp4, Equivariance) {
  SiegelCase s(context(3));
  const FieldPtr& f = s.ctx()->field();
  Rng rng(5);
  for (int i = 0; i < 3; ++i) {
    RectMatrix g = random_symplectic(f, rng), m = RectMatrix::random_invertible(f, 2, rng);
    auto v = random_function(s.set(), rng, 3);
    EXPECT_EQ(sp4_fourier(s, s.act(g, m, v)), s.act_op(g, m, sp4_fourier(s, v)));
  }
}

TEST(Sp4, FieldCap) { EXPECT_THROW(SiegelCase(context(7)), std::invalid_argument); }
