#include <gtest/gtest.h>

#include "parafourier/sampling.hpp"
#include "parafourier/sl2.hpp"
#include "parafourier/suites.hpp"

using namespace parafourier;

namespace {

Sl2Plane plane(int q) { return Sl2Plane(CharacterContext::make(FieldSpec::from_q(q))); }

}  // namespace

TEST(Sl2, TransformOfOriginDeltaIsFlat) {
  auto P = plane(5);
  auto out = sl2_fourier(P, FunctionOnSet::delta(P.set(), P.index_of({FieldElement(P.ctx()->field(), 0), FieldElement(P.ctx()->field(), 0)})));
  for (std::size_t y = 0; y < P.set()->size(); ++y) EXPECT_EQ(out[y], CyclotomicNumber::rational(5, BigRational(1, 5)));
}

TEST(Sl2, TransformOfConstantIsScaledOriginDelta) {
  auto P = plane(3);
  auto out = sl2_fourier(P, FunctionOnSet::constant(P.set(), CyclotomicNumber::one(3)));
  EXPECT_EQ(out, FunctionOnSet::delta(P.set(), 0).scaled(3));
}

class Sl2Involution : public ::testing::TestWithParam<int> {};

TEST_P(Sl2Involution, SquareIsIdentityOnEveryDelta) {
  auto P = plane(GetParam());
  EXPECT_TRUE(check_sl2_involution(P).pass);
}

INSTANTIATE_TEST_SUITE_P(Sizes, Sl2Involution, ::testing::Values(2, 3, 4, 5, 7));

TEST(Sl2, PairingExamples) {
  auto f = Field::make(FieldSpec::from_q(7));
  auto I = Matrix2::identity(f);
  EXPECT_TRUE(sl2_pairing(I, I).is_one());
  for (const auto& t : enumerate_units(f)) EXPECT_EQ(sl2_pairing(I, Matrix2::diag(t)), t.inverse());
  Matrix2 bad{{f, 2}, {f, 0}, {f, 0}, {f, 1}};
  EXPECT_THROW(sl2_pairing(bad, I), std::invalid_argument);
}

TEST(Sl2, EquivarianceAndActionLaws) {
  for (int q : {3, 5}) {
    auto P = plane(q);
    Rng rng(std::uint64_t(q) * 31);
    EXPECT_TRUE(check_sl2_equivariance(P, rng, 10).pass);
    const FieldPtr& f = P.ctx()->field();
    for (int i = 0; i < 10; ++i) {
      Matrix2 g = Matrix2::random_sl2(f, rng), h = Matrix2::random_sl2(f, rng);
      auto v = random_function(P.set(), rng);
      EXPECT_EQ(P.act(g * h, v), P.act(g, P.act(h, v)));
      EXPECT_EQ(P.act(Matrix2::identity(f), v), v);
      EXPECT_TRUE((g * g.unimodular_inverse()).det().is_one());
    }
  }
}

TEST(Sl2, KernelIsPsiOfPairingBetweenModels) {
  auto P = plane(5);
  Rng rng(2);
  const FieldPtr& f = P.ctx()->field();
  for (int i = 0; i < 30; ++i) {
    Matrix2 g = Matrix2::random_sl2(f, rng), h = Matrix2::random_sl2(f, rng);
    EXPECT_EQ(P.fourier_operator().kernel(P.index_of({g.a, g.c}), P.index_of({h.b, h.d})), psi(*P.ctx(), sl2_pairing(g, h)));
  }
}

TEST(Sl2, TorusScalingCovariance) {
  auto P = plane(7);
  Rng rng(8);
  auto v = random_function(P.set(), rng);
  for (const auto& t : enumerate_units(P.ctx()->field()))
    EXPECT_EQ(sl2_fourier(P, torus_action(P, t, v)), torus_action(P, t.inverse(), sl2_fourier(P, v)));
}
