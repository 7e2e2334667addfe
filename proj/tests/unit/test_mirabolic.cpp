#include <gtest/gtest.h>

#include "parafourier/mirabolic.hpp"
#include "parafourier/sampling.hpp"
#include "parafourier/suites.hpp"

using namespace parafourier;

namespace {

MirabolicSpaces spaces(int q, int n) { return MirabolicSpaces(CharacterContext::make(FieldSpec::from_q(q)), n); }

std::vector<std::size_t> all(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(Mirabolic, SlipperExamples) {
  auto f = Field::make(FieldSpec::from_q(3));
  RectMatrix N = RectMatrix::from_ints(f, 2, 3, {1, 2, 0, 0, 1, 1});
  EXPECT_EQ(slipper_mirabolic(RectMatrix(f, 3, 2), N).element, RectMatrix(f, 2, 2));
  auto one = slipper_mirabolic(RectMatrix::from_ints(f, 2, 1, {1, 0}), RectMatrix::from_ints(f, 1, 2, {1, 0}));
  EXPECT_EQ(one.element, RectMatrix::identity(f, 1));
  EXPECT_THROW(slipper_mirabolic(RectMatrix(f, 3, 2), RectMatrix(f, 1, 2)), std::invalid_argument);
}

TEST(Mirabolic, TransformOfZeroDeltaIsFlat) {
  for (auto [q, n, den] : {std::tuple{3, 2, 3}, {3, 3, 27}, {5, 2, 5}}) {
    auto s = spaces(q, n);
    auto out = mirabolic_fourier(s, FunctionOnSet::delta(s.domain(), 0));
    for (std::size_t y = 0; y < s.codomain()->size(); ++y) EXPECT_EQ(out[y], CyclotomicNumber::rational(s.ctx()->p(), BigRational(1, den)));
  }
}

class MirabolicInversion : public ::testing::TestWithParam<int> {};

TEST_P(MirabolicInversion, BothRoundTripsOnEveryDeltaAtRankTwo) {
  auto s = spaces(GetParam(), 2);
  auto r = check_mirabolic_inversion(s, all(s.domain()->size()), all(s.codomain()->size()), "all");
  EXPECT_TRUE(r.pass) << r.details;
  EXPECT_TRUE(check_mirabolic_matches_sl2(s, Sl2Plane(s.ctx())).pass);
}

INSTANTIATE_TEST_SUITE_P(Sizes, MirabolicInversion, ::testing::Values(2, 3, 4, 5, 7));

TEST(Mirabolic, SampledInversionAtRankThree) {
  auto s = spaces(3, 3);
  Rng rng(12);
  auto r = check_mirabolic_inversion(s, rng.sample_indices(729, 20), rng.sample_indices(729, 20), "sampled");
  EXPECT_TRUE(r.pass) << r.details;
}

TEST(Mirabolic, ModelsEquivarianceAndErrors) {
  auto s = spaces(3, 3);
  const FieldPtr& f = s.ctx()->field();
  Rng rng(6);
  for (int i = 0; i < 8; ++i) {
    RectMatrix g = RectMatrix::random_special_linear(f, 3, rng), m = RectMatrix::random_invertible(f, 2, rng);
    auto v = random_function(s.domain(), rng, 5);
    EXPECT_EQ(mirabolic_fourier(s, mirabolic_action(s, g, m, v)), s.act_op(g, m, mirabolic_fourier(s, v)));
    EXPECT_EQ(slipper_mirabolic(s.model(g), s.model_op(g)).element, RectMatrix::identity(f, 2));
  }
  RectMatrix singular = RectMatrix::from_ints(f, 2, 2, {1, 1, 1, 1});
  EXPECT_THROW(s.act(RectMatrix::identity(f, 3), singular, FunctionOnSet::zero(s.domain())), std::domain_error);
  RectMatrix twice = RectMatrix::identity(f, 3).scaled(2);
  EXPECT_THROW(s.model(twice), std::invalid_argument);
  EXPECT_THROW(spaces(7, 3), BudgetExceeded);
}
