#include <gtest/gtest.h>

#include "parafourier/sampling.hpp"
#include "parafourier/sl3.hpp"
#include "parafourier/suites.hpp"

using namespace parafourier;

namespace {

ContextPtr context(int q) { return CharacterContext::make(FieldSpec::from_q(q)); }

Vec3 vec(const FieldPtr& f, int a, int b, int c) { return {FieldElement(f, Code(a)), FieldElement(f, Code(b)), FieldElement(f, Code(c))}; }

/// One case per field size, built once.
const Sl3Case& sl3(int q) {
  static std::map<int, std::unique_ptr<Sl3Case>> cache;
  auto& c = cache[q];
  if (!c) c = std::make_unique<Sl3Case>(context(q));
  return *c;
}

}  // namespace

TEST(Sl3, VectorHelpers) {
  auto f = Field::make(FieldSpec::from_q(5));
  EXPECT_EQ(cross(vec(f, 1, 0, 0), vec(f, 0, 1, 0)), vec(f, 0, 0, 1));
  EXPECT_EQ(ratio(vec(f, 0, 0, 2), vec(f, 0, 0, 1)), FieldElement(f, 2));
  EXPECT_EQ(ratio(vec(f, 0, 0, 0), vec(f, 3, 1, 0)), FieldElement(f, 0));
  EXPECT_EQ(ratio(vec(f, 1, 2, 0), vec(f, 3, 1, 0)), FieldElement(f, 2));
  EXPECT_THROW(ratio(vec(f, 1, 0, 0), vec(f, 0, 0, 0)), std::domain_error);
  EXPECT_THROW(ratio(vec(f, 1, 1, 0), vec(f, 1, 2, 0)), std::domain_error);
}

TEST(Sl3, ModelsOfIdentity) {
  auto f = Field::make(FieldSpec::from_q(3));
  RectMatrix I = RectMatrix::identity(f, 3);
  QuadricPoint x = sl3_model(I);
  EXPECT_EQ(x.u, vec(f, 1, 0, 0));
  EXPECT_EQ(x.u_dual, vec(f, 0, 0, 1));
  WangMonoidA2 w = slipper_sl3(x, sl3_model_op(I));
  EXPECT_TRUE(w.A.is_one());
  EXPECT_TRUE(w.B.is_one());
  QuadricPoint zero{vec(f, 0, 0, 0), vec(f, 0, 0, 0)};
  WangMonoidA2 z = slipper_sl3(zero, x);
  EXPECT_TRUE(z.A.is_zero() && z.B.is_zero());
  EXPECT_THROW(sl3_model(I.scaled(2)), std::invalid_argument);
}

TEST(Sl3, SlipperOfMatchingModelsIsIdentityElement) {
  auto f = Field::make(FieldSpec::from_q(7));
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    RectMatrix g = RectMatrix::random_special_linear(f, 3, rng);
    WangMonoidA2 w = slipper_sl3(sl3_model(g), sl3_model_op(g));
    EXPECT_TRUE(w.A.is_one() && w.B.is_one());
  }
}

TEST(Sl3, WeylWords) {
  EXPECT_EQ(parse_weyl_word("s1s2s1"), (std::vector<WeylLetter>{WeylLetter::S1, WeylLetter::S2, WeylLetter::S1}));
  EXPECT_EQ(parse_weyl_word("1 2"), (std::vector<WeylLetter>{WeylLetter::S1, WeylLetter::S2}));
  EXPECT_TRUE(parse_weyl_word("").empty());
  EXPECT_THROW(parse_weyl_word("s3"), std::invalid_argument);
  const Sl3Case& c = sl3(4);
  Rng rng(1);
  auto f = c.project_sprime(random_function(c.set(), rng, 20));
  EXPECT_EQ(c.weyl_action("", f), f);
  EXPECT_EQ(c.weyl_action("s1s1", f), f);
  EXPECT_EQ(c.weyl_action("121", f), c.weyl_action("212", f));
}

TEST(Sl3, ZeroInputsAndFlatRows) {
  const Sl3Case& c = sl3(3);
  auto zero = FunctionOnSet::zero(c.set());
  EXPECT_TRUE(c.bk_vec(zero).is_zero());
  EXPECT_TRUE(c.bk_covec(zero).is_zero());
  const std::size_t o = c.quadric().zero_index();
  EXPECT_TRUE(c.project_sprime(FunctionOnSet::delta(c.set(), o)).is_zero());
  auto row = c.kloosterman(FunctionOnSet::delta(c.set(), o));
  for (std::size_t y = 0; y < c.set()->size(); ++y) EXPECT_EQ(row[y], CyclotomicNumber::rational(3, BigRational(-1, 27)));
}

TEST(Sl3, RestrictedSpaceDimension) {
  EXPECT_EQ(sl3(3).sprime_dimension(), 0);
  EXPECT_EQ(sl3(4).sprime_dimension(), 210);
  EXPECT_EQ(sl3_free_orbits(sl3(4)), 105);
}

TEST(Sl3, GateRejectsFunctionsOutsideRestrictedSpace) {
  const Sl3Case& c = sl3(4);
  std::size_t x = 0;
  while (c.quadric().u_is_zero(x) || c.quadric().u_dual_is_zero(x)) ++x;
  EXPECT_THROW(c.bk_vec(FunctionOnSet::delta(c.set(), x)), std::invalid_argument);
  EXPECT_THROW(c.bk_covec(FunctionOnSet::delta(c.set(), x)), std::invalid_argument);
}

TEST(Sl3, RelationsOnEveryGeneratorOverF4) {
  const Sl3Case& c = sl3(4);
  std::vector<std::size_t> all(c.set()->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto gens = sprime_generators(c, all);
  EXPECT_EQ(gens.size(), 945u);
  for (const auto& r : sl3_relation_checks(c, gens, "all")) EXPECT_TRUE(r.pass) << r.name << ": " << r.details;
}

TEST(Sl3, RelationsHoldVacuouslyOverF3) {
  const Sl3Case& c = sl3(3);
  std::vector<std::size_t> all(c.set()->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_TRUE(sprime_generators(c, all).empty());
}

TEST(Sl3, EquivarianceOverF4) {
  const Sl3Case& c = sl3(4);
  const FieldPtr& f = c.ctx()->field();
  Rng rng(77);
  for (int i = 0; i < 5; ++i) {
    RectMatrix g = RectMatrix::random_special_linear(f, 3, rng), h = RectMatrix::random_special_linear(f, 3, rng);
    auto v = c.project_sprime(random_function(c.set(), rng, 6));
    EXPECT_EQ(c.act(g * h, v), c.act(g, c.act(h, v)));
    EXPECT_TRUE(c.in_sprime(c.act(g, v)));
    EXPECT_EQ(c.bk_vec(c.act(g, v)), c.act(g, c.bk_vec(v)));
    EXPECT_EQ(c.kloosterman(c.act(g, v)), c.act(g, c.kloosterman(v)));
  }
}

TEST(Sl3, SlotScalingTables) {
  const Sl3Case& c = sl3(5);
  const auto& X = c.quadric();
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    std::size_t x = rng.below(X.size());
    Code l = Code(1 + rng.below(4));
    QuadricPoint a = X.point(x), b = X.point(c.vec_scaled(x, l)), d = X.point(c.covec_scaled(x, l));
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(b.u[std::size_t(k)], FieldElement(X.field(), l) * a.u[std::size_t(k)]);
      EXPECT_EQ(b.u_dual[std::size_t(k)], a.u_dual[std::size_t(k)]);
      EXPECT_EQ(d.u_dual[std::size_t(k)], FieldElement(X.field(), l) * a.u_dual[std::size_t(k)]);
    }
  }
}
