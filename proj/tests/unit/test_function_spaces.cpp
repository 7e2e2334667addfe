#include <gtest/gtest.h>

#include "parafourier/characters.hpp"
#include "parafourier/kernel_operator.hpp"
#include "parafourier/sampling.hpp"

using namespace parafourier;

namespace {

struct Fixture {
  ContextPtr ctx = CharacterContext::make(FieldSpec::from_q(5));
  SetPtr plane = full_space("F_5^2", ctx->field(), 2);
};

/// Naive dense evaluation straight from kernel entries.
FunctionOnSet naive_apply(const KernelOperator& op, const FunctionOnSet& f) {
  const int p = f.prime();
  std::vector<CyclotomicNumber> out(op.codomain()->size(), CyclotomicNumber::zero(p));
  for (std::size_t y = 0; y < out.size(); ++y)
    for (std::size_t x = 0; x < f.size(); ++x)
      if (!f[x].is_zero()) out[y] += f[x] * op.entry(x, y);
  return FunctionOnSet(op.codomain(), std::move(out));
}

/// psi(<x, y>) on F_5^2 with optional blocks by first coordinate.
KernelOperator dot_operator(const Fixture& fx, bool blocked, BigRational scale) {
  BilinearKernelSpec spec;
  spec.width = 2;
  spec.values = fx.ctx->psi_table();
  for (std::size_t i = 0; i < fx.plane->size(); ++i) {
    const Code* c = fx.plane->point(i);
    spec.left.insert(spec.left.end(), c, c + 2);
    spec.right.insert(spec.right.end(), c, c + 2);
    if (blocked) {
      spec.left_block.push_back(c[0] == 0 ? -1 : std::int32_t(c[0] % 2));
      spec.right_block.push_back(std::int32_t(c[1] % 2));
    }
  }
  return bilinear_kernel_operator(fx.plane, fx.plane, std::move(spec), std::move(scale), "dot");
}

}  // namespace

TEST(IndexedSet, FullSpaceOrderAndLookup) {
  Fixture fx;
  ASSERT_EQ(fx.plane->size(), 25u);
  EXPECT_EQ(fx.plane->decode(0), (std::vector<Code>{0, 0}));
  EXPECT_EQ(fx.plane->decode(7), (std::vector<Code>{1, 2}));
  for (std::size_t i = 0; i < fx.plane->size(); ++i) EXPECT_EQ(fx.plane->encode(fx.plane->decode(i)), i);
  auto sub = std::make_shared<const IndexedSet>("two points", fx.ctx->field(), 2, std::vector<Code>{3, 1, 0, 4});
  EXPECT_EQ(sub->decode(0), (std::vector<Code>{0, 4}));
  EXPECT_FALSE(sub->find(std::vector<Code>{1, 1}).has_value());
  EXPECT_THROW(sub->encode(std::vector<Code>{1, 1}), std::invalid_argument);
  EXPECT_THROW(IndexedSet("dup", fx.ctx->field(), 1, {2, 2}), std::invalid_argument);
}

TEST(FunctionOnSet, BasicConstructorsAndArithmetic) {
  Fixture fx;
  auto d = FunctionOnSet::delta(fx.plane, 3);
  EXPECT_EQ(d.support_size(), 1u);
  EXPECT_TRUE((d - d).is_zero());
  auto c = FunctionOnSet::constant(fx.plane, CyclotomicNumber::rational(5, 2));
  EXPECT_EQ((c + d)[3], CyclotomicNumber::rational(5, 3));
  EXPECT_EQ(c.scaled(BigRational(1, 2)), FunctionOnSet::constant(fx.plane, CyclotomicNumber::one(5)));
  auto other = full_space("F_5^2 copy", fx.ctx->field(), 2);
  EXPECT_THROW(d + FunctionOnSet::delta(other, 3), std::invalid_argument);
  EXPECT_THROW(FunctionOnSet(fx.plane, std::vector<CyclotomicNumber>(3, CyclotomicNumber::zero(5))), std::invalid_argument);
}

TEST(KernelOperator, ZeroDeltaAndIdentity) {
  Fixture fx;
  auto op = dot_operator(fx, false, BigRational(1, 5));
  EXPECT_TRUE(op.apply(FunctionOnSet::zero(fx.plane)).is_zero());
  for (std::size_t x : {0u, 6u, 24u}) {
    auto out = op.apply(FunctionOnSet::delta(fx.plane, x));
    for (std::size_t y = 0; y < fx.plane->size(); ++y) EXPECT_EQ(out[y], op.kernel(x, y).scaled(BigRational(1, 5)));
  }
  Rng rng(3);
  auto f = random_function(fx.plane, rng);
  EXPECT_EQ(identity_operator(fx.plane).apply(f), f);
}

TEST(KernelOperator, BilinearMatchesNaiveSumsOnSeededFunctions) {
  Fixture fx;
  Rng rng(17);
  for (bool blocked : {false, true}) {
    auto op = dot_operator(fx, blocked, BigRational(3, 7));
    for (int i = 0; i < 10; ++i) {
      auto f = random_function(fx.plane, rng, i % 2 ? 5 : 0);
      EXPECT_EQ(op.apply(f), naive_apply(op, f)) << "blocked = " << blocked;
    }
  }
}

TEST(KernelOperator, BlocksSilenceOffBlockEntries) {
  Fixture fx;
  auto op = dot_operator(fx, true, 1);
  for (std::size_t x = 0; x < fx.plane->size(); ++x)
    for (std::size_t y = 0; y < fx.plane->size(); ++y) {
      const Code *a = fx.plane->point(x), *b = fx.plane->point(y);
      bool live = a[0] != 0 && a[0] % 2 == b[1] % 2;
      if (!live) EXPECT_TRUE(op.kernel(x, y).is_zero());
      else EXPECT_EQ(op.kernel(x, y), fx.ctx->psi(fx.ctx->field()->add(fx.ctx->field()->mul(a[0], b[0]), fx.ctx->field()->mul(a[1], b[1]))));
    }
}

TEST(KernelOperator, CompositionModesAgreeWithSequentialApplication) {
  Fixture fx;
  Rng rng(5);
  auto a = dot_operator(fx, false, BigRational(1, 5));
  auto b = function_kernel_operator(fx.plane, fx.plane, [&](std::size_t x, std::size_t y) {
    return x + y == 24 ? CyclotomicNumber::rational(5, 2) : CyclotomicNumber::zero(5);
  });
  auto lazy = compose(a, b), dense = compose(a, b, CompositionMode::Materialized);
  for (int i = 0; i < 5; ++i) {
    auto f = random_function(fx.plane, rng);
    auto seq = a.apply(b.apply(f));
    EXPECT_EQ(lazy.apply(f), seq);
    EXPECT_EQ(dense.apply(f), seq);
  }
  // Fourier inversion on F_5^2: psi(<x, y>) then psi(-<y, z>), each scaled by 1/5.
  auto back = function_kernel_operator(fx.plane, fx.plane, [&](std::size_t x, std::size_t y) {
    const Field& f = *fx.ctx->field();
    const Code *u = fx.plane->point(x), *v = fx.plane->point(y);
    return fx.ctx->psi(f.neg(f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1]))));
  }, BigRational(1, 5));
  auto f = random_function(fx.plane, rng);
  EXPECT_EQ(back.apply(a.apply(f)), f);
}

TEST(KernelOperator, SparseCompositionStaysSparse) {
  Fixture fx;
  const Field& f = *fx.ctx->field();
  auto swap = pullback_operator(fx.plane, fx.plane, [&](std::size_t y) {
    const Code* c = fx.plane->point(y);
    return fx.plane->encode(std::vector<Code>{c[1], c[0]});
  });
  auto neg = pullback_operator(fx.plane, fx.plane, [&](std::size_t y) {
    const Code* c = fx.plane->point(y);
    return fx.plane->encode(std::vector<Code>{f.neg(c[0]), c[1]});
  });
  auto both = compose(swap, neg, CompositionMode::Materialized);
  EXPECT_NE(dynamic_cast<const detail::SparseImpl*>(&both.impl()), nullptr);
  Rng rng(9);
  auto g = random_function(fx.plane, rng);
  EXPECT_EQ(both.apply(g), swap.apply(neg.apply(g)));
  EXPECT_EQ(compose(swap, swap, CompositionMode::Materialized).apply(g), g);
}

TEST(AveragingProjector, ScalingOrbits) {
  Fixture fx;
  const Field& f = *fx.ctx->field();
  auto orbit = [&](std::size_t x) {
    std::vector<std::size_t> o;
    const Code* c = fx.plane->point(x);
    for (Code l = 1; l < 5; ++l) o.push_back(fx.plane->encode(std::vector<Code>{f.mul(l, c[0]), f.mul(l, c[1])}));
    return o;
  };
  auto P = group_averaging_projector(fx.plane, orbit);
  EXPECT_TRUE(P.apply(FunctionOnSet::constant(fx.plane, CyclotomicNumber::one(5))).is_zero());
  EXPECT_TRUE(P.apply(FunctionOnSet::delta(fx.plane, 0)).is_zero());
  const std::size_t x = fx.plane->encode(std::vector<Code>{1, 2});
  auto expected = FunctionOnSet::delta(fx.plane, x);
  for (auto y : orbit(x)) expected -= FunctionOnSet::delta(fx.plane, y).scaled(BigRational(1, 4));
  EXPECT_EQ(P.apply(FunctionOnSet::delta(fx.plane, x)), expected);
  Rng rng(21);
  auto g = random_function(fx.plane, rng);
  EXPECT_EQ(P.apply(P.apply(g)), P.apply(g));
  EXPECT_THROW(group_averaging_projector(fx.plane, [](std::size_t) { return std::vector<std::size_t>{}; }), std::invalid_argument);
}

TEST(KernelOperator, RejectsMismatchedShapes) {
  Fixture fx;
  auto other = full_space("F_5^3", fx.ctx->field(), 3);
  EXPECT_THROW(compose(identity_operator(fx.plane), identity_operator(other)), std::invalid_argument);
  EXPECT_THROW(identity_operator(fx.plane).apply(FunctionOnSet::zero(other)), std::invalid_argument);
}
