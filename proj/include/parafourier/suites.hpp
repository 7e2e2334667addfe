#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parafourier/characters.hpp"
#include "parafourier/mirabolic.hpp"
#include "parafourier/quadric.hpp"
#include "parafourier/report.hpp"
#include "parafourier/sampling.hpp"
#include "parafourier/sl2.hpp"
#include "parafourier/sl3.hpp"
#include "parafourier/sp4.hpp"

namespace parafourier {

/// Knobs shared by every suite. Unset values fall back to per-suite defaults.
struct SuiteOptions {
  FieldSpec field = FieldSpec::prime_field(3);
  std::optional<int> d;
  std::optional<int> n;
  int samples = 25;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultBudget;
};

/// Sets up to this size are checked exhaustively instead of sampled.
inline constexpr std::size_t kExhaustiveGenerators = 1000;
inline constexpr std::size_t kExhaustiveSprime = 5000;
inline constexpr double kExhaustivePairs = 2.5e7;
inline constexpr double kExhaustiveCasePairs = 2e5;

namespace suite_detail {

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

/// Runs a check body; ordinary exceptions become failures, budget errors propagate.
inline CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const std::exception& e) {
    return {name, false, cat("exception: ", e.what())};
  }
}

inline CheckResult verdict(bool ok, std::string details) { return {"", ok, std::move(details)}; }

/// First failing index as text, or the pass summary.
inline CheckResult count_verdict(std::size_t checked, std::size_t failed, const std::string& what, const std::string& first_bad) {
  if (failed == 0) return verdict(true, cat(checked, " ", what, ", all agree"));
  return verdict(false, cat(failed, " of ", checked, " ", what, " disagree; first at ", first_bad));
}

inline std::vector<std::size_t> pick_indices(std::size_t n, std::size_t threshold, std::size_t samples, Rng& rng, bool& exhaustive) {
  exhaustive = n <= threshold;
  if (exhaustive) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }
  auto idx = rng.sample_indices(n, samples);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace suite_detail

// ---------------------------------------------------------------- characters

inline std::vector<CheckResult> character_checks(const CharacterContext& ctx) {
  using namespace suite_detail;
  const int q = ctx.q(), p = ctx.p();
  const FieldPtr& f = ctx.field();
  std::vector<CheckResult> out;
  out.push_back(guarded("kl_zero_is_minus_one", [&] {
    return verdict(ctx.kl(0) == CyclotomicNumber::rational(p, -1), cat("Kl(0) = ", ctx.kl(0).to_string()));
  }));
  out.push_back(guarded("kl_sum_vanishes", [&] {
    CyclotomicNumber s = CyclotomicNumber::zero(p);
    for (int a = 0; a < q; ++a) s += ctx.kl(Code(a));
    return verdict(s.is_zero(), cat("sum over a of Kl(a) = ", s.to_string()));
  }));
  out.push_back(guarded("kl_conjugation_fixed", [&] {
    std::size_t bad = 0;
    for (int a = 0; a < q; ++a) bad += ctx.kl(Code(a)).conj() == ctx.kl(Code(a)) ? 0 : 1;
    return verdict(bad == 0, cat(q - int(bad), " of ", q, " values fixed by complex conjugation"));
  }));
  out.push_back(guarded("kl_weil_bound", [&] {
    double worst = 0;
    for (int a = 0; a < q; ++a) worst = std::max(worst, std::abs(ctx.kl(Code(a)).to_complex()));
    const double bound = 2 * std::sqrt(double(q));
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |Kl(a)| = %.6f, 2 sqrt(q) = %.6f", worst, bound);
    return verdict(worst <= bound + 1e-6, buf);
  }));
  out.push_back(guarded("kl_table_matches_direct_sum", [&] {
    std::size_t bad = 0;
    for (const auto& a : enumerate_field(f)) bad += kloosterman(ctx, a) == ctx.kl(a.code()) ? 0 : 1;
    return verdict(bad == 0, cat(q - int(bad), " of ", q, " table entries equal the term-by-term sum"));
  }));
  out.push_back(guarded("psi_orthogonality", [&] {
    CyclotomicNumber s = sum_over_field(ctx, [&](const FieldElement& x) { return psi(ctx, x); });
    return verdict(s.is_zero(), cat("sum over x of psi(x) = ", s.to_string()));
  }));
  out.push_back(guarded("psi_additive", [&] {
    const int lim = q <= 25 ? q : 7;
    std::size_t bad = 0, n = 0;
    for (int x = 0; x < lim; ++x)
      for (int y = 0; y < q; ++y, ++n)
        bad += ctx.psi(f->add(Code(x), Code(y))) == ctx.psi(Code(x)) * ctx.psi(Code(y)) ? 0 : 1;
    return count_verdict(n, bad, "pairs psi(x + y) = psi(x) psi(y)", "");
  }));
  return out;
}

// ------------------------------------------------------------------- quadric

/// F^2 = q^{2d} on the special generators P delta_x, x from base_points; also
/// checks that each generator and its transform are special.
inline CheckResult check_quadric_inversion(const QuadricSet& X, const std::vector<std::size_t>& base_points, const std::string& mode) {
  using namespace suite_detail;
  const KernelOperator raw = X.kernel_operator();
  const KernelOperator proj = X.special_projector();
  const BigRational factor = BigRational::power(X.q(), 2 * X.d());
  std::size_t checked = 0, failed = 0, zero = 0;
  std::string first;
  for (auto x : base_points) {
    FunctionOnSet g = proj.apply(FunctionOnSet::delta(X.points(), x));
    if (g.is_zero()) {
      ++zero;
      continue;
    }
    ++checked;
    FunctionOnSet once = raw.apply(g);
    bool ok = is_special(X, once) && raw.apply(once) == g.scaled(factor);
    if (!ok && failed++ == 0) first = X.point(x).to_string();
  }
  auto r = count_verdict(checked, failed, cat(mode, " special generators (F^2 = q^", 2 * X.d(), ")"), first);
  r.details += cat("; ", zero, " base points give the zero generator");
  if (checked == 0) r = verdict(false, "no nonzero special generators");
  return r;
}

/// Pairs of one stratum: all of them, or a constructive sample.
inline std::vector<std::pair<std::size_t, std::size_t>> stratum_pairs(const QuadricSet& X, Stratum s, bool exhaustive,
                                                                      std::size_t count, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = X.size(), o = X.zero_index();
  const int q = X.q();
  if (exhaustive) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z)
        if (classify_pair(X, x, z) == s) out.emplace_back(x, z);
    return out;
  }
  auto nonzero = [&] {
    for (;;) {
      std::size_t x = std::size_t(rng.below(n));
      if (x != o) return x;
    }
  };
  if (s == Stratum::OriginBoth) return {{o, o}};
  if (s == Stratum::ProportionalDistinct && q == 2) return out;
  for (std::size_t k = 0, guard = 0; k < count && guard < 1000 * count; ++guard) {
    std::size_t x = nonzero(), z = 0;
    switch (s) {
      case Stratum::EqualNonzero: z = x; break;
      case Stratum::ProportionalDistinct: z = X.scaled(x, Code(2 + rng.below(std::uint64_t(q - 2)))); break;
      case Stratum::OneZero:
        z = o;
        if (rng.below(2)) std::swap(x, z);
        break;
      default: z = nonzero(); break;
    }
    if (classify_pair(X, x, z) != s) continue;
    out.emplace_back(x, z);
    ++k;
  }
  return out;
}

/// Brute-force double kernel sums against the closed form, one check per stratum.
inline std::vector<CheckResult> check_casesfor(const QuadricSet& X, bool exhaustive, std::size_t per_stratum, Rng& rng) {
  using namespace suite_detail;
  std::vector<CheckResult> out;
  for (Stratum s : kAllStrata) {
    out.push_back(guarded(cat("casesfor/", stratum_name(s)), [&] {
      BigRational formula = case_sum_formula(s, X.d(), X.q());
      auto pairs = stratum_pairs(X, s, exhaustive, per_stratum, rng);
      if (pairs.empty()) return verdict(true, cat("stratum is empty over F_", X.q()));
      std::size_t bad = 0;
      std::string first;
      CyclotomicNumber want = CyclotomicNumber::rational(X.ctx()->p(), formula);
      for (auto [x, z] : pairs) {
        CyclotomicNumber got = double_kernel_sum(X, x, z);
        if (!(got == want) && bad++ == 0) first = got.to_string();
      }
      auto r = count_verdict(pairs.size(), bad, cat(exhaustive ? "(all) " : "(sampled) ", "pairs vs formula ", formula.to_string()),
                             first);
      return r;
    }));
  }
  return out;
}

inline SuiteReport run_quadric_suite(const SuiteOptions& o) {
  using namespace suite_detail;
  SuiteReport rep;
  rep.suite = "quadric";
  rep.field = o.field;
  const int d = o.d.value_or(2);
  rep.parameters = {{"d", d}, {"samples", o.samples}, {"seed", o.seed}, {"budget", o.budget}};
  auto ctx = CharacterContext::make(o.field);
  auto X = enumerate_quadric(d, ctx, o.budget);
  Rng rng(o.seed);
  const int q = ctx->q();
  rep.checks.push_back(guarded("point_count", [&] {
    std::size_t want = QuadricSet::expected_count(d, q);
    return verdict(X->size() == want, cat("|X| = ", X->size(), ", q^(2d-1) + q^d - q^(d-1) = ", want));
  }));
  rep.checks.push_back(guarded("kl_inversion", [&] {
    bool exhaustive = false;
    auto pts = pick_indices(X->size(), kExhaustiveGenerators, std::size_t(o.samples), rng, exhaustive);
    return check_quadric_inversion(*X, pts, exhaustive ? "all" : "sampled");
  }));
  rep.checks.push_back(guarded("delta_origin_row", [&] {
    FunctionOnSet out = fourier_normalized(*X, FunctionOnSet::delta(X->points(), X->zero_index()));
    CyclotomicNumber want = CyclotomicNumber::rational(ctx->p(), -BigRational::power(q, -d));
    bool ok = std::all_of(out.values().begin(), out.values().end(), [&](const CyclotomicNumber& v) { return v == want; });
    return verdict(ok, cat("F(delta_0) is constant ", want.to_string()));
  }));
  const bool exhaustive_pairs = double(X->size()) * double(X->size()) <= kExhaustiveCasePairs;
  for (auto& c : check_casesfor(*X, exhaustive_pairs, std::size_t(std::max(o.samples, 200)), rng)) rep.checks.push_back(c);
  return rep;
}

// ----------------------------------------------------------------------- SL2

inline CheckResult check_sl2_involution(const Sl2Plane& plane) {
  const auto& F = plane.fourier_operator();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < plane.set()->size(); ++i) {
    FunctionOnSet d = FunctionOnSet::delta(plane.set(), i);
    bad += F.apply(F.apply(d)) == d ? 0 : 1;
  }
  return suite_detail::count_verdict(plane.set()->size(), bad, "deltas with F^2 = id", "");
}

inline CheckResult check_sl2_equivariance(const Sl2Plane& plane, Rng& rng, int count) {
  std::size_t bad = 0;
  for (int i = 0; i < count; ++i) {
    Matrix2 g = Matrix2::random_sl2(plane.ctx()->field(), rng);
    FunctionOnSet f = random_function(plane.set(), rng);
    bad += sl2_fourier(plane, plane.act(g, f)) == plane.act(g, sl2_fourier(plane, f)) ? 0 : 1;
  }
  return suite_detail::count_verdict(std::size_t(count), bad, "random (g, f) with F(g f) = g F(f)", "");
}

inline SuiteReport run_sl2_suite(const SuiteOptions& o) {
  using namespace suite_detail;
  SuiteReport rep;
  rep.suite = "sl2";
  rep.field = o.field;
  rep.parameters = {{"samples", o.samples}, {"seed", o.seed}};
  auto ctx = CharacterContext::make(o.field);
  Sl2Plane plane(ctx);
  Rng rng(o.seed);
  const FieldPtr& f = ctx->field();
  const int count = std::max(o.samples, 10);
  rep.checks.push_back(guarded("involution_all_deltas", [&] { return check_sl2_involution(plane); }));
  rep.checks.push_back(guarded("g_equivariance", [&] { return check_sl2_equivariance(plane, rng, count); }));
  rep.checks.push_back(guarded("action_composition", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      Matrix2 g = Matrix2::random_sl2(f, rng), h = Matrix2::random_sl2(f, rng);
      FunctionOnSet v = random_function(plane.set(), rng);
      bad += plane.act(g * h, v) == plane.act(g, plane.act(h, v)) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random (g, h, f) with (gh) f = g (h f)", "");
  }));
  rep.checks.push_back(guarded("pairing_diagonal_is_one", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      Matrix2 g = Matrix2::random_sl2(f, rng);
      bad += sl2_pairing(g, g).is_one() ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random g with pairing(g, g) = 1", "");
  }));
  rep.checks.push_back(guarded("kernel_factors_through_pairing", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      Matrix2 g = Matrix2::random_sl2(f, rng), h = Matrix2::random_sl2(f, rng);
      std::size_t x = plane.index_of({g.a, g.c}), y = plane.index_of({h.b, h.d});
      bad += plane.fourier_operator().kernel(x, y) == psi(*ctx, sl2_pairing(g, h)) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random (g, h) with kernel = psi(pairing)", "");
  }));
  rep.checks.push_back(guarded("torus_covariance", [&] {
    std::size_t bad = 0;
    FunctionOnSet v = random_function(plane.set(), rng);
    for (const auto& t : enumerate_units(f))
      bad += sl2_fourier(plane, plane.torus_act(t, v)) == plane.torus_act(t.inverse(), sl2_fourier(plane, v)) ? 0 : 1;
    return count_verdict(std::size_t(ctx->q() - 1), bad, "units t with F(f(t .)) = F(f)(. / t)", "");
  }));
  return rep;
}

// ----------------------------------------------------------------- mirabolic

/// F_op F = id on domain deltas and F F_op = id on codomain deltas.
inline CheckResult check_mirabolic_inversion(const MirabolicSpaces& s, const std::vector<std::size_t>& domain_pts,
                                             const std::vector<std::size_t>& codomain_pts, const std::string& mode) {
  std::size_t bad = 0;
  for (auto i : domain_pts) {
    FunctionOnSet d = FunctionOnSet::delta(s.domain(), i);
    bad += s.reverse().apply(s.forward().apply(d)) == d ? 0 : 1;
  }
  for (auto i : codomain_pts) {
    FunctionOnSet d = FunctionOnSet::delta(s.codomain(), i);
    bad += s.forward().apply(s.reverse().apply(d)) == d ? 0 : 1;
  }
  return suite_detail::count_verdict(domain_pts.size() + codomain_pts.size(), bad, mode + " deltas returned by the round trip", "");
}

/// n = 2: the forward transform equals the SL2 transform with N = (d, -b).
inline CheckResult check_mirabolic_matches_sl2(const MirabolicSpaces& s, const Sl2Plane& plane) {
  if (s.n() != 2) throw std::invalid_argument("SL2 comparison needs n = 2");
  const FieldPtr& f = s.ctx()->field();
  std::size_t bad = 0, n = 0;
  for (std::size_t x = 0; x < plane.set()->size(); ++x)
    for (std::size_t y = 0; y < plane.set()->size(); ++y, ++n) {
      PlanePoint bd = plane.point(y);
      RectMatrix N(f, 1, 2, {bd.c.code(), (-bd.a).code()});
      bad += s.forward().entry(x, s.index_n(N)) == plane.fourier_operator().entry(x, y) ? 0 : 1;
    }
  return suite_detail::count_verdict(n, bad, "kernel entries matched against the SL2 transform", "");
}

inline SuiteReport run_mirabolic_suite(const SuiteOptions& o) {
  using namespace suite_detail;
  SuiteReport rep;
  rep.suite = "mirabolic";
  rep.field = o.field;
  const int n = o.n.value_or(2);
  rep.parameters = {{"n", n}, {"samples", o.samples}, {"seed", o.seed}, {"budget", o.budget}};
  auto ctx = CharacterContext::make(o.field);
  MirabolicSpaces s(ctx, n, o.budget);
  Rng rng(o.seed);
  const FieldPtr& f = ctx->field();
  const int count = std::max(o.samples, 10);
  rep.checks.push_back(guarded("inversion", [&] {
    bool exhaustive = false;
    const std::size_t want = std::size_t(std::max(o.samples, 20));
    auto dom = pick_indices(s.domain()->size(), 400, want, rng, exhaustive);
    auto cod = pick_indices(s.codomain()->size(), 400, want, rng, exhaustive);
    return check_mirabolic_inversion(s, dom, cod, exhaustive ? "all" : "sampled");
  }));
  if (n == 2)
    rep.checks.push_back(guarded("matches_sl2_transform", [&] { return check_mirabolic_matches_sl2(s, Sl2Plane(ctx)); }));
  rep.checks.push_back(guarded("g_m_equivariance", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, n, rng), m = RectMatrix::random_invertible(f, n - 1, rng);
      FunctionOnSet v = random_function(s.domain(), rng, std::min<std::size_t>(s.domain()->size(), 8));
      bad += mirabolic_fourier(s, s.act(g, m, v)) == s.act_op(g, m, mirabolic_fourier(s, v)) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random (g, m, f) with F((g, m) f) = (g, m) F(f)", "");
  }));
  rep.checks.push_back(guarded("action_composition", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g1 = RectMatrix::random_special_linear(f, n, rng), g2 = RectMatrix::random_special_linear(f, n, rng);
      RectMatrix m1 = RectMatrix::random_invertible(f, n - 1, rng), m2 = RectMatrix::random_invertible(f, n - 1, rng);
      FunctionOnSet v = random_function(s.domain(), rng);
      bad += s.act(g1 * g2, m1 * m2, v) == s.act(g1, m1, s.act(g2, m2, v)) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random pairs composing as a group action", "");
  }));
  rep.checks.push_back(guarded("slipper_diagonal_identity", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, n, rng);
      bad += slipper_mirabolic(s.model(g), s.model_op(g)).element == RectMatrix::identity(f, n - 1) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random g with N M = identity", "");
  }));
  rep.checks.push_back(guarded("slipper_scalar_levi", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, n, rng);
      Code c = Code(1 + rng.below(std::uint64_t(ctx->q() - 1)));
      RectMatrix M = s.model(g), N = s.model_op(g);
      bad += slipper_mirabolic(M * RectMatrix::identity(f, n - 1).scaled(c), N).element == slipper_mirabolic(M, N).element.scaled(c)
                 ? 0
                 : 1;
    }
    return count_verdict(std::size_t(count), bad, "scalar Levi elements scaling the pairing", "");
  }));
  return rep;
}

// ----------------------------------------------------------------------- SL3

/// The relation checks on a list of S' generators; one result per relation.
inline std::vector<CheckResult> sl3_relation_checks(const Sl3Case& c, const std::vector<FunctionOnSet>& gens, const std::string& mode) {
  using namespace suite_detail;
  const char* names[] = {"s1_squared_identity",     "s2_squared_identity",       "braid_relation",
                         "longest_equals_kloosterman", "triple_sum_equals_chain", "sprime_preserved"};
  std::size_t bad[6] = {0, 0, 0, 0, 0, 0};
  const KernelOperator &s1 = c.vec_operator(), &s2 = c.covec_operator();
  for (const auto& f : gens) {
    FunctionOnSet a = s1.apply(f), b = s2.apply(f);
    bad[5] += c.in_sprime(a) && c.in_sprime(b) ? 0 : 1;
    bad[0] += s1.apply(a) == f ? 0 : 1;
    bad[1] += s2.apply(b) == f ? 0 : 1;
    FunctionOnSet w121 = s1.apply(s2.apply(a));
    FunctionOnSet w212 = s2.apply(s1.apply(b));
    bad[2] += w121 == w212 ? 0 : 1;
    bad[3] += c.kloosterman(f) == w121 ? 0 : 1;
    bad[4] += c.composite_triple_sum(f) == w121 ? 0 : 1;
  }
  std::vector<CheckResult> out;
  for (int k = 0; k < 6; ++k) {
    CheckResult r = count_verdict(gens.size(), bad[k], mode + " S' generators", "");
    if (gens.empty()) r = verdict(true, "S' is zero over F_" + std::to_string(c.q()) + "; relation holds vacuously");
    r.name = names[k];
    out.push_back(r);
  }
  return out;
}

/// Nonzero P' delta_x for the chosen base points.
inline std::vector<FunctionOnSet> sprime_generators(const Sl3Case& c, const std::vector<std::size_t>& base_points) {
  std::vector<FunctionOnSet> out;
  for (auto x : base_points) {
    FunctionOnSet g = c.project_sprime(FunctionOnSet::delta(c.set(), x));
    if (!g.is_zero()) out.push_back(std::move(g));
  }
  return out;
}

/// Points with both slots nonzero, counted in free (F_q^x)^2 orbits.
inline std::int64_t sl3_free_orbits(const Sl3Case& c) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < c.set()->size(); ++i) n += !c.quadric().u_is_zero(i) && !c.quadric().u_dual_is_zero(i);
  const std::int64_t u = c.q() - 1;
  return n / (u * u);
}

inline SuiteReport run_sl3_suite(const SuiteOptions& o) {
  using namespace suite_detail;
  SuiteReport rep;
  rep.suite = "sl3";
  rep.field = o.field;
  auto ctx = CharacterContext::make(o.field);
  Sl3Case c(ctx, o.budget);
  Rng rng(o.seed);
  const FieldPtr& f = ctx->field();
  const int q = ctx->q(), p = ctx->p();
  const int count = std::max(o.samples, 10);
  const std::int64_t dim = c.sprime_dimension();
  rep.parameters = {{"samples", o.samples}, {"seed", o.seed}, {"budget", o.budget}, {"sprime_dimension", dim}};

  rep.checks.push_back(guarded("point_count", [&] {
    std::size_t want = QuadricSet::expected_count(3, q);
    return verdict(c.set()->size() == want, cat("|X| = ", c.set()->size(), ", q^5 + q^3 - q^2 = ", want));
  }));
  rep.checks.push_back(guarded("model_identity", [&] {
    QuadricPoint x = sl3_model(RectMatrix::identity(f, 3));
    return verdict(x.to_string() == QuadricPoint{{{f, 1}, {f, 0}, {f, 0}}, {{f, 0}, {f, 0}, {f, 1}}}.to_string(),
                   "phi(1) = " + x.to_string());
  }));
  rep.checks.push_back(guarded("model_right_u_invariant", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, 3, rng), u = RectMatrix::identity(f, 3);
      for (auto [r, s] : {std::pair{0, 1}, {0, 2}, {1, 2}}) u.set(r, s, Code(rng.below(std::uint64_t(q))));
      bad += sl3_model(g * u).to_string() == sl3_model(g).to_string() ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random (g, u) with phi(g u) = phi(g)", "");
  }));
  rep.checks.push_back(guarded("model_pairing_zero", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < 50; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, 3, rng);
      QuadricPoint x = sl3_model(g), y = sl3_model_op(g);
      bad += dot(x.u, x.u_dual).is_zero() && dot(y.u, y.u_dual).is_zero() ? 0 : 1;
    }
    return count_verdict(50, bad, "random g whose models lie on the quadric", "");
  }));
  rep.checks.push_back(guarded("slipper_diagonal_is_one_one", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, 3, rng);
      WangMonoidA2 w = slipper_sl3(sl3_model(g), sl3_model_op(g));
      bad += w.A.is_one() && w.B.is_one() ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random g with slipper value (1, 1)", "");
  }));
  rep.checks.push_back(guarded("slipper_matches_kernel", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      std::size_t x = std::size_t(rng.below(c.set()->size())), y = std::size_t(rng.below(c.set()->size()));
      WangMonoidA2 w = slipper_sl3(c.quadric().point(x), c.quadric().point(y));
      bad += ctx->kl((w.A + w.B).code()) == c.kloosterman_operator().kernel(x, y) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random pairs with Kl(A + B) = kernel", "");
  }));
  rep.checks.push_back(guarded("sprime_dimension", [&] {
    const std::int64_t orbits = sl3_free_orbits(c), want = std::int64_t(q - 2) * (q - 3) * orbits;
    return verdict(dim == want || (q == 2 && dim == 0),
                   cat("dim S' = trace(P') = ", dim, "; (q-2)(q-3) x ", orbits, " free orbits = ", q == 2 ? 0 : want));
  }));
  rep.checks.push_back(guarded("projectors_commute", [&] {
    std::size_t bad = 0;
    int order[3] = {0, 1, 2};
    for (int i = 0; i < 10; ++i) {
      FunctionOnSet v = random_function(c.set(), rng);
      std::optional<FunctionOnSet> first;
      std::sort(order, order + 3);
      do {
        FunctionOnSet w = c.slot_projector(order[2]).apply(c.slot_projector(order[1]).apply(c.slot_projector(order[0]).apply(v)));
        if (!first)
          first = w;
        else
          bad += w == *first ? 0 : 1;
      } while (std::next_permutation(order, order + 3));
    }
    return count_verdict(50, bad, "orderings compared against the first", "");
  }));
  rep.checks.push_back(guarded("sprime_constraints", [&] {
    // On P' outputs: zero on {v = 0} and {v_dual = 0}, zero fiber sums, idempotent.
    std::size_t bad = 0;
    const std::size_t n = c.set()->size();
    for (int i = 0; i < 5; ++i) {
      FunctionOnSet g = c.project_sprime(random_function(c.set(), rng));
      bad += c.project_sprime(g) == g ? 0 : 1;
      std::map<std::vector<Code>, CyclotomicNumber> by_cov, by_vec;
      for (std::size_t x = 0; x < n; ++x) {
        if ((c.quadric().u_is_zero(x) || c.quadric().u_dual_is_zero(x)) && !g[x].is_zero()) ++bad;
        std::vector<Code> cv(c.quadric().u_dual(x), c.quadric().u_dual(x) + 3), vv(c.quadric().u(x), c.quadric().u(x) + 3);
        by_cov.try_emplace(cv, CyclotomicNumber::zero(p)).first->second += g[x];
        by_vec.try_emplace(vv, CyclotomicNumber::zero(p)).first->second += g[x];
      }
      for (const auto& [k, s] : by_cov) bad += s.is_zero() ? 0 : 1;
      for (const auto& [k, s] : by_vec) bad += s.is_zero() ? 0 : 1;
    }
    return verdict(bad == 0, cat("5 projected random functions; ", bad, " violated constraints"));
  }));
  rep.checks.push_back(guarded("gate_rejects_outside_sprime", [&] {
    std::size_t x = 0;
    while (c.quadric().u_is_zero(x) || c.quadric().u_dual_is_zero(x)) ++x;
    try {
      c.bk_vec(FunctionOnSet::delta(c.set(), x));
    } catch (const std::invalid_argument& e) {
      return verdict(std::string(e.what()).find("S′") != std::string::npos, cat("rejected: ", e.what()));
    }
    return verdict(false, "a delta function was accepted");
  }));

  bool exhaustive = false;
  auto base = pick_indices(c.set()->size(), kExhaustiveSprime, std::size_t(o.samples), rng, exhaustive);
  auto gens = sprime_generators(c, base);
  rep.parameters["spanning_set"] = exhaustive ? "all P' delta_x" : "sampled P' delta_x";
  rep.parameters["generators"] = gens.size();
  for (auto& r : sl3_relation_checks(c, gens, exhaustive ? "all" : "sampled")) rep.checks.push_back(r);

  rep.checks.push_back(guarded("kloosterman_g_equivariance", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < 10; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, 3, rng);
      FunctionOnSet v = random_function(c.set(), rng, 6);
      bad += c.kloosterman(c.act(g, v)) == c.act(g, c.kloosterman(v)) ? 0 : 1;
    }
    return count_verdict(10, bad, "random (g, f) with F(g f) = g F(f)", "");
  }));
  rep.checks.push_back(guarded("bk_g_equivariance", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < 10; ++i) {
      RectMatrix g = RectMatrix::random_special_linear(f, 3, rng);
      FunctionOnSet v = c.project_sprime(random_function(c.set(), rng, 6));
      FunctionOnSet gv = c.act(g, v);
      bad += c.in_sprime(gv) && c.bk_vec(gv) == c.act(g, c.bk_vec(v)) && c.bk_covec(gv) == c.act(g, c.bk_covec(v)) ? 0 : 1;
    }
    return count_verdict(10, bad, "random (g, f in S') with s_i(g f) = g s_i(f)", "");
  }));
  rep.checks.push_back(guarded("kloosterman_inversion_on_special", [&] {
    bool ex = false;
    auto pts = pick_indices(c.set()->size(), kExhaustiveGenerators, std::size_t(o.samples), rng, ex);
    return check_quadric_inversion(c.quadric(), pts, ex ? "all" : "sampled");
  }));
  return rep;
}

// ----------------------------------------------------------------------- Sp4

/// Kernel argument of the Siegel transform against the d = 4 quadric pairing
/// under to_quadric_coords, for every pair (or a sample).
inline CheckResult check_sp4_kernel_equality(const SiegelCase& s, const QuadricSet& quad, Rng& rng, std::size_t samples) {
  const std::size_t n = s.set()->size();
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = quad.index_of(to_quadric_coords(s.point(i)));
  std::vector<std::size_t> sorted(map);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || n != quad.size())
    return suite_detail::verdict(false, "coordinate map is not a bijection");
  const auto& kl = s.ctx()->kl_table();
  std::size_t bad = 0, checked = 0;
  const bool exhaustive = double(n) * double(n) <= kExhaustivePairs;
  if (exhaustive) {
    std::vector<std::size_t> bad_rows(n, 0);
    detail::parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t x = b; x < e; ++x)
        for (std::size_t y = 0; y < n; ++y)
          bad_rows[x] += kl[s.kernel_argument(x, y)] == kl[quad.pairing(map[x], map[y])] ? 0 : 1;
    });
    for (auto v : bad_rows) bad += v;
    checked = n * n;
  } else {
    for (std::size_t k = 0; k < samples; ++k, ++checked) {
      std::size_t x = std::size_t(rng.below(n)), y = std::size_t(rng.below(n));
      bad += kl[s.kernel_argument(x, y)] == kl[quad.pairing(map[x], map[y])] ? 0 : 1;
    }
  }
  return suite_detail::count_verdict(checked, bad, exhaustive ? "pairs (all) of Kl values" : "sampled pairs of Kl values", "");
}

/// (q^4 F)^2 = q^8 on special generators pulled back from the d = 4 quadric.
inline CheckResult check_sp4_involution(const SiegelCase& s, const QuadricSet& quad, Rng& rng, std::size_t count) {
  const std::size_t n = s.set()->size();
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = quad.index_of(to_quadric_coords(s.point(i)));
  const KernelOperator raw = s.fourier_operator().rescaled(1);
  const KernelOperator proj = quad.special_projector();
  const BigRational factor = BigRational::power(s.q(), 8);
  std::size_t bad = 0, done = 0;
  for (auto x : rng.sample_indices(n, n)) {
    if (done == count) break;
    FunctionOnSet g = proj.apply(FunctionOnSet::delta(quad.points(), map[x]));
    if (g.is_zero()) continue;
    std::vector<CyclotomicNumber> v(n, CyclotomicNumber::zero(s.ctx()->p()));
    for (std::size_t i = 0; i < n; ++i) v[i] = g[map[i]];
    FunctionOnSet h(s.set(), std::move(v));
    bad += raw.apply(raw.apply(h)) == h.scaled(factor) ? 0 : 1;
    ++done;
  }
  return suite_detail::count_verdict(done, bad, "sampled special generators with (q^4 F)^2 = q^8", "");
}

inline SuiteReport run_sp4_suite(const SuiteOptions& o) {
  using namespace suite_detail;
  SuiteReport rep;
  rep.suite = "sp4";
  rep.field = o.field;
  rep.parameters = {{"samples", o.samples}, {"seed", o.seed}, {"budget", o.budget}};
  auto ctx = CharacterContext::make(o.field);
  SiegelCase s(ctx, o.budget);
  auto quad = enumerate_quadric(4, ctx, o.budget);
  Rng rng(o.seed);
  const FieldPtr& f = ctx->field();
  const int q = ctx->q();
  const int count = std::max(o.samples, 10);
  auto random_vec = [&] {
    Vec4 v;
    for (int i = 0; i < 4; ++i) v.emplace_back(f, Code(rng.below(std::uint64_t(q))));
    return v;
  };
  auto unit = [&](int k) {
    Vec4 e(4, FieldElement(f, 0));
    e[std::size_t(k)] = FieldElement(f, 1);
    return e;
  };

  rep.checks.push_back(guarded("point_count", [&] {
    std::size_t want = QuadricSet::expected_count(4, q);
    return verdict(s.set()->size() == want, cat("|X| = ", s.set()->size(), ", q^7 + q^4 - q^3 = ", want));
  }));
  rep.checks.push_back(guarded("omega_basics", [&] {
    bool ok = omega(unit(0), unit(3)).is_one() && (-omega(unit(1), unit(2))).is_one();
    for (int i = 0; i < count; ++i) {
      Vec4 x = random_vec(), y = random_vec();
      ok = ok && omega(x, y) == -omega(y, x) && omega(x, x).is_zero();
    }
    return verdict(ok, "omega(e1, e4) = 1, omega(e2, e3) = -1, antisymmetric on random pairs");
  }));
  rep.checks.push_back(guarded("omega_invariance", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = random_symplectic(f, rng);
      Vec4 x = random_vec(), y = random_vec();
      auto mv = [&](const Vec4& v) {
        std::vector<Code> c;
        for (const auto& e : v) c.push_back(e.code());
        Vec4 out;
        for (Code k : g.apply(c)) out.emplace_back(f, k);
        return out;
      };
      bad += is_symplectic(g) && omega(mv(x), mv(y)) == omega(x, y) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random symplectic g preserving omega", "");
  }));
  rep.checks.push_back(guarded("levi_embedding_symplectic", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < 20; ++i) bad += is_symplectic(embed_levi(RectMatrix::random_invertible(f, 2, rng))) ? 0 : 1;
    bad += embed_levi(RectMatrix::identity(f, 2)) == RectMatrix::identity(f, 4) ? 0 : 1;
    return count_verdict(21, bad, "Levi images (20 random and the identity)", "");
  }));
  rep.checks.push_back(guarded("levi_homomorphism", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix a = RectMatrix::random_invertible(f, 2, rng), b = RectMatrix::random_invertible(f, 2, rng);
      bad += embed_levi(a * b) == embed_levi(a) * embed_levi(b) ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random pairs with embed(ab) = embed(a) embed(b)", "");
  }));
  rep.checks.push_back(guarded("siegel_model_invariance", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = random_symplectic(f, rng);
      auto el = [&] { return FieldElement(f, Code(rng.below(std::uint64_t(q)))); };
      RectMatrix u = siegel_unipotent(el(), el(), el());
      SiegelPoint a = siegel_model(g), b = siegel_model(g * u);
      bad += a.v1 == b.v1 && a.v2 == b.v2 && omega(a.v1, a.v2).is_zero() ? 0 : 1;
    }
    return count_verdict(std::size_t(count), bad, "random (g, u) with model(g u) = model(g) on the cone", "");
  }));
  rep.checks.push_back(guarded("quadric_coords_scaling", [&] {
    std::size_t bad = 0;
    for (int i = 0; i < 20; ++i) {
      SiegelPoint x = s.point(std::size_t(rng.below(s.set()->size())));
      FieldElement l(f, Code(1 + rng.below(std::uint64_t(q - 1))));
      SiegelPoint lx = x;
      for (auto& e : lx.v1) e = l * e;
      for (auto& e : lx.v2) e = l * e;
      QuadricPoint a = to_quadric_coords(x), b = to_quadric_coords(lx);
      bool ok = dot(a.u, a.u_dual).is_zero();
      for (std::size_t k = 0; k < 4; ++k) ok = ok && b.u[k] == l * a.u[k] && b.u_dual[k] == l * a.u_dual[k];
      bad += ok ? 0 : 1;
    }
    return count_verdict(20, bad, "random points with scaling-equivariant coordinates", "");
  }));
  rep.checks.push_back(guarded("kernel_equals_quadric_kernel", [&] {
    return check_sp4_kernel_equality(s, *quad, rng, std::size_t(std::max(o.samples, 1) * 10000));
  }));
  rep.checks.push_back(guarded("involution_on_special", [&] { return check_sp4_involution(s, *quad, rng, std::size_t(count)); }));
  rep.checks.push_back(guarded("g_m_equivariance", [&] {
    std::size_t bad = 0;
    const int pairs = std::max(5, o.samples / 5);
    for (int i = 0; i < pairs; ++i) {
      RectMatrix g = random_symplectic(f, rng), m = RectMatrix::random_invertible(f, 2, rng);
      FunctionOnSet v = random_function(s.set(), rng, 4);
      bad += sp4_fourier(s, s.act(g, m, v)) == s.act_op(g, m, sp4_fourier(s, v)) ? 0 : 1;
    }
    return count_verdict(std::size_t(pairs), bad, "random (g, m, f) with F((g, m) f) = (g, m) F(f)", "");
  }));
  rep.checks.push_back(guarded("slipper_sign_reconciliation", [&] {
    // The printed slipper matrix is minus the upper-left block of h^-1 g, and
    // the trace of that block is the kernel argument.
    std::size_t bad = 0;
    for (int i = 0; i < count; ++i) {
      RectMatrix g = random_symplectic(f, rng), h = random_symplectic(f, rng);
      SiegelPoint x = siegel_model(g), y = siegel_model_op(h);
      RectMatrix block = slipper_block_oracle(g, h);
      FieldElement tr = block.element(0, 0) + block.element(1, 1);
      bad += slipper_sp4(x, y) == -block && tr == sp4_kernel_argument(x, y) ? 0 : 1;
    }
    RectMatrix id = RectMatrix::identity(f, 4);
    RectMatrix diag = slipper_sp4(siegel_model(id), siegel_model_op(id));
    auto r = count_verdict(std::size_t(count), bad, "random (g, h) with slipper = -(h^-1 g)_11 and trace = kernel argument", "");
    r.details += "; slipper on the diagonal g = h = 1 is " + diag.to_string() + " (minus the monoid identity)";
    return r;
  }));
  return rep;
}

// ---------------------------------------------------------------- dispatch

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"charsums", "quadric", "sl2", "mirabolic", "sl3", "sp4", "all"};
  return names;
}

inline SuiteReport run_charsums_suite(const SuiteOptions& o) {
  SuiteReport rep;
  rep.suite = "charsums";
  rep.field = o.field;
  rep.parameters = Json::object();
  rep.checks = character_checks(*CharacterContext::make(o.field));
  return rep;
}

/// The list of (suite, options) runs that "all" expands to for a field.
inline std::vector<std::pair<std::string, SuiteOptions>> expand_all(const SuiteOptions& o, std::vector<std::string>* skipped = nullptr) {
  std::vector<std::pair<std::string, SuiteOptions>> runs;
  const int q = o.field.q();
  runs.emplace_back("charsums", o);
  for (int d : o.d ? std::vector<int>{*o.d} : std::vector<int>{2, 3}) {
    SuiteOptions x = o;
    x.d = d;
    if (QuadricSet::expected_count(d, q) > o.budget) {
      if (skipped) skipped->push_back("quadric d=" + std::to_string(d) + " (over budget)");
      continue;
    }
    runs.emplace_back("quadric", x);
  }
  runs.emplace_back("sl2", o);
  for (int n : o.n ? std::vector<int>{*o.n} : std::vector<int>{2, 3}) {
    SuiteOptions x = o;
    x.n = n;
    if (std::pow(double(q), n * (n - 1)) > double(o.budget)) {
      if (skipped) skipped->push_back("mirabolic n=" + std::to_string(n) + " (over budget)");
      continue;
    }
    runs.emplace_back("mirabolic", x);
  }
  if (QuadricSet::expected_count(3, q) <= o.budget)
    runs.emplace_back("sl3", o);
  else if (skipped)
    skipped->push_back("sl3 (over budget)");
  if (q <= 5 && QuadricSet::expected_count(4, q) <= o.budget)
    runs.emplace_back("sp4", o);
  else if (skipped)
    skipped->push_back("sp4 (q > 5 or over budget)");
  return runs;
}

inline std::string run_label(const std::string& suite, const SuiteOptions& o) {
  if (suite == "quadric") return "quadric[d=" + std::to_string(o.d.value_or(2)) + "]";
  if (suite == "mirabolic") return "mirabolic[n=" + std::to_string(o.n.value_or(2)) + "]";
  return suite;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o);

inline SuiteReport run_all_suite(const SuiteOptions& o) {
  SuiteReport rep;
  rep.suite = "all";
  rep.field = o.field;
  std::vector<std::string> skipped;
  auto runs = expand_all(o, &skipped);
  Json labels = Json::array();
  for (const auto& [name, opts] : runs) {
    SuiteReport sub = run_suite(name, opts);
    const std::string label = run_label(name, opts);
    labels.push_back(label);
    for (auto c : sub.checks) {
      c.name = label + "/" + c.name;
      rep.checks.push_back(std::move(c));
    }
  }
  rep.parameters = {{"suites", labels}, {"samples", o.samples}, {"seed", o.seed}, {"budget", o.budget}, {"skipped", skipped}};
  return rep;
}

/// Runs one named suite and stamps its wall time.
inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  if (name == "charsums")
    rep = run_charsums_suite(o);
  else if (name == "quadric")
    rep = run_quadric_suite(o);
  else if (name == "sl2")
    rep = run_sl2_suite(o);
  else if (name == "mirabolic")
    rep = run_mirabolic_suite(o);
  else if (name == "sl3")
    rep = run_sl3_suite(o);
  else if (name == "sp4")
    rep = run_sp4_suite(o);
  else if (name == "all")
    rep = run_all_suite(o);
  else
    throw std::invalid_argument("unknown suite '" + name + "'");
  rep.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace parafourier
