#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/characters.hpp"
#include "parafourier/kernel_operator.hpp"

namespace parafourier {

/// Default cap on the number of points a dense transform may act on.
inline constexpr std::size_t kDefaultBudget = 20000;

/// Raised when a requested space is larger than the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t required)
      : std::runtime_error(what + " has " + std::to_string(required) + " points; requires --budget " +
                           std::to_string(required) + " or more"),
        required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

inline void check_budget(const std::string& what, std::size_t required, std::size_t budget) {
  if (required > budget) throw BudgetExceeded(what, required);
}

/// A point (u, u_dual) of V x V* with zero pairing.
struct QuadricPoint {
  std::vector<FieldElement> u;
  std::vector<FieldElement> u_dual;

  std::string to_string() const {
    auto vec = [](const std::vector<FieldElement>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
      return s + ")";
    };
    return "(" + vec(u) + ", " + vec(u_dual) + ")";
  }
};

/// Sum of u_i * w_i over F_q.
inline FieldElement dot(const std::vector<FieldElement>& u, const std::vector<FieldElement>& w) {
  if (u.size() != w.size() || u.empty()) throw std::invalid_argument("dot product of mismatched vectors");
  FieldElement acc(u[0].field(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * w[i];
  return acc;
}

inline std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// The quadric cone X = {(u, u_dual) : <u, u_dual> = 0} in F_q^d x F_q^d.
class QuadricSet {
 public:
  static std::size_t expected_count(int d, int q) {
    return std::size_t(ipow(q, 2 * d - 1) + ipow(q, d) - ipow(q, d - 1));
  }

  QuadricSet(ContextPtr ctx, int d, std::size_t budget = kDefaultBudget) : ctx_(std::move(ctx)), d_(d) {
    const int q = ctx_->q();
    if (d < 1 || d > 4) throw std::invalid_argument("quadric dimension must satisfy 1 <= d <= 4");
    if (d == 4 && q > 5) throw std::invalid_argument("d = 4 quadrics are capped at q <= 5");
    const std::string what = "quadric d=" + std::to_string(d) + " over F_" + std::to_string(q);
    check_budget(what, expected_count(d, q), budget);
    const Field& f = *ctx_->field();
    const std::size_t side = std::size_t(ipow(q, d));
    std::vector<std::vector<Code>> vecs(side, std::vector<Code>(std::size_t(d)));
    for (std::size_t i = 0; i < side; ++i) {
      std::size_t r = i;
      for (int k = d - 1; k >= 0; --k) {
        vecs[i][std::size_t(k)] = Code(r % std::size_t(q));
        r /= std::size_t(q);
      }
    }
    std::vector<Code> coords;
    for (std::size_t a = 0; a < side; ++a)
      for (std::size_t b = 0; b < side; ++b) {
        Code s = 0;
        for (int k = 0; k < d; ++k) s = f.add(s, f.mul(vecs[a][std::size_t(k)], vecs[b][std::size_t(k)]));
        if (s != 0) continue;
        coords.insert(coords.end(), vecs[a].begin(), vecs[a].end());
        coords.insert(coords.end(), vecs[b].begin(), vecs[b].end());
      }
    points_ = std::make_shared<const IndexedSet>(what, ctx_->field(), 2 * d, std::move(coords));
    if (points_->size() != expected_count(d, q)) throw std::logic_error("quadric enumeration disagrees with the point count");
    // lambda * x for every unit lambda.
    scaled_.resize(points_->size() * std::size_t(q - 1));
    std::vector<Code> tmp(std::size_t(2 * d));
    for (std::size_t i = 0; i < points_->size(); ++i)
      for (int l = 1; l < q; ++l) {
        for (int k = 0; k < 2 * d; ++k) tmp[std::size_t(k)] = f.mul(Code(l), points_->point(i)[k]);
        scaled_[i * std::size_t(q - 1) + std::size_t(l - 1)] = std::uint32_t(points_->encode(tmp.data()));
      }
    std::vector<Code> zero(std::size_t(2 * d), 0);
    zero_ = points_->encode(zero);
  }

  const ContextPtr& ctx() const { return ctx_; }
  const FieldPtr& field() const { return ctx_->field(); }
  int d() const { return d_; }
  int q() const { return ctx_->q(); }
  const SetPtr& points() const { return points_; }
  std::size_t size() const { return points_->size(); }
  std::size_t zero_index() const { return zero_; }

  const Code* u(std::size_t i) const { return points_->point(i); }
  const Code* u_dual(std::size_t i) const { return points_->point(i) + d_; }
  bool u_is_zero(std::size_t i) const { return all_zero(u(i)); }
  bool u_dual_is_zero(std::size_t i) const { return all_zero(u_dual(i)); }

  QuadricPoint point(std::size_t i) const {
    auto e = points_->decode_elements(i);
    return {{e.begin(), e.begin() + d_}, {e.begin() + d_, e.end()}};
  }
  std::size_t index_of(const QuadricPoint& x) const {
    if (int(x.u.size()) != d_ || int(x.u_dual.size()) != d_) throw std::invalid_argument("point from a different quadric");
    std::vector<Code> c;
    for (const auto& e : x.u) c.push_back(e.code());
    for (const auto& e : x.u_dual) c.push_back(e.code());
    auto i = points_->find(c);
    if (!i) throw std::invalid_argument("point is not on the quadric");
    return *i;
  }

  /// Index of lambda * x.
  std::size_t scaled(std::size_t i, Code lambda) const {
    if (lambda == 0) return zero_;
    return scaled_[i * std::size_t(q() - 1) + std::size_t(lambda - 1)];
  }

  /// <u, v_dual> + <v, u_dual> for x = (u, u_dual), y = (v, v_dual).
  Code pairing(std::size_t x, std::size_t y) const {
    const Field& f = *field();
    Code s = 0;
    for (int k = 0; k < d_; ++k) {
      s = f.add(s, f.mul(u(x)[k], u_dual(y)[k]));
      s = f.add(s, f.mul(u(y)[k], u_dual(x)[k]));
    }
    return s;
  }

  /// The raw transform: kernel K(x, y) = Kl(<u, v_dual> + <v, u_dual>), scale 1.
  KernelOperator kernel_operator(BigRational scale = 1) const {
    BilinearKernelSpec spec;
    spec.width = 2 * d_;
    spec.values = ctx_->kl_table();
    spec.left.reserve(size() * std::size_t(2 * d_));
    spec.right.reserve(size() * std::size_t(2 * d_));
    for (std::size_t i = 0; i < size(); ++i) {
      spec.left.insert(spec.left.end(), points_->point(i), points_->point(i) + 2 * d_);
      spec.right.insert(spec.right.end(), u_dual(i), u_dual(i) + d_);
      spec.right.insert(spec.right.end(), u(i), u(i) + d_);
    }
    return bilinear_kernel_operator(points_, points_, std::move(spec), std::move(scale), "quadric Kloosterman transform");
  }

  /// Projector onto functions with zero sum over every scaling orbit.
  KernelOperator special_projector() const {
    return group_averaging_projector(
        points_,
        [&](std::size_t x) {
          std::vector<std::size_t> o;
          for (int l = 1; l < q(); ++l) o.push_back(scaled(x, Code(l)));
          return o;
        },
        "special projector");
  }

 private:
  bool all_zero(const Code* c) const {
    for (int k = 0; k < d_; ++k)
      if (c[k] != 0) return false;
    return true;
  }

  ContextPtr ctx_;
  int d_;
  SetPtr points_;
  std::vector<std::uint32_t> scaled_;
  std::size_t zero_ = 0;
};

using QuadricPtr = std::shared_ptr<const QuadricSet>;

inline QuadricPtr enumerate_quadric(int d, const ContextPtr& ctx, std::size_t budget = kDefaultBudget) {
  return std::make_shared<const QuadricSet>(ctx, d, budget);
}

/// K(x, y) = Kl(<u, v_dual> + <v, u_dual>).
inline CyclotomicNumber quadric_kernel(const CharacterContext& ctx, const QuadricPoint& x, const QuadricPoint& y) {
  if (x.u.size() != y.u.size()) throw std::invalid_argument("points from quadrics of different dimension");
  FieldElement arg = dot(x.u, y.u_dual) + dot(y.u, x.u_dual);
  if (arg.field()->spec() != ctx.field()->spec()) throw std::invalid_argument("points from a different field");
  return ctx.kl(arg.code());
}

inline FunctionOnSet fourier_raw(const QuadricSet& set, const FunctionOnSet& f) { return set.kernel_operator().apply(f); }

inline FunctionOnSet fourier_normalized(const QuadricSet& set, const FunctionOnSet& f) {
  return set.kernel_operator(BigRational::power(set.q(), -set.d())).apply(f);
}

inline FunctionOnSet project_special(const QuadricSet& set, const FunctionOnSet& f) {
  return set.special_projector().apply(f);
}

/// True when every scaling orbit sums to zero.
inline bool is_special(const QuadricSet& set, const FunctionOnSet& f) {
  for (std::size_t x = 0; x < set.size(); ++x) {
    CyclotomicNumber s = CyclotomicNumber::zero(f.prime());
    for (int l = 1; l < set.q(); ++l) s += f[set.scaled(x, Code(l))];
    if (!s.is_zero()) return false;
  }
  return true;
}

/// The six pair types of the double-transform point count.
enum class Stratum { OriginBoth, EqualNonzero, ProportionalDistinct, OneZero, NonPropOrthogonal, NonPropGeneric };

inline const char* stratum_name(Stratum s) {
  switch (s) {
    case Stratum::OriginBoth: return "OriginBoth";
    case Stratum::EqualNonzero: return "EqualNonzero";
    case Stratum::ProportionalDistinct: return "ProportionalDistinct";
    case Stratum::OneZero: return "OneZero";
    case Stratum::NonPropOrthogonal: return "NonPropOrthogonal";
    case Stratum::NonPropGeneric: return "NonPropGeneric";
  }
  return "?";
}

inline constexpr Stratum kAllStrata[] = {Stratum::OriginBoth,    Stratum::EqualNonzero,      Stratum::ProportionalDistinct,
                                         Stratum::OneZero,       Stratum::NonPropOrthogonal, Stratum::NonPropGeneric};

inline Stratum classify_pair(const QuadricSet& set, std::size_t x, std::size_t z) {
  const std::size_t o = set.zero_index();
  if (x == z) return x == o ? Stratum::OriginBoth : Stratum::EqualNonzero;
  if (x == o || z == o) return Stratum::OneZero;
  for (int l = 2; l < set.q(); ++l)
    if (set.scaled(x, Code(l)) == z) return Stratum::ProportionalDistinct;
  return set.pairing(x, z) == 0 ? Stratum::NonPropOrthogonal : Stratum::NonPropGeneric;
}

inline Stratum classify_pair(const QuadricSet& set, const QuadricPoint& x, const QuadricPoint& z) {
  return classify_pair(set, set.index_of(x), set.index_of(z));
}

/// Closed form for the sum over y of K(x, y) K(y, z) on a stratum.
inline BigRational case_sum_formula(Stratum s, int d, int q) {
  const std::int64_t a = ipow(q, 2 * d), b = ipow(q, 2 * d - 1), c = ipow(q, d), e = ipow(q, d - 1);
  switch (s) {
    case Stratum::OriginBoth: return b + c - e;
    case Stratum::EqualNonzero: return a - b + c - e;
    case Stratum::ProportionalDistinct: return -b + c - e;
    case Stratum::OneZero:
    case Stratum::NonPropOrthogonal: return c - e;
    case Stratum::NonPropGeneric: return -e;
  }
  throw std::logic_error("unknown stratum");
}

/// Brute-force sum over y of K(x, y) K(y, z), grouped by the two kernel arguments.
inline CyclotomicNumber double_kernel_sum(const QuadricSet& set, std::size_t x, std::size_t z) {
  const int q = set.q();
  std::vector<std::int64_t> hist(std::size_t(q * q), 0);
  for (std::size_t y = 0; y < set.size(); ++y) ++hist[std::size_t(set.pairing(x, y) * q + set.pairing(y, z))];
  CyclotomicNumber acc = CyclotomicNumber::zero(set.ctx()->p());
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      if (hist[std::size_t(a * q + b)] != 0)
        acc += (set.ctx()->kl(Code(a)) * set.ctx()->kl(Code(b))).scaled(hist[std::size_t(a * q + b)]);
  return acc;
}

}  // namespace parafourier
