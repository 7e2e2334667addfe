#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/characters.hpp"
#include "parafourier/kernel_operator.hpp"
#include "parafourier/matrix.hpp"
#include "parafourier/quadric.hpp"

namespace parafourier {

using Vec4 = std::vector<FieldElement>;

/// omega(x, y) = x1 y4 - x2 y3 + x3 y2 - x4 y1.
inline FieldElement omega(const Vec4& x, const Vec4& y) {
  if (x.size() != 4 || y.size() != 4) throw std::invalid_argument("omega needs 4-vectors");
  return x[0] * y[3] - x[1] * y[2] + x[2] * y[1] - x[3] * y[0];
}

/// The Gram matrix of omega: x^T J y = omega(x, y).
inline RectMatrix symplectic_form(const FieldPtr& f) { return RectMatrix::from_ints(f, 4, 4, {0, 0, 0, 1, 0, 0, -1, 0, 0, 1, 0, 0, -1, 0, 0, 0}); }

inline bool is_symplectic(const RectMatrix& g) {
  if (g.rows() != 4 || g.cols() != 4) return false;
  RectMatrix j = symplectic_form(g.field());
  return g.transpose() * j * g == j;
}

namespace detail {

// E = [[0, 1], [-1, 0]], the off-diagonal block of J.
inline RectMatrix block_e(const FieldPtr& f) { return RectMatrix::from_ints(f, 2, 2, {0, 1, -1, 0}); }

inline RectMatrix block_diag(const RectMatrix& a, const RectMatrix& d) {
  RectMatrix g(a.field(), 4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      g.set(i, j, a.at(i, j));
      g.set(i + 2, j + 2, d.at(i, j));
    }
  return g;
}

}  // namespace detail

/// The lower Levi block E^-1 m^-T E, which makes diag(m, n) symplectic.
inline RectMatrix levi_lower_block(const RectMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("Levi element must be 2x2");
  if (m.det() == 0) throw std::domain_error("singular Levi element");
  RectMatrix e = detail::block_e(m.field());
  return e.inverse() * m.inverse().transpose() * e;
}

inline RectMatrix embed_levi(const RectMatrix& m) {
  RectMatrix g = detail::block_diag(m, levi_lower_block(m));
  if (!is_symplectic(g)) throw std::logic_error("Levi embedding is not symplectic");
  return g;
}

/// [[I, B], [0, I]] with B = [[a, b], [c, -a]].
inline RectMatrix siegel_unipotent(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  RectMatrix g = RectMatrix::identity(a.field(), 4);
  g.set(0, 2, a.code());
  g.set(0, 3, b.code());
  g.set(1, 2, c.code());
  g.set(1, 3, (-a).code());
  return g;
}

/// [[I, 0], [C, I]] with C = [[a, b], [c, -a]].
inline RectMatrix siegel_unipotent_lower(const FieldElement& a, const FieldElement& b, const FieldElement& c) {
  return siegel_unipotent(a, b, c).transpose();
}

/// A product of random Levi images and upper and lower Siegel unipotents.
inline RectMatrix random_symplectic(const FieldPtr& f, Rng& rng, int letters = 6) {
  RectMatrix g = RectMatrix::identity(f, 4);
  auto el = [&] { return FieldElement(f, Code(rng.below(std::uint64_t(f->q())))); };
  for (int i = 0; i < letters; ++i) {
    switch (i % 3) {
      case 0: g = g * embed_levi(RectMatrix::random_invertible(f, 2, rng)); break;
      case 1: g = g * siegel_unipotent(el(), el(), el()); break;
      default: g = g * siegel_unipotent_lower(el(), el(), el()); break;
    }
  }
  return g;
}

/// A point (v1, v2) of Mat_{4,2} with omega(v1, v2) = 0.
struct SiegelPoint {
  Vec4 v1;
  Vec4 v2;
};

inline Vec4 column4(const RectMatrix& g, int j) {
  Vec4 v;
  for (int i = 0; i < 4; ++i) v.push_back(g.element(i, j));
  return v;
}

inline SiegelPoint siegel_model(const RectMatrix& g) {
  if (!is_symplectic(g)) throw std::invalid_argument("matrix is not symplectic");
  return {column4(g, 0), column4(g, 1)};
}

inline SiegelPoint siegel_model_op(const RectMatrix& g) {
  if (!is_symplectic(g)) throw std::invalid_argument("matrix is not symplectic");
  return {column4(g, 2), column4(g, 3)};
}

/// Rows (-omega(v1, w2), -omega(v2, w2)) and (omega(v1, w1), omega(v2, w1)).
inline RectMatrix slipper_sp4(const SiegelPoint& x, const SiegelPoint& y) {
  const FieldPtr& f = x.v1.at(0).field();
  RectMatrix s(f, 2, 2);
  s.set(0, 0, (-omega(x.v1, y.v2)).code());
  s.set(0, 1, (-omega(x.v2, y.v2)).code());
  s.set(1, 0, omega(x.v1, y.v1).code());
  s.set(1, 1, omega(x.v2, y.v1).code());
  return s;
}

/// Upper-left 2x2 block of h^-1 g.
inline RectMatrix slipper_block_oracle(const RectMatrix& g, const RectMatrix& h) { return (h.inverse() * g).block(0, 0, 2, 2); }

/// omega(v1, w2) + omega(w1, v2), the kernel argument of the transform.
inline FieldElement sp4_kernel_argument(const SiegelPoint& x, const SiegelPoint& y) {
  return omega(x.v1, y.v2) + omega(y.v1, x.v2);
}

/// (v1, v2) -> (u, u_dual) with u = v1 and u_dual_j = omega(e_j, v2).
inline QuadricPoint to_quadric_coords(const SiegelPoint& x) {
  const FieldPtr& f = x.v1.at(0).field();
  std::vector<FieldElement> ud;
  for (int j = 0; j < 4; ++j) {
    Vec4 e(4, FieldElement(f, 0));
    e[std::size_t(j)] = FieldElement(f, 1);
    ud.push_back(omega(e, x.v2));
  }
  return {x.v1, ud};
}

/// The Siegel cone X = {(v1, v2) : omega(v1, v2) = 0} with the transform
/// F(f)(w1, w2) = q^-4 sum f(v1, v2) Kl(omega(v1, w2) + omega(w1, v2)).
class SiegelCase {
 public:
  SiegelCase(ContextPtr ctx, std::size_t budget = kDefaultBudget) : ctx_(std::move(ctx)) {
    const int q = ctx_->q();
    if (q > 5) throw std::invalid_argument("the Siegel cone is capped at q <= 5");
    const std::string what = "Siegel cone over F_" + std::to_string(q);
    check_budget(what, QuadricSet::expected_count(4, q), budget);
    const Field& f = *ctx_->field();
    SetPtr all = full_space("Mat_{4,2}", ctx_->field(), 8);
    std::vector<Code> coords;
    for (std::size_t i = 0; i < all->size(); ++i) {
      const Code* c = all->point(i);
      if (omega_codes(f, c, c + 4) == 0) coords.insert(coords.end(), c, c + 8);
    }
    set_ = std::make_shared<const IndexedSet>(what, ctx_->field(), 8, std::move(coords));
    if (set_->size() != QuadricSet::expected_count(4, q)) throw std::logic_error("Siegel cone has the wrong point count");

    // omega(v1, w2) + omega(w1, v2) = <v1, J w2> + <v2, -J w1>.
    BilinearKernelSpec spec;
    spec.width = 8;
    spec.values = ctx_->kl_table();
    for (std::size_t i = 0; i < set_->size(); ++i) {
      const Code* c = set_->point(i);
      spec.left.insert(spec.left.end(), c, c + 8);
      auto jw2 = apply_j(f, c + 4);
      auto jw1 = apply_j(f, c);
      spec.right.insert(spec.right.end(), jw2.begin(), jw2.end());
      for (Code v : jw1) spec.right.push_back(f.neg(v));
    }
    op_ = std::make_shared<KernelOperator>(
        bilinear_kernel_operator(set_, set_, std::move(spec), BigRational::power(q, -4), "Sp4 Siegel transform"));
  }

  const ContextPtr& ctx() const { return ctx_; }
  const SetPtr& set() const { return set_; }
  int q() const { return ctx_->q(); }
  const KernelOperator& fourier_operator() const { return *op_; }

  SiegelPoint point(std::size_t i) const {
    auto e = set_->decode_elements(i);
    return {{e.begin(), e.begin() + 4}, {e.begin() + 4, e.end()}};
  }
  std::size_t index_of(const SiegelPoint& x) const {
    std::vector<Code> c;
    for (const auto& e : x.v1) c.push_back(e.code());
    for (const auto& e : x.v2) c.push_back(e.code());
    auto i = set_->find(c);
    if (!i) throw std::invalid_argument("point is not on the Siegel cone");
    return *i;
  }

  /// Kernel argument as a field code, straight from coordinates.
  Code kernel_argument(std::size_t x, std::size_t y) const {
    const Field& f = *ctx_->field();
    const Code *a = set_->point(x), *b = set_->point(y);
    return f.add(omega_codes(f, a, b + 4), omega_codes(f, b, a + 4));
  }

  /// ((g, m) f)(x) = f(g^-1 x m), x read as a 4x2 matrix [v1 v2].
  FunctionOnSet act(const RectMatrix& g, const RectMatrix& m, const FunctionOnSet& f) const {
    if (!is_symplectic(g)) throw std::invalid_argument("matrix is not symplectic");
    levi_lower_block(m);
    return pull(f, g.inverse(), m);
  }
  /// ((g, m) h)(y) = h(g^-1 y n(m)) with n(m) the lower Levi block.
  FunctionOnSet act_op(const RectMatrix& g, const RectMatrix& m, const FunctionOnSet& h) const {
    if (!is_symplectic(g)) throw std::invalid_argument("matrix is not symplectic");
    return pull(h, g.inverse(), levi_lower_block(m));
  }

 private:
  static Code omega_codes(const Field& f, const Code* x, const Code* y) {
    Code s = f.sub(f.mul(x[0], y[3]), f.mul(x[1], y[2]));
    s = f.add(s, f.mul(x[2], y[1]));
    return f.sub(s, f.mul(x[3], y[0]));
  }
  // J y = (y4, -y3, y2, -y1).
  static std::vector<Code> apply_j(const Field& f, const Code* y) { return {y[3], f.neg(y[2]), y[1], f.neg(y[0])}; }

  FunctionOnSet pull(const FunctionOnSet& f, const RectMatrix& left, const RectMatrix& right) const {
    std::vector<CyclotomicNumber> out(set_->size(), CyclotomicNumber::zero(ctx_->p()));
    for (std::size_t i = 0; i < set_->size(); ++i) {
      const Code* c = set_->point(i);
      RectMatrix x(ctx_->field(), 4, 2, {c[0], c[4], c[1], c[5], c[2], c[6], c[3], c[7]});
      RectMatrix y = left * x * right;
      std::vector<Code> t(8);
      for (int r = 0; r < 4; ++r) {
        t[std::size_t(r)] = y.at(r, 0);
        t[std::size_t(r + 4)] = y.at(r, 1);
      }
      out[i] = f[set_->encode(t)];
    }
    return FunctionOnSet(set_, std::move(out));
  }

  ContextPtr ctx_;
  SetPtr set_;
  std::shared_ptr<KernelOperator> op_;
};

inline FunctionOnSet sp4_fourier(const SiegelCase& s, const FunctionOnSet& f) { return s.fourier_operator().apply(f); }

}  // namespace parafourier
