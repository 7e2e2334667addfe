#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/characters.hpp"
#include "parafourier/kernel_operator.hpp"
#include "parafourier/matrix.hpp"

namespace parafourier {

/// A point (a, c) of the affine plane.
struct PlanePoint {
  FieldElement a;
  FieldElement c;
};

/// A 2x2 matrix [[a, b], [c, d]].
struct Matrix2 {
  FieldElement a, b, c, d;

  static Matrix2 from_rect(const RectMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("Matrix2 needs a 2x2 matrix");
    return {m.element(0, 0), m.element(0, 1), m.element(1, 0), m.element(1, 1)};
  }
  RectMatrix to_rect() const { return RectMatrix(a.field(), 2, 2, {a.code(), b.code(), c.code(), d.code()}); }
  static Matrix2 identity(const FieldPtr& f) { return {{f, 1}, {f, 0}, {f, 0}, {f, 1}}; }
  static Matrix2 diag(const FieldElement& t) {
    const FieldPtr& f = t.field();
    return {t, {f, 0}, {f, 0}, t.inverse()};
  }
  FieldElement det() const { return a * d - b * c; }
  /// Inverse of a determinant-one matrix.
  Matrix2 unimodular_inverse() const {
    require_unimodular();
    return {d, -b, -c, a};
  }
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  PlanePoint apply(const PlanePoint& p) const { return {a * p.a + b * p.c, c * p.a + d * p.c}; }
  void require_unimodular() const {
    if (!det().is_one()) throw std::invalid_argument("non-unimodular matrix: det = " + det().to_string());
  }
  std::string to_string() const { return to_rect().to_string(); }

  static Matrix2 random_sl2(const FieldPtr& f, Rng& rng) { return from_rect(RectMatrix::random_special_linear(f, 2, rng)); }
};

/// The A^1-valued pairing a d' - c b' of g = [[a,b],[c,d]] and h = [[a',b'],[c',d']].
inline FieldElement sl2_pairing(const Matrix2& g, const Matrix2& h) {
  g.require_unimodular();
  h.require_unimodular();
  return g.a * h.d - g.c * h.b;
}

/// The plane A^2(F_q) with its symplectic Fourier transform
/// F(f)(b, d) = q^-1 sum over (a, c) of f(a, c) psi(a d - b c).
///
/// Both sides use the same enumeration of the plane; the output is indexed by
/// the pair (b, d), which under the model identification is column 2 of h.
class Sl2Plane {
 public:
  explicit Sl2Plane(ContextPtr ctx) : ctx_(std::move(ctx)) {
    set_ = full_space("plane A^2 over F_" + std::to_string(ctx_->q()), ctx_->field(), 2);
    const Field& f = *ctx_->field();
    BilinearKernelSpec spec;
    spec.width = 2;
    spec.values = ctx_->psi_table();
    for (std::size_t i = 0; i < set_->size(); ++i) {
      const Code* pt = set_->point(i);
      spec.left.insert(spec.left.end(), {pt[0], pt[1]});
      // a d - c b = <(a, c), (d, -b)>
      spec.right.insert(spec.right.end(), {pt[1], f.neg(pt[0])});
    }
    op_ = std::make_shared<KernelOperator>(
        bilinear_kernel_operator(set_, set_, std::move(spec), BigRational(1, ctx_->q()), "SL2 Fourier transform"));
  }

  const ContextPtr& ctx() const { return ctx_; }
  const SetPtr& set() const { return set_; }
  const KernelOperator& fourier_operator() const { return *op_; }

  std::size_t index_of(const PlanePoint& p) const { return set_->encode(std::vector<Code>{p.a.code(), p.c.code()}); }
  PlanePoint point(std::size_t i) const {
    auto e = set_->decode_elements(i);
    return {e[0], e[1]};
  }

  /// (g f)(x) = f(g^-1 x).
  FunctionOnSet act(const Matrix2& g, const FunctionOnSet& f) const {
    Matrix2 gi = g.unimodular_inverse();
    std::vector<CyclotomicNumber> out(set_->size(), CyclotomicNumber::zero(ctx_->p()));
    for (std::size_t i = 0; i < set_->size(); ++i) out[i] = f[index_of(gi.apply(point(i)))];
    return FunctionOnSet(set_, std::move(out));
  }

  /// Torus right action (t f)(x) = f(t x).
  FunctionOnSet torus_act(const FieldElement& t, const FunctionOnSet& f) const {
    if (t.is_zero()) throw std::invalid_argument("torus element must be nonzero");
    std::vector<CyclotomicNumber> out(set_->size(), CyclotomicNumber::zero(ctx_->p()));
    for (std::size_t i = 0; i < set_->size(); ++i) {
      PlanePoint p = point(i);
      out[i] = f[index_of({t * p.a, t * p.c})];
    }
    return FunctionOnSet(set_, std::move(out));
  }

 private:
  ContextPtr ctx_;
  SetPtr set_;
  std::shared_ptr<KernelOperator> op_;
};

inline FunctionOnSet sl2_fourier(const Sl2Plane& plane, const FunctionOnSet& f) { return plane.fourier_operator().apply(f); }
inline FunctionOnSet sl2_action(const Sl2Plane& plane, const Matrix2& g, const FunctionOnSet& f) { return plane.act(g, f); }
inline FunctionOnSet torus_action(const Sl2Plane& plane, const FieldElement& t, const FunctionOnSet& f) {
  return plane.torus_act(t, f);
}

}  // namespace parafourier
