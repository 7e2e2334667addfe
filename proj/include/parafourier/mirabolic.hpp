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

/// An element of the monoid Mat_{n-1, n-1}.
struct WangMonoidMat {
  int n_minus_1 = 0;
  RectMatrix element;
};

/// (M, N) -> N M.
inline WangMonoidMat slipper_mirabolic(const RectMatrix& M, const RectMatrix& N) {
  if (M.cols() + 1 != M.rows() || N.rows() != M.cols() || N.cols() != M.rows())
    throw std::invalid_argument("slipper pairing needs an n x (n-1) and an (n-1) x n matrix");
  return {M.cols(), N * M};
}

/// The mirabolic pair of spaces Mat_{n,n-1} and Mat_{n-1,n} with the trace
/// pairing transform F(f)(N) = q^{-(n^2-n)/2} sum over M of f(M) psi(tr(N M)).
///
/// The reverse transform uses psi(-tr(N M)) so that the two compose to the
/// identity.
class MirabolicSpaces {
 public:
  MirabolicSpaces(ContextPtr ctx, int n, std::size_t budget = kDefaultBudget) : ctx_(std::move(ctx)), n_(n) {
    if (n < 2) throw std::invalid_argument("mirabolic case needs n >= 2");
    const int k = n * (n - 1);
    double size = 1;
    for (int i = 0; i < k; ++i) size *= ctx_->q();
    const std::string q = std::to_string(ctx_->q()), dims = std::to_string(n) + "," + std::to_string(n - 1);
    check_budget("Mat_{" + dims + "} over F_" + q, size > 1e12 ? std::size_t(-1) : std::size_t(size), budget);
    cols_ = full_space("Mat_{" + dims + "} over F_" + q, ctx_->field(), k);
    rows_ = full_space("Mat_{" + std::to_string(n - 1) + "," + std::to_string(n) + "} over F_" + q, ctx_->field(), k);
    const BigRational scale = BigRational::power(ctx_->q(), -(n * n - n) / 2);
    forward_ = std::make_shared<KernelOperator>(make_op(cols_, rows_, false, scale, "mirabolic Fourier transform"));
    reverse_ = std::make_shared<KernelOperator>(make_op(rows_, cols_, true, scale, "opposite mirabolic Fourier transform"));
  }

  const ContextPtr& ctx() const { return ctx_; }
  int n() const { return n_; }
  /// Mat_{n,n-1}, row-major.
  const SetPtr& domain() const { return cols_; }
  /// Mat_{n-1,n}, row-major.
  const SetPtr& codomain() const { return rows_; }
  const KernelOperator& forward() const { return *forward_; }
  const KernelOperator& reverse() const { return *reverse_; }

  RectMatrix matrix_m(std::size_t i) const { return RectMatrix(ctx_->field(), n_, n_ - 1, cols_->decode(i)); }
  RectMatrix matrix_n(std::size_t i) const { return RectMatrix(ctx_->field(), n_ - 1, n_, rows_->decode(i)); }
  std::size_t index_m(const RectMatrix& M) const { return cols_->encode(M.entries()); }
  std::size_t index_n(const RectMatrix& N) const { return rows_->encode(N.entries()); }

  /// First n-1 columns of g.
  RectMatrix model(const RectMatrix& g) const { return check_g(g).block(0, 0, n_, n_ - 1); }
  /// First n-1 rows of g^-1.
  RectMatrix model_op(const RectMatrix& g) const { return check_g(g).inverse().block(0, 0, n_ - 1, n_); }

  /// ((g, m) f)(M) = f(g^-1 M m).
  FunctionOnSet act(const RectMatrix& g, const RectMatrix& m, const FunctionOnSet& f) const {
    RectMatrix gi = check_g(g).inverse();
    check_m(m);
    return pull(cols_, f, [&](std::size_t i) { return index_m(gi * matrix_m(i) * m); });
  }
  /// ((g, m) h)(N) = h(m^-1 N g), the action matching act under the transform.
  FunctionOnSet act_op(const RectMatrix& g, const RectMatrix& m, const FunctionOnSet& h) const {
    check_g(g);
    RectMatrix mi = check_m(m).inverse();
    return pull(rows_, h, [&](std::size_t i) { return index_n(mi * matrix_n(i) * g); });
  }

 private:
  KernelOperator make_op(const SetPtr& from, const SetPtr& to, bool negate, const BigRational& scale, std::string name) const {
    const Field& f = *ctx_->field();
    const int n = n_, k = n * (n - 1);
    BilinearKernelSpec spec;
    spec.width = k;
    spec.values = ctx_->psi_table();
    // tr(N M) = sum over (a, b) of M_{ab} N_{ba}; both operands are paired
    // against the other matrix read in transposed position.
    const bool from_is_m = !negate;
    for (std::size_t i = 0; i < from->size(); ++i) spec.left.insert(spec.left.end(), from->point(i), from->point(i) + k);
    for (std::size_t j = 0; j < to->size(); ++j) {
      const Code* t = to->point(j);
      for (int idx = 0; idx < k; ++idx) {
        Code v;
        if (from_is_m) {  // left is M (n x (n-1)) at (a, b); right reads N (n-1 x n) at (b, a)
          int a = idx / (n - 1), b = idx % (n - 1);
          v = t[b * n + a];
        } else {  // left is N at (a, b); right reads M at (b, a)
          int a = idx / n, b = idx % n;
          v = t[b * (n - 1) + a];
        }
        spec.right.push_back(negate ? f.neg(v) : v);
      }
    }
    return bilinear_kernel_operator(from, to, std::move(spec), scale, std::move(name));
  }

  const RectMatrix& check_g(const RectMatrix& g) const {
    if (g.rows() != n_ || g.cols() != n_) throw std::invalid_argument("group element has the wrong size");
    if (g.det() != 1) throw std::invalid_argument("non-unimodular matrix");
    return g;
  }
  const RectMatrix& check_m(const RectMatrix& m) const {
    if (m.rows() != n_ - 1 || m.cols() != n_ - 1) throw std::invalid_argument("Levi element has the wrong size");
    if (m.det() == 0) throw std::domain_error("singular Levi element");
    return m;
  }
  template <class Map>
  FunctionOnSet pull(const SetPtr& set, const FunctionOnSet& f, Map&& sigma) const {
    std::vector<CyclotomicNumber> out(set->size(), CyclotomicNumber::zero(ctx_->p()));
    for (std::size_t i = 0; i < set->size(); ++i) out[i] = f[sigma(i)];
    return FunctionOnSet(set, std::move(out));
  }

  ContextPtr ctx_;
  int n_;
  SetPtr cols_, rows_;
  std::shared_ptr<KernelOperator> forward_, reverse_;
};

inline FunctionOnSet mirabolic_fourier(const MirabolicSpaces& s, const FunctionOnSet& f) { return s.forward().apply(f); }
inline FunctionOnSet mirabolic_fourier_op(const MirabolicSpaces& s, const FunctionOnSet& h) { return s.reverse().apply(h); }
inline FunctionOnSet mirabolic_action(const MirabolicSpaces& s, const RectMatrix& g, const RectMatrix& m, const FunctionOnSet& f) {
  return s.act(g, m, f);
}

}  // namespace parafourier
