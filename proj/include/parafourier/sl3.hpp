#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/characters.hpp"
#include "parafourier/kernel_operator.hpp"
#include "parafourier/matrix.hpp"
#include "parafourier/quadric.hpp"

namespace parafourier {

using Vec3 = std::vector<FieldElement>;

/// Classical cross product, oriented so that cross(e1, e2) = e3.
inline Vec3 cross(const Vec3& u, const Vec3& v) {
  if (u.size() != 3 || v.size() != 3) throw std::invalid_argument("cross product needs 3-vectors");
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

/// The scalar lambda with w = lambda * v_dual, read off at the first nonzero
/// coordinate of v_dual.
inline FieldElement ratio(const Vec3& w, const Vec3& v_dual) {
  if (w.size() != 3 || v_dual.size() != 3) throw std::invalid_argument("ratio needs 3-vectors");
  std::size_t k = 0;
  while (k < 3 && v_dual[k].is_zero()) ++k;
  if (k == 3) throw std::domain_error("ratio against zero covector");
  FieldElement lambda = w[k] / v_dual[k];
  for (std::size_t i = 0; i < 3; ++i)
    if (!(w[i] == lambda * v_dual[i])) throw std::domain_error("non-proportional ratio");
  return lambda;
}

/// Point (A, B) of the monoid A^2.
struct WangMonoidA2 {
  FieldElement A;
  FieldElement B;
};

inline void require_sl3(const RectMatrix& g) {
  if (g.rows() != 3 || g.cols() != 3) throw std::invalid_argument("SL3 element must be 3x3");
  if (g.det() != 1) throw std::invalid_argument("non-unimodular matrix");
}

inline Vec3 column_elements(const RectMatrix& g, int j) {
  Vec3 v;
  for (int i = 0; i < g.rows(); ++i) v.push_back(g.element(i, j));
  return v;
}

/// (column 1 of g, row 3 of g^-1), the row computed as column 1 x column 2.
inline QuadricPoint sl3_model(const RectMatrix& g) {
  require_sl3(g);
  return {column_elements(g, 0), cross(column_elements(g, 0), column_elements(g, 1))};
}

/// (column 3 of g, row 1 of g^-1).
inline QuadricPoint sl3_model_op(const RectMatrix& g) {
  require_sl3(g);
  return {column_elements(g, 2), cross(column_elements(g, 1), column_elements(g, 2))};
}

/// For x = (v, v_dual) and y = (w, w_dual): (<w, v_dual>, <v, w_dual>).
inline WangMonoidA2 slipper_sl3(const QuadricPoint& x, const QuadricPoint& y) {
  return {dot(y.u, x.u_dual), dot(x.u, y.u_dual)};
}

enum class WeylLetter { S1, S2 };

/// Parses words such as "s1s2s1", "s1 s2", "121" or "" (the identity).
inline std::vector<WeylLetter> parse_weyl_word(const std::string& word) {
  std::vector<WeylLetter> out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') continue;
    if ((c == 's' || c == 'S') && i + 1 < word.size()) c = word[++i];
    if (c == '1')
      out.push_back(WeylLetter::S1);
    else if (c == '2')
      out.push_back(WeylLetter::S2);
    else
      throw std::invalid_argument(std::string("invalid Weyl letter '") + c + "' in \"" + word + "\"");
  }
  return out;
}

/// Everything the SL3 checks act on, built on the d = 3 quadric.
///
/// A point (v, v_dual) plays the role of any of the four Borel models; the
/// transforms below are operators on this single enumeration. s1 is the
/// vector-slot transform and s2 the covector-slot one.
class Sl3Case {
 public:
  Sl3Case(ContextPtr ctx, std::size_t budget = kDefaultBudget) : ctx_(std::move(ctx)) {
    quad_ = enumerate_quadric(3, ctx_, budget);
    set_ = quad_->points();
    const int q = ctx_->q();
    const Field& f = *ctx_->field();
    cube_ = std::size_t(q) * std::size_t(q) * std::size_t(q);
    const std::size_t n = set_->size();
    vec_key_.resize(n);
    cov_key_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      vec_key_[i] = std::uint32_t(key3(quad_->u(i)));
      cov_key_[i] = std::uint32_t(key3(quad_->u_dual(i)));
    }
    lookup_.assign(cube_ * cube_, -1);
    for (std::size_t i = 0; i < n; ++i) lookup_[vec_key_[i] * cube_ + cov_key_[i]] = std::int32_t(i);
    vecs_.resize(cube_);
    for (std::size_t k = 0; k < cube_; ++k) vecs_[k] = unkey3(k);

    // Scaling of one slot at a time.
    vec_scaled_.resize(n * std::size_t(q - 1));
    cov_scaled_.resize(n * std::size_t(q - 1));
    for (std::size_t i = 0; i < n; ++i)
      for (int l = 1; l < q; ++l) {
        std::array<Code, 3> sv{}, sc{};
        for (int k = 0; k < 3; ++k) {
          sv[std::size_t(k)] = f.mul(Code(l), quad_->u(i)[k]);
          sc[std::size_t(k)] = f.mul(Code(l), quad_->u_dual(i)[k]);
        }
        vec_scaled_[i * std::size_t(q - 1) + std::size_t(l - 1)] = std::uint32_t(index(key3(sv.data()), cov_key_[i]));
        cov_scaled_[i * std::size_t(q - 1) + std::size_t(l - 1)] = std::uint32_t(index(vec_key_[i], key3(sc.data())));
      }

    vec_op_ = std::make_shared<KernelOperator>(bk_operator(false));
    cov_op_ = std::make_shared<KernelOperator>(bk_operator(true));
    kl_op_ = std::make_shared<KernelOperator>(
        quad_->kernel_operator(BigRational::power(q, -3)).renamed("SL3 Kloosterman transform"));

    auto orbit = [&](const std::vector<std::uint32_t>* table, bool diagonal) {
      return [this, table, diagonal, q](std::size_t x) {
        std::vector<std::size_t> o;
        for (int l = 1; l < q; ++l)
          o.push_back(diagonal ? quad_->scaled(x, Code(l)) : (*table)[x * std::size_t(q - 1) + std::size_t(l - 1)]);
        return o;
      };
    };
    KernelOperator pv = group_averaging_projector(set_, orbit(&vec_scaled_, false), "vector-slot projector");
    KernelOperator pc = group_averaging_projector(set_, orbit(&cov_scaled_, false), "covector-slot projector");
    KernelOperator pd = group_averaging_projector(set_, orbit(nullptr, true), "diagonal projector");
    projectors_ = {std::make_shared<KernelOperator>(pv), std::make_shared<KernelOperator>(pc),
                   std::make_shared<KernelOperator>(pd)};
    KernelOperator both = compose(pc, pv, CompositionMode::Materialized);
    sprime_ = std::make_shared<KernelOperator>(compose(pd, both, CompositionMode::Materialized).renamed("S' projector"));
  }

  const ContextPtr& ctx() const { return ctx_; }
  const QuadricSet& quadric() const { return *quad_; }
  const QuadricPtr& quadric_ptr() const { return quad_; }
  const SetPtr& set() const { return set_; }
  int q() const { return ctx_->q(); }

  /// Unchecked operators (no S' gate).
  const KernelOperator& vec_operator() const { return *vec_op_; }
  const KernelOperator& covec_operator() const { return *cov_op_; }
  const KernelOperator& kloosterman_operator() const { return *kl_op_; }
  const KernelOperator& sprime_projector() const { return *sprime_; }
  /// The vector-slot, covector-slot and diagonal averaging projectors.
  const KernelOperator& slot_projector(int which) const { return *projectors_.at(std::size_t(which)); }

  FunctionOnSet project_sprime(const FunctionOnSet& f) const { return sprime_->apply(f); }
  bool in_sprime(const FunctionOnSet& f) const { return sprime_->apply(f).values() == f.values(); }

  /// dim S' as the trace of its projector.
  std::int64_t sprime_dimension() const {
    const auto& cols = dynamic_cast<const detail::SparseImpl&>(sprime_->impl()).columns();
    BigRational tr;
    for (std::size_t x = 0; x < cols.size(); ++x)
      for (const auto& [y, c] : cols[x])
        if (y == x) tr += c;
    if (!tr.is_integer() || !tr.is_small()) throw std::logic_error("projector trace is not an integer");
    return tr.small_num();
  }

  FunctionOnSet bk_vec(const FunctionOnSet& f) const { return vec_op_->apply(gate(f)); }
  FunctionOnSet bk_covec(const FunctionOnSet& f) const { return cov_op_->apply(gate(f)); }
  FunctionOnSet kloosterman(const FunctionOnSet& f) const { return kl_op_->apply(f); }

  /// Letters applied right to left.
  FunctionOnSet weyl_action(const std::vector<WeylLetter>& word, const FunctionOnSet& f) const {
    FunctionOnSet cur = gate(f);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      cur = (*it == WeylLetter::S1 ? vec_op_ : cov_op_)->apply(cur);
    return cur;
  }
  FunctionOnSet weyl_action(const std::string& word, const FunctionOnSet& f) const { return weyl_action(parse_weyl_word(word), f); }

  /// The composite s1 s2 s1 as one triple sum, scaled by q^-3: over the support
  /// of f at (c1, r3), then c2 in r3-perp, r1 in c2-perp and c3 in r1-perp, with
  /// every intermediate vector nonzero.
  FunctionOnSet composite_triple_sum(const FunctionOnSet& f) const {
    gate(f);
    const int p = ctx_->p(), q = ctx_->q();
    const std::size_t n = set_->size();
    std::vector<std::uint32_t> support;
    std::vector<const CyclotomicNumber*> vals;
    for (std::size_t x = 0; x < n; ++x)
      if (!f[x].is_zero() && cov_key_[x] != 0) {
        support.push_back(std::uint32_t(x));
        vals.push_back(&f[x]);
      }
    const BigRational scale = BigRational::power(q, -3);
    auto perp = [&](std::size_t key, bool include_zero) {
      std::vector<std::uint32_t> out;
      for (std::size_t k = include_zero ? 0 : 1; k < cube_; ++k)
        if (dot3(vecs_[key].data(), vecs_[k].data()) == 0) out.push_back(std::uint32_t(k));
      return out;
    };
    std::vector<std::vector<std::uint32_t>> perp_nz(cube_), perp_all(cube_);
    auto perp_of = [&](std::size_t key, bool include_zero) -> const std::vector<std::uint32_t>& {
      auto& slot = include_zero ? perp_all[key] : perp_nz[key];
      if (slot.empty()) slot = perp(key, include_zero);
      return slot;
    };

    detail::IntegralValues ints = detail::to_integral(vals, p);
    const double terms = double(support.size() + 1) * double(cube_) * double(cube_);
    const bool fast = ints.ok && double(ints.max_abs) * terms < 4e18;
    std::vector<std::int64_t> full(fast ? n * std::size_t(p) : 0, 0);
    std::vector<CyclotomicNumber> slow(fast ? 0 : n, CyclotomicNumber::zero(p));

    for (std::size_t s = 0; s < support.size(); ++s) {
      const std::size_t x = support[s];
      const std::uint32_t r3 = cov_key_[x];
      const Code* c1 = quad_->u(x);
      for (std::uint32_t c2 : perp_of(r3, false)) {
        const int e1 = ctx_->psi_exponent(ratio_label(c1, vecs_[c2].data(), vecs_[r3].data()));
        for (std::uint32_t r1 : perp_of(c2, false)) {
          const int e2 = ctx_->psi_exponent(ratio_label(vecs_[r3].data(), vecs_[r1].data(), vecs_[c2].data()));
          for (std::uint32_t c3 : perp_of(r1, true)) {
            const int e3 = ctx_->psi_exponent(ratio_label(vecs_[c2].data(), vecs_[c3].data(), vecs_[r1].data()));
            const int e = (e1 + e2 + e3) % p;
            const std::size_t y = std::size_t(index(c3, r1));
            if (fast) {
              const std::int64_t* v = &ints.numerators[s * std::size_t(p - 1)];
              std::int64_t* out = &full[y * std::size_t(p)];
              for (int j = 0; j < p - 1; ++j) {
                int k = j + e;
                if (k >= p) k -= p;
                out[k] += v[j];
              }
            } else {
              slow[y] += vals[s]->times_zeta_power(e);
            }
          }
        }
      }
    }
    std::vector<CyclotomicNumber> out(n, CyclotomicNumber::zero(p));
    for (std::size_t y = 0; y < n; ++y) {
      if (fast) {
        std::vector<detail::i128> wide(static_cast<std::size_t>(p));
        for (int k = 0; k < p; ++k) wide[std::size_t(k)] = full[y * std::size_t(p) + std::size_t(k)];
        out[y] = detail::from_full_integral(wide.data(), p, ints.denominator, scale);
      } else {
        out[y] = slow[y].scaled(scale);
      }
    }
    return FunctionOnSet(set_, std::move(out));
  }

  /// (g f)(v, v_dual) = f(g^-1 v, v_dual g), so that g moves points by
  /// (v, v_dual) -> (g v, v_dual g^-1).
  FunctionOnSet act(const RectMatrix& g, const FunctionOnSet& f) const {
    require_sl3(g);
    RectMatrix gi = g.inverse();
    std::vector<CyclotomicNumber> out(set_->size(), CyclotomicNumber::zero(ctx_->p()));
    for (std::size_t i = 0; i < set_->size(); ++i) {
      std::vector<Code> v(quad_->u(i), quad_->u(i) + 3), vd(quad_->u_dual(i), quad_->u_dual(i) + 3);
      auto gv = gi.apply(v);
      auto vg = g.apply_left(vd);
      out[i] = f[std::size_t(index(key3(gv.data()), key3(vg.data())))];
    }
    return FunctionOnSet(set_, std::move(out));
  }

  /// Index of lambda * v in the vector slot only (or covector slot only).
  std::size_t vec_scaled(std::size_t i, Code lambda) const { return slot_scaled(vec_scaled_, i, lambda, true); }
  std::size_t covec_scaled(std::size_t i, Code lambda) const { return slot_scaled(cov_scaled_, i, lambda, false); }

 private:
  std::size_t key3(const Code* c) const {
    const std::size_t q = std::size_t(ctx_->q());
    return (std::size_t(c[0]) * q + c[1]) * q + c[2];
  }
  std::array<Code, 3> unkey3(std::size_t k) const {
    const std::size_t q = std::size_t(ctx_->q());
    return {Code(k / (q * q)), Code(k / q % q), Code(k % q)};
  }
  std::int32_t index(std::size_t vkey, std::size_t ckey) const {
    std::int32_t i = lookup_[vkey * cube_ + ckey];
    if (i < 0) throw std::logic_error("point is not on the quadric");
    return i;
  }
  Code dot3(const Code* a, const Code* b) const {
    const Field& f = *ctx_->field();
    return f.add(f.add(f.mul(a[0], b[0]), f.mul(a[1], b[1])), f.mul(a[2], b[2]));
  }
  /// (a x b)_k / r_k at the first nonzero coordinate k of r.
  Code ratio_label(const Code* a, const Code* b, const Code* r) const {
    const Field& f = *ctx_->field();
    int k = 0;
    while (r[k] == 0) ++k;
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    Code c = f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    return f.div(c, r[k]);
  }
  std::size_t slot_scaled(const std::vector<std::uint32_t>& table, std::size_t i, Code lambda, bool vec) const {
    if (lambda == 0) return std::size_t(vec ? index(0, cov_key_[i]) : index(vec_key_[i], 0));
    return table[i * std::size_t(q() - 1) + std::size_t(lambda - 1)];
  }

  // Kernel psi(ratio(u x v, v_dual)) on the fiber over a fixed v_dual (or the
  // dual version), as a bilinear label <u, (v x e_k) / v_dual_k>.
  KernelOperator bk_operator(bool covec) const {
    const Field& f = *ctx_->field();
    const std::size_t n = set_->size();
    BilinearKernelSpec spec;
    spec.width = 3;
    spec.values = ctx_->psi_table();
    spec.left_block.resize(n);
    spec.right_block.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Code* moving = covec ? quad_->u_dual(i) : quad_->u(i);
      const Code* fixed = covec ? quad_->u(i) : quad_->u_dual(i);
      const std::uint32_t block = covec ? vec_key_[i] : cov_key_[i];
      spec.left.insert(spec.left.end(), moving, moving + 3);
      spec.left_block[i] = block == 0 ? -1 : std::int32_t(block);
      spec.right_block[i] = spec.left_block[i];
      std::array<Code, 3> r{0, 0, 0};
      if (block != 0) {
        int k = 0;
        while (fixed[k] == 0) ++k;
        const Code inv = f.inv(fixed[k]);
        // u . (m x e_k) = (u x m)_k, with m the moving slot of the output.
        const int a = (k + 1) % 3, b = (k + 2) % 3;
        r[std::size_t(a)] = f.mul(moving[b], inv);
        r[std::size_t(b)] = f.mul(f.neg(moving[a]), inv);
      }
      spec.right.insert(spec.right.end(), r.begin(), r.end());
    }
    return bilinear_kernel_operator(set_, set_, std::move(spec), BigRational(1, ctx_->q()),
                                    covec ? "BK covector transform" : "BK vector transform");
  }

  const FunctionOnSet& gate(const FunctionOnSet& f) const {
    if (!in_sprime(f)) throw std::invalid_argument("input outside restricted space S′");
    return f;
  }

  ContextPtr ctx_;
  QuadricPtr quad_;
  SetPtr set_;
  std::size_t cube_ = 0;
  std::vector<std::uint32_t> vec_key_, cov_key_;
  std::vector<std::int32_t> lookup_;
  std::vector<std::array<Code, 3>> vecs_;
  std::vector<std::uint32_t> vec_scaled_, cov_scaled_;
  std::shared_ptr<KernelOperator> vec_op_, cov_op_, kl_op_, sprime_;
  std::vector<std::shared_ptr<KernelOperator>> projectors_;
};

inline FunctionOnSet bk_transform_vec(const Sl3Case& c, const FunctionOnSet& f) { return c.bk_vec(f); }
inline FunctionOnSet bk_transform_covec(const Sl3Case& c, const FunctionOnSet& f) { return c.bk_covec(f); }
inline FunctionOnSet project_sprime(const Sl3Case& c, const FunctionOnSet& f) { return c.project_sprime(f); }
inline FunctionOnSet composite_triple_sum(const Sl3Case& c, const FunctionOnSet& f) { return c.composite_triple_sum(f); }
inline FunctionOnSet sl3_kloosterman(const Sl3Case& c, const FunctionOnSet& f) { return c.kloosterman(f); }
inline FunctionOnSet weyl_action(const Sl3Case& c, const std::string& word, const FunctionOnSet& f) {
  return c.weyl_action(word, f);
}

}  // namespace parafourier
