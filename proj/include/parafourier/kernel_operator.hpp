#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parafourier/detail/integral_lane.hpp"
#include "parafourier/detail/parallel.hpp"
#include "parafourier/function_space.hpp"

namespace parafourier {

class KernelOperator;

namespace detail {

class OperatorImpl {
 public:
  virtual ~OperatorImpl() = default;
  /// Unscaled result: sum over x of f(x) * kernel(x, y).
  virtual FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr& codomain, const BigRational& scale) const = 0;
  virtual CyclotomicNumber kernel(std::size_t x, std::size_t y) const = 0;
};

}  // namespace detail

/// Data for a kernel of the form values[label(x, y)], where the label is the
/// field element sum_k left[x][k] * right[y][k].
///
/// Optional blocks make the kernel vanish unless left_block[x] equals
/// right_block[y]; a negative block id marks a point where it always vanishes.
struct BilinearKernelSpec {
  int width = 0;
  std::vector<Code> left;
  std::vector<Code> right;
  std::vector<CyclotomicNumber> values;
  std::vector<std::int32_t> left_block;
  std::vector<std::int32_t> right_block;
};

/// Sparse matrix stored by domain column: column x lists (y, coefficient).
using SparseColumns = std::vector<std::vector<std::pair<std::uint32_t, BigRational>>>;

enum class CompositionMode { Lazy, Materialized };

/// A linear map Fun(domain) -> Fun(codomain) given by a kernel and a rational
/// scale: (op f)(y) = scale * sum over x of f(x) * kernel(x, y).
class KernelOperator {
 public:
  KernelOperator(SetPtr domain, SetPtr codomain, std::shared_ptr<const detail::OperatorImpl> impl, BigRational scale,
                 std::string name)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), impl_(std::move(impl)), scale_(std::move(scale)),
        name_(std::move(name)) {}

  const SetPtr& domain() const { return domain_; }
  const SetPtr& codomain() const { return codomain_; }
  const BigRational& scale() const { return scale_; }
  const std::string& name() const { return name_; }
  const detail::OperatorImpl& impl() const { return *impl_; }
  const std::shared_ptr<const detail::OperatorImpl>& impl_ptr() const { return impl_; }

  FunctionOnSet apply(const FunctionOnSet& f) const {
    if (f.set() != domain_ && (f.set()->size() != domain_->size() || f.set()->description() != domain_->description()))
      throw std::invalid_argument("function set does not match operator domain (" + name_ + ")");
    return impl_->apply_unscaled(f, codomain_, scale_);
  }
  FunctionOnSet operator()(const FunctionOnSet& f) const { return apply(f); }

  /// Unscaled kernel value.
  CyclotomicNumber kernel(std::size_t x, std::size_t y) const { return impl_->kernel(x, y); }
  /// Matrix entry scale * kernel(x, y), which equals apply(delta_x)(y).
  CyclotomicNumber entry(std::size_t x, std::size_t y) const { return impl_->kernel(x, y).scaled(scale_); }

  KernelOperator rescaled(const BigRational& s) const { return {domain_, codomain_, impl_, s, name_}; }
  KernelOperator renamed(std::string n) const { return {domain_, codomain_, impl_, scale_, std::move(n)}; }

 private:
  SetPtr domain_;
  SetPtr codomain_;
  std::shared_ptr<const detail::OperatorImpl> impl_;
  BigRational scale_;
  std::string name_;
};

namespace detail {

/// Generic kernel given as a function of index pairs.
class FunctionKernelImpl final : public OperatorImpl {
 public:
  using Fn = std::function<CyclotomicNumber(std::size_t, std::size_t)>;
  FunctionKernelImpl(std::size_t domain_size, Fn fn) : domain_size_(domain_size), fn_(std::move(fn)) {}

  FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr& codomain, const BigRational& scale) const override {
    std::vector<std::size_t> nz;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (!f[x].is_zero()) nz.push_back(x);
    std::vector<CyclotomicNumber> out(codomain->size(), CyclotomicNumber::zero(f.prime()));
    parallel_for(codomain->size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t y = b; y < e; ++y) {
        CyclotomicNumber acc = CyclotomicNumber::zero(f.prime());
        for (auto x : nz) {
          CyclotomicNumber k = fn_(x, y);
          if (!k.is_zero()) acc += f[x] * k;
        }
        out[y] = acc.scaled(scale);
      }
    });
    return FunctionOnSet(codomain, std::move(out));
  }
  CyclotomicNumber kernel(std::size_t x, std::size_t y) const override { return fn_(x, y); }

 private:
  std::size_t domain_size_;
  Fn fn_;
};

/// Kernel values[label(x, y)] with a bilinear label; see BilinearKernelSpec.
class BilinearKernelImpl final : public OperatorImpl {
 public:
  BilinearKernelImpl(FieldPtr field, BilinearKernelSpec spec, std::size_t domain_size, std::size_t codomain_size)
      : field_(std::move(field)), s_(std::move(spec)) {
    const std::size_t w = std::size_t(s_.width);
    if (s_.width < 1 || s_.left.size() != domain_size * w || s_.right.size() != codomain_size * w)
      throw std::invalid_argument("bilinear kernel coordinate arrays have the wrong size");
    if (int(s_.values.size()) != field_->q()) throw std::invalid_argument("bilinear kernel needs one value per field element");
    blocked_ = !s_.left_block.empty();
    if (blocked_ && (s_.left_block.size() != domain_size || s_.right_block.size() != codomain_size))
      throw std::invalid_argument("bilinear kernel block arrays have the wrong size");
    std::vector<const CyclotomicNumber*> ptrs;
    for (const auto& v : s_.values) ptrs.push_back(&v);
    value_ints_ = to_integral(ptrs, field_->p());
    values_integral_ = value_ints_.ok && value_ints_.denominator == 1 && value_ints_.max_abs < (1 << 20);
    prime_field_ = field_->m() == 1;
    if (s_.width > 16) throw std::invalid_argument("bilinear kernel width above 16 is not supported");
    if (prime_field_) choose_reduction();
  }

  Code label(std::size_t x, std::size_t y) const {
    return label_of(&s_.left[x * std::size_t(s_.width)], &s_.right[y * std::size_t(s_.width)]);
  }

  CyclotomicNumber kernel(std::size_t x, std::size_t y) const override {
    if (blocked_ && (s_.left_block[x] < 0 || s_.left_block[x] != s_.right_block[y])) return CyclotomicNumber::zero(field_->p());
    return s_.values[label(x, y)];
  }

  const BilinearKernelSpec& spec() const { return s_; }

  FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr& codomain, const BigRational& scale) const override {
    const int p = field_->p();
    // Nonzero inputs grouped by block, with coordinates copied contiguously.
    std::vector<std::uint32_t> nz;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (!f[x].is_zero() && (!blocked_ || s_.left_block[x] >= 0)) nz.push_back(std::uint32_t(x));
    std::int32_t nblocks = 1;
    if (blocked_) {
      for (auto b : s_.left_block) nblocks = std::max(nblocks, b + 1);
      for (auto b : s_.right_block) nblocks = std::max(nblocks, b + 1);
      std::stable_sort(nz.begin(), nz.end(), [&](std::uint32_t a, std::uint32_t b) { return s_.left_block[a] < s_.left_block[b]; });
    }
    std::vector<std::size_t> start(std::size_t(nblocks) + 1, 0);
    if (blocked_) {
      for (auto x : nz) ++start[std::size_t(s_.left_block[x]) + 1];
      for (std::size_t b = 0; b < std::size_t(nblocks); ++b) start[b + 1] += start[b];
    } else {
      start[1] = nz.size();
    }
    const std::size_t w = std::size_t(s_.width);
    std::vector<Code> coords(nz.size() * w);
    std::vector<const CyclotomicNumber*> vals;
    for (std::size_t c = 0; c < nz.size(); ++c) {
      std::copy_n(&s_.left[std::size_t(nz[c]) * w], w, &coords[c * w]);
      vals.push_back(&f[nz[c]]);
    }
    std::vector<CyclotomicNumber> out(codomain->size(), CyclotomicNumber::zero(p));
    IntegralValues ints;
    if (values_integral_) ints = to_integral(vals, p);
    bool fast = values_integral_ && ints.ok &&
                (nz.empty() || ints.max_abs <= (std::int64_t(1) << 61) / std::int64_t(nz.size() + 1));
    auto block_range = [&](std::size_t y) -> std::pair<std::size_t, std::size_t> {
      if (!blocked_) return {0, nz.size()};
      std::int32_t b = s_.right_block[y];
      if (b < 0) return {0, 0};
      return {start[std::size_t(b)], start[std::size_t(b) + 1]};
    };
    std::vector<std::uint16_t> soa;
    if (fast && prime_field_) {
      soa.resize(nz.size() * w);
      for (std::size_t c = 0; c < nz.size(); ++c)
        for (std::size_t k = 0; k < w; ++k) soa[k * nz.size() + c] = coords[c * w + k];
    }
    if (fast) {
      parallel_for(codomain->size(), [&](std::size_t yb, std::size_t ye) {
        const int q = field_->q(), pm1 = p - 1;
        std::vector<std::int64_t> bucket(std::size_t(q * pm1));
        std::vector<i128> full(static_cast<std::size_t>(p));
        std::vector<std::uint32_t> labels(nz.size());
        for (std::size_t y = yb; y < ye; ++y) {
          auto [cb, ce] = block_range(y);
          if (cb == ce) continue;
          std::fill(bucket.begin(), bucket.end(), 0);
          std::uint64_t touched = 0;
          const Code* r = &s_.right[y * w];
          if (prime_field_)
            touched = accumulate_prime(soa.data(), nz.size(), ints.numerators.data(), cb, ce, r, bucket.data(), labels.data());
          else
            touched = accumulate_table(coords.data(), ints.numerators.data(), cb, ce, r, bucket.data());
          std::fill(full.begin(), full.end(), 0);
          for (int l = 0; l < q; ++l)
            if (touched >> l & 1)
              convolve_into(&value_ints_.numerators[std::size_t(l * pm1)], &bucket[std::size_t(l * pm1)], p, full.data());
          out[y] = from_full_integral(full.data(), p, ints.denominator, scale);
        }
      });
    } else {
      parallel_for(codomain->size(), [&](std::size_t yb, std::size_t ye) {
        const int q = field_->q();
        std::vector<CyclotomicNumber> bucket(std::size_t(q), CyclotomicNumber::zero(p));
        for (std::size_t y = yb; y < ye; ++y) {
          auto [cb, ce] = block_range(y);
          if (cb == ce) continue;
          for (auto& b : bucket) b = CyclotomicNumber::zero(p);
          const Code* r = &s_.right[y * w];
          for (std::size_t c = cb; c < ce; ++c) bucket[label_of(&coords[c * w], r)] += *vals[c];
          CyclotomicNumber acc = CyclotomicNumber::zero(p);
          for (int l = 0; l < q; ++l)
            if (!bucket[std::size_t(l)].is_zero()) acc += s_.values[std::size_t(l)] * bucket[std::size_t(l)];
          out[y] = acc.scaled(scale);
        }
      });
    }
    return FunctionOnSet(codomain, std::move(out));
  }

 private:
  Code label_of(const Code* a, const Code* r) const {
    if (prime_field_) {
      int s = 0;
      for (int k = 0; k < s_.width; ++k) s += int(a[k]) * int(r[k]);
      return Code(s % field_->p());
    }
    Code acc = 0;
    for (int k = 0; k < s_.width; ++k) acc = field_->add(acc, field_->mul(a[k], r[k]));
    return acc;
  }

  // Labels for a run of candidates in two passes: a vectorizable dot product
  // over structure-of-arrays coordinates, then the bucket scatter.
  template <class Num>
  std::uint64_t accumulate_prime(const std::uint16_t* soa, std::size_t stride, const Num* nums, std::size_t cb,
                                 std::size_t ce, const Code* r, std::int64_t* bucket, std::uint32_t* labels) const {
    const std::uint32_t p = std::uint32_t(field_->p());
    const int pm1 = int(p) - 1, w = s_.width;
    const std::size_t n = ce - cb;
    std::fill_n(labels, n, 0u);
    for (int k = 0; k < w; ++k) {
      const std::uint32_t rk = r[k];
      if (rk == 0) continue;
      const std::uint16_t* col = soa + std::size_t(k) * stride + cb;
      for (std::size_t c = 0; c < n; ++c) labels[c] += col[c] * rk;
    }
    const std::uint32_t magic = magic_, shift = shift_;
    for (std::size_t c = 0; c < n; ++c) labels[c] -= p * ((labels[c] * magic) >> shift);
    std::uint64_t touched = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint32_t l = labels[c];
      touched |= std::uint64_t(1) << l;
      std::int64_t* b = bucket + l * std::uint32_t(pm1);
      const Num* v = nums + (cb + c) * std::size_t(pm1);
      for (int j = 0; j < pm1; ++j) b[j] += v[j];
    }
    return touched;
  }

  std::uint64_t accumulate_table(const Code* coords, const std::int64_t* nums, std::size_t cb, std::size_t ce, const Code* r,
                                 std::int64_t* bucket) const {
    const int pm1 = field_->p() - 1, w = s_.width;
    std::uint64_t touched = 0;
    for (std::size_t c = cb; c < ce; ++c) {
      int l = label_of(coords + c * std::size_t(w), r);
      touched |= std::uint64_t(1) << l;
      std::int64_t* b = bucket + l * pm1;
      const std::int64_t* v = nums + c * std::size_t(pm1);
      for (int j = 0; j < pm1; ++j) b[j] += v[j];
    }
    return touched;
  }

  // Division-free reduction mod p: s - p * ((s * magic) >> shift), checked
  // exhaustively over every reachable dot product.
  void choose_reduction() {
    const std::uint32_t p = std::uint32_t(field_->p());
    const std::uint32_t max_s = std::uint32_t(s_.width) * (p - 1) * (p - 1);
    for (std::uint32_t shift = 8; shift <= 24; ++shift) {
      std::uint64_t m = ((std::uint64_t(1) << shift) + p - 1) / p;
      if (m * max_s >= (std::uint64_t(1) << 32)) break;
      bool ok = true;
      for (std::uint32_t v = 0; v <= max_s && ok; ++v) ok = v - p * ((v * std::uint32_t(m)) >> shift) == v % p;
      if (ok) {
        magic_ = std::uint32_t(m);
        shift_ = shift;
        return;
      }
    }
    throw std::logic_error("no division-free reduction for this prime");
  }

  FieldPtr field_;
  BilinearKernelSpec s_;
  std::uint32_t magic_ = 0;
  std::uint32_t shift_ = 0;
  bool blocked_ = false;
  bool prime_field_ = true;
  IntegralValues value_ints_;
  bool values_integral_ = false;
};

/// Sparse rational matrix.
class SparseImpl final : public OperatorImpl {
 public:
  explicit SparseImpl(SparseColumns cols) : cols_(std::move(cols)) {}

  FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr& codomain, const BigRational& scale) const override {
    if (f.size() != cols_.size()) throw std::invalid_argument("sparse operator size mismatch");
    std::vector<CyclotomicNumber> out(codomain->size(), CyclotomicNumber::zero(f.prime()));
    for (std::size_t x = 0; x < cols_.size(); ++x) {
      if (f[x].is_zero()) continue;
      for (const auto& [y, c] : cols_[x]) out[y] += c.is_one() ? f[x] : f[x].scaled(c);
    }
    if (!scale.is_one())
      for (auto& v : out)
        if (!v.is_zero()) v = v.scaled(scale);
    return FunctionOnSet(codomain, std::move(out));
  }
  CyclotomicNumber kernel(std::size_t x, std::size_t y) const override {
    BigRational acc;
    for (const auto& [yy, c] : cols_.at(x))
      if (yy == y) acc += c;
    return CyclotomicNumber::rational(p_hint_, acc);
  }
  void set_prime(int p) { p_hint_ = p; }
  const SparseColumns& columns() const { return cols_; }

 private:
  SparseColumns cols_;
  int p_hint_ = 2;
};

/// Dense matrix of kernel values, domain-major.
class DenseImpl final : public OperatorImpl {
 public:
  DenseImpl(std::size_t rows, std::size_t cols, std::vector<CyclotomicNumber> entries)
      : rows_(rows), cols_(cols), m_(std::move(entries)) {}
  FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr& codomain, const BigRational& scale) const override {
    std::vector<CyclotomicNumber> out(cols_, CyclotomicNumber::zero(f.prime()));
    for (std::size_t x = 0; x < rows_; ++x) {
      if (f[x].is_zero()) continue;
      for (std::size_t y = 0; y < cols_; ++y)
        if (!m_[x * cols_ + y].is_zero()) out[y] += f[x] * m_[x * cols_ + y];
    }
    for (auto& v : out) v = v.scaled(scale);
    return FunctionOnSet(codomain, std::move(out));
  }
  CyclotomicNumber kernel(std::size_t x, std::size_t y) const override { return m_.at(x * cols_ + y); }

 private:
  std::size_t rows_, cols_;
  std::vector<CyclotomicNumber> m_;
};

/// outer after inner, evaluated one after the other.
class LazyCompositeImpl final : public OperatorImpl {
 public:
  LazyCompositeImpl(KernelOperator outer, KernelOperator inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}
  FunctionOnSet apply_unscaled(const FunctionOnSet& f, const SetPtr&, const BigRational& scale) const override {
    FunctionOnSet mid = inner_.apply(f);
    FunctionOnSet out = outer_.apply(mid);
    BigRational own = outer_.scale() * inner_.scale();
    if (scale == own) return out;
    return out.scaled(scale / own);
  }
  CyclotomicNumber kernel(std::size_t x, std::size_t y) const override {
    CyclotomicNumber acc = CyclotomicNumber::zero(outer_.codomain()->field()->p());
    for (std::size_t m = 0; m < inner_.codomain()->size(); ++m) {
      CyclotomicNumber a = inner_.kernel(x, m);
      if (a.is_zero()) continue;
      acc += a * outer_.kernel(m, y);
    }
    return acc;
  }

 private:
  KernelOperator outer_;
  KernelOperator inner_;
};

}  // namespace detail

inline KernelOperator function_kernel_operator(SetPtr domain, SetPtr codomain, detail::FunctionKernelImpl::Fn fn,
                                               BigRational scale = 1, std::string name = "kernel") {
  auto impl = std::make_shared<const detail::FunctionKernelImpl>(domain->size(), std::move(fn));
  return {std::move(domain), std::move(codomain), impl, std::move(scale), std::move(name)};
}

inline KernelOperator bilinear_kernel_operator(SetPtr domain, SetPtr codomain, BilinearKernelSpec spec, BigRational scale,
                                               std::string name) {
  if (domain->field()->spec() != codomain->field()->spec()) throw std::invalid_argument("operator sets over different fields");
  auto impl = std::make_shared<const detail::BilinearKernelImpl>(domain->field(), std::move(spec), domain->size(),
                                                                  codomain->size());
  return {std::move(domain), std::move(codomain), impl, std::move(scale), std::move(name)};
}

inline KernelOperator sparse_operator(SetPtr domain, SetPtr codomain, SparseColumns cols, std::string name) {
  if (cols.size() != domain->size()) throw std::invalid_argument("sparse operator needs one column per domain point");
  for (const auto& col : cols)
    for (const auto& e : col)
      if (e.first >= codomain->size()) throw std::invalid_argument("sparse operator row out of range");
  auto impl = std::make_shared<detail::SparseImpl>(std::move(cols));
  impl->set_prime(domain->field()->p());
  return {std::move(domain), std::move(codomain), std::shared_ptr<const detail::OperatorImpl>(impl), 1, std::move(name)};
}

inline KernelOperator identity_operator(const SetPtr& set) {
  SparseColumns cols(set->size());
  for (std::size_t x = 0; x < set->size(); ++x) cols[x].emplace_back(std::uint32_t(x), BigRational(1));
  return sparse_operator(set, set, std::move(cols), "identity");
}

/// Pullback along an index map: (T f)(y) = f(sigma(y)).
template <class Map>
KernelOperator pullback_operator(const SetPtr& domain, const SetPtr& codomain, Map&& sigma, std::string name = "pullback") {
  SparseColumns cols(domain->size());
  for (std::size_t y = 0; y < codomain->size(); ++y) {
    std::size_t x = sigma(y);
    if (x >= domain->size()) throw std::invalid_argument("pullback map leaves the domain");
    cols[x].emplace_back(std::uint32_t(y), BigRational(1));
  }
  return sparse_operator(domain, codomain, std::move(cols), std::move(name));
}

namespace detail {

inline SparseColumns sparse_product(const SparseColumns& outer, const SparseColumns& inner) {
  SparseColumns out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) {
    std::vector<std::pair<std::uint32_t, BigRational>> acc;
    for (const auto& [m, c1] : inner[x])
      for (const auto& [y, c2] : outer[m]) acc.emplace_back(y, c1 * c2);
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& e : acc) {
      if (!out[x].empty() && out[x].back().first == e.first)
        out[x].back().second += e.second;
      else
        out[x].push_back(std::move(e));
    }
    out[x].erase(std::remove_if(out[x].begin(), out[x].end(), [](const auto& e) { return e.second.is_zero(); }), out[x].end());
  }
  return out;
}

}  // namespace detail

/// outer after inner (inner is applied first). Materialized mode sums the
/// product kernel explicitly; for two sparse operators the result stays sparse.
inline KernelOperator compose(const KernelOperator& outer, const KernelOperator& inner,
                              CompositionMode mode = CompositionMode::Lazy) {
  if (inner.codomain()->size() != outer.domain()->size() || inner.codomain()->description() != outer.domain()->description())
    throw std::invalid_argument("cannot compose: middle sets differ (" + outer.name() + " after " + inner.name() + ")");
  std::string name = outer.name() + " * " + inner.name();
  if (mode == CompositionMode::Lazy) {
    auto impl = std::make_shared<const detail::LazyCompositeImpl>(outer, inner);
    return {inner.domain(), outer.codomain(), impl, outer.scale() * inner.scale(), name};
  }
  auto* so = dynamic_cast<const detail::SparseImpl*>(&outer.impl());
  auto* si = dynamic_cast<const detail::SparseImpl*>(&inner.impl());
  if (so && si) {
    auto op = sparse_operator(inner.domain(), outer.codomain(), detail::sparse_product(so->columns(), si->columns()), name);
    return op.rescaled(outer.scale() * inner.scale());
  }
  const std::size_t nd = inner.domain()->size(), nm = inner.codomain()->size(), nc = outer.codomain()->size();
  if (double(nd) * double(nc) > 4e6) throw std::invalid_argument("materialized composition too large");
  const int p = inner.domain()->field()->p();
  std::vector<CyclotomicNumber> left(nd * nm, CyclotomicNumber::zero(p)), right(nm * nc, CyclotomicNumber::zero(p));
  for (std::size_t x = 0; x < nd; ++x)
    for (std::size_t m = 0; m < nm; ++m) left[x * nm + m] = inner.kernel(x, m);
  for (std::size_t m = 0; m < nm; ++m)
    for (std::size_t y = 0; y < nc; ++y) right[m * nc + y] = outer.kernel(m, y);
  std::vector<CyclotomicNumber> prod(nd * nc, CyclotomicNumber::zero(p));
  detail::parallel_for(nd, [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x)
      for (std::size_t m = 0; m < nm; ++m) {
        const auto& a = left[x * nm + m];
        if (a.is_zero()) continue;
        for (std::size_t y = 0; y < nc; ++y)
          if (!right[m * nc + y].is_zero()) prod[x * nc + y] += a * right[m * nc + y];
      }
  });
  auto impl = std::make_shared<const detail::DenseImpl>(nd, nc, std::move(prod));
  return {inner.domain(), outer.codomain(), impl, outer.scale() * inner.scale(), name};
}

/// Exact agreement of two operators on every function of a list.
inline bool operators_equal_on(const std::vector<FunctionOnSet>& span, const KernelOperator& a, const KernelOperator& b) {
  if (a.domain()->size() != b.domain()->size() || a.codomain()->size() != b.codomain()->size())
    throw std::invalid_argument("operators have different shapes");
  for (const auto& f : span)
    if (!(a.apply(f).values() == b.apply(f).values())) return false;
  return true;
}

/// P f(x) = f(x) - (1/|O(x)|) * sum over y in O(x) of f(y), where O(x) is the
/// orbit of x (duplicates are ignored).
template <class Orbit>
KernelOperator group_averaging_projector(const SetPtr& set, Orbit&& orbit, std::string name = "projector") {
  SparseColumns cols(set->size());
  for (std::size_t x = 0; x < set->size(); ++x) {
    std::vector<std::size_t> o = orbit(x);
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    if (o.empty()) throw std::invalid_argument("empty orbit in averaging projector");
    if (!std::binary_search(o.begin(), o.end(), x)) throw std::invalid_argument("orbit does not contain its base point");
    BigRational w(1, std::int64_t(o.size()));
    // Row x of P, stored into the columns it touches.
    for (auto y : o) {
      BigRational c = -w;
      if (y == x) c += 1;
      if (!c.is_zero()) cols[y].emplace_back(std::uint32_t(x), c);
    }
  }
  for (auto& col : cols) std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return sparse_operator(set, set, std::move(cols), std::move(name));
}

}  // namespace parafourier
