#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/cyclotomic.hpp"
#include "parafourier/finite_field.hpp"

namespace parafourier {

/// A finite set of points, each a fixed-width tuple of field codes, indexed
/// 0..size-1 in lexicographic order of the tuples.
///
/// Tuple order coincides with order by the base-q number whose most significant
/// digit is the first coordinate, so a point (u, w) sorts by (enc(u), enc(w)).
class IndexedSet {
 public:
  IndexedSet(std::string description, FieldPtr field, int width, std::vector<Code> coords)
      : description_(std::move(description)), field_(std::move(field)), width_(width) {
    if (width_ < 1) throw std::invalid_argument("point width must be positive");
    if (coords.size() % std::size_t(width_) != 0) throw std::invalid_argument("coordinate count not a multiple of width");
    const std::size_t n = coords.size() / std::size_t(width_);
    std::vector<std::pair<std::uint64_t, std::size_t>> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = {key_of(&coords[i * std::size_t(width_)]), i};
    std::sort(order.begin(), order.end());
    for (std::size_t i = 1; i < n; ++i)
      if (order[i].first == order[i - 1].first) throw std::invalid_argument("duplicate point in indexed set");
    coords_.resize(coords.size());
    keys_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      keys_[i] = order[i].first;
      std::copy_n(&coords[order[i].second * std::size_t(width_)], width_, &coords_[i * std::size_t(width_)]);
    }
    // A direct lookup table when the ambient space is small enough.
    double ambient = 1;
    for (int k = 0; k < width_; ++k) ambient *= field_->q();
    if (ambient <= double(1u << 24)) {
      table_.assign(std::size_t(ambient), kAbsent);
      for (std::size_t i = 0; i < n; ++i) table_[keys_[i]] = std::uint32_t(i);
    }
  }

  const std::string& description() const { return description_; }
  const FieldPtr& field() const { return field_; }
  int width() const { return width_; }
  std::size_t size() const { return keys_.size(); }

  /// Coordinates of point i (width() codes).
  const Code* point(std::size_t i) const { return &coords_[i * std::size_t(width_)]; }
  std::vector<Code> decode(std::size_t i) const {
    if (i >= size()) throw std::out_of_range("point index out of range");
    return {point(i), point(i) + width_};
  }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }

  std::uint64_t key_of(const Code* tuple) const {
    std::uint64_t k = 0;
    for (int j = 0; j < width_; ++j) k = k * std::uint64_t(field_->q()) + tuple[j];
    return k;
  }

  std::optional<std::size_t> find(const Code* tuple) const {
    std::uint64_t k = key_of(tuple);
    if (!table_.empty()) {
      if (k >= table_.size() || table_[k] == kAbsent) return std::nullopt;
      return table_[k];
    }
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) return std::nullopt;
    return std::size_t(it - keys_.begin());
  }
  std::optional<std::size_t> find(const std::vector<Code>& tuple) const {
    if (int(tuple.size()) != width_) throw std::invalid_argument("tuple width mismatch");
    return find(tuple.data());
  }
  std::size_t encode(const Code* tuple) const {
    auto i = find(tuple);
    if (!i) throw std::invalid_argument("point not in " + description_);
    return *i;
  }
  std::size_t encode(const std::vector<Code>& tuple) const {
    if (int(tuple.size()) != width_) throw std::invalid_argument("tuple width mismatch");
    return encode(tuple.data());
  }

  std::vector<FieldElement> decode_elements(std::size_t i) const {
    std::vector<FieldElement> out;
    for (int j = 0; j < width_; ++j) out.emplace_back(field_, point(i)[j]);
    return out;
  }

 private:
  static constexpr std::uint32_t kAbsent = 0xffffffffu;

  std::string description_;
  FieldPtr field_;
  int width_;
  std::vector<Code> coords_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> table_;
};

using SetPtr = std::shared_ptr<const IndexedSet>;

/// Every width-tuple over F_q, in lexicographic order.
inline SetPtr full_space(std::string description, const FieldPtr& field, int width) {
  std::size_t n = 1;
  for (int k = 0; k < width; ++k) n *= std::size_t(field->q());
  std::vector<Code> coords(n * std::size_t(width));
  std::vector<Code> cur(std::size_t(width), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(cur.begin(), cur.end(), &coords[i * std::size_t(width)]);
    for (int j = width - 1; j >= 0; --j) {
      if (++cur[std::size_t(j)] < field->q()) break;
      cur[std::size_t(j)] = 0;
    }
  }
  return std::make_shared<const IndexedSet>(std::move(description), field, width, std::move(coords));
}

/// A dense exact-valued function on an indexed set; values lie in Q(zeta_p)
/// for p the characteristic of the set's field.
class FunctionOnSet {
 public:
  FunctionOnSet() = default;
  explicit FunctionOnSet(SetPtr set) : set_(std::move(set)) {
    if (!set_) throw std::invalid_argument("function needs a set");
    values_.assign(set_->size(), CyclotomicNumber::zero(prime()));
  }
  FunctionOnSet(SetPtr set, std::vector<CyclotomicNumber> values) : set_(std::move(set)), values_(std::move(values)) {
    if (!set_) throw std::invalid_argument("function needs a set");
    if (values_.size() != set_->size()) throw std::invalid_argument("value count does not match set size");
    for (const auto& v : values_)
      if (v.prime() != prime()) throw std::invalid_argument("mismatched cyclotomic primes");
  }

  static FunctionOnSet zero(const SetPtr& set) { return FunctionOnSet(set); }
  static FunctionOnSet delta(const SetPtr& set, std::size_t i) {
    FunctionOnSet f(set);
    f.values_.at(i) = CyclotomicNumber::one(f.prime());
    return f;
  }
  static FunctionOnSet constant(const SetPtr& set, const CyclotomicNumber& c) {
    FunctionOnSet f(set);
    std::fill(f.values_.begin(), f.values_.end(), c);
    return f;
  }

  const SetPtr& set() const { return set_; }
  int prime() const { return set_->field()->p(); }
  std::size_t size() const { return values_.size(); }
  const CyclotomicNumber& operator[](std::size_t i) const { return values_[i]; }
  const CyclotomicNumber& at(std::size_t i) const { return values_.at(i); }
  const std::vector<CyclotomicNumber>& values() const { return values_; }

  /// Copy with one value replaced.
  FunctionOnSet with_value(std::size_t i, CyclotomicNumber v) const {
    FunctionOnSet out(*this);
    out.values_.at(i) = std::move(v);
    return out;
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const CyclotomicNumber& v) { return v.is_zero(); });
  }
  std::size_t support_size() const {
    return std::size_t(std::count_if(values_.begin(), values_.end(), [](const CyclotomicNumber& v) { return !v.is_zero(); }));
  }

  FunctionOnSet& operator+=(const FunctionOnSet& o) {
    same_set(o);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!o.values_[i].is_zero()) values_[i] += o.values_[i];
    return *this;
  }
  FunctionOnSet& operator-=(const FunctionOnSet& o) {
    same_set(o);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!o.values_[i].is_zero()) values_[i] -= o.values_[i];
    return *this;
  }
  friend FunctionOnSet operator+(FunctionOnSet a, const FunctionOnSet& b) { return a += b; }
  friend FunctionOnSet operator-(FunctionOnSet a, const FunctionOnSet& b) { return a -= b; }
  FunctionOnSet scaled(const BigRational& r) const {
    FunctionOnSet out(*this);
    for (auto& v : out.values_)
      if (!v.is_zero()) v = v.scaled(r);
    return out;
  }
  FunctionOnSet times(const CyclotomicNumber& c) const {
    FunctionOnSet out(*this);
    for (auto& v : out.values_)
      if (!v.is_zero()) v = v * c;
    return out;
  }

  friend bool operator==(const FunctionOnSet& a, const FunctionOnSet& b) {
    return a.set_ == b.set_ && a.values_ == b.values_;
  }

 private:
  void same_set(const FunctionOnSet& o) const {
    if (set_ != o.set_) throw std::invalid_argument("functions live on different sets");
  }

  SetPtr set_;
  std::vector<CyclotomicNumber> values_;
};

}  // namespace parafourier
