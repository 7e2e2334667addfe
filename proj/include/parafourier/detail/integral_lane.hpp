#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "parafourier/cyclotomic.hpp"

namespace parafourier::detail {

/// A list of cyclotomic values rewritten over one common integer denominator,
/// so hot loops can accumulate plain int64 coefficients.
struct IntegralValues {
  bool ok = false;
  std::int64_t denominator = 1;
  int width = 0;                      // p - 1 coefficients per value
  std::vector<std::int64_t> numerators;  // values.size() * width
  std::int64_t max_abs = 0;
};

inline bool lcm_fits(std::int64_t a, std::int64_t b, std::int64_t& out) {
  std::int64_t g = std::int64_t(gcd64(std::uint64_t(a), std::uint64_t(b)));
  i128 l = i128(a / g) * b;
  if (l > i128(std::int64_t(1) << 62)) return false;
  out = std::int64_t(l);
  return true;
}

/// Converts selected values; fails (ok = false) if anything leaves 62 bits.
inline IntegralValues to_integral(const std::vector<const CyclotomicNumber*>& values, int p) {
  IntegralValues out;
  out.width = p - 1;
  std::int64_t den = 1;
  for (const auto* v : values)
    for (const auto& c : v->coefficients()) {
      if (!c.is_small()) return out;
      if (c.small_den() != 1 && !lcm_fits(den, c.small_den(), den)) return out;
    }
  out.numerators.resize(values.size() * std::size_t(out.width));
  std::size_t k = 0;
  for (const auto* v : values)
    for (const auto& c : v->coefficients()) {
      i128 n = i128(c.small_num()) * (den / c.small_den());
      if (n > i128(std::int64_t(1) << 62) || n < -i128(std::int64_t(1) << 62)) return out;
      out.numerators[k++] = std::int64_t(n);
      std::int64_t a = n < 0 ? -std::int64_t(n) : std::int64_t(n);
      if (a > out.max_abs) out.max_abs = a;
    }
  out.denominator = den;
  out.ok = true;
  return out;
}

/// Multiplies a value (p-1 int64 coefficients) by an accumulated bucket and adds
/// the product in the full basis of length p.
inline void convolve_into(const std::int64_t* a, const std::int64_t* b, int p, i128* full) {
  for (int i = 0; i < p - 1; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < p - 1; ++j) {
      int k = i + j;
      if (k >= p) k -= p;
      full[k] += i128(a[i]) * b[j];
    }
  }
}

/// Canonical value (full[0..p-1] - full[p-1]) / denominator * scale.
inline CyclotomicNumber from_full_integral(const i128* full, int p, std::int64_t denominator, const BigRational& scale) {
  std::vector<BigRational> c(std::size_t(p - 1));
  const i128 top = full[p - 1];
  for (int i = 0; i < p - 1; ++i) {
    i128 v = full[i] - top;
    if (v == 0) continue;
    c[std::size_t(i)] = BigRational::from_i128(v, denominator);
    if (!scale.is_one()) c[std::size_t(i)] *= scale;
  }
  return CyclotomicNumber(p, std::move(c));
}

}  // namespace parafourier::detail
