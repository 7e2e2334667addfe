#pragma once

#include <vector>

#include "parafourier/function_space.hpp"
#include "parafourier/random.hpp"

namespace parafourier {

/// Cyclotomic number with integer coefficients in [-bound, bound].
inline CyclotomicNumber random_cyclotomic(int p, Rng& rng, int bound = 2) {
  std::vector<BigRational> c(static_cast<std::size_t>(p - 1));
  for (auto& v : c) v = BigRational(rng.between(-bound, bound));
  return CyclotomicNumber(p, std::move(c));
}

/// Random function; dense when support == 0, otherwise on that many random points.
inline FunctionOnSet random_function(const SetPtr& set, Rng& rng, std::size_t support = 0, int bound = 2) {
  const int p = set->field()->p();
  std::vector<CyclotomicNumber> v(set->size(), CyclotomicNumber::zero(p));
  if (support == 0) {
    for (auto& x : v) x = random_cyclotomic(p, rng, bound);
  } else {
    for (auto i : rng.sample_indices(set->size(), support)) v[i] = random_cyclotomic(p, rng, bound);
  }
  return FunctionOnSet(set, std::move(v));
}

}  // namespace parafourier
