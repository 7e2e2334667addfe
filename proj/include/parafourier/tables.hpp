#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "parafourier/suites.hpp"

namespace parafourier {

inline std::string format_double(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header a,c0..c_{p-2},re,im then one row per field code a.
inline std::string kloosterman_csv(const CharacterContext& ctx) {
  std::ostringstream os;
  os << "a";
  for (int i = 0; i < ctx.p() - 1; ++i) os << ",c" << i;
  os << ",re,im\n";
  for (int a = 0; a < ctx.q(); ++a) {
    const CyclotomicNumber& v = ctx.kl(Code(a));
    os << a;
    for (const auto& c : v.coefficients()) os << ',' << c.to_string();
    auto z = v.to_complex();
    os << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  }
  return os.str();
}

struct CasesForRow {
  Stratum stratum;
  BigRational formula;
  std::string brute_force;  // the common brute-force value, or "empty"
  bool match = false;
  std::size_t pairs = 0;
};

/// Brute-force rows for the six strata, same pair selection as the quadric suite.
inline std::vector<CasesForRow> casesfor_rows(const QuadricSet& X, std::uint64_t seed, int samples) {
  Rng rng(seed);
  const bool exhaustive = double(X.size()) * double(X.size()) <= kExhaustiveCasePairs;
  std::vector<CasesForRow> rows;
  for (Stratum s : kAllStrata) {
    CasesForRow r{s, case_sum_formula(s, X.d(), X.q()), "empty", true, 0};
    auto pairs = stratum_pairs(X, s, exhaustive, std::size_t(std::max(samples, 200)), rng);
    r.pairs = pairs.size();
    const CyclotomicNumber want = CyclotomicNumber::rational(X.ctx()->p(), r.formula);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      CyclotomicNumber got = double_kernel_sum(X, pairs[k].first, pairs[k].second);
      const std::string text = got.is_rational() ? got.coefficient(0).to_string() : got.to_string();
      if (k == 0) r.brute_force = text;
      if (!(got == want)) {
        r.match = false;
        r.brute_force = text;
        break;
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Header stratum,formula,brute_force,match,pairs.
inline std::string casesfor_csv(const std::vector<CasesForRow>& rows) {
  std::ostringstream os;
  os << "stratum,formula,brute_force,match,pairs\n";
  for (const auto& r : rows)
    os << stratum_name(r.stratum) << ',' << r.formula.to_string() << ',' << r.brute_force << ',' << (r.match ? "true" : "false") << ','
       << r.pairs << '\n';
  return os.str();
}

}  // namespace parafourier
