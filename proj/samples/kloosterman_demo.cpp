// Kloosterman sums over F_7 and F_9: exact values in Q(zeta_p), their
// complex embeddings, and the Weil bound.

#include <cmath>
#include <iostream>

#include "parafourier/characters.hpp"

using namespace parafourier;

int main() {
  bool ok = true;
  for (int q : {7, 9}) {
    auto ctx = CharacterContext::make(FieldSpec::from_q(q));
    std::cout << "F_" << q << "  (2 sqrt(q) = " << 2 * std::sqrt(double(q)) << ")\n";
    for (const auto& a : enumerate_field(ctx->field())) {
      const CyclotomicNumber& k = ctx->kl(a.code());
      double re = k.to_complex().real();
      std::cout << "  Kl(" << a.to_string() << ") = " << k << "  ~ " << re << '\n';
      ok = ok && std::abs(re) <= 2 * std::sqrt(double(q)) + 1e-6;
    }
  }
  return ok ? 0 : 1;
}
