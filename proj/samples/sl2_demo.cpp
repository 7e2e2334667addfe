// The SL2 transform on F_5^2: apply it twice to a delta function and watch
// the delta come back, then move a function by a group element.

#include <iostream>

#include "parafourier/sampling.hpp"
#include "parafourier/sl2.hpp"

using namespace parafourier;

int main() {
  auto ctx = CharacterContext::make(FieldSpec::prime_field(5));
  Sl2Plane plane(ctx);
  const FieldPtr& f = ctx->field();

  std::size_t x = plane.index_of({FieldElement(f, 1), FieldElement(f, 2)});
  FunctionOnSet delta = FunctionOnSet::delta(plane.set(), x);
  FunctionOnSet once = sl2_fourier(plane, delta);
  std::cout << "F(delta_(1,2)) at (0,0): " << once[0] << '\n';
  std::cout << "support of F(delta): " << once.support_size() << " of " << plane.set()->size() << " points\n";

  bool back = sl2_fourier(plane, once) == delta;
  std::cout << "F(F(delta)) == delta: " << (back ? "yes" : "no") << '\n';

  Rng rng(7);
  Matrix2 g = Matrix2::random_sl2(f, rng);
  FunctionOnSet v = random_function(plane.set(), rng, 4);
  bool eq = sl2_fourier(plane, plane.act(g, v)) == plane.act(g, sl2_fourier(plane, v));
  std::cout << "F commutes with g: " << (eq ? "yes" : "no") << '\n';
  return back && eq ? 0 : 1;
}
