#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "parafourier/cyclotomic.hpp"
#include "parafourier/finite_field.hpp"

namespace parafourier {

/// The additive character psi_b(x) = zeta_p^Tr(b x) of F_q and the Kloosterman
/// function built from it, tabulated by field code.
class CharacterContext {
 public:
  explicit CharacterContext(FieldPtr field, Code multiplier = 1) : field_(std::move(field)), b_(multiplier) {
    if (!field_) throw std::invalid_argument("character context needs a field");
    if (b_ == 0 || b_ >= field_->q()) throw std::invalid_argument("character multiplier must be a nonzero field element");
    const int q = field_->q(), p = field_->p();
    exponent_.resize(std::size_t(q));
    for (int x = 0; x < q; ++x) {
      exponent_[std::size_t(x)] = field_->trace_residue(field_->mul(b_, Code(x)));
      psi_.push_back(CyclotomicNumber::zeta_power(p, exponent_[std::size_t(x)]));
    }
    // Kl(a) as an exponent histogram: count how often Tr(b(a/t + t)) hits each residue.
    for (int a = 0; a < q; ++a) {
      std::vector<BigRational> full(static_cast<std::size_t>(p));
      for (int t = 1; t < q; ++t) {
        Code arg = field_->add(field_->div(Code(a), Code(t)), Code(t));
        full[std::size_t(exponent_[arg])] += 1;
      }
      kl_.push_back(CyclotomicNumber::from_full(p, std::move(full)));
    }
    bool nontrivial = false;
    for (int x = 0; x < q; ++x) nontrivial = nontrivial || exponent_[std::size_t(x)] != 0;
    if (!nontrivial) throw std::logic_error("additive character is trivial");
  }

  static std::shared_ptr<const CharacterContext> make(FieldPtr field, Code multiplier = 1) {
    return std::make_shared<const CharacterContext>(std::move(field), multiplier);
  }
  static std::shared_ptr<const CharacterContext> make(const FieldSpec& spec, Code multiplier = 1) {
    return make(Field::make(spec), multiplier);
  }

  const FieldPtr& field() const { return field_; }
  int p() const { return field_->p(); }
  int q() const { return field_->q(); }
  Code multiplier() const { return b_; }

  /// Exponent k with psi(x) = zeta^k.
  int psi_exponent(Code x) const { return exponent_[x]; }
  const CyclotomicNumber& psi(Code x) const { return psi_[x]; }
  const CyclotomicNumber& kl(Code a) const { return kl_[a]; }
  const std::vector<CyclotomicNumber>& psi_table() const { return psi_; }
  const std::vector<CyclotomicNumber>& kl_table() const { return kl_; }

 private:
  FieldPtr field_;
  Code b_;
  std::vector<int> exponent_;
  std::vector<CyclotomicNumber> psi_;
  std::vector<CyclotomicNumber> kl_;
};

using ContextPtr = std::shared_ptr<const CharacterContext>;

inline CyclotomicNumber psi(const CharacterContext& ctx, const FieldElement& x) {
  if (x.field()->spec() != ctx.field()->spec()) throw std::invalid_argument("element from a different field");
  return ctx.psi(x.code());
}

/// Kl(a) = sum over t != 0 of psi(a/t + t), summed term by term in Q(zeta_p).
inline CyclotomicNumber kloosterman(const CharacterContext& ctx, const FieldElement& a) {
  CyclotomicNumber acc = CyclotomicNumber::zero(ctx.p());
  for (const auto& t : enumerate_units(ctx.field())) acc += psi(ctx, a / t + t);
  return acc;
}

inline std::vector<CyclotomicNumber> kloosterman_table(const CharacterContext& ctx) { return ctx.kl_table(); }

/// Exact sum of fn(x) over every x in F_q.
template <class Fn>
CyclotomicNumber sum_over_field(const CharacterContext& ctx, Fn&& fn) {
  CyclotomicNumber acc = CyclotomicNumber::zero(ctx.p());
  for (const auto& x : enumerate_field(ctx.field())) acc += fn(x);
  return acc;
}

}  // namespace parafourier
