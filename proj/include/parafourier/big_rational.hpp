#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace parafourier {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline u128 abs128(i128 v) { return v < 0 ? u128(0) - u128(v) : u128(v); }

inline u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

inline bool fits_small(i128 v) { return v <= i128(kSmallMax) && v >= -i128(kSmallMax); }

inline mpz_class mpz_from_i128(i128 v) {
  u128 mag = abs128(v);
  std::uint64_t limbs[2] = {std::uint64_t(mag), std::uint64_t(mag >> 64)};
  mpz_class out;
  mpz_import(out.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
  if (v < 0) out = -out;
  return out;
}

inline bool mpz_to_small(const mpz_class& z, std::int64_t& out) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 63) return false;
  std::uint64_t mag = 0;
  std::size_t count = 0;
  mpz_export(&mag, &count, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
  if (count == 0) mag = 0;
  out = sgn(z) < 0 ? -std::int64_t(mag) : std::int64_t(mag);
  return true;
}

}  // namespace detail

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 63 bits are held inline;
/// anything larger is promoted to a GMP rational and demoted again as soon
/// as it fits. The representation is canonical, so equality is structural.
class BigRational {
 public:
  BigRational() = default;
  BigRational(std::int64_t n) {  // NOLINT(google-explicit-constructor)
    if (n == std::numeric_limits<std::int64_t>::min())
      assign_big(mpq_class(mpz_class(std::to_string(n))));
    else
      num_ = n;
  }
  BigRational(int n) : BigRational(std::int64_t(n)) {}  // NOLINT(google-explicit-constructor)
  BigRational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator in rational");
    assign_i128(n, d);
  }

  static BigRational from_mpq(mpq_class v) {
    v.canonicalize();
    BigRational r;
    r.assign_big(std::move(v));
    return r;
  }
  static BigRational from_i128(detail::i128 n, detail::i128 d = 1) {
    if (d == 0) throw std::domain_error("zero denominator in rational");
    BigRational r;
    r.assign_i128(n, d);
    return r;
  }
  /// Parses "n" or "n/d".
  static BigRational parse(const std::string& text) {
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (v.get_den() == 0) throw std::domain_error("zero denominator in rational");
    return from_mpq(std::move(v));
  }
  /// base^exponent for integer base; negative exponents give 1/base^|exponent|.
  static BigRational power(std::int64_t base, int exponent) {
    mpz_class b(std::to_string(base));
    mpz_class r;
    unsigned e = exponent < 0 ? unsigned(-exponent) : unsigned(exponent);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    if (exponent >= 0) return from_mpq(mpq_class(r));
    if (r == 0) throw std::domain_error("zero to a negative power");
    return from_mpq(mpq_class(mpz_class(1), r));
  }

  bool is_small() const { return !big_.has_value(); }
  bool is_zero() const { return is_small() && num_ == 0; }
  bool is_one() const { return is_small() && num_ == 1 && den_ == 1; }
  bool is_integer() const { return is_small() ? den_ == 1 : big_->get_den() == 1; }
  int sign() const {
    if (is_small()) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
  }

  /// Inline numerator/denominator; only meaningful when is_small().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  mpq_class to_mpq() const {
    if (!is_small()) return *big_;
    mpq_class v(detail::mpz_from_i128(num_), detail::mpz_from_i128(den_));
    return v;
  }
  mpz_class numerator() const { return is_small() ? detail::mpz_from_i128(num_) : mpz_class(big_->get_num()); }
  mpz_class denominator() const { return is_small() ? detail::mpz_from_i128(den_) : mpz_class(big_->get_den()); }
  double to_double() const { return is_small() ? double(num_) / double(den_) : big_->get_d(); }

  std::string to_string() const {
    if (is_small()) return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    return big_->get_str();
  }

  BigRational operator-() const {
    if (is_small()) {
      BigRational r;
      r.num_ = -num_;
      r.den_ = den_;
      return r;
    }
    return from_mpq(-*big_);
  }

  friend BigRational operator+(const BigRational& a, const BigRational& b) {
    if (a.is_small() && b.is_small()) {
      if (a.den_ == b.den_) return from_i128(detail::i128(a.num_) + b.num_, a.den_);
      return from_i128(detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_,
                       detail::i128(a.den_) * b.den_);
    }
    return from_mpq(a.to_mpq() + b.to_mpq());
  }
  friend BigRational operator-(const BigRational& a, const BigRational& b) { return a + (-b); }
  friend BigRational operator*(const BigRational& a, const BigRational& b) {
    if (a.is_small() && b.is_small()) {
      if (a.num_ == 0 || b.num_ == 0) return BigRational();
      std::int64_t g1 = std::int64_t(detail::gcd64(std::uint64_t(a.num_ < 0 ? -a.num_ : a.num_), std::uint64_t(b.den_)));
      std::int64_t g2 = std::int64_t(detail::gcd64(std::uint64_t(b.num_ < 0 ? -b.num_ : b.num_), std::uint64_t(a.den_)));
      detail::i128 n = detail::i128(a.num_ / g1) * (b.num_ / g2);
      detail::i128 d = detail::i128(a.den_ / g2) * (b.den_ / g1);
      BigRational r;
      r.assign_reduced(n, d);
      return r;
    }
    return from_mpq(a.to_mpq() * b.to_mpq());
  }
  friend BigRational operator/(const BigRational& a, const BigRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational");
    return a * b.reciprocal();
  }
  BigRational reciprocal() const {
    if (is_zero()) throw std::domain_error("division by zero rational");
    if (is_small()) {
      BigRational r;
      r.num_ = num_ < 0 ? -den_ : den_;
      r.den_ = num_ < 0 ? -num_ : num_;
      return r;
    }
    return from_mpq(1 / *big_);
  }

  BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
  BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
  BigRational& operator*=(const BigRational& o) { return *this = *this * o; }
  BigRational& operator/=(const BigRational& o) { return *this = *this / o; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    if (a.is_small() != b.is_small()) return false;
    if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
    return *a.big_ == *b.big_;
  }
  friend bool operator<(const BigRational& a, const BigRational& b) {
    if (a.is_small() && b.is_small())
      return detail::i128(a.num_) * b.den_ < detail::i128(b.num_) * a.den_;
    return a.to_mpq() < b.to_mpq();
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

 private:
  void assign_i128(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    detail::u128 g = detail::gcd128(detail::abs128(n), detail::u128(d));
    assign_reduced(n / detail::i128(g), d / detail::i128(g));
  }
  void assign_reduced(detail::i128 n, detail::i128 d) {
    if (detail::fits_small(n) && detail::fits_small(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      big_.reset();
    } else {
      mpq_class v(detail::mpz_from_i128(n), detail::mpz_from_i128(d));
      big_ = std::move(v);
    }
  }
  void assign_big(mpq_class v) {
    std::int64_t n = 0, d = 0;
    if (detail::mpz_to_small(v.get_num(), n) && detail::mpz_to_small(v.get_den(), d) &&
        n != std::numeric_limits<std::int64_t>::min()) {
      num_ = n;
      den_ = d;
      big_.reset();
    } else {
      big_ = std::move(v);
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::optional<mpq_class> big_;
};

}  // namespace parafourier
