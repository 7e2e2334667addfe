#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/big_rational.hpp"

namespace parafourier {

/// Exact element of Q(zeta_p) in the power basis {1, z, ..., z^(p-2)}.
///
/// The relation z^(p-1) = -(1 + z + ... + z^(p-2)) is applied eagerly, so
/// every stored value is canonical and equality is coefficientwise. For p = 2
/// the field is Q itself (z = -1) and there is a single coefficient.
class CyclotomicNumber {
 public:
  CyclotomicNumber() = default;
  explicit CyclotomicNumber(int p) : p_(p), c_(check_prime(p) - 1) {}
  CyclotomicNumber(int p, std::vector<BigRational> coefficients) : p_(p), c_(std::move(coefficients)) {
    if (int(c_.size()) != check_prime(p) - 1)
      throw std::invalid_argument("cyclotomic coefficient count must be p-1");
  }

  static CyclotomicNumber zero(int p) { return CyclotomicNumber(p); }
  static CyclotomicNumber rational(int p, const BigRational& r) {
    CyclotomicNumber out(p);
    out.c_[0] = r;
    return out;
  }
  static CyclotomicNumber one(int p) { return rational(p, 1); }
  /// z^k for any integer k.
  static CyclotomicNumber zeta_power(int p, long k) {
    std::vector<BigRational> full(std::size_t(check_prime(p)));
    long e = ((k % p) + p) % p;
    full[std::size_t(e)] = 1;
    return from_full(p, std::move(full));
  }
  /// Builds a canonical value from coefficients of 1, z, ..., z^(p-1).
  static CyclotomicNumber from_full(int p, std::vector<BigRational> full) {
    CyclotomicNumber out(p);
    const BigRational& top = full[std::size_t(p - 1)];
    for (int i = 0; i < p - 1; ++i) out.c_[std::size_t(i)] = top.is_zero() ? full[std::size_t(i)] : full[std::size_t(i)] - top;
    return out;
  }

  int prime() const { return p_; }
  const std::vector<BigRational>& coefficients() const { return c_; }
  const BigRational& coefficient(std::size_t i) const { return c_.at(i); }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  /// Integer with no z-part (denominator 1).
  bool is_rational_integer() const { return is_rational() && c_[0].is_integer(); }

  CyclotomicNumber operator-() const {
    CyclotomicNumber out(*this);
    for (auto& c : out.c_) c = -c;
    return out;
  }
  CyclotomicNumber& operator+=(const CyclotomicNumber& o) {
    same_prime(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!o.c_[i].is_zero()) c_[i] += o.c_[i];
    return *this;
  }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) {
    same_prime(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!o.c_[i].is_zero()) c_[i] -= o.c_[i];
    return *this;
  }
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }

  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    a.same_prime(b);
    const int p = a.p_;
    std::vector<BigRational> full(static_cast<std::size_t>(p));
    for (int i = 0; i < p - 1; ++i) {
      if (a.c_[std::size_t(i)].is_zero()) continue;
      for (int j = 0; j < p - 1; ++j) {
        if (b.c_[std::size_t(j)].is_zero()) continue;
        full[std::size_t((i + j) % p)] += a.c_[std::size_t(i)] * b.c_[std::size_t(j)];
      }
    }
    return from_full(p, std::move(full));
  }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  CyclotomicNumber scaled(const BigRational& r) const {
    CyclotomicNumber out(*this);
    if (r.is_one()) return out;
    for (auto& c : out.c_) c = c * r;
    return out;
  }
  friend CyclotomicNumber operator*(const BigRational& r, const CyclotomicNumber& a) { return a.scaled(r); }

  /// Multiplication by z^k (a rotation followed by one reduction).
  CyclotomicNumber times_zeta_power(long k) const {
    std::vector<BigRational> full(static_cast<std::size_t>(p_));
    long s = ((k % p_) + p_) % p_;
    for (int i = 0; i < p_ - 1; ++i) full[std::size_t((i + s) % p_)] = c_[std::size_t(i)];
    return from_full(p_, std::move(full));
  }

  /// Complex conjugation, the Galois automorphism z -> z^(-1).
  CyclotomicNumber conj() const {
    std::vector<BigRational> full(static_cast<std::size_t>(p_));
    for (int i = 0; i < p_ - 1; ++i) full[std::size_t((p_ - i) % p_)] = c_[std::size_t(i)];
    return from_full(p_, std::move(full));
  }

  /// Embedding z -> exp(2 pi i / p).
  std::complex<double> to_complex() const {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < p_ - 1; ++i) {
      double angle = 2.0 * std::numbers::pi * double(i) / double(p_);
      acc += c_[std::size_t(i)].to_double() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
  }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  /// "c0 + c1*z + c2*z^2 + ..." with every coefficient shown.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) out += " + ";
      out += c_[i].to_string();
      if (i == 1) out += "*z";
      if (i > 1) out += "*z^" + std::to_string(i);
    }
    return out;
  }
  std::string complex_string() const {
    auto z = to_complex();
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.6f, %.6f)", clean(z.real()), clean(z.imag()));
    return buf;
  }

  friend std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& v) { return os << v.to_string(); }

 private:
  static int check_prime(int p) {
    if (p < 2) throw std::invalid_argument("cyclotomic prime must be >= 2");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("cyclotomic modulus must be prime");
    return p;
  }
  static double clean(double v) { return std::abs(v) < 5e-7 ? 0.0 : v; }
  void same_prime(const CyclotomicNumber& o) const {
    if (p_ != o.p_) throw std::invalid_argument("mismatched cyclotomic primes");
  }

  int p_ = 2;
  std::vector<BigRational> c_ = std::vector<BigRational>(1);
};

}  // namespace parafourier
