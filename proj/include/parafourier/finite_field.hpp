#pragma once

#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace parafourier {

/// Canonical integer encoding of a field element: sum of coeffs[i] * p^i.
using Code = std::uint8_t;

inline constexpr int kMaxFieldSize = 49;

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p, little-endian, trimmed of leading zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = int(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (int(a.size()) - 1 >= dm && !a.empty()) {
    int shift = int(a.size()) - 1 - dm;
    int factor = a.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) a[std::size_t(i + shift)] = ((a[std::size_t(i + shift)] - factor * m[std::size_t(i)]) % p + p) % p;
    trim(a);
  }
  return a;
}

}  // namespace detail

/// The ground field F_q, q = p^m, given by a prime and a monic irreducible modulus.
class FieldSpec {
 public:
  /// Prime field F_p.
  static FieldSpec prime_field(int p) { return FieldSpec(p, 1, {0, 1}); }

  /// F_{p^m} with an explicit modulus (little-endian mod-p coefficients, monic).
  FieldSpec(int p, int m, std::vector<int> modulus) : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (!detail::is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
      q_ *= p;
      if (q_ > kMaxFieldSize) throw std::invalid_argument("field size exceeds supported cap q <= 49");
    }
    if (m == 1) {
      modulus_ = {0, 1};
      return;
    }
    for (auto& c : modulus_) c = ((c % p) + p) % p;
    if (int(modulus_.size()) != m + 1 || modulus_.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree m (give m+1 little-endian coefficients)");
    if (!is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is not irreducible over F_p");
  }

  /// F_q for prime q, or one of the shipped extension defaults F_4, F_8, F_9.
  static FieldSpec with_default_modulus(int q) {
    if (detail::is_prime(q)) return prime_field(q);
    switch (q) {
      case 4: return FieldSpec(2, 2, {1, 1, 1});
      case 8: return FieldSpec(2, 3, {1, 1, 0, 1});
      case 9: return FieldSpec(3, 2, {1, 0, 1});
      default: break;
    }
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " needs an explicit irreducible modulus (defaults exist for q = 4, 8, 9)");
  }

  /// F_q from q and an optional user modulus; validates q is a prime power.
  static FieldSpec from_q(int q, const std::vector<int>& modulus = {}) {
    if (q < 2 || q > kMaxFieldSize) throw std::invalid_argument("field size must satisfy 2 <= q <= 49");
    int p = 0;
    for (int d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    int m = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++m;
    }
    if (r != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
    if (modulus.empty()) return with_default_modulus(q);
    if (m == 1) return prime_field(p);
    return FieldSpec(p, m, modulus);
  }

  /// Lexicographically first monic irreducible of degree m over F_p.
  static std::vector<int> first_irreducible(int p, int m) {
    std::vector<int> poly(std::size_t(m + 1), 0);
    poly[std::size_t(m)] = 1;
    long total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    for (long idx = 0; idx < total; ++idx) {
      long r = idx;
      for (int i = 0; i < m; ++i) {
        poly[std::size_t(i)] = int(r % p);
        r /= p;
      }
      if (is_irreducible(poly, p)) return poly;
    }
    throw std::logic_error("no irreducible polynomial found");
  }

  static bool is_irreducible(const std::vector<int>& modulus, int p) {
    detail::Poly f = modulus;
    detail::trim(f);
    const int deg = int(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (int k = 1; 2 * k <= deg; ++k) {
      long count = 1;
      for (int i = 0; i < k; ++i) count *= p;
      detail::Poly g(std::size_t(k + 1), 0);
      g[std::size_t(k)] = 1;
      for (long idx = 0; idx < count; ++idx) {
        long r = idx;
        for (int i = 0; i < k; ++i) {
          g[std::size_t(i)] = int(r % p);
          r /= p;
        }
        if (detail::poly_mod(f, g, p).empty()) return false;
      }
    }
    return true;
  }

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

  std::string describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (m_ > 1) {
      os << " = F_" << p_ << "[x]/(";
      for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
      os << ")";
    }
    return os.str();
  }

 private:
  int p_;
  int m_;
  std::vector<int> modulus_;
  int q_ = 0;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Arithmetic tables for F_q indexed by canonical codes.
class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr make(const FieldSpec& spec) { return FieldPtr(new Field(spec)); }

  const FieldSpec& spec() const { return spec_; }
  int p() const { return spec_.p(); }
  int m() const { return spec_.m(); }
  int q() const { return spec_.q(); }

  Code add(Code a, Code b) const { return add_[idx(a, b)]; }
  Code sub(Code a, Code b) const { return add_[idx(a, neg_[b])]; }
  Code mul(Code a, Code b) const { return mul_[idx(a, b)]; }
  Code neg(Code a) const { return neg_[a]; }
  Code inv(Code a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    return inv_[a];
  }
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  /// Absolute trace of the element, as a residue in [0, p).
  int trace_residue(Code a) const { return trace_[a]; }
  /// Embedding of a prime-field residue.
  Code from_residue(int r) const { return Code(((r % p()) + p()) % p()); }

  std::vector<int> coeffs(Code a) const {
    std::vector<int> out(static_cast<std::size_t>(m()));
    int r = a;
    for (auto& c : out) {
      c = r % p();
      r /= p();
    }
    return out;
  }
  Code encode(const std::vector<int>& coeffs) const {
    if (int(coeffs.size()) != m()) throw std::invalid_argument("coefficient vector has wrong length");
    int code = 0;
    for (int i = m() - 1; i >= 0; --i) code = code * p() + ((coeffs[std::size_t(i)] % p()) + p()) % p();
    return Code(code);
  }

  std::string format(Code a) const {
    if (m() == 1) return std::to_string(int(a));
    auto c = coeffs(a);
    std::string out;
    for (int i = m() - 1; i >= 0; --i) {
      int v = c[std::size_t(i)];
      if (v == 0) continue;
      if (!out.empty()) out += "+";
      if (i == 0 || v != 1) out += std::to_string(v);
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  explicit Field(const FieldSpec& spec) : spec_(spec) {
    const int q = spec.q(), p = spec.p(), m = spec.m();
    add_.resize(std::size_t(q * q));
    mul_.resize(std::size_t(q * q));
    neg_.resize(std::size_t(q));
    inv_.resize(std::size_t(q));
    trace_.resize(std::size_t(q));
    for (int a = 0; a < q; ++a) {
      auto ca = coeffs(Code(a));
      std::vector<int> n(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) n[i] = (p - ca[i]) % p;
      neg_[std::size_t(a)] = encode(n);
      for (int b = 0; b < q; ++b) {
        auto cb = coeffs(Code(b));
        std::vector<int> s(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) s[i] = (ca[i] + cb[i]) % p;
        add_[std::size_t(a * q + b)] = encode(s);
        detail::Poly prod(std::size_t(2 * m), 0);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) prod[std::size_t(i + j)] = (prod[std::size_t(i + j)] + ca[std::size_t(i)] * cb[std::size_t(j)]) % p;
        detail::Poly red = m == 1 ? detail::Poly{prod[0]} : detail::poly_mod(prod, spec.modulus(), p);
        red.resize(std::size_t(m), 0);
        mul_[std::size_t(a * q + b)] = encode(red);
      }
    }
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (mul_[std::size_t(a * q + b)] == 1) inv_[std::size_t(a)] = Code(b);
    // Tr(a) = a + a^p + ... + a^(p^(m-1)); the result lies in the prime field.
    for (int a = 0; a < q; ++a) {
      Code acc = 0, power = Code(a);
      for (int i = 0; i < m; ++i) {
        acc = add_[std::size_t(acc * q + power)];
        Code next = 1;
        for (int k = 0; k < p; ++k) next = mul_[std::size_t(next * q + power)];
        power = next;
      }
      if (acc >= p) throw std::logic_error("trace left the prime field");
      trace_[std::size_t(a)] = acc;
    }
  }
  std::size_t idx(Code a, Code b) const { return std::size_t(a) * std::size_t(q()) + b; }

  FieldSpec spec_;
  std::vector<Code> add_, mul_, neg_, inv_;
  std::vector<int> trace_;
};

/// Element of F_q carrying its field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, Code code) : field_(std::move(field)), code_(code) {
    if (!field_) throw std::invalid_argument("field element without a field");
    if (code_ >= field_->q()) throw std::invalid_argument("field element code out of range");
  }
  static FieldElement from_int(FieldPtr field, long v) {
    int p = field->p();
    return FieldElement(field, field->from_residue(int(((v % p) + p) % p)));
  }

  const FieldPtr& field() const { return field_; }
  Code code() const { return code_; }
  std::vector<int> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_->add(a.code_, b.code_)};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_->sub(a.code_, b.code_)};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_->mul(a.code_, b.code_)};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_->div(a.code_, b.code_)};
  }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r(field_, 1), b = *this;
    for (; e > 0; e >>= 1, b = b * b)
      if (e & 1) r = r * b;
    return r;
  }
  /// Absolute trace, as an element of the prime subfield.
  FieldElement trace() const { return {field_, field_->from_residue(field_->trace_residue(code_))}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->spec() == b.field_->spec()));
  }

  std::string to_string() const { return field_ ? field_->format(code_) : "?"; }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (a.field_ != b.field_ && !(a.field_ && b.field_ && a.field_->spec() == b.field_->spec()))
      throw std::invalid_argument("field elements from different fields");
  }

  FieldPtr field_;
  Code code_ = 0;
};

/// All q elements ordered by canonical code: 0 first, then 1.
inline std::vector<FieldElement> enumerate_field(const FieldPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(std::size_t(field->q()));
  for (int c = 0; c < field->q(); ++c) out.emplace_back(field, Code(c));
  return out;
}

inline std::vector<FieldElement> enumerate_units(const FieldPtr& field) {
  std::vector<FieldElement> out;
  for (int c = 1; c < field->q(); ++c) out.emplace_back(field, Code(c));
  return out;
}

}  // namespace parafourier
