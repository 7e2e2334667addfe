#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "parafourier/finite_field.hpp"
#include "parafourier/random.hpp"

namespace parafourier {

/// Dense matrix over F_q, row-major field codes.
class RectMatrix {
 public:
  RectMatrix() = default;
  RectMatrix(FieldPtr field, int rows, int cols) : field_(std::move(field)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    e_.assign(std::size_t(rows * cols), 0);
  }
  RectMatrix(FieldPtr field, int rows, int cols, std::vector<Code> entries)
      : field_(std::move(field)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (int(e_.size()) != rows * cols) throw std::invalid_argument("entry count does not match matrix shape");
    for (auto c : e_)
      if (c >= field_->q()) throw std::invalid_argument("matrix entry out of field range");
  }
  /// Entries given as integers reduced into the prime subfield.
  static RectMatrix from_ints(FieldPtr field, int rows, int cols, const std::vector<long>& entries) {
    std::vector<Code> codes;
    for (long v : entries) codes.push_back(field->from_residue(int(v % field->p())));
    return RectMatrix(std::move(field), rows, cols, std::move(codes));
  }
  static RectMatrix identity(FieldPtr field, int n) {
    RectMatrix m(std::move(field), n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }
  static RectMatrix from_columns(FieldPtr field, const std::vector<std::vector<Code>>& columns) {
    int cols = int(columns.size()), rows = cols ? int(columns[0].size()) : 0;
    RectMatrix m(std::move(field), rows, cols);
    for (int j = 0; j < cols; ++j) {
      if (int(columns[std::size_t(j)].size()) != rows) throw std::invalid_argument("ragged columns");
      for (int i = 0; i < rows; ++i) m.set(i, j, columns[std::size_t(j)][std::size_t(i)]);
    }
    return m;
  }

  const FieldPtr& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Code at(int i, int j) const { return e_[std::size_t(i * cols_ + j)]; }
  void set(int i, int j, Code v) { e_[std::size_t(i * cols_ + j)] = v; }
  FieldElement element(int i, int j) const { return {field_, at(i, j)}; }
  const std::vector<Code>& entries() const { return e_; }

  std::vector<Code> column(int j) const {
    std::vector<Code> c(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[std::size_t(i)] = at(i, j);
    return c;
  }
  std::vector<Code> row(int i) const { return {e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_}; }

  RectMatrix block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw std::invalid_argument("block out of range");
    RectMatrix b(field_, nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) b.set(i, j, at(r0 + i, c0 + j));
    return b;
  }
  RectMatrix transpose() const {
    RectMatrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
  }

  friend RectMatrix operator*(const RectMatrix& a, const RectMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    const Field& f = *a.field_;
    RectMatrix out(a.field_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        Code acc = 0;
        for (int k = 0; k < a.cols_; ++k) acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
        out.set(i, j, acc);
      }
    return out;
  }
  friend RectMatrix operator+(const RectMatrix& a, const RectMatrix& b) {
    a.same_shape(b);
    RectMatrix out(a);
    for (std::size_t k = 0; k < out.e_.size(); ++k) out.e_[k] = a.field_->add(a.e_[k], b.e_[k]);
    return out;
  }
  RectMatrix operator-() const {
    RectMatrix out(*this);
    for (auto& c : out.e_) c = field_->neg(c);
    return out;
  }
  RectMatrix scaled(Code s) const {
    RectMatrix out(*this);
    for (auto& c : out.e_) c = field_->mul(s, c);
    return out;
  }
  /// Matrix times column vector.
  std::vector<Code> apply(const std::vector<Code>& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<Code> out(std::size_t(rows_), 0);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) out[std::size_t(i)] = field_->add(out[std::size_t(i)], field_->mul(at(i, k), v[std::size_t(k)]));
    return out;
  }
  /// Row vector times matrix.
  std::vector<Code> apply_left(const std::vector<Code>& r) const {
    if (int(r.size()) != rows_) throw std::invalid_argument("vector length mismatch");
    std::vector<Code> out(std::size_t(cols_), 0);
    for (int j = 0; j < cols_; ++j)
      for (int k = 0; k < rows_; ++k) out[std::size_t(j)] = field_->add(out[std::size_t(j)], field_->mul(r[std::size_t(k)], at(k, j)));
    return out;
  }

  Code det() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    RectMatrix a(*this);
    Code d = 1;
    const Field& f = *field_;
    for (int c = 0; c < rows_; ++c) {
      int piv = -1;
      for (int r = c; r < rows_; ++r)
        if (a.at(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        a.swap_rows(piv, c);
        d = f.neg(d);
      }
      d = f.mul(d, a.at(c, c));
      Code inv = f.inv(a.at(c, c));
      for (int r = c + 1; r < rows_; ++r) {
        Code factor = f.mul(a.at(r, c), inv);
        if (factor == 0) continue;
        for (int k = c; k < cols_; ++k) a.set(r, k, f.sub(a.at(r, k), f.mul(factor, a.at(c, k))));
      }
    }
    return d;
  }
  bool invertible() const { return rows_ == cols_ && det() != 0; }

  RectMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    const int n = rows_;
    const Field& f = *field_;
    RectMatrix a(*this), inv = identity(field_, n);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (a.at(r, c) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw std::domain_error("singular matrix");
      a.swap_rows(piv, c);
      inv.swap_rows(piv, c);
      Code s = f.inv(a.at(c, c));
      for (int k = 0; k < n; ++k) {
        a.set(c, k, f.mul(s, a.at(c, k)));
        inv.set(c, k, f.mul(s, inv.at(c, k)));
      }
      for (int r = 0; r < n; ++r) {
        if (r == c || a.at(r, c) == 0) continue;
        Code factor = a.at(r, c);
        for (int k = 0; k < n; ++k) {
          a.set(r, k, f.sub(a.at(r, k), f.mul(factor, a.at(c, k))));
          inv.set(r, k, f.sub(inv.at(r, k), f.mul(factor, inv.at(c, k))));
        }
      }
    }
    return inv;
  }

  static RectMatrix random(FieldPtr field, int rows, int cols, Rng& rng) {
    RectMatrix m(field, rows, cols);
    for (auto& c : m.e_) c = Code(rng.below(std::uint64_t(field->q())));
    return m;
  }
  static RectMatrix random_invertible(FieldPtr field, int n, Rng& rng) {
    for (;;) {
      RectMatrix m = random(field, n, n, rng);
      if (m.det() != 0) return m;
    }
  }
  /// Uniform element of SL_n: a random invertible matrix with its first row rescaled.
  static RectMatrix random_special_linear(FieldPtr field, int n, Rng& rng) {
    RectMatrix m = random_invertible(field, n, rng);
    Code s = field->inv(m.det());
    for (int j = 0; j < n; ++j) m.set(0, j, field->mul(s, m.at(0, j)));
    return m;
  }

  friend bool operator==(const RectMatrix& a, const RectMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? "; " : "";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + field_->format(at(i, j));
    }
    return s + "]";
  }

 private:
  void swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int k = 0; k < cols_; ++k) {
      Code t = at(r1, k);
      set(r1, k, at(r2, k));
      set(r2, k, t);
    }
  }
  void same_shape(const RectMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  FieldPtr field_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Code> e_;
};

}  // namespace parafourier
