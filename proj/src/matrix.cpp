#include <string>

#include "glc/error.hpp"
#include "glc/linalg.hpp"

namespace glc::linalg {

Matrix::Matrix(const Field& field, int n) : field_(&field), n_(n), entries_(static_cast<std::size_t>(n * n), 0) {}

Matrix::Matrix(const Field& field, int n, std::vector<Fe> entries)
    : field_(&field), n_(n), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(n * n))
    throw Error(ErrorCode::DimensionMismatch, "matrix needs " + std::to_string(n * n) + " entries");
  for (Fe e : entries_)
    if (!field.valid(e)) throw Error(ErrorCode::InvalidElement, "entry outside the field");
}

Matrix Matrix::identity(const Field& field, int n) { return scalar(field, n, 1); }

Matrix Matrix::scalar(const Field& field, int n, Fe lambda) {
  Matrix m(field, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = lambda;
  return m;
}

Matrix Matrix::companion(const Field& field, std::span<const Fe> lower_coeffs) {
  const int n = static_cast<int>(lower_coeffs.size());
  Matrix m(field, n);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = field.neg(lower_coeffs[j]);
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (n_ != other.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension mismatch");
  const Field& f = *field_;
  Matrix out(f, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Fe a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (n_ != other.n_) throw Error(ErrorCode::DimensionMismatch, "matrix sum dimension mismatch");
  Matrix out(*field_, n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_->add(entries_[i], other.entries_[i]);
  return out;
}

Matrix Matrix::scaled(Fe lambda) const {
  Matrix out(*field_, n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = field_->mul(entries_[i], lambda);
  return out;
}

bool Matrix::operator==(const Matrix& other) const {
  return n_ == other.n_ && field_ == other.field_ && entries_ == other.entries_;
}

bool Matrix::is_zero() const {
  for (Fe e : entries_)
    if (e != 0) return false;
  return true;
}

Fe Matrix::determinant() const {
  const Field& f = *field_;
  std::vector<Fe> a = entries_;
  Fe det = 1;
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int r = col; r < n_; ++r)
      if (a[r * n_ + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < n_; ++c) std::swap(a[pivot * n_ + c], a[col * n_ + c]);
      det = f.neg(det);
    }
    const Fe pv = a[col * n_ + col];
    det = f.mul(det, pv);
    const Fe pinv = f.inv(pv);
    for (int r = col + 1; r < n_; ++r) {
      const Fe factor = f.mul(a[r * n_ + col], pinv);
      if (factor == 0) continue;
      for (int c = col; c < n_; ++c) a[r * n_ + c] = f.sub(a[r * n_ + c], f.mul(factor, a[col * n_ + c]));
    }
  }
  return det;
}

Matrix Matrix::inverse() const {
  const Field& f = *field_;
  const int w = 2 * n_;
  std::vector<Fe> a(static_cast<std::size_t>(n_ * w), 0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) a[i * w + j] = at(i, j);
    a[i * w + n_ + i] = 1;
  }
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int r = col; r < n_; ++r)
      if (a[r * w + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
    if (pivot != col)
      for (int c = 0; c < w; ++c) std::swap(a[pivot * w + c], a[col * w + c]);
    const Fe pinv = f.inv(a[col * w + col]);
    for (int c = 0; c < w; ++c) a[col * w + c] = f.mul(a[col * w + c], pinv);
    for (int r = 0; r < n_; ++r) {
      if (r == col || a[r * w + col] == 0) continue;
      const Fe factor = a[r * w + col];
      for (int c = 0; c < w; ++c) a[r * w + c] = f.sub(a[r * w + c], f.mul(factor, a[col * w + c]));
    }
  }
  Matrix out(f, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.at(i, j) = a[i * w + n_ + j];
  return out;
}

Vec row_times(const Vec& v, const Matrix& m) {
  if (static_cast<int>(v.size()) != m.n()) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  const Field& f = m.field();
  Vec out(v.size(), 0);
  for (int k = 0; k < m.n(); ++k) {
    if (v[k] == 0) continue;
    for (int j = 0; j < m.n(); ++j) out[j] = f.add(out[j], f.mul(v[k], m.at(k, j)));
  }
  return out;
}

Matrix poly_eval_matrix(const Poly& f, const Matrix& m) {
  if (&f.field() != &m.field()) throw Error(ErrorCode::DimensionMismatch, "polynomial and matrix over different fields");
  Matrix acc(m.field(), m.n());
  for (int i = f.degree(); i >= 0; --i) acc = acc * m + Matrix::scalar(m.field(), m.n(), f.coeff(i));
  return acc;
}

}  // namespace glc::linalg
