/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "helstrom/error.hpp"

namespace helstrom::linalg {

namespace {

void check_finite(const std::vector<cdouble>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DimensionMismatch("matrix entry is not finite");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, cdouble{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows_ * cols_)
    throw DimensionMismatch("entry count does not match matrix dimensions");
  check_finite(a_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cdouble ComplexMatrix::trace() const {
  cdouble t{0.0, 0.0};
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double s = 0.0;
  for (const auto& z : a_) s = std::max(s, std::abs(z));
  return s;
}

double ComplexMatrix::hermitian_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  if (!is_square()) return false;
  const double scale = std::max(1e-300, max_abs());
  return hermitian_defect() <= rel_tol * std::max(1.0, scale);
}

ComplexMatrix ComplexMatrix::symmetrized() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t h,
                                   std::size_t w) const {
  if (r0 + h > rows_ || c0 + w > cols_) throw DimensionMismatch("block out of range");
  ComplexMatrix m(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
    throw DimensionMismatch("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix ComplexMatrix::column(std::size_t j) const { return block(0, j, rows_, 1); }

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix difference shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
  ComplexMatrix m(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cdouble aik = (*this)(i, k);
      if (aik == cdouble{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::scaled(cdouble s) const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

std::vector<cdouble> ComplexMatrix::apply(const std::vector<cdouble>& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<cdouble> r(rows_, cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix comparison shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace helstrom::linalg
