/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace helstrom::linalg {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major, double precision. Entries are checked
/// finite on construction. Sized for small problems (n up to ~64).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cdouble> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cdouble& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<cdouble>& entries() const { return a_; }

  ComplexMatrix adjoint() const;
  cdouble trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  /// max over entries of |a_ij - conj(a_ji)|
  double hermitian_defect() const;
  bool is_hermitian(double rel_tol) const;
  ComplexMatrix symmetrized() const;  // (A + A*)/2

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
  ComplexMatrix column(std::size_t j) const;

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix scaled(cdouble s) const;

  std::vector<cdouble> apply(const std::vector<cdouble>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> a_;
};

/// max over entries of |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace helstrom::linalg
