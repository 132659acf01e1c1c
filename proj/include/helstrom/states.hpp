/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <vector>

#include "helstrom/complex_matrix.hpp"

namespace helstrom::states {

using linalg::cdouble;
using linalg::ComplexMatrix;

/// Unit-norm column vector. Normalized on construction.
class Ket {
 public:
  explicit Ket(std::vector<cdouble> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amps_; }
  const cdouble& operator[](std::size_t i) const { return amps_[i]; }

  /// standard basis vector e_i
  static Ket basis(std::size_t dim, std::size_t index);

 private:
  std::vector<cdouble> amps_;
};

cdouble inner(const Ket& a, const Ket& b);
ComplexMatrix outer(const Ket& a, const Ket& b);

/// Hermitian PSD operator with trace in (0, 1]. The trace may sit below 1
/// when the operator comes out of a truncated Fock construction; it is not
/// renormalized.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  double trace() const { return tr_; }

 private:
  ComplexMatrix m_;
  double tr_ = 0.0;
};

/// Parameters of a Glauber displaced thermal state: amplitude alpha
/// (|alpha|^2 mean signal photons), mean thermal photons, Fock truncation.
struct CoherentSpec {
  cdouble alpha{0.0, 0.0};
  double n_thermal = 0.0;
  std::size_t dim = 10;
};

/// Low-rank factors of the two weighted density operators together with the
/// prior probabilities they absorbed: gamma_i gamma_i* = q_i rho_i (restricted
/// to the kept eigenspace when the rank was capped).
struct FactorSet {
  ComplexMatrix gamma0;
  ComplexMatrix gamma1;
  double q0 = 0.5;
  double q1 = 0.5;

  std::size_t k0() const { return gamma0.cols(); }
  std::size_t k1() const { return gamma1.cols(); }
  std::size_t dim() const { return gamma0.rows(); }
};

DensityOperator pure_density(const Ket& psi);

/// Truncated Fock-basis displaced thermal state: thermal weights
/// N^m/(1+N)^(m+1) conjugated by the truncated displacement operator
/// exp(alpha a' - alpha* a). For N=0 this is the coherent-state projector.
/// TruncationError if the resulting trace falls below 0.99.
DensityOperator displaced_thermal(const CoherentSpec& spec);

/// Columns sqrt(q lambda_j) v_j for the eigenpairs above rank_tol * lambda_max
/// (or exactly rank_override columns when nonzero), ordered by descending
/// eigenvalue. Each column's phase is fixed so its first component above
/// 1e-8 in magnitude is real positive.
ComplexMatrix factor_density(const DensityOperator& rho, double q, double rank_tol,
                             std::size_t rank_override = 0);

/// Truncated annihilation operator a on the n-dimensional Fock space.
ComplexMatrix annihilation_operator(std::size_t dim);

/// Truncated displacement operator exp(alpha a' - alpha* a).
ComplexMatrix displacement_operator(cdouble alpha, std::size_t dim);

/// tr(rho n_hat); approaches |alpha|^2 + N as the truncation grows.
double mean_photon_number(const DensityOperator& rho);

}  // namespace helstrom::states
