/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/states.hpp"

#include <algorithm>
#include <cmath>

#include "helstrom/error.hpp"
#include "helstrom/linalg.hpp"

namespace helstrom::states {

Ket::Ket(std::vector<cdouble> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw InvalidSpec("ket needs at least one amplitude");
  double n2 = 0.0;
  for (const auto& z : amps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvalidSpec("ket amplitude is not finite");
    n2 += std::norm(z);
  }
  if (n2 <= 1e-300) throw InvalidSpec("cannot normalize a zero ket");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : amps_) z *= inv;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidSpec("basis index out of range");
  std::vector<cdouble> v(dim, cdouble{0.0, 0.0});
  v[index] = 1.0;
  return Ket(std::move(v));
}

cdouble inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ket inner product dimension mismatch");
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("ket outer product dimension mismatch");
  ComplexMatrix m(a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : m_(std::move(matrix)) {
  if (!m_.is_square()) throw DimensionMismatch("density operator must be square");
  if (!m_.is_hermitian(1e-12)) throw NotHermitian("density operator is not Hermitian");
  m_ = m_.symmetrized();
  tr_ = m_.trace().real();
  if (tr_ <= 0.0 || tr_ > 1.0 + 1e-12)
    throw InvalidSpec("density operator trace must lie in (0, 1]");
  const auto eig = linalg::hermitian_eig(m_);
  if (eig.eigenvalues.back() < -1e-10)
    throw InvalidSpec("density operator has a negative eigenvalue");
}

DensityOperator pure_density(const Ket& psi) { return DensityOperator(outer(psi, psi)); }

ComplexMatrix annihilation_operator(std::size_t dim) {
  ComplexMatrix a(dim, dim);
  for (std::size_t m = 1; m < dim; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  return a;
}

ComplexMatrix displacement_operator(cdouble alpha, std::size_t dim) {
  const ComplexMatrix a = annihilation_operator(dim);
  const ComplexMatrix gen = a.adjoint().scaled(alpha) - a.scaled(std::conj(alpha));
  return linalg::matrix_exp(gen);
}

DensityOperator displaced_thermal(const CoherentSpec& spec) {
  if (spec.dim < 2) throw InvalidSpec("Fock truncation must keep at least 2 levels");
  if (spec.n_thermal < 0.0) throw InvalidSpec("mean thermal photon number must be nonnegative");

  const std::size_t n = spec.dim;
  const double nt = spec.n_thermal;
  std::vector<double> weights(n, 0.0);
  if (nt == 0.0) {
    weights[0] = 1.0;
  } else {
    const double ratio = nt / (1.0 + nt);
    double w = 1.0 / (1.0 + nt);
    for (std::size_t m = 0; m < n; ++m) {
      weights[m] = w;
      w *= ratio;
    }
  }

  const ComplexMatrix d = displacement_operator(spec.alpha, n);
  ComplexMatrix thermal(n, n);
  for (std::size_t m = 0; m < n; ++m) thermal(m, m) = weights[m];
  ComplexMatrix rho = d * thermal * d.adjoint();
  rho = rho.symmetrized();

  const double tr = rho.trace().real();
  if (tr < 0.99) throw TruncationError("truncated state trace below 0.99; increase dim");
  return DensityOperator(std::move(rho));
}

ComplexMatrix factor_density(const DensityOperator& rho, double q, double rank_tol,
                             std::size_t rank_override) {
  if (q <= 0.0 || q >= 1.0) throw InvalidSpec("prior probability must lie in (0, 1)");
  if (rank_tol <= 0.0) throw InvalidSpec("rank tolerance must be positive");

  const auto eig = linalg::hermitian_eig(rho.matrix());
  const std::size_t n = rho.dim();
  const double lmax = eig.eigenvalues.front();
  if (lmax <= 0.0) throw RankZero("density operator has no positive eigenvalue");

  std::size_t k = 0;
  if (rank_override > 0) {
    if (rank_override > n) throw InvalidSpec("rank override exceeds dimension");
    k = rank_override;
  } else {
    while (k < n && eig.eigenvalues[k] > rank_tol * lmax) ++k;
  }
  if (k == 0) throw RankZero("no eigenvalue passes the rank threshold");

  ComplexMatrix gamma(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double lam = std::max(eig.eigenvalues[j], 0.0);
    // phase gauge: first component above 1e-8 made real positive
    cdouble phase{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble v = eig.eigenvectors(i, j);
      if (std::abs(v) > 1e-8) {
        phase = std::conj(v) / std::abs(v);
        break;
      }
    }
    const double w = std::sqrt(q * lam);
    for (std::size_t i = 0; i < n; ++i) gamma(i, j) = w * phase * eig.eigenvectors(i, j);
  }
  return gamma;
}

double mean_photon_number(const DensityOperator& rho) {
  double s = 0.0;
  for (std::size_t m = 0; m < rho.dim(); ++m)
    s += static_cast<double>(m) * rho.matrix()(m, m).real();
  return s;
}

}  // namespace helstrom::states
