/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "helstrom/detection.hpp"
#include "helstrom/linalg.hpp"
#include "helstrom/states.hpp"

namespace helstrom::testing {

using linalg::cdouble;
using linalg::ComplexMatrix;

// Deterministic generator; every randomized suite logs its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(gen_);
  }

  // Box-Muller, hand-rolled so the stream is identical on every platform
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = std::max(std::generate_canonical<double, 53>(gen_), 1e-300);
    const double u2 = std::generate_canonical<double, 53>(gen_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * 3.14159265358979323846 * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  cdouble complex_gaussian() { return {gaussian(), gaussian()}; }

  std::uint64_t integer(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

inline states::Ket random_ket(Rng& rng, std::size_t dim) {
  std::vector<cdouble> v(dim);
  for (auto& z : v) z = rng.complex_gaussian();
  return states::Ket(std::move(v));
}

inline ComplexMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  return random_matrix(rng, n, n).symmetrized();
}

// Gram-Schmidt on Gaussian columns; Haar-like for test purposes.
inline ComplexMatrix random_unitary(Rng& rng, std::size_t n) {
  ComplexMatrix m = random_matrix(rng, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cdouble proj{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < n; ++i) m(i, j) -= proj * m(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(m(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) m(i, j) /= nrm;
  }
  return m;
}

// Random rank-k density operator with eigenvalues bounded away from zero.
inline states::DensityOperator random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  const ComplexMatrix u = random_unitary(rng, dim);
  std::vector<double> w(rank);
  double sum = 0.0;
  for (auto& x : w) {
    x = 0.05 + rng.uniform();
    sum += x;
  }
  ComplexMatrix rho(dim, dim);
  for (std::size_t k = 0; k < rank; ++k) {
    const double lam = w[k] / sum;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        rho(i, j) += lam * u(i, k) * std::conj(u(j, k));
  }
  return states::DensityOperator(rho.symmetrized());
}

inline std::vector<double> sorted_descending(std::vector<double> v) {
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace helstrom::testing
