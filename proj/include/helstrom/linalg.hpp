/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <array>
#include <vector>

#include "helstrom/complex_matrix.hpp"

namespace helstrom::linalg {

/// Full spectral decomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; eigenvector columns are orthonormal and paired with them.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Real coefficients of the monic quartic eta^4 + b*eta^3 + c*eta^2 + d*eta + e.
struct QuarticCoefficients {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
/// Converges when the off-diagonal Frobenius norm drops below 1e-13 * ||M||_F,
/// capped at 100 sweeps. The input is symmetrized after the Hermiticity check
/// (relative tolerance 1e-12) so roundoff drift does not leak downstream.
/// Eigenvectors inside a degenerate cluster are re-orthonormalized.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Monic characteristic polynomial det(eta*I - M) via Faddeev-LeVerrier.
/// Returns k+1 real coefficients, highest power first. Imaginary residue on
/// any coefficient beyond 1e-9 * scale raises ImaginaryResidue.
std::vector<double> char_poly(const ComplexMatrix& m);

/// All complex roots of a monic real-coefficient polynomial (highest power
/// first). Closed form up to degree 4, Durand-Kerner beyond, Newton polish,
/// multiplicity-aware cluster refinement.
std::vector<cdouble> polynomial_roots(const std::vector<double>& monic_coeffs);

/// Four real roots of the quartic, ascending. Ferrari / resolvent-cubic
/// closed form evaluated in complex arithmetic; ComplexRoots if any root
/// keeps an imaginary part above 1e-8 (relative).
std::array<double, 4> solve_quartic(const QuarticCoefficients& q);

/// Roots of eta^4 - (1/4) h eta^2 + (1/16) l = 0, ascending and symmetric
/// about zero. NegativeDiscriminant if h^2 - 4l is negative beyond slack.
std::array<double, 4> solve_biquadratic(double h, double l);

/// Numerical rank: number of singular values above tol * sigma_max,
/// singular values obtained from the Hermitian EID of M* M.
std::size_t matrix_rank(const ComplexMatrix& m, double tol);

/// Real eigenvalues of a small (k <= 12) matrix with an expected-real
/// spectrum, ascending: char_poly followed by polynomial root refinement.
std::vector<double> general_eig_small(const ComplexMatrix& m);

/// Determinant via LU with partial pivoting. Used as an independent probe
/// for the characteristic polynomial.
cdouble lu_determinant(ComplexMatrix m);

/// Orthonormal basis of the null space of M, columns of the result. Pivot
/// threshold is absolute (pass e.g. 1e-10 * ||M||_F).
ComplexMatrix null_space(const ComplexMatrix& m, double pivot_tol);

/// Matrix exponential by scaling-and-squaring with a Taylor core.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Horner evaluation of a monic real-coefficient polynomial at z.
cdouble poly_eval(const std::vector<double>& monic_coeffs, cdouble z);

}  // namespace helstrom::linalg
