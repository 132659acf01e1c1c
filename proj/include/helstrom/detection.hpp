/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <string>
#include <vector>

#include "helstrom/states.hpp"

namespace helstrom::detection {

using linalg::cdouble;
using linalg::ComplexMatrix;
using states::DensityOperator;
using states::FactorSet;

/// The binary discrimination instance: two density operators with priors.
struct BinaryEnsemble {
  BinaryEnsemble(DensityOperator rho0, DensityOperator rho1, double q0, double q1);

  DensityOperator rho0;
  DensityOperator rho1;
  double q0;
  double q1;

  std::size_t dim() const { return rho0.dim(); }
};

/// State matrix Gamma = [gamma0, gamma1], Gram matrix G = Gamma* Gamma and
/// the skew Gram matrix G_s (G with the first block row negated).
struct GramPair {
  ComplexMatrix state_matrix;
  ComplexMatrix gram;
  ComplexMatrix skew_gram;
  std::size_t k0 = 0;
  std::size_t k1 = 0;
  double q0 = 0.5;
  double q1 = 0.5;

  ComplexMatrix g00() const { return gram.block(0, 0, k0, k0); }
  ComplexMatrix g01() const { return gram.block(0, k0, k0, k1); }
  ComplexMatrix g10() const { return gram.block(k0, 0, k1, k0); }
  ComplexMatrix g11() const { return gram.block(k0, k0, k1, k1); }
};

enum class Method { helstrom, sgm };

/// Output of either solver: spectrum, lifted eigenvectors, measurement
/// operators and probabilities. Eigenvalues are sorted descending and cover
/// the full solved spectrum; vectors holds one orthonormal column per kept
/// (nonzero, liftable) eigenvalue, in kept_eigenvalues order.
struct DetectionResult {
  Method method = Method::helstrom;
  std::vector<double> eigenvalues;
  std::vector<double> kept_eigenvalues;
  ComplexMatrix vectors;
  ComplexMatrix pi0;
  ComplexMatrix pi1;
  double pc = 0.0;
  double pe = 0.0;
  double zero_threshold = 0.0;
  /// eigenvalues of G_s whose lift came out with zero norm (no counterpart
  /// in the decision operator); excluded from the measurement
  std::vector<double> spurious_eigenvalues;
  std::vector<std::string> warnings;
};

/// Consistency audit of a solved instance against its ensemble. The trace
/// route recovers the captured weight q0 tr(rho0) plus the positive
/// eigenvalue sum; pc_deviation measures it against that identity, which
/// reduces to |pc_trace - pc| for unit-trace states.
struct MeasurementAudit {
  double pc_trace = 0.0;        // q0 tr(rho0 Pi0) + q1 tr(rho1 Pi1)
  double pc_eigensum = 0.0;     // value carried by the result
  double pc_deviation = 0.0;
  double pi0_min_eigenvalue = 0.0;
  double pi1_min_eigenvalue = 0.0;
  double projector_defect = 0.0;  // || (Pi0+Pi1)^2 - (Pi0+Pi1) ||_max
  double max_deviation = 0.0;
};

/// D = q1 rho1 - q0 rho0.
ComplexMatrix decision_operator(const BinaryEnsemble& e);

/// D assembled from factors: gamma1 gamma1* - gamma0 gamma0*.
ComplexMatrix decision_operator(const FactorSet& fs);

/// Full eigendecomposition route. Zero eigenvalues (|eta| below
/// 1e-10 * ||D||) join neither measurement operator. A vanishing D means the
/// states carry no information; the result is the guess-the-larger-prior
/// convention with empty measurement operators.
DetectionResult helstrom_solve(const BinaryEnsemble& e);

GramPair build_gram_pair(const FactorSet& fs);

/// Skew-Gram route: eigenvalues of G_s, eigenvectors theta_k lifted to the
/// Hilbert space as c_k Gamma theta_k with c_k = 1/sqrt(theta* G theta).
/// Eigenvalues whose lift has zero norm are flagged spurious and excluded.
/// When cross_check_d is supplied, each lifted vector is verified to be an
/// eigenvector of it to 1e-8.
DetectionResult sgm_solve(const GramPair& gp, double q0,
                          const ComplexMatrix* cross_check_d = nullptr);

MeasurementAudit verify_measurement(const DetectionResult& result, const BinaryEnsemble& e);

/// Block-circulant test: ||G11 - G00|| and ||G01 - G01*|| under the entrywise
/// max norm, tol relative to ||G||.
bool is_gus(const GramPair& gp, double tol);

}  // namespace helstrom::detection
