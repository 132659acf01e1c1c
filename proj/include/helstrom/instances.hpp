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

#include "helstrom/closedform.hpp"
#include "helstrom/detection.hpp"

namespace helstrom::instances {

using closedform::ComparisonSpec;
using closedform::GusParameters;
using closedform::Rank2Parameters;
using detection::BinaryEnsemble;
using linalg::cdouble;
using states::FactorSet;

/// An explicitly constructed discrimination instance: the ensemble for the
/// eigendecomposition route and the matching factors for the Gram route.
struct Instance {
  BinaryEnsemble ensemble;
  FactorSet factors;
};

/// Two pure states with overlap X in a 2-dimensional space.
Instance make_pure(double q0, cdouble X);

/// Pure state against a uniform mixture of h orthonormal kets with the given
/// overlaps, in an (h+1)-dimensional space.
Instance make_comparison(const ComparisonSpec& spec);

/// Rank-2 + rank-2 instance realizing the given parameters in a
/// 4-dimensional space. DomainError when no state realizes them. Truncation
/// deficits are not representable here, so p_c and p_d are taken as
/// 1 - p_a and 1 - p_b.
Instance make_rank2(const Rank2Parameters& rp);

/// Symmetric (block-circulant) rank-2 instance with equal priors.
Instance make_gus(const GusParameters& gp);

/// The displaced-thermal pipeline: build both states, factor them, and keep
/// the factored (rank-limited) ensemble the Gram route actually solves.
struct CoherentPipeline {
  states::DensityOperator rho0;
  states::DensityOperator rho1;
  BinaryEnsemble factored_ensemble;  // gamma_i gamma_i* / q_i
  FactorSet factors;
  detection::GramPair gram;
  std::vector<std::string> warnings;
};

struct CoherentRun {
  cdouble alpha0{0.0, 0.0};
  cdouble alpha1{0.0, 0.0};
  double n_thermal = 0.0;
  std::size_t dim = 10;
  double q0 = 0.5;
  std::size_t rank = 0;  // 0 = choose by rank_tol
  double rank_tol = 1e-6;
};

CoherentPipeline make_coherent(const CoherentRun& run);

}  // namespace helstrom::instances
