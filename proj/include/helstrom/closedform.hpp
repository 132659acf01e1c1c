/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <utility>
#include <vector>

#include "helstrom/detection.hpp"
#include "helstrom/linalg.hpp"
#include "helstrom/states.hpp"

namespace helstrom::closedform {

using detection::GramPair;
using linalg::cdouble;
using linalg::ComplexMatrix;
using linalg::QuarticCoefficients;
using states::FactorSet;

/// Parameters of a rank-2 + rank-2 instance: prior q0, the per-state
/// eigenweights p_a, p_c (state 0) and p_b, p_d (state 1), and the four
/// cross inner products X = <a|b>, Y = <a|d>, W = <c|b>, Z = <c|d>.
/// The p pairs sum to 1 unless the states carry a truncation deficit.
struct Rank2Parameters {
  double q0 = 0.5;
  double p_a = 1.0;
  double p_c = 0.0;
  double p_b = 1.0;
  double p_d = 0.0;
  cdouble X{0.0, 0.0};
  cdouble Y{0.0, 0.0};
  cdouble W{0.0, 0.0};
  cdouble Z{0.0, 0.0};

  double q1() const { return 1.0 - q0; }
  // weighted eigenvalues
  double p() const { return q0 * p_a; }
  double q() const { return q0 * p_c; }
  double r() const { return q1() * p_b; }
  double s() const { return q1() * p_d; }
  // weighted inner products
  cdouble x() const;
  cdouble y() const;
  cdouble w() const;
  cdouble z() const;

  void validate() const;
};

/// GUS (block-circulant) instance: equal priors, p_b = p_a, p_d = p_c,
/// real X and Z, W = conj(Y). p_c defaults to 1 - p_a but may carry a
/// truncation deficit.
struct GusParameters {
  double p_a = 1.0;
  double p_c = 0.0;
  double X = 0.0;
  double Z = 0.0;
  cdouble Y{0.0, 0.0};

  static GusParameters make(double p_a, double x, cdouble y, double z);
  static GusParameters make_with_pc(double p_a, double p_c, double x, cdouble y, double z);

  void validate() const;
};

/// Discrimination of a pure state against a uniform mixture of h orthonormal
/// kets; overlaps[i] = <a|b_i>.
struct ComparisonSpec {
  double q0 = 0.5;
  std::size_t h = 1;
  std::vector<cdouble> overlaps;

  double q1() const { return 1.0 - q0; }
  double norm2() const;
  void validate() const;
};

/// Nonzero decision-operator eigenvalues for a pure-state pair:
/// eta_pm = ((q1 - q0) +- sqrt(1 - 4 q0 q1 |X|^2)) / 2, eta_plus >= 0.
std::pair<double, double> pure_eigenvalues(double q0, cdouble X);

/// Pc = (1 + sqrt(1 - 4 q0 q1 |X|^2)) / 2.
double pure_bound(double q0, cdouble X);

/// The h+1 eigenvalues of the comparison instance: q1/h with multiplicity
/// h-1 plus the eta_pm pair. Sorted descending.
std::vector<double> comparison_eigenvalues(const ComparisonSpec& spec);

double comparison_pc(const ComparisonSpec& spec);

/// Read the rank-2 parameters back from a factor pair (NotRank2 unless both
/// ranks are 2; NonOrthogonalColumns if a diagonal Gram block is not
/// diagonal). Weights are divided out against the priors carried by the
/// FactorSet, so the round trip through assemble_gram is exact.
Rank2Parameters extract_rank2_parameters(const FactorSet& fs);

/// Gram matrix and skew Gram matrix assembled from rank-2 parameters.
struct AssembledGram {
  ComplexMatrix gram;
  ComplexMatrix skew_gram;
};
AssembledGram assemble_gram(const Rank2Parameters& rp);

/// Quartic coefficients of the skew Gram eigenvalue equation. B and C come
/// from the closed-form expressions; D and E from the characteristic
/// polynomial of the assembled skew Gram matrix (see docs/rank2_quartic.md
/// for the full symbolic forms, which agree with both).
QuarticCoefficients rank2_coefficients(const Rank2Parameters& rp);

/// Sum of the two positive quartic roots via the radical expression with
/// R = 2C^3 - 9BDC - 72EC + 27D^2 + 27B^2E and S = C^2 - 3BD + 12E,
/// evaluated with principal complex roots. Falls back to the quartic solver
/// when the branch evaluation misbehaves.
struct PositiveSumResult {
  double value = 0.0;
  double r = 0.0;
  double s = 0.0;
  bool used_fallback = false;
};
PositiveSumResult rank2_positive_sum(const QuarticCoefficients& c);

/// H = p_a^2 (1 - X^2) + p_c^2 (1 - Z^2) - 2 p_a p_c |Y|^2 and
/// L = (p_a p_c)^2 [ (|Y|^2 - (1 + XZ))^2 - (X + Z)^2 ]; the biquadratic
/// eta^4 - H/4 eta^2 + L/16 = 0 then carries the nonzero spectrum.
std::pair<double, double> gus_hl(const GusParameters& gp);

/// Pc = 1/2 + 1/2 sqrt(H + 2 sqrt(L)); clamps a sqrt argument inside
/// [-1e-9, 0) to zero and reports it through *clamped when given.
double gus_pc(const GusParameters& gp, bool* clamped = nullptr);

}  // namespace helstrom::closedform
