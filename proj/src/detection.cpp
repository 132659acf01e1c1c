/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/detection.hpp"

#include <algorithm>
#include <cmath>

#include "helstrom/error.hpp"
#include "helstrom/linalg.hpp"

namespace helstrom::detection {

namespace {

// Gram-Schmidt the new column against cols [0, count) of basis; returns the
// residual norm. The caller decides whether to keep it.
double orthogonalize_into(ComplexMatrix& basis, std::size_t count, std::vector<cdouble>& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < count; ++k) {
      cdouble proj{0.0, 0.0};
      for (std::size_t i = 0; i < basis.rows(); ++i) proj += std::conj(basis(i, k)) * v[i];
      for (std::size_t i = 0; i < basis.rows(); ++i) v[i] -= proj * basis(i, k);
    }
  }
  double n2 = 0.0;
  for (const auto& z : v) n2 += std::norm(z);
  return std::sqrt(n2);
}

ComplexMatrix projector_from_columns(const ComplexMatrix& vecs,
                                     const std::vector<std::size_t>& cols, std::size_t n) {
  ComplexMatrix p(n, n);
  for (const std::size_t j : cols)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p(r, c) += vecs(r, j) * std::conj(vecs(c, j));
  return p.symmetrized();
}

double min_eigenvalue(const ComplexMatrix& m) {
  return linalg::hermitian_eig(m).eigenvalues.back();
}

}  // namespace

BinaryEnsemble::BinaryEnsemble(DensityOperator r0, DensityOperator r1, double prior0,
                               double prior1)
    : rho0(std::move(r0)), rho1(std::move(r1)), q0(prior0), q1(prior1) {
  if (rho0.dim() != rho1.dim())
    throw DimensionMismatch("ensemble density operators must share a dimension");
  if (q0 <= 0.0 || q1 <= 0.0 || std::abs(q0 + q1 - 1.0) > 1e-12)
    throw InvalidSpec("prior probabilities must be positive and sum to 1");
}

ComplexMatrix decision_operator(const BinaryEnsemble& e) {
  return (e.rho1.matrix().scaled(e.q1) - e.rho0.matrix().scaled(e.q0)).symmetrized();
}

ComplexMatrix decision_operator(const FactorSet& fs) {
  if (fs.gamma0.rows() != fs.gamma1.rows())
    throw DimensionMismatch("factors must share the Hilbert dimension");
  const ComplexMatrix d =
      fs.gamma1 * fs.gamma1.adjoint() - fs.gamma0 * fs.gamma0.adjoint();
  return d.symmetrized();
}

DetectionResult helstrom_solve(const BinaryEnsemble& e) {
  const ComplexMatrix d = decision_operator(e);
  const std::size_t n = d.rows();
  const double dnorm = d.frobenius_norm();
  const double state_scale =
      std::max(e.rho0.matrix().frobenius_norm(), e.rho1.matrix().frobenius_norm());

  DetectionResult res;
  res.method = Method::helstrom;

  if (dnorm <= 1e-13 * std::max(1.0, state_scale)) {
    // identical weighted states: no measurement beats guessing the prior
    res.eigenvalues.assign(n, 0.0);
    res.vectors = ComplexMatrix(n, 0);
    res.pi0 = ComplexMatrix(n, n);
    res.pi1 = ComplexMatrix(n, n);
    res.pc = std::max(e.q0, e.q1);
    res.pe = 1.0 - res.pc;
    res.zero_threshold = 0.0;
    res.warnings.push_back("decision operator vanishes; guessing the larger prior");
    return res;
  }

  const auto eig = linalg::hermitian_eig(d);
  res.eigenvalues = eig.eigenvalues;
  res.zero_threshold = 1e-10 * dnorm;

  std::vector<std::size_t> pos_cols, neg_cols, kept_cols;
  for (std::size_t k = 0; k < n; ++k) {
    const double eta = eig.eigenvalues[k];
    if (eta > res.zero_threshold) pos_cols.push_back(k);
    else if (eta < -res.zero_threshold) neg_cols.push_back(k);
  }
  kept_cols = pos_cols;
  kept_cols.insert(kept_cols.end(), neg_cols.begin(), neg_cols.end());
  std::sort(kept_cols.begin(), kept_cols.end());

  res.vectors = ComplexMatrix(n, kept_cols.size());
  for (std::size_t j = 0; j < kept_cols.size(); ++j) {
    res.kept_eigenvalues.push_back(eig.eigenvalues[kept_cols[j]]);
    for (std::size_t i = 0; i < n; ++i) res.vectors(i, j) = eig.eigenvectors(i, kept_cols[j]);
  }

  res.pi1 = projector_from_columns(eig.eigenvectors, pos_cols, n);
  res.pi0 = projector_from_columns(eig.eigenvectors, neg_cols, n);

  double pos_sum = 0.0;
  for (const std::size_t k : pos_cols) pos_sum += eig.eigenvalues[k];
  res.pc = e.q0 + pos_sum;
  res.pe = 1.0 - res.pc;
  return res;
}

GramPair build_gram_pair(const FactorSet& fs) {
  if (fs.gamma0.rows() != fs.gamma1.rows())
    throw DimensionMismatch("factors must share the Hilbert dimension");
  const std::size_t n = fs.dim();
  const std::size_t k0 = fs.k0();
  const std::size_t k1 = fs.k1();
  if (k0 + k1 > n)
    throw DimensionMismatch("combined factor rank exceeds the Hilbert dimension");

  GramPair gp;
  gp.k0 = k0;
  gp.k1 = k1;
  gp.q0 = fs.q0;
  gp.q1 = fs.q1;
  gp.state_matrix = ComplexMatrix(n, k0 + k1);
  gp.state_matrix.set_block(0, 0, fs.gamma0);
  gp.state_matrix.set_block(0, k0, fs.gamma1);
  gp.gram = (gp.state_matrix.adjoint() * gp.state_matrix).symmetrized();

  gp.skew_gram = gp.gram;
  for (std::size_t i = 0; i < k0; ++i)
    for (std::size_t j = 0; j < k0 + k1; ++j) gp.skew_gram(i, j) = -gp.skew_gram(i, j);
  return gp;
}

DetectionResult sgm_solve(const GramPair& gp, double q0, const ComplexMatrix* cross_check_d) {
  const std::size_t k = gp.k0 + gp.k1;
  const std::size_t n = gp.state_matrix.rows();
  if (gp.skew_gram.rows() != k) throw DimensionMismatch("skew Gram matrix has a bad shape");

  DetectionResult res;
  res.method = Method::sgm;

  const double gs_norm = gp.skew_gram.frobenius_norm();
  res.zero_threshold = 1e-10 * std::max(gs_norm, 1e-300);
  const auto spectrum = linalg::general_eig_small(gp.skew_gram);  // ascending
  res.eigenvalues.assign(spectrum.rbegin(), spectrum.rend());     // descending

  // group repeated eigenvalues so a degenerate one is lifted once, with its
  // full null-space basis
  struct Group {
    double eta;
    std::size_t multiplicity;
  };
  std::vector<Group> groups;
  const double group_tol = 1e-8 * std::max(1.0, std::abs(res.eigenvalues.front()));
  for (const double eta : res.eigenvalues) {
    if (!groups.empty() && std::abs(eta - groups.back().eta) <= group_tol) {
      ++groups.back().multiplicity;
    } else {
      groups.push_back({eta, 1});
    }
  }

  res.vectors = ComplexMatrix(n, k);
  std::size_t kept = 0;
  double pos_sum = 0.0;
  std::vector<std::size_t> pos_cols, neg_cols;

  for (const auto& g : groups) {
    ComplexMatrix shifted = gp.skew_gram;
    for (std::size_t i = 0; i < k; ++i) shifted(i, i) -= g.eta;
    const ComplexMatrix theta_basis = linalg::null_space(shifted, 1e-10 * gs_norm);

    std::size_t lifted_here = 0;
    for (std::size_t j = 0; j < theta_basis.cols() && lifted_here < g.multiplicity; ++j) {
      std::vector<cdouble> theta(k);
      for (std::size_t i = 0; i < k; ++i) theta[i] = theta_basis(i, j);
      std::vector<cdouble> v = gp.state_matrix.apply(theta);  // Gamma theta
      double lift_norm2 = 0.0;
      for (const auto& z : v) lift_norm2 += std::norm(z);
      if (lift_norm2 <= 1e-14) {
        // theta* G theta = ||Gamma theta||^2 vanished: eigenvalue of G_s with
        // no counterpart in D
        res.spurious_eigenvalues.push_back(g.eta);
        continue;
      }
      const double resid = orthogonalize_into(res.vectors, kept, v);
      if (resid <= 1e-10) {
        res.spurious_eigenvalues.push_back(g.eta);
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) res.vectors(i, kept) = v[i] / resid;
      if (std::abs(g.eta) > res.zero_threshold) {
        res.kept_eigenvalues.push_back(g.eta);
        if (g.eta > 0.0) {
          pos_cols.push_back(kept);
          pos_sum += g.eta;
        } else {
          neg_cols.push_back(kept);
        }
        ++kept;
      }
      // zero eigenvalues with a regular lift contribute to neither operator
      ++lifted_here;
    }
    if (lifted_here < g.multiplicity && std::abs(g.eta) > res.zero_threshold)
      res.warnings.push_back("eigenvalue multiplicity not matched by lifted eigenvectors");
  }

  res.vectors = res.vectors.block(0, 0, n, kept);
  if (cross_check_d != nullptr) {
    const double dnorm = std::max(cross_check_d->frobenius_norm(), 1e-300);
    for (std::size_t j = 0; j < kept; ++j) {
      std::vector<cdouble> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = res.vectors(i, j);
      const auto dv = cross_check_d->apply(v);
      double defect = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        defect = std::max(defect, std::abs(dv[i] - res.kept_eigenvalues[j] * v[i]));
      if (defect > 1e-8 * dnorm)
        res.warnings.push_back("lifted vector fails the decision-operator cross check");
    }
  }

  res.pi1 = projector_from_columns(res.vectors, pos_cols, n);
  res.pi0 = projector_from_columns(res.vectors, neg_cols, n);
  res.pc = q0 + pos_sum;
  res.pe = 1.0 - res.pc;
  return res;
}

MeasurementAudit verify_measurement(const DetectionResult& result, const BinaryEnsemble& e) {
  MeasurementAudit audit;
  audit.pc_eigensum = result.pc;

  const std::size_t n = e.dim();
  if (result.pi0.rows() != n || result.pi1.rows() != n)
    throw DimensionMismatch("measurement operators do not match the ensemble dimension");

  const bool empty_measurement =
      result.pi0.max_abs() == 0.0 && result.pi1.max_abs() == 0.0;
  if (empty_measurement) {
    // guess-the-prior convention; the trace formula does not apply
    audit.pc_trace = result.pc;
    audit.pc_deviation = 0.0;
  } else {
    const double t0 = (e.rho0.matrix() * result.pi0).trace().real();
    const double t1 = (e.rho1.matrix() * result.pi1).trace().real();
    audit.pc_trace = e.q0 * t0 + e.q1 * t1;
    // the trace route recovers the captured weight q0 tr(rho0) rather than
    // the nominal q0; the two coincide for unit-trace states
    const double expected =
        e.q0 * e.rho0.trace() + (audit.pc_eigensum - e.q0);
    audit.pc_deviation = std::abs(audit.pc_trace - expected);
  }

  audit.pi0_min_eigenvalue = min_eigenvalue(result.pi0);
  audit.pi1_min_eigenvalue = min_eigenvalue(result.pi1);

  const ComplexMatrix p = result.pi0 + result.pi1;
  audit.projector_defect = max_abs_diff(p * p, p);

  audit.max_deviation = std::max(
      {audit.pc_deviation, std::max(0.0, -audit.pi0_min_eigenvalue),
       std::max(0.0, -audit.pi1_min_eigenvalue), audit.projector_defect});
  return audit;
}

bool is_gus(const GramPair& gp, double tol) {
  if (gp.k0 != gp.k1) throw ShapeMismatch("GUS test needs equal factor ranks");
  const double scale = std::max(gp.gram.max_abs(), 1e-300);
  const ComplexMatrix g01 = gp.g01();
  const double circulant_defect = max_abs_diff(gp.g11(), gp.g00());
  const double hermitian_defect = max_abs_diff(g01, g01.adjoint());
  return circulant_defect <= tol * scale && hermitian_defect <= tol * scale;
}

}  // namespace helstrom::detection
