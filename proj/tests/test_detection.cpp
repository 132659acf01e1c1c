/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helstrom/closedform.hpp"
#include "helstrom/detection.hpp"
#include "helstrom/error.hpp"
#include "helstrom/instances.hpp"
#include "support.hpp"

using namespace helstrom;
using detection::BinaryEnsemble;
using detection::GramPair;
using linalg::cdouble;
using linalg::ComplexMatrix;
using states::DensityOperator;
using states::FactorSet;
using states::Ket;

namespace {

FactorSet random_factor_set(testing::Rng& rng, std::size_t dim, std::size_t r0,
                            std::size_t r1, double q0) {
  FactorSet fs;
  fs.q0 = q0;
  fs.q1 = 1.0 - q0;
  const auto rho0 = testing::random_density(rng, dim, r0);
  const auto rho1 = testing::random_density(rng, dim, r1);
  fs.gamma0 = states::factor_density(rho0, fs.q0, 1e-12, r0);
  fs.gamma1 = states::factor_density(rho1, fs.q1, 1e-12, r1);
  return fs;
}

BinaryEnsemble ensemble_from_factors(const FactorSet& fs) {
  const auto rho0 = (fs.gamma0 * fs.gamma0.adjoint()).scaled(1.0 / fs.q0).symmetrized();
  const auto rho1 = (fs.gamma1 * fs.gamma1.adjoint()).scaled(1.0 / fs.q1).symmetrized();
  return BinaryEnsemble(DensityOperator(rho0), DensityOperator(rho1), fs.q0, fs.q1);
}

FactorSet remark_factors() {
  const double w = std::sqrt(0.5);
  ComplexMatrix g0(4, 2), g1(4, 2);
  g0(0, 0) = w;
  g0(1, 1) = w;
  g1(0, 0) = w;
  g1(2, 1) = w;
  return FactorSet{g0, g1, 0.5, 0.5};
}

}  // namespace

TEST_CASE("decision_operator: identical states cancel, orthogonal states split") {
  testing::Rng rng(31);
  const auto rho = testing::random_density(rng, 4, 2);
  const BinaryEnsemble same(rho, rho, 0.5, 0.5);
  CHECK(detection::decision_operator(same).max_abs() < 1e-14);

  const BinaryEnsemble ortho(states::pure_density(Ket::basis(2, 0)),
                             states::pure_density(Ket::basis(2, 1)), 0.5, 0.5);
  const auto eig = linalg::hermitian_eig(detection::decision_operator(ortho));
  CHECK(eig.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("helstrom_solve: no information means guessing the larger prior") {
  testing::Rng rng(32);
  const auto rho = testing::random_density(rng, 5, 2);

  // identical weighted states: D vanishes and the convention applies
  const auto tied = detection::helstrom_solve(BinaryEnsemble(rho, rho, 0.5, 0.5));
  CHECK(tied.pc == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tied.pi0.max_abs() == 0.0);
  CHECK(tied.pi1.max_abs() == 0.0);
  CHECK(!tied.warnings.empty());

  // identical states, unequal priors: the eigenvalue sum already lands on
  // the larger prior
  const auto skew = detection::helstrom_solve(BinaryEnsemble(rho, rho, 0.3, 0.7));
  CHECK(skew.pc == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("helstrom_solve: orthogonal pure states are perfectly distinguishable") {
  for (const double q0 : {0.2, 0.5, 0.85}) {
    const BinaryEnsemble e(states::pure_density(Ket::basis(3, 0)),
                           states::pure_density(Ket::basis(3, 1)), q0, 1.0 - q0);
    CHECK(detection::helstrom_solve(e).pc == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("build_gram_pair: pure states give the 2x2 skew Gram form") {
  const double q0 = 0.35;
  const cdouble x{0.21, -0.08};
  const auto inst = instances::make_pure(q0, x);
  const auto gp = detection::build_gram_pair(inst.factors);
  const double w = std::sqrt(q0 * (1.0 - q0));
  CHECK(std::abs(gp.skew_gram(0, 0) - cdouble{-q0, 0.0}) < 1e-14);
  CHECK(std::abs(gp.skew_gram(0, 1) - (-w * x)) < 1e-14);
  CHECK(std::abs(gp.skew_gram(1, 0) - w * std::conj(x)) < 1e-14);
  CHECK(std::abs(gp.skew_gram(1, 1) - cdouble{1.0 - q0, 0.0}) < 1e-14);
}

TEST_CASE("build_gram_pair: orthonormal cross-state columns give the trivial pair") {
  ComplexMatrix g0(5, 2), g1(5, 2);
  g0(0, 0) = 1.0;
  g0(1, 1) = 1.0;
  g1(2, 0) = 1.0;
  g1(3, 1) = 1.0;
  const auto gp = detection::build_gram_pair(FactorSet{g0, g1, 0.5, 0.5});
  CHECK(linalg::max_abs_diff(gp.gram, ComplexMatrix::identity(4)) < 1e-15);
  ComplexMatrix expected = ComplexMatrix::identity(4);
  expected(0, 0) = -1.0;
  expected(1, 1) = -1.0;
  CHECK(linalg::max_abs_diff(gp.skew_gram, expected) < 1e-15);
}

TEST_CASE("sgm_solve matches helstrom_solve across random ensembles") {
  testing::Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 4 + rng.integer(9);
    const std::size_t r0 = 1 + rng.integer(std::min<std::size_t>(3, dim / 2));
    const std::size_t r1 = 1 + rng.integer(std::min<std::size_t>(3, dim / 2));
    const double q0 = 0.1 + 0.8 * rng.uniform();
    const auto fs = random_factor_set(rng, dim, r0, r1, q0);
    const auto gp = detection::build_gram_pair(fs);
    const auto sgm = detection::sgm_solve(gp, q0);
    const auto hel = detection::helstrom_solve(ensemble_from_factors(fs));
    CHECK(std::abs(sgm.pc - hel.pc) < 1e-9);

    std::vector<double> hel_nonzero;
    for (const double eta : hel.eigenvalues)
      if (std::abs(eta) > hel.zero_threshold) hel_nonzero.push_back(eta);
    REQUIRE(hel_nonzero.size() == sgm.eigenvalues.size());
    for (std::size_t k = 0; k < hel_nonzero.size(); ++k)
      CHECK(std::abs(hel_nonzero[k] - sgm.eigenvalues[k]) < 1e-9);
    CHECK(sgm.spurious_eigenvalues.empty());
  }
}

TEST_CASE("sgm_solve lifts orthonormal eigenvectors that diagonalize D") {
  testing::Rng rng(34);
  const auto fs = random_factor_set(rng, 8, 2, 3, 0.45);
  const auto gp = detection::build_gram_pair(fs);
  const auto d = detection::decision_operator(fs);
  const auto res = detection::sgm_solve(gp, 0.45, &d);  // cross-check mode on
  CHECK(res.warnings.empty());

  const std::size_t kept = res.vectors.cols();
  REQUIRE(kept == 5);
  const auto vtv = res.vectors.adjoint() * res.vectors;
  CHECK(linalg::max_abs_diff(vtv, ComplexMatrix::identity(kept)) < 1e-8);
}

TEST_CASE("sgm_solve handles the degenerate comparison spectrum") {
  closedform::ComparisonSpec spec;
  spec.q0 = 0.3;
  spec.h = 4;
  spec.overlaps = {cdouble{0.4, 0.0}, cdouble{0.3, 0.0}, cdouble{0.2, 0.0},
                   cdouble{0.35, 0.0}};
  const auto inst = instances::make_comparison(spec);
  const auto gp = detection::build_gram_pair(inst.factors);
  const auto res = detection::sgm_solve(gp, spec.q0);
  const auto expected = closedform::comparison_eigenvalues(spec);  // descending
  REQUIRE(res.eigenvalues.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k)
    CHECK(std::abs(res.eigenvalues[k] - expected[k]) < 1e-7);
  CHECK(std::abs(res.pc - closedform::comparison_pc(spec)) < 1e-7);
}

TEST_CASE("rank-deficient state matrix: one spurious flag, ranks 3 vs 2") {
  const auto fs = remark_factors();
  const auto gp = detection::build_gram_pair(fs);
  CHECK(linalg::matrix_rank(gp.skew_gram, 1e-9) == 3);
  CHECK(linalg::matrix_rank(detection::decision_operator(fs), 1e-9) == 2);

  const auto res = detection::sgm_solve(gp, 0.5);
  CHECK(res.spurious_eigenvalues.size() == 1);
  CHECK(std::abs(res.spurious_eigenvalues[0]) < 1e-9);
  // the nonzero spectrum still matches the decision operator
  REQUIRE(res.kept_eigenvalues.size() == 2);
  CHECK(res.kept_eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(res.kept_eigenvalues[1] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(res.pc == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("verify_measurement: trace route equals the eigenvalue route") {
  testing::Rng rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 4 + rng.integer(7);
    const std::size_t r0 = 1 + rng.integer(2);
    const std::size_t r1 = 1 + rng.integer(2);
    const double q0 = 0.15 + 0.7 * rng.uniform();
    const auto fs = random_factor_set(rng, dim, r0, r1, q0);
    const auto e = ensemble_from_factors(fs);

    const auto hel = detection::helstrom_solve(e);
    const auto audit_h = detection::verify_measurement(hel, e);
    CHECK(audit_h.max_deviation < 1e-9);

    const auto sgm = detection::sgm_solve(detection::build_gram_pair(fs), q0);
    const auto audit_s = detection::verify_measurement(sgm, e);
    CHECK(audit_s.max_deviation < 1e-8);
  }
}

TEST_CASE("factor gauge invariance: gamma -> gamma U leaves the solution alone") {
  testing::Rng rng(36);
  for (int trial = 0; trial < 15; ++trial) {
    const auto fs = random_factor_set(rng, 7, 2, 2, 0.4);
    const auto base = detection::sgm_solve(detection::build_gram_pair(fs), 0.4);

    FactorSet gauged = fs;
    gauged.gamma0 = fs.gamma0 * testing::random_unitary(rng, 2);
    gauged.gamma1 = fs.gamma1 * testing::random_unitary(rng, 2);
    const auto moved = detection::sgm_solve(detection::build_gram_pair(gauged), 0.4);

    CHECK(std::abs(base.pc - moved.pc) < 1e-9);
    CHECK(linalg::max_abs_diff(base.pi0, moved.pi0) < 1e-9);
    CHECK(linalg::max_abs_diff(base.pi1, moved.pi1) < 1e-9);
  }
}

TEST_CASE("swap symmetry: exchanging the hypotheses swaps the measurement") {
  testing::Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t dim = 5 + rng.integer(4);
    const auto rho0 = testing::random_density(rng, dim, 1 + rng.integer(2));
    const auto rho1 = testing::random_density(rng, dim, 1 + rng.integer(2));
    const double q0 = 0.2 + 0.6 * rng.uniform();
    const auto a = detection::helstrom_solve(BinaryEnsemble(rho0, rho1, q0, 1.0 - q0));
    const auto b = detection::helstrom_solve(BinaryEnsemble(rho1, rho0, 1.0 - q0, q0));
    CHECK(std::abs(a.pc - b.pc) < 1e-10);
    CHECK(linalg::max_abs_diff(a.pi0, b.pi1) < 1e-8);
    CHECK(linalg::max_abs_diff(a.pi1, b.pi0) < 1e-8);
    CHECK(a.pc >= std::max(q0, 1.0 - q0) - 1e-12);
    CHECK(a.pc <= 1.0 + 1e-12);
  }
}

TEST_CASE("is_gus: symmetric pair detected, asymmetric rejected") {
  // block-circulant by construction
  const auto gus = closedform::GusParameters::make(0.93, 0.1, cdouble{0.05, 0.02}, 0.2);
  const auto inst = instances::make_gus(gus);
  CHECK(detection::is_gus(detection::build_gram_pair(inst.factors), 1e-8));

  // different diagonal blocks
  closedform::Rank2Parameters rp;
  rp.q0 = 0.4;
  rp.p_a = 0.9;
  rp.p_c = 0.1;
  rp.p_b = 0.8;
  rp.p_d = 0.2;
  rp.X = 0.1;
  const auto asym = instances::make_rank2(rp);
  CHECK(!detection::is_gus(detection::build_gram_pair(asym.factors), 1e-8));

  // zero off-diagonal block with equal diagonals
  ComplexMatrix g0(6, 2), g1(6, 2);
  g0(0, 0) = 0.7;
  g0(1, 1) = 0.1;
  g1(2, 0) = 0.7;
  g1(3, 1) = 0.1;
  CHECK(detection::is_gus(detection::build_gram_pair(FactorSet{g0, g1, 0.5, 0.5}), 1e-8));

  // rank mismatch
  ComplexMatrix g2(6, 1);
  g2(0, 0) = 1.0;
  CHECK_THROWS_AS(detection::is_gus(detection::build_gram_pair(FactorSet{g2, g1, 0.5, 0.5}),
                                    1e-8),
                  ShapeMismatch);
}

TEST_CASE("BinaryEnsemble validates priors and dimensions") {
  testing::Rng rng(38);
  const auto rho4 = testing::random_density(rng, 4, 2);
  const auto rho5 = testing::random_density(rng, 5, 2);
  CHECK_THROWS_AS(BinaryEnsemble(rho4, rho5, 0.5, 0.5), DimensionMismatch);
  CHECK_THROWS_AS(BinaryEnsemble(rho4, rho4, 0.6, 0.6), InvalidSpec);
}
