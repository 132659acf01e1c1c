/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/instances.hpp"

#include <cmath>
#include <sstream>

#include "helstrom/error.hpp"

namespace helstrom::instances {

namespace {

using linalg::ComplexMatrix;
using states::DensityOperator;
using states::Ket;

double real_tail(double one_minus_norm2, const char* what) {
  if (one_minus_norm2 < -1e-12) {
    throw DomainError(std::string("inner products are not realizable: ") + what);
  }
  return std::sqrt(std::max(one_minus_norm2, 0.0));
}

ComplexMatrix columns_to_matrix(std::size_t dim, const std::vector<std::vector<cdouble>>& cols) {
  ComplexMatrix m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  return m;
}

DensityOperator density_from_factor(const ComplexMatrix& gamma, double q) {
  return DensityOperator((gamma * gamma.adjoint()).scaled(1.0 / q).symmetrized());
}

}  // namespace

Instance make_pure(double q0, cdouble X) {
  if (q0 <= 0.0 || q0 >= 1.0) throw DomainError("prior q0 must lie in (0, 1)");
  if (std::abs(X) > 1.0 + 1e-12) throw DomainError("overlap magnitude exceeds 1");
  const double q1 = 1.0 - q0;
  const double tail = real_tail(1.0 - std::norm(X), "pure overlap");

  const Ket a = Ket::basis(2, 0);
  const Ket b(std::vector<cdouble>{X, tail});
  FactorSet fs;
  fs.q0 = q0;
  fs.q1 = q1;
  fs.gamma0 = columns_to_matrix(2, {{std::sqrt(q0) * a[0], std::sqrt(q0) * a[1]}});
  fs.gamma1 = columns_to_matrix(2, {{std::sqrt(q1) * b[0], std::sqrt(q1) * b[1]}});
  return Instance{BinaryEnsemble(pure_density(a), pure_density(b), q0, q1), fs};
}

Instance make_comparison(const ComparisonSpec& spec) {
  spec.validate();
  const std::size_t h = spec.h;
  const std::size_t dim = h + 1;
  const double q1 = spec.q1();

  std::vector<cdouble> a_amp(dim, cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < spec.overlaps.size(); ++i) a_amp[i] = std::conj(spec.overlaps[i]);
  a_amp[h] = real_tail(1.0 - spec.norm2(), "comparison overlaps");
  const Ket a(a_amp);

  ComplexMatrix rho1(dim, dim);
  std::vector<std::vector<cdouble>> cols1;
  for (std::size_t i = 0; i < h; ++i) {
    rho1(i, i) = 1.0 / static_cast<double>(h);
    std::vector<cdouble> col(dim, cdouble{0.0, 0.0});
    col[i] = std::sqrt(q1 / static_cast<double>(h));
    cols1.push_back(std::move(col));
  }

  FactorSet fs;
  fs.q0 = spec.q0;
  fs.q1 = q1;
  std::vector<cdouble> col0(dim);
  for (std::size_t i = 0; i < dim; ++i) col0[i] = std::sqrt(spec.q0) * a[i];
  fs.gamma0 = columns_to_matrix(dim, {col0});
  fs.gamma1 = columns_to_matrix(dim, cols1);
  return Instance{
      BinaryEnsemble(pure_density(a), DensityOperator(std::move(rho1)), spec.q0, q1), fs};
}

Instance make_rank2(const Rank2Parameters& rp) {
  rp.validate();
  const double q0 = rp.q0;
  const double q1 = rp.q1();
  const double pa = rp.p_a;
  const double pc = 1.0 - rp.p_a;
  const double pb = rp.p_b;
  const double pd = 1.0 - rp.p_b;

  // a = e1, c = e2; b and d carry the prescribed inner products
  const cdouble X = rp.X, Y = rp.Y, W = rp.W, Z = rp.Z;
  std::vector<cdouble> b_amp(4, cdouble{0.0, 0.0});
  b_amp[0] = X;
  b_amp[1] = W;
  const double b3 = real_tail(1.0 - std::norm(X) - std::norm(W), "X, W");
  b_amp[2] = b3;
  if (b3 <= 1e-12) throw DomainError("inner products leave no room for <b|d> = 0");

  std::vector<cdouble> d_amp(4, cdouble{0.0, 0.0});
  d_amp[0] = Y;
  d_amp[1] = Z;
  d_amp[2] = -(std::conj(X) * Y + std::conj(W) * Z) / b3;
  d_amp[3] =
      real_tail(1.0 - std::norm(Y) - std::norm(Z) - std::norm(d_amp[2]), "Y, Z");

  const Ket a = Ket::basis(4, 0);
  const Ket c = Ket::basis(4, 1);
  const Ket b(b_amp);
  const Ket d(d_amp);

  const ComplexMatrix rho0 =
      (outer(a, a).scaled(pa) + outer(c, c).scaled(pc)).symmetrized();
  const ComplexMatrix rho1 =
      (outer(b, b).scaled(pb) + outer(d, d).scaled(pd)).symmetrized();

  FactorSet fs;
  fs.q0 = q0;
  fs.q1 = q1;
  const auto weighted = [](const Ket& k, double wgt) {
    std::vector<cdouble> col(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) col[i] = std::sqrt(wgt) * k[i];
    return col;
  };
  fs.gamma0 = columns_to_matrix(4, {weighted(a, q0 * pa), weighted(c, q0 * pc)});
  fs.gamma1 = columns_to_matrix(4, {weighted(b, q1 * pb), weighted(d, q1 * pd)});
  return Instance{
      BinaryEnsemble(DensityOperator(rho0), DensityOperator(rho1), q0, q1), fs};
}

Instance make_gus(const GusParameters& gp) {
  gp.validate();
  Rank2Parameters rp;
  rp.q0 = 0.5;
  rp.p_a = gp.p_a;
  rp.p_c = 1.0 - gp.p_a;
  rp.p_b = gp.p_a;
  rp.p_d = 1.0 - gp.p_a;
  rp.X = gp.X;
  rp.Y = gp.Y;
  rp.W = std::conj(gp.Y);
  rp.Z = gp.Z;
  return make_rank2(rp);
}

CoherentPipeline make_coherent(const CoherentRun& run) {
  if (run.dim < 4) throw InvalidSpec("coherent runs need dim >= 4");
  if (run.q0 <= 0.0 || run.q0 >= 1.0) throw InvalidSpec("prior q0 must lie in (0, 1)");
  const double q1 = 1.0 - run.q0;

  states::CoherentSpec s0{run.alpha0, run.n_thermal, run.dim};
  states::CoherentSpec s1{run.alpha1, run.n_thermal, run.dim};
  DensityOperator rho0 = states::displaced_thermal(s0);
  DensityOperator rho1 = states::displaced_thermal(s1);

  std::vector<std::string> warnings;
  for (const auto* rho : {&rho0, &rho1}) {
    const double want = std::norm(rho == &rho0 ? run.alpha0 : run.alpha1) + run.n_thermal;
    const double got = states::mean_photon_number(*rho);
    if (want > 0.0 && std::abs(got - want) > 1e-3 * std::max(1.0, want)) {
      std::ostringstream os;
      os << "truncation deficit: mean photon number " << got << " vs " << want
         << "; consider a larger dim";
      warnings.push_back(os.str());
    }
  }

  std::size_t rank = run.rank;
  if (rank > 0 && 2 * rank > run.dim)
    throw InvalidSpec("rank override exceeds dim/2");
  FactorSet fs;
  fs.q0 = run.q0;
  fs.q1 = q1;
  fs.gamma0 = states::factor_density(rho0, run.q0, run.rank_tol, rank);
  fs.gamma1 = states::factor_density(rho1, q1, run.rank_tol, rank);
  if (rank == 0) {
    // automatic rank: cap so the combined factors still fit the space
    const std::size_t cap = run.dim / 2;
    if (fs.gamma0.cols() > cap || fs.gamma1.cols() > cap) {
      warnings.push_back("rank capped at dim/2 to keep the factors inside the space");
      fs.gamma0 = states::factor_density(rho0, run.q0, run.rank_tol,
                                         std::min(fs.gamma0.cols(), cap));
      fs.gamma1 =
          states::factor_density(rho1, q1, run.rank_tol, std::min(fs.gamma1.cols(), cap));
    }
  }

  const double deficit0 = run.q0 - (fs.gamma0.adjoint() * fs.gamma0).trace().real();
  const double deficit1 = q1 - (fs.gamma1.adjoint() * fs.gamma1).trace().real();
  if (deficit0 > 1e-6 || deficit1 > 1e-6) {
    std::ostringstream os;
    os << "rank truncation drops weight " << deficit0 << " / " << deficit1
       << " from the two states";
    warnings.push_back(os.str());
  }

  BinaryEnsemble factored(density_from_factor(fs.gamma0, run.q0),
                          density_from_factor(fs.gamma1, q1), run.q0, q1);
  detection::GramPair gram = detection::build_gram_pair(fs);
  return CoherentPipeline{std::move(rho0), std::move(rho1), std::move(factored),
                          std::move(fs), std::move(gram), std::move(warnings)};
}

}  // namespace helstrom::instances
