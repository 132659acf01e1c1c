/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "helstrom/error.hpp"

namespace helstrom::closedform {

namespace {

double clamp_sqrt_arg(double v, bool* clamped) {
  if (v < 0.0) {
    if (v < -1e-9) throw DomainError("square root argument is negative");
    if (clamped != nullptr) *clamped = true;
    return 0.0;
  }
  return v;
}

}  // namespace

cdouble Rank2Parameters::x() const { return std::sqrt(q0 * q1() * p_a * p_b) * X; }
cdouble Rank2Parameters::y() const { return std::sqrt(q0 * q1() * p_a * p_d) * Y; }
cdouble Rank2Parameters::w() const { return std::sqrt(q0 * q1() * p_c * p_b) * W; }
cdouble Rank2Parameters::z() const { return std::sqrt(q0 * q1() * p_c * p_d) * Z; }

void Rank2Parameters::validate() const {
  if (q0 <= 0.0 || q0 >= 1.0) throw DomainError("prior q0 must lie in (0, 1)");
  for (const double pv : {p_a, p_c, p_b, p_d})
    if (pv < 0.0) throw DomainError("state probabilities must be nonnegative");
  for (const cdouble& ip : {X, Y, W, Z})
    if (std::abs(ip) > 1.0 + 1e-12) throw DomainError("inner product magnitude exceeds 1");
  if (p() + q() + r() + s() > 1.0 + 1e-9)
    throw DomainError("weighted eigenvalues exceed total probability");
}

GusParameters GusParameters::make(double p_a, double x, cdouble y, double z) {
  return make_with_pc(p_a, 1.0 - p_a, x, y, z);
}

GusParameters GusParameters::make_with_pc(double p_a, double p_c, double x, cdouble y,
                                          double z) {
  GusParameters gp;
  gp.p_a = p_a;
  gp.p_c = p_c;
  gp.X = x;
  gp.Y = y;
  gp.Z = z;
  gp.validate();
  return gp;
}

void GusParameters::validate() const {
  if (p_a < 0.0 || p_c < 0.0 || p_a + p_c > 1.0 + 1e-9)
    throw DomainError("GUS probabilities must be nonnegative and sum to at most 1");
  if (std::abs(X) > 1.0 + 1e-12 || std::abs(Z) > 1.0 + 1e-12 || std::abs(Y) > 1.0 + 1e-12)
    throw DomainError("inner product magnitude exceeds 1");
}

double ComparisonSpec::norm2() const {
  double s = 0.0;
  for (const auto& xi : overlaps) s += std::norm(xi);
  return s;
}

void ComparisonSpec::validate() const {
  if (q0 <= 0.0 || q0 >= 1.0) throw DomainError("prior q0 must lie in (0, 1)");
  if (h < 1) throw DomainError("mixture needs at least one ket");
  if (overlaps.size() > h) throw DomainError("more overlaps than mixture kets");
  if (norm2() > 1.0 + 1e-12) throw DomainError("overlap norm exceeds 1");
}

std::pair<double, double> pure_eigenvalues(double q0, cdouble X) {
  if (q0 <= 0.0 || q0 >= 1.0) throw DomainError("prior q0 must lie in (0, 1)");
  const double x2 = std::norm(X);
  if (x2 > 1.0 + 1e-12) throw DomainError("overlap magnitude exceeds 1");
  const double q1 = 1.0 - q0;
  const double disc = std::sqrt(std::max(1.0 - 4.0 * q0 * q1 * std::min(x2, 1.0), 0.0));
  const double plus = 0.5 * ((q1 - q0) + disc);
  const double minus = 0.5 * ((q1 - q0) - disc);
  return {plus, minus};
}

double pure_bound(double q0, cdouble X) {
  const auto [plus, minus] = pure_eigenvalues(q0, X);
  (void)minus;
  return q0 + plus;
}

std::vector<double> comparison_eigenvalues(const ComparisonSpec& spec) {
  spec.validate();
  const double q0 = spec.q0;
  const double q1 = spec.q1();
  const double h = static_cast<double>(spec.h);
  const double n2 = spec.norm2();

  const double mid = q1 / h - q0;
  const double disc = std::sqrt(std::max((q1 / h + q0) * (q1 / h + q0) - 4.0 * q0 * q1 / h * n2, 0.0));
  const double plus = 0.5 * (mid + disc);
  const double minus = 0.5 * (mid - disc);

  std::vector<double> out;
  out.reserve(spec.h + 1);
  out.push_back(plus);
  for (std::size_t i = 0; i + 1 < spec.h; ++i) out.push_back(q1 / h);
  out.push_back(minus);
  std::sort(out.rbegin(), out.rend());
  return out;
}

double comparison_pc(const ComparisonSpec& spec) {
  spec.validate();
  const double q0 = spec.q0;
  const double q1 = spec.q1();
  const double h = static_cast<double>(spec.h);
  const double disc =
      std::sqrt(std::max((q1 / h + q0) * (q1 / h + q0) - 4.0 * q0 * q1 / h * spec.norm2(), 0.0));
  return 0.5 * (1.0 + q1 * (h - 1.0) / h + disc);
}

Rank2Parameters extract_rank2_parameters(const FactorSet& fs) {
  if (fs.k0() != 2 || fs.k1() != 2) throw NotRank2("factor ranks must both be 2");
  const GramPair gp = detection::build_gram_pair(fs);
  const ComplexMatrix g00 = gp.g00();
  const ComplexMatrix g11 = gp.g11();
  const ComplexMatrix g01 = gp.g01();

  const double diag_scale = std::max({g00.max_abs(), g11.max_abs(), 1e-300});
  const double offdiag =
      std::max(std::abs(g00(0, 1)), std::abs(g11(0, 1)));
  if (offdiag > 1e-9 * diag_scale)
    throw NonOrthogonalColumns("factor columns are not orthogonal within each state");

  Rank2Parameters rp;
  rp.q0 = fs.q0;
  rp.p_a = g00(0, 0).real() / fs.q0;
  rp.p_c = g00(1, 1).real() / fs.q0;
  rp.p_b = g11(0, 0).real() / fs.q1;
  rp.p_d = g11(1, 1).real() / fs.q1;

  const auto weight = [](const cdouble& num, double a, double b) -> cdouble {
    const double den = std::sqrt(a * b);
    if (den <= 1e-300) return {0.0, 0.0};
    return num / den;
  };
  // dividing by sqrt(G00_ii G11_jj) removes the weights exactly
  rp.X = weight(g01(0, 0), g00(0, 0).real(), g11(0, 0).real());
  rp.Y = weight(g01(0, 1), g00(0, 0).real(), g11(1, 1).real());
  rp.W = weight(g01(1, 0), g00(1, 1).real(), g11(0, 0).real());
  rp.Z = weight(g01(1, 1), g00(1, 1).real(), g11(1, 1).real());
  rp.validate();
  return rp;
}

AssembledGram assemble_gram(const Rank2Parameters& rp) {
  ComplexMatrix g(4, 4);
  g(0, 0) = rp.p();
  g(1, 1) = rp.q();
  g(2, 2) = rp.r();
  g(3, 3) = rp.s();
  g(0, 2) = rp.x();
  g(0, 3) = rp.y();
  g(1, 2) = rp.w();
  g(1, 3) = rp.z();
  g(2, 0) = std::conj(g(0, 2));
  g(3, 0) = std::conj(g(0, 3));
  g(2, 1) = std::conj(g(1, 2));
  g(3, 1) = std::conj(g(1, 3));

  ComplexMatrix gs = g;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) gs(i, j) = -gs(i, j);
  return {g, gs};
}

QuarticCoefficients rank2_coefficients(const Rank2Parameters& rp) {
  const AssembledGram ag = assemble_gram(rp);
  const auto coeffs = linalg::char_poly(ag.skew_gram);

  const double p = rp.p(), q = rp.q(), r = rp.r(), s = rp.s();
  const double x2 = std::norm(rp.x());
  const double y2 = std::norm(rp.y());
  const double w2 = std::norm(rp.w());
  const double z2 = std::norm(rp.z());

  QuarticCoefficients out;
  out.b = p + q - r - s;
  out.c = x2 + w2 + y2 + z2 + p * q + r * s - (p + q) * (r + s);
  out.d = coeffs[3];
  out.e = coeffs[4];
  return out;
}

PositiveSumResult rank2_positive_sum(const QuarticCoefficients& c) {
  PositiveSumResult out;
  const double B = c.b, C = c.c, D = c.d, E = c.e;
  out.r = 2.0 * C * C * C - 9.0 * B * D * C - 72.0 * E * C + 27.0 * D * D + 27.0 * B * B * E;
  out.s = C * C - 3.0 * B * D + 12.0 * E;

  // fallback oracle: sum of positive quartic roots
  const auto roots = linalg::solve_quartic(c);
  double direct = 0.0;
  for (const double eta : roots)
    if (eta > 0.0) direct += eta;

  const cdouble inner =
      cdouble{out.r, 0.0} + std::sqrt(cdouble{out.r * out.r - 4.0 * out.s * out.s * out.s, 0.0});
  const double scale = std::max({1.0, std::abs(B), std::abs(C)});
  bool ok = std::abs(inner) > 1e-280;
  if (ok) {
    const cdouble u = std::pow(inner, 1.0 / 3.0);
    const double cbrt2 = std::cbrt(2.0);
    const cdouble radicand = cdouble{B * B / 4.0 - 2.0 * C / 3.0, 0.0} + u / (3.0 * cbrt2) +
                             cbrt2 * out.s / (3.0 * u);
    const cdouble sum = std::sqrt(radicand) - B / 2.0;
    ok = std::abs(sum.imag()) <= 1e-8 * scale && std::isfinite(sum.real()) &&
         std::abs(sum.real() - direct) <= 1e-8 * scale;
    if (ok) out.value = sum.real();
  }
  if (!ok) {
    out.value = direct;
    out.used_fallback = true;
  }
  return out;
}

std::pair<double, double> gus_hl(const GusParameters& gp) {
  gp.validate();
  const double pa = gp.p_a, pc = gp.p_c;
  const double x = gp.X, z = gp.Z;
  const double y2 = std::norm(gp.Y);

  const double h = pa * pa * (1.0 - x * x) + pc * pc * (1.0 - z * z) - 2.0 * pa * pc * y2;
  const double papc2 = (pa * pc) * (pa * pc);
  const double l_expanded =
      papc2 * (y2 * y2 - 2.0 * (1.0 + x * z) * y2 + (1.0 - x * x) * (1.0 - z * z));
  const double bracket = y2 - (1.0 + x * z);
  const double l_factored = papc2 * (bracket * bracket - (x + z) * (x + z));
  if (std::abs(l_expanded - l_factored) > 1e-12 * std::max(1.0, std::abs(l_factored)))
    throw DomainError("the two forms of L disagree; invalid parameters");
  return {h, l_factored};
}

double gus_pc(const GusParameters& gp, bool* clamped) {
  const auto [h, l] = gus_hl(gp);
  const double sl = std::sqrt(clamp_sqrt_arg(l, clamped));
  double arg = h + 2.0 * sl;
  if (arg > 1.0 + 1e-9) throw DomainError("H + 2 sqrt(L) exceeds 1; invalid parameters");
  if (arg > 1.0) {
    arg = 1.0;
    if (clamped != nullptr) *clamped = true;
  }
  return 0.5 + 0.5 * std::sqrt(clamp_sqrt_arg(arg, clamped));
}

}  // namespace helstrom::closedform
