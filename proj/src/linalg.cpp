/**
 * This code is part of helstrom.
 *
 * (C) Copyright the helstrom contributors 2026.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "helstrom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helstrom/error.hpp"

namespace helstrom::linalg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Updates a and accumulates
// the rotation into v (columns).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const double b = std::abs(a(p, q));
  if (b < 1e-300) return;
  const cdouble phase = a(p, q) / b;
  const double tau = (a(p, p).real() - a(q, q).real()) / (2.0 * b);
  const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
  const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = a.rows();
  // rows: U* A
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble apj = a(p, j);
    const cdouble aqj = a(q, j);
    a(p, j) = c * apj + s * phase * aqj;
    a(q, j) = -s * std::conj(phase) * apj + c * aqj;
  }
  // columns: (U* A) U
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble aip = a(i, p);
    const cdouble aiq = a(i, q);
    a(i, p) = c * aip + s * std::conj(phase) * aiq;
    a(i, q) = -s * phase * aip + c * aiq;
    const cdouble vip = v(i, p);
    const cdouble viq = v(i, q);
    v(i, p) = c * vip + s * std::conj(phase) * viq;
    v(i, q) = -s * phase * vip + c * viq;
  }
}

cdouble dot(const ComplexMatrix& m, std::size_t col_a, std::size_t col_b) {
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::conj(m(i, col_a)) * m(i, col_b);
  return s;
}

// Modified Gram-Schmidt over a contiguous range of columns.
void orthonormalize_columns(ComplexMatrix& m, std::size_t first, std::size_t last) {
  for (std::size_t j = first; j < last; ++j) {
    for (std::size_t k = first; k < j; ++k) {
      const cdouble proj = dot(m, k, j);
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) -= proj * m(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) nrm += std::norm(m(i, j));
    nrm = std::sqrt(nrm);
    if (nrm > 1e-300)
      for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= nrm;
  }
}

cdouble poly_derivative_eval(const std::vector<double>& c, cdouble z) {
  const std::size_t d = c.size() - 1;
  cdouble r{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) {
    r = r * z + c[i] * static_cast<double>(d - i);
  }
  return r;
}

// Cardano, complex arithmetic. Roots of z^3 + a2 z^2 + a1 z + a0.
std::array<cdouble, 3> cubic_roots(cdouble a2, cdouble a1, cdouble a0) {
  const cdouble shift = a2 / 3.0;
  const cdouble p = a1 - a2 * a2 / 3.0;
  const cdouble q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const cdouble disc = q * q / 4.0 + p * p * p / 27.0;
  const cdouble sq = std::sqrt(disc);
  cdouble u = -q / 2.0 + sq;
  if (std::abs(u) < std::abs(-q / 2.0 - sq)) u = -q / 2.0 - sq;
  cdouble u3 = std::pow(u, 1.0 / 3.0);
  if (std::abs(u3) < 1e-300) {
    // p and q both ~0: triple root
    return {-shift, -shift, -shift};
  }
  const cdouble w{-0.5, std::sqrt(3.0) / 2.0};
  std::array<cdouble, 3> roots;
  for (int k = 0; k < 3; ++k) {
    const cdouble uk = u3 * std::pow(w, static_cast<double>(k));
    roots[k] = uk - p / (3.0 * uk) - shift;
  }
  return roots;
}

std::array<cdouble, 2> quadratic_roots(cdouble b, cdouble c) {
  const cdouble disc = std::sqrt(b * b - 4.0 * c);
  cdouble q = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) / 2.0 : -(b - disc) / 2.0;
  if (std::abs(q) < 1e-300) return {cdouble{0.0, 0.0}, -b};
  return {q, c / q};
}

// Ferrari: all four complex roots of z^4 + b z^3 + c z^2 + d z + e.
std::array<cdouble, 4> quartic_roots_complex(double b, double c, double d, double e) {
  // depress: z = y - b/4
  const double p = c - 3.0 * b * b / 8.0;
  const double q = d - b * c / 2.0 + b * b * b / 8.0;
  const double r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b * b * b * b / 256.0;
  const double shift = b / 4.0;
  const double scale = std::max({1.0, std::abs(p), std::sqrt(std::abs(r))});

  std::array<cdouble, 4> y;
  if (std::abs(q) <= 1e-13 * scale * scale) {
    // biquadratic in y
    const auto z2 = quadratic_roots(cdouble{p, 0.0}, cdouble{r, 0.0});
    const cdouble s0 = std::sqrt(z2[0]);
    const cdouble s1 = std::sqrt(z2[1]);
    y = {s0, -s0, s1, -s1};
  } else {
    // resolvent cubic 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0
    const auto ms = cubic_roots(cdouble{p, 0.0}, cdouble{p * p / 4.0 - r, 0.0},
                                cdouble{-q * q / 8.0, 0.0});
    cdouble m = ms[0];
    for (const auto& cand : ms)
      if (std::abs(cand) > std::abs(m)) m = cand;
    const cdouble s = std::sqrt(2.0 * m);
    const cdouble t1 = p / 2.0 + m;
    const cdouble qs = q / (2.0 * s);
    const auto r1 = quadratic_roots(-s, t1 + qs);
    const auto r2 = quadratic_roots(s, t1 - qs);
    y = {r1[0], r1[1], r2[0], r2[1]};
  }
  for (auto& z : y) z -= shift;
  return y;
}

std::vector<cdouble> durand_kerner(const std::vector<double>& c) {
  const std::size_t d = c.size() - 1;
  double radius = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) radius = std::max(radius, std::abs(c[i]));
  radius = 1.0 + radius;
  std::vector<cdouble> z(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double ang = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(d) + 0.7;
    z[j] = radius * cdouble{std::cos(ang), std::sin(ang)};
  }
  for (int iter = 0; iter < 500; ++iter) {
    double max_step = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      cdouble denom{1.0, 0.0};
      for (std::size_t l = 0; l < d; ++l)
        if (l != j) denom *= (z[j] - z[l]);
      if (std::abs(denom) < 1e-300) continue;
      const cdouble w = poly_eval(c, z[j]) / denom;
      z[j] -= w;
      max_step = std::max(max_step, std::abs(w));
    }
    if (max_step <= 1e-14 * (1.0 + radius)) break;
  }
  return z;
}

void newton_polish(const std::vector<double>& c, std::vector<cdouble>& roots) {
  for (auto& z : roots) {
    for (int it = 0; it < 2; ++it) {
      const cdouble dp = poly_derivative_eval(c, z);
      if (std::abs(dp) < 1e-300) break;
      const cdouble step = poly_eval(c, z) / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
  }
}

// Bound on the evaluation error of p at |z|; residuals below this level
// carry no information.
double eval_noise_floor(const std::vector<double>& c, double abs_z) {
  double bound = 0.0;
  for (const double ci : c) bound = bound * abs_z + std::abs(ci);
  return 16.0 * static_cast<double>(c.size()) * 2.22e-16 * bound;
}

std::vector<double> derivative_poly(const std::vector<double>& c) {
  const std::size_t d = c.size() - 1;
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = c[i] * static_cast<double>(d - i);
  const double lead = out[0];
  for (auto& x : out) x /= lead;  // keep it monic for poly_eval
  return out;
}

// An m-fold root of p is a simple root of p^(m-1); Newton there recovers it
// to near machine precision.
double refine_multiple_root(const std::vector<double>& c, std::size_t m, double start) {
  std::vector<double> d = c;
  for (std::size_t k = 0; k + 1 < m; ++k) d = derivative_poly(d);
  double mu = start;
  for (int it = 0; it < 30; ++it) {
    const cdouble val = poly_eval(d, {mu, 0.0});
    const cdouble slope = poly_derivative_eval(d, {mu, 0.0});
    if (std::abs(slope) < 1e-300) break;
    const double step = (val / slope).real();
    if (!std::isfinite(step)) break;
    mu -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(mu))) break;
  }
  return mu;
}

// A multiple root of a real-spectrum polynomial comes back from the solver as
// a cluster spread across its noise basin. The cluster centroid carries the
// accuracy of the symmetric functions, so merge clusters whose real-projected
// centroid still evaluates at noise level; genuinely distinct neighbors fail
// that test and are left alone.
void merge_real_clusters(const std::vector<double>& c, std::vector<cdouble>& roots) {
  std::sort(roots.begin(), roots.end(), [](const cdouble& a, const cdouble& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  double scale = 1.0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  const double ctol = 1e-5 * scale;

  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    while (j < roots.size() && std::abs(roots[j] - roots[j - 1]) <= ctol) ++j;
    const std::size_t m = j - i;
    if (m >= 2) {
      cdouble centroid{0.0, 0.0};
      for (std::size_t k = i; k < j; ++k) centroid += roots[k];
      centroid /= static_cast<double>(m);
      const double mu = refine_multiple_root(c, m, centroid.real());
      const double floor = eval_noise_floor(c, std::abs(mu));
      double res_old = 0.0;
      for (std::size_t k = i; k < j; ++k)
        res_old = std::max(res_old, std::abs(poly_eval(c, roots[k])));
      const double res_new = std::abs(poly_eval(c, {mu, 0.0}));
      if (res_new <= std::max(10.0 * res_old, floor) &&
          std::abs(mu - centroid.real()) <= ctol) {
        for (std::size_t k = i; k < j; ++k) roots[k] = cdouble{mu, 0.0};
      }
    }
    i = j;
  }
}

std::vector<double> to_real_spectrum(const std::vector<double>& coeffs,
                                     std::vector<cdouble> roots) {
  merge_real_clusters(coeffs, roots);
  double scale = 1.0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > 1e-8 * scale)
      throw ComplexRoots("root has imaginary residue above tolerance");
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

cdouble poly_eval(const std::vector<double>& c, cdouble z) {
  cdouble r{0.0, 0.0};
  for (const double ci : c) r = r * z + ci;
  return r;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermitian_eig needs a square matrix");
  const double norm = m.frobenius_norm();
  if (!m.is_hermitian(1e-12))
    throw NotHermitian("matrix is not Hermitian within 1e-12 relative");

  ComplexMatrix a = m.symmetrized();
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = 1e-13 * std::max(norm, 1e-300);
  bool converged = off_diagonal_norm(a) <= target;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged) throw NoConvergence("Jacobi sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }

  // re-orthonormalize degenerate clusters
  double scale = 1.0;
  for (const double lam : out.eigenvalues) scale = std::max(scale, std::abs(lam));
  const double cluster_tol = 1e-9 * scale;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && std::abs(out.eigenvalues[j] - out.eigenvalues[j - 1]) <= cluster_tol) ++j;
    if (j - i >= 2) orthonormalize_columns(out.eigenvectors, i, j);
    i = j;
  }
  return out;
}

std::vector<double> char_poly(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("char_poly needs a square matrix");
  const std::size_t k = m.rows();
  if (k > 12) throw DomainError("char_poly is limited to order 12");

  // Faddeev-LeVerrier
  std::vector<cdouble> c(k + 1);
  c[0] = 1.0;
  ComplexMatrix a = m;
  for (std::size_t i = 1; i <= k; ++i) {
    if (i > 1) {
      ComplexMatrix shifted = a;
      for (std::size_t d = 0; d < k; ++d) shifted(d, d) += c[i - 1];
      a = m * shifted;
    }
    c[i] = -a.trace() / static_cast<double>(i);
  }

  const double norm = m.frobenius_norm();
  std::vector<double> out(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    const double scale = std::max(1.0, std::pow(std::max(norm, 1.0), static_cast<double>(i)));
    if (std::abs(c[i].imag()) > 1e-9 * scale)
      throw ImaginaryResidue("characteristic polynomial coefficient has imaginary residue");
    out[i] = c[i].real();
  }
  return out;
}

std::vector<cdouble> polynomial_roots(const std::vector<double>& c) {
  if (c.empty() || c[0] == 0.0) throw DomainError("polynomial must be monic");
  const std::size_t d = c.size() - 1;
  std::vector<cdouble> roots;
  switch (d) {
    case 0:
      return {};
    case 1:
      roots = {cdouble{-c[1], 0.0}};
      break;
    case 2: {
      const auto r = quadratic_roots(cdouble{c[1], 0.0}, cdouble{c[2], 0.0});
      roots = {r[0], r[1]};
      break;
    }
    case 3: {
      const auto r = cubic_roots(cdouble{c[1], 0.0}, cdouble{c[2], 0.0}, cdouble{c[3], 0.0});
      roots = {r[0], r[1], r[2]};
      break;
    }
    case 4: {
      const auto r = quartic_roots_complex(c[1], c[2], c[3], c[4]);
      roots = {r[0], r[1], r[2], r[3]};
      break;
    }
    default:
      roots = durand_kerner(c);
      break;
  }
  newton_polish(c, roots);
  return roots;
}

std::array<double, 4> solve_quartic(const QuarticCoefficients& q) {
  const std::vector<double> c{1.0, q.b, q.c, q.d, q.e};
  auto roots = polynomial_roots(c);
  std::vector<double> real;
  try {
    real = to_real_spectrum(c, std::move(roots));
  } catch (const ComplexRoots&) {
    throw;
  }
  const double coeff_scale =
      std::max({1.0, std::abs(q.b), std::abs(q.c), std::abs(q.d), std::abs(q.e)});
  for (const double r : real) {
    if (std::abs(poly_eval(c, cdouble{r, 0.0})) > 1e-8 * coeff_scale)
      throw ComplexRoots("quartic root residual above tolerance");
  }
  return {real[0], real[1], real[2], real[3]};
}

std::array<double, 4> solve_biquadratic(double h, double l) {
  const double scale = std::max(1.0, h * h);
  if (h < -1e-12 * scale) throw NegativeDiscriminant("biquadratic needs h >= 0");
  double disc = h * h - 4.0 * l;
  if (disc < -1e-12 * scale) throw NegativeDiscriminant("biquadratic discriminant is negative");
  disc = std::max(disc, 0.0);
  const double sq = std::sqrt(disc);
  const double hi = std::max(0.5 * (h + sq), 0.0);
  const double lo = std::max(0.5 * (h - sq), 0.0);
  const double r1 = 0.5 * std::sqrt(hi);
  const double r2 = 0.5 * std::sqrt(lo);
  return {-r1, -r2, r2, r1};
}

std::size_t matrix_rank(const ComplexMatrix& m, double tol) {
  if (tol <= 0.0) throw DomainError("matrix_rank tolerance must be positive");
  const ComplexMatrix gram = m.adjoint() * m;
  const auto eig = hermitian_eig(gram);
  const double lmax = eig.eigenvalues.empty() ? 0.0 : std::max(eig.eigenvalues.front(), 0.0);
  if (lmax <= 0.0) return 0;
  // eigenvalues of M*M below the backward-error level are noise, not tiny
  // singular values; clamp them before the square root
  const double noise = 100.0 * static_cast<double>(gram.rows()) * 2.22e-16 * lmax;
  std::size_t r = 0;
  for (const double lam : eig.eigenvalues) {
    if (lam <= noise) continue;
    if (std::sqrt(lam) > tol * std::sqrt(lmax)) ++r;
  }
  return r;
}

std::vector<double> general_eig_small(const ComplexMatrix& m) {
  const auto coeffs = char_poly(m);
  auto roots = polynomial_roots(coeffs);
  return to_real_spectrum(coeffs, std::move(roots));
}

cdouble lu_determinant(ComplexMatrix m) {
  if (!m.is_square()) throw DimensionMismatch("determinant needs a square matrix");
  const std::size_t n = m.rows();
  cdouble det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (std::abs(m(piv, k)) < 1e-300) return {0.0, 0.0};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cdouble f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

ComplexMatrix null_space(const ComplexMatrix& m, double pivot_tol) {
  ComplexMatrix a = m;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivot_col_of_row;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    for (std::size_t i = row + 1; i < rows; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (std::abs(a(piv, col)) <= pivot_tol) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(row, j), a(piv, j));
    const cdouble p = a(row, col);
    for (std::size_t j = 0; j < cols; ++j) a(row, j) /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row) continue;
      const cdouble f = a(i, col);
      if (f == cdouble{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(row, j);
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (const std::size_t c : pivot_col_of_row) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  ComplexMatrix basis(cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], f) = 1.0;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r)
      basis(pivot_col_of_row[r], f) = -a(r, free_cols[f]);
  }
  orthonormalize_columns(basis, 0, basis.cols());
  return basis;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("matrix_exp needs a square matrix");
  const std::size_t n = m.rows();
  const double norm = m.frobenius_norm();
  int s = 0;
  if (norm > 0.25) s = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
  ComplexMatrix b = m.scaled(std::ldexp(1.0, -s));

  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 64; ++k) {
    term = (term * b).scaled(1.0 / static_cast<double>(k));
    sum = sum + term;
    if (term.frobenius_norm() <= 1e-18 * std::max(1.0, sum.frobenius_norm())) break;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

}  // namespace helstrom::linalg
