#pragma once

// Small generalized eigenvalue solvers used to check the inclusion sets.
//
// Two independent routes: interpolation of det(A - lambda B) on a circle
// followed by companion-matrix roots (handles infinite eigenvalues), and QR
// iteration on B^{-1} A (nonsingular B only).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "gersh/complex_matrix.hpp"
#include "gersh/core_model.hpp"
#include "gersh/dense_eigen.hpp"
#include "gersh/error.hpp"

namespace gersh {

struct Spectrum {
  std::vector<Complex> finite;
  std::size_t infinite_count = 0;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

  std::vector<ExtendedComplex> all() const {
    std::vector<ExtendedComplex> out(finite.begin(), finite.end());
    out.insert(out.end(), infinite_count, ExtendedComplex::infinity());
    return out;
  }
};

inline constexpr std::size_t kCharpolyMaxSize = 16;
inline constexpr std::size_t kQrMaxSize = 400;
/// Relative coefficient threshold for the numerical degree of det(A - lambda B).
inline constexpr double kDegreeTolerance = 1e-10;

namespace detail {

inline ComplexMatrix shifted(const Pencil& p, Complex lambda) {
  const std::size_t n = p.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = p.a()(i, j) - lambda * p.b()(i, j);
  return m;
}

/// Hadamard bound prod_i ||row_i||_2 of A - lambda B.
inline double hadamard_bound(const ComplexMatrix& m) {
  double prod = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (const auto& v : m.row(i)) s += std::norm(v);
    prod *= std::sqrt(s);
  }
  return prod;
}

/// Damped Newton on det(A - lambda B): the step is 1 / tr((A - lambda B)^{-1} B).
/// A step is accepted only if it reduces |det| and stays within half the
/// distance to the nearest other root estimate.
inline Complex polish_root(const Pencil& p, Complex lambda, double separation, int steps = 2) {
  for (int it = 0; it < steps; ++it) {
    const LuDecomposition lu(shifted(p, lambda));
    if (lu.singular()) return lambda;
    const double f0 = std::abs(lu.determinant());
    const ComplexMatrix x = lu.solve(p.b());
    Complex tr{};
    for (std::size_t i = 0; i < p.size(); ++i) tr += x(i, i);
    if (std::abs(tr) == 0.0) return lambda;
    Complex step = 1.0 / tr;
    bool accepted = false;
    for (int damp = 0; damp < 6 && !accepted; ++damp, step *= 0.5) {
      if (std::abs(step) > 0.5 * separation) continue;
      const Complex trial = lambda + step;
      const LuDecomposition lt(shifted(p, trial));
      if (std::abs(lt.determinant()) <= f0) {
        lambda = trial;
        accepted = true;
      }
    }
    if (!accepted) return lambda;
  }
  return lambda;
}

}  // namespace detail

/// Spectrum from the characteristic polynomial. det(A - lambda B) is sampled
/// at n + 1 points on a circle of radius R = 1 + ||A||_inf / max(eps, ||B||_inf),
/// interpolated in the scaled variable mu = lambda / R, and trimmed at
/// kDegreeTolerance * max|coeff| to find the degree d; n - d eigenvalues are
/// infinite.
inline Spectrum eigenvalues_charpoly(const Pencil& p) {
  const std::size_t n = p.size();
  if (n > kCharpolyMaxSize) {
    throw Error(ErrorCode::kPrecondition, "characteristic polynomial oracle is limited to n <= 16");
  }
  const double nb = std::max(std::numeric_limits<double>::epsilon(), p.b().norm_inf());
  const double radius = 1.0 + p.a().norm_inf() / nb;

  const std::size_t m = n + 1;
  std::vector<Complex> samples(m);
  double scale = 0.0;
  double largest = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    const ComplexMatrix shifted = detail::shifted(p, radius * w);
    scale = std::max(scale, detail::hadamard_bound(shifted));
    samples[k] = LuDecomposition(shifted).determinant();
    largest = std::max(largest, std::abs(samples[k]));
  }
  if (largest < kDegreeTolerance * scale) {
    throw Error(ErrorCode::kSingularPencil, "det(A - lambda B) vanishes at every sample point");
  }

  // coefficients of q(mu) = det(A - R mu B) via the inverse DFT
  std::vector<Complex> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    Complex s{};
    for (std::size_t k = 0; k < m; ++k) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((j * k) % m) / static_cast<double>(m);
      s += samples[k] * std::polar(1.0, angle);
    }
    q[j] = s / static_cast<double>(m);
  }
  double qmax = 0.0;
  for (const auto& c : q) qmax = std::max(qmax, std::abs(c));
  std::size_t degree = n;
  while (degree > 0 && std::abs(q[degree]) <= kDegreeTolerance * qmax) --degree;

  Spectrum out;
  out.infinite_count = n - degree;
  if (degree == 0) return out;

  ComplexMatrix companion(degree, degree);
  for (std::size_t j = 0; j < degree; ++j) companion(0, j) = -q[degree - 1 - j] / q[degree];
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  std::vector<Complex> roots = eigenvalues_dense(std::move(companion));
  for (auto& r : roots) r *= radius;

  out.finite.resize(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(roots[i] - roots[j]));
    out.finite[i] = detail::polish_root(p, roots[i], sep);
  }
  return out;
}

/// Estimated 1-norm condition number of B (exact ||B||_1 ||B^{-1}||_1).
inline double condition_number_b(const Pencil& p) {
  const LuDecomposition lu(p.b());
  if (lu.singular()) return std::numeric_limits<double>::infinity();
  return p.b().norm_one() * lu.inverse().norm_one();
}

/// Spectrum of B^{-1} A by Hessenberg QR iteration. Requires B well
/// conditioned: cond_1(B) < 1 / (n * 1e-12).
inline Spectrum eigenvalues_qr(const Pencil& p) {
  const std::size_t n = p.size();
  if (n > kQrMaxSize) throw Error(ErrorCode::kPrecondition, "QR oracle is limited to n <= 400");
  const double cond = condition_number_b(p);
  if (!(cond < 1.0 / (static_cast<double>(n) * 1e-12))) {
    throw Error(ErrorCode::kIllConditionedB, "B is singular or too ill-conditioned for the QR oracle");
  }
  const LuDecomposition lu(p.b());
  return {eigenvalues_dense(lu.solve(p.a())), 0};
}

enum class OracleMethod { kAuto, kCharpoly, kQr };

/// QR when B passes the conditioning check, otherwise the characteristic
/// polynomial route (n <= 16).
inline Spectrum oracle_spectrum(const Pencil& p, OracleMethod method = OracleMethod::kAuto) {
  switch (method) {
    case OracleMethod::kCharpoly: return eigenvalues_charpoly(p);
    case OracleMethod::kQr: return eigenvalues_qr(p);
    case OracleMethod::kAuto: break;
  }
  try {
    return eigenvalues_qr(p);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kIllConditionedB || p.size() > kCharpolyMaxSize) throw;
  }
  return eigenvalues_charpoly(p);
}

/// Eigenvalues of the tridiagonal Toeplitz pencil tridiag(a, 4, a) - lambda tridiag(b, 4, b):
/// (4 + 2a cos(k pi/(n+1))) / (4 + 2b cos(k pi/(n+1))), k = 1..n.
inline Spectrum tridiag_analytic(std::size_t n, double a, double b) {
  Spectrum out;
  out.finite.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double c = std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n + 1));
    const double den = 4.0 + 2.0 * b * c;
    if (std::abs(den) <= 1e-14 * (4.0 + 2.0 * std::abs(b))) {
      throw Error(ErrorCode::kPrecondition, "4 + 2b cos(k pi/(n+1)) vanishes: infinite eigenvalue");
    }
    out.finite.emplace_back((4.0 + 2.0 * a * c) / den, 0.0);
  }
  return out;
}

/// Smallest LU pivot of A - lambda B relative to ||A|| + |lambda| ||B||; a
/// cheap proxy for sigma_min in residual checks.
inline double relative_min_pivot(const Pencil& p, Complex lambda) {
  const LuDecomposition lu(detail::shifted(p, lambda));
  const double ref = p.a().norm_inf() + std::abs(lambda) * p.b().norm_inf();
  return ref == 0.0 ? 0.0 : lu.min_pivot_abs() / ref;
}

}  // namespace gersh
