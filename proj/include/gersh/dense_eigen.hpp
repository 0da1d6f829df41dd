#pragma once

// Eigenvalues of a dense complex matrix: balancing, Householder reduction to
// upper Hessenberg form, then single-shift QR iteration with Wilkinson shifts.

#include <cmath>
#include <cstddef>
#include <vector>

#include "gersh/complex_matrix.hpp"
#include "gersh/error.hpp"

namespace gersh {

/// Subdiagonal deflation threshold, relative to the adjacent diagonal entries.
inline constexpr double kDeflationTolerance = 1e-13;

namespace detail {

/// Diagonal similarity with powers of two so that row and column norms match.
inline void balance(ComplexMatrix& m) {
  const std::size_t n = m.rows();
  constexpr double kRadix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadix * kRadix;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadix * kRadix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        for (std::size_t j = 0; j < n; ++j) m(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) m(j, i) *= f;
      }
    }
  }
}

inline void hessenberg_reduce(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += std::norm(h(i, k));
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex{1.0} : x0 / std::abs(x0);
    const Complex alpha = -phase * norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] -= alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
    if (vnorm == 0.0) continue;
    // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
    const double scale = 2.0 / vnorm;
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
      s *= scale;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= scale;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
  }
}

/// Eigenvalue of the trailing 2x2 block [a b; c d] closest to d.
inline Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex t = 0.5 * (a - d);
  Complex s = std::sqrt(t * t + b * c);
  if ((std::conj(t) * s).real() < 0.0) s = -s;
  const Complex denom = t + s;
  if (std::abs(denom) == 0.0) return d;
  return d - b * c / denom;
}

struct Givens {
  double c;
  Complex s;
};

/// Rotation G with G [x; y] = [r; 0], G = [c s; -conj(s) c].
inline Givens make_givens(Complex x, Complex y) {
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, Complex{}};
  const double ax = std::abs(x);
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  const double r = std::hypot(ax, ay);
  const Complex phase = x / ax;
  return {ax / r, phase * std::conj(y) / r};
}

}  // namespace detail

/// All eigenvalues of a square complex matrix. Throws NoConvergence when
/// the iteration exceeds 50 n sweeps.
inline std::vector<Complex> eigenvalues_dense(ComplexMatrix h) {
  if (!h.is_square()) throw Error(ErrorCode::kDimensionMismatch, "eigenvalues of a non-square matrix");
  const std::size_t n = h.rows();
  if (n == 0) return {};
  detail::balance(h);
  detail::hessenberg_reduce(h);

  auto negligible = [&](std::size_t k) {
    const double sub = std::abs(h(k, k - 1));
    double ref = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
    if (ref == 0.0) ref = h.norm_frobenius();
    return sub <= kDeflationTolerance * ref || sub < std::numeric_limits<double>::min();
  };

  const std::size_t max_iter = 50 * n;
  std::size_t total = 0;
  std::size_t iter = 0;
  std::size_t hi = n - 1;
  std::vector<detail::Givens> rot(n);
  while (hi > 0) {
    if (negligible(hi)) {
      h(hi, hi - 1) = Complex{};
      --hi;
      iter = 0;
      continue;
    }
    std::size_t lo = hi - 1;
    while (lo > 0 && !negligible(lo)) --lo;
    if (lo > 0) h(lo, lo - 1) = Complex{};

    if (++total > max_iter) {
      throw Error(ErrorCode::kNoConvergence, "QR iteration did not converge");
    }
    ++iter;
    Complex shift;
    if (iter % 10 == 0) {
      // exceptional shift to break cycles
      shift = h(hi, hi) + Complex{std::abs(h(hi, hi - 1).real()) + (hi >= 2 ? std::abs(h(hi - 1, hi - 2).real()) : 0.0),
                                  std::abs(h(hi, hi - 1).imag())};
    } else {
      shift = detail::wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    // One explicit shifted QR step on the active block [lo, hi].
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    for (std::size_t k = lo; k < hi; ++k) {
      const auto g = detail::make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& g = rot[k];
      const std::size_t last = std::min(k + 2, hi);
      for (std::size_t i = lo; i <= last; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = g.c * x + std::conj(g.s) * y;
        h(i, k + 1) = -g.s * x + g.c * y;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
  }

  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = h(i, i);
  return out;
}

}  // namespace gersh
