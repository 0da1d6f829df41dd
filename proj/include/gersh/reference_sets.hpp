#pragma once

// Pointwise membership for the two earlier inclusion sets: the chordal-metric
// set G(A, B) and the set K(A, B) of Kostic et al.

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "gersh/core_model.hpp"

namespace gersh {

/// Chordal distance on the Riemann sphere; always in [0, 1].
inline double chordal_distance(const ExtendedComplex& x, const ExtendedComplex& y) {
  if (x.is_infinite() && y.is_infinite()) return 0.0;
  if (x.is_infinite()) return 1.0 / std::hypot(1.0, std::abs(y.value()));
  if (y.is_infinite()) return 1.0 / std::hypot(1.0, std::abs(x.value()));
  return std::abs(x.value() - y.value()) /
         (std::hypot(1.0, std::abs(x.value())) * std::hypot(1.0, std::abs(y.value())));
}

/// Chordal radius of row i; a value >= 1 makes G_i the whole extended plane.
struct ChordalRadius {
  double value = 0.0;
  bool covers_everything() const noexcept { return value >= 1.0; }
};

inline ChordalRadius stewart_radius(const Pencil& p, std::size_t i) {
  double ra = 0.0;
  double rb = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    ra += std::abs(p.a()(i, j));
    rb += std::abs(p.b()(i, j));
  }
  const double diag = std::hypot(std::abs(p.a()(i, i)), std::abs(p.b()(i, i)));
  if (diag == 0.0) return {std::numeric_limits<double>::infinity()};
  return {std::hypot(ra, rb) / diag};
}

/// Row i of G in a form that is cheap to evaluate repeatedly.
struct GRow {
  ExtendedComplex center;  // a_ii/b_ii, infinity when b_ii = 0
  ChordalRadius rho;
};

inline GRow g_row(const Pencil& p, std::size_t i) {
  const Complex aii = p.a()(i, i);
  const Complex bii = p.b()(i, i);
  return {bii == Complex{} ? ExtendedComplex::infinity() : ExtendedComplex{aii / bii}, stewart_radius(p, i)};
}

inline bool in_g_row(const GRow& row, const ExtendedComplex& z, double slack = 0.0) {
  if (row.rho.covers_everything()) return true;
  return chordal_distance(z, row.center) <= row.rho.value + slack;
}

/// chi(z, a_ii/b_ii) <= rho_i (+ slack). The center is infinity when b_ii = 0.
inline bool in_g_row(const Pencil& p, std::size_t i, const ExtendedComplex& z, double slack = 0.0) {
  return in_g_row(g_row(p, i), z, slack);
}

/// Row i of K with the all-zero off-diagonal columns dropped.
struct KRow {
  Complex aii;
  Complex bii;
  std::vector<std::pair<Complex, Complex>> off;  // (a_ij, b_ij), j != i
  bool infinity_member = false;                  // |b_ii| <= sum_{j != i} |b_ij|
};

inline KRow k_row(const Pencil& p, std::size_t i) {
  KRow row{p.a()(i, i), p.b()(i, i), {}, false};
  double off_b = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j == i) continue;
    const Complex a = p.a()(i, j);
    const Complex b = p.b()(i, j);
    off_b += std::abs(b);
    if (a != Complex{} || b != Complex{}) row.off.emplace_back(a, b);
  }
  row.infinity_member = std::abs(row.bii) <= off_b;
  return row;
}

inline bool in_k_row(const KRow& row, const ExtendedComplex& z, double slack = 0.0) {
  if (z.is_infinite()) return row.infinity_member;
  const Complex w = z.value();
  double rhs = 0.0;
  for (const auto& [a, b] : row.off) rhs += std::abs(b * w - a);
  return std::abs(row.bii * w - row.aii) <= rhs + slack;
}

/// |b_ii z - a_ii| <= sum_{j != i} |b_ij z - a_ij| (+ slack). Infinity belongs
/// to K_i exactly when row i of B is not strictly diagonally dominant.
inline bool in_k_row(const Pencil& p, std::size_t i, const ExtendedComplex& z, double slack = 0.0) {
  return in_k_row(k_row(p, i), z, slack);
}

/// Lipschitz constant of z -> |b_ii z - a_ii| - sum_{j != i} |b_ij z - a_ij|.
inline double k_row_lipschitz(const Pencil& p, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += std::abs(p.b()(i, j));
  return s;
}

inline bool in_g(const Pencil& p, const ExtendedComplex& z) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (in_g_row(p, i, z)) return true;
  return false;
}

inline bool in_k(const Pencil& p, const ExtendedComplex& z) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (in_k_row(p, i, z)) return true;
  return false;
}

}  // namespace gersh
