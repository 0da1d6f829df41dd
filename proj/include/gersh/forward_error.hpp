#pragma once

// A-posteriori forward error bounds for computed eigenvalues of a
// diagonalizable pencil, from the transformed pair
//   Ahat = Y^H A X = diag(lambda~) + E,   Bhat = Y^H B X = I + F.
// Only the off-diagonal absolute row sums E_j, F_j enter the bounds, and
// F_j < 1 is required so that every row of Bhat is strictly dominant.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gersh/complex_matrix.hpp"
#include "gersh/error.hpp"

namespace gersh {

/// Allowed deviation of a diagonal entry of Bhat from one.
inline constexpr double kNormalizationTolerance = 1e-12;

struct ResidualData {
  std::vector<Complex> lambdas;  // diagonal of Ahat
  std::vector<double> e_row;     // off-diagonal absolute row sums of Ahat
  std::vector<double> f_row;     // off-diagonal absolute row sums of Bhat

  std::size_t size() const noexcept { return lambdas.size(); }
};

inline ResidualData residual_data(const ComplexMatrix& ahat, const ComplexMatrix& bhat) {
  if (!ahat.is_square() || !bhat.is_square() || ahat.rows() != bhat.rows() || ahat.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "Ahat and Bhat must be square and of equal size");
  }
  const std::size_t n = ahat.rows();
  ResidualData d;
  d.lambdas.resize(n);
  d.e_row.assign(n, 0.0);
  d.f_row.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(bhat(j, j) - 1.0) > kNormalizationTolerance) {
      throw Error(ErrorCode::kNotNormalized, "diagonal entry " + std::to_string(j + 1) + " of Bhat is not 1");
    }
    d.lambdas[j] = ahat(j, j);
    for (std::size_t l = 0; l < n; ++l) {
      if (l == j) continue;
      d.e_row[j] += std::abs(ahat(j, l));
      d.f_row[j] += std::abs(bhat(j, l));
    }
    if (!(d.f_row[j] < 1.0)) {
      throw Error(ErrorCode::kDominanceViolated, "row " + std::to_string(j + 1) + " of Bhat has F_j >= 1");
    }
  }
  return d;
}

/// Which modulus enters the neighbouring disk radii in the disjointness test.
/// kOwnModulus uses |lambda~_j|, the true radius of the j-th Gerschgorin disk;
/// kTargetModulus uses |lambda~_i| for every j, as in the displayed formula.
enum class NeighborRadius { kOwnModulus, kTargetModulus };

struct SimpleBound {
  double radius = 0.0;  // rho_i
  double gap = 0.0;     // delta = min_{j != i} |lambda~_i - lambda~_j|
  bool certified = false;
};

struct TightBound {
  double tau0 = 0.0;
  double bound = 0.0;
  bool improved = false;  // tau0 < 1; otherwise bound is the simple radius
};

struct QuadraticBound {
  double delta_prime = 0.0;  // delta - rho_i
  double r = 0.0;
  double bound = 0.0;  // r^2 / delta'
};

namespace detail {

inline double disk_radius(double modulus, double e, double f) { return (modulus * f + e) / (1.0 - f); }

inline double gap(const ResidualData& d, std::size_t i) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < d.size(); ++j)
    if (j != i) g = std::min(g, std::abs(d.lambdas[i] - d.lambdas[j]));
  return g;
}

inline void check_index(const ResidualData& d, std::size_t i) {
  if (i >= d.size()) throw Error(ErrorCode::kPrecondition, "eigenvalue index out of range");
}

}  // namespace detail

/// rho_i = (|lambda~_i| F_i + E_i) / (1 - F_i). Certified when the i-th disk
/// is disjoint from every other disk, in which case exactly one eigenvalue
/// lies within rho_i of lambda~_i.
inline SimpleBound simple_bound(const ResidualData& d, std::size_t i,
                                NeighborRadius neighbors = NeighborRadius::kOwnModulus) {
  detail::check_index(d, i);
  SimpleBound out;
  out.gap = detail::gap(d, i);
  if (out.gap == 0.0) throw Error(ErrorCode::kNotSimple, "computed eigenvalue is not simple");
  const double mod_i = std::abs(d.lambdas[i]);
  out.radius = detail::disk_radius(mod_i, d.e_row[i], d.f_row[i]);
  out.certified = true;
  for (std::size_t j = 0; j < d.size() && out.certified; ++j) {
    if (j == i) continue;
    const double mod = neighbors == NeighborRadius::kOwnModulus ? std::abs(d.lambdas[j]) : mod_i;
    const double rho_j = detail::disk_radius(mod, d.e_row[j], d.f_row[j]);
    out.certified = std::abs(d.lambdas[i] - d.lambdas[j]) > out.radius + rho_j;
  }
  return out;
}

/// Bound obtained by shrinking row i with a diagonal similarity. The scaling
/// tau0 = max_{j != i} [F_j + (|lambda~_j| F_j + E_j) / (delta - rho_i)] is the
/// smallest value keeping disk i disjoint from all others.
inline TightBound tight_bound(const ResidualData& d, std::size_t i) {
  const SimpleBound simple = simple_bound(d, i);
  if (!simple.certified) throw Error(ErrorCode::kNotCertified, "disk is not disjoint from the others");
  const double delta_prime = simple.gap - simple.radius;
  TightBound out;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (j == i) continue;
    const double t = d.f_row[j] + (std::abs(d.lambdas[j]) * d.f_row[j] + d.e_row[j]) / delta_prime;
    out.tau0 = std::max(out.tau0, t);
  }
  out.improved = out.tau0 < 1.0;
  if (out.improved) {
    const double num = std::abs(d.lambdas[i]) * d.f_row[i] + d.e_row[i];
    out.bound = out.tau0 * num / (1.0 - out.tau0 * d.f_row[i]);
  } else {
    out.bound = simple.radius;
  }
  return out;
}

/// r^2 / delta' with r = max_j {(2|lambda~_j| + |lambda~_i|) F_j + E_j} / (1 - F_i).
inline QuadraticBound quadratic_bound(const ResidualData& d, std::size_t i) {
  const SimpleBound simple = simple_bound(d, i);
  if (!simple.certified) throw Error(ErrorCode::kNotCertified, "disk is not disjoint from the others");
  QuadraticBound out;
  out.delta_prime = simple.gap - simple.radius;
  const double mod_i = std::abs(d.lambdas[i]);
  double m = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j)
    m = std::max(m, (2.0 * std::abs(d.lambdas[j]) + mod_i) * d.f_row[j] + d.e_row[j]);
  out.r = m / (1.0 - d.f_row[i]);
  out.bound = out.r * out.r / out.delta_prime;
  return out;
}

/// Bound for a k-fold computed eigenvalue: the largest disk radius in the
/// cluster. Throws NotACluster if the values differ or the cluster disks
/// overlap a disk outside it.
inline double cluster_bound(const ResidualData& d, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorCode::kNotACluster, "empty cluster");
  for (std::size_t i : indices) detail::check_index(d, i);
  const Complex center = d.lambdas[indices.front()];
  std::vector<bool> inside(d.size(), false);
  double worst = 0.0;
  for (std::size_t i : indices) {
    if (d.lambdas[i] != center) throw Error(ErrorCode::kNotACluster, "cluster eigenvalues differ");
    inside[i] = true;
    worst = std::max(worst, detail::disk_radius(std::abs(center), d.e_row[i], d.f_row[i]));
  }
  for (std::size_t i : indices) {
    const double rho_i = detail::disk_radius(std::abs(center), d.e_row[i], d.f_row[i]);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (inside[j]) continue;
      const double rho_j = detail::disk_radius(std::abs(d.lambdas[j]), d.e_row[j], d.f_row[j]);
      if (!(std::abs(center - d.lambdas[j]) > rho_i + rho_j)) {
        throw Error(ErrorCode::kNotACluster, "cluster disks overlap disk " + std::to_string(j + 1));
      }
    }
  }
  return worst;
}

struct ErrorBoundReport {
  std::size_t index = 0;
  double rho_simple = 0.0;
  bool disjoint_certified = false;
  double delta = 0.0;
  std::optional<TightBound> tight;          // present when certified
  std::optional<QuadraticBound> quadratic;  // present when certified
  std::vector<std::size_t> cluster_indices;  // set for multiple computed eigenvalues
  std::optional<double> cluster_bound;
};

/// All bounds for computed eigenvalue i. Multiple eigenvalues are reported
/// through the cluster fields instead of the simple-eigenvalue bounds.
inline ErrorBoundReport error_bound_report(const ResidualData& d, std::size_t i) {
  detail::check_index(d, i);
  ErrorBoundReport rep;
  rep.index = i;
  rep.delta = detail::gap(d, i);
  if (rep.delta == 0.0) {
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d.lambdas[j] == d.lambdas[i]) rep.cluster_indices.push_back(j);
    rep.rho_simple = detail::disk_radius(std::abs(d.lambdas[i]), d.e_row[i], d.f_row[i]);
    try {
      rep.cluster_bound = cluster_bound(d, rep.cluster_indices);
      rep.disjoint_certified = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotACluster) throw;
    }
    return rep;
  }
  const SimpleBound simple = simple_bound(d, i);
  rep.rho_simple = simple.radius;
  rep.disjoint_certified = simple.certified;
  if (simple.certified) {
    rep.tight = tight_bound(d, i);
    rep.quadratic = quadratic_bound(d, i);
  }
  return rep;
}

}  // namespace gersh
