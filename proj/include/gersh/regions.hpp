#pragma once

// Gerschgorin-type inclusion regions for the pencil A - lambda B in the
// Euclidean metric.
//
// Per row i the B-region is a disk around a_ii/b_ii when row i of B is
// strictly diagonally dominant. The A-region bounds 1/lambda instead, which
// maps back to the Apollonius set |z - alpha| <= beta |z|: a disk for
// beta < 1, a disk complement (with infinity) for beta > 1 and a half-plane
// for beta = 1. The row region is the intersection of the two.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gersh/core_model.hpp"

namespace gersh {

/// Relative tolerance for classifying beta as exactly one.
inline constexpr double kBetaTolerance = 1e-12;

enum class FamilyVariant { kPlain, kTilde, kSimplified };

struct RowRegions {
  Region gamma_b;
  Region gamma_a;
  Region gamma;
  friend bool operator==(const RowRegions&, const RowRegions&) = default;
};

struct GershFamily {
  FamilyVariant variant = FamilyVariant::kPlain;
  std::vector<RowRegions> rows;

  std::size_t size() const noexcept { return rows.size(); }
};

namespace detail {

/// {z : |z - alpha| <= beta |z|} for beta > 0, with infinity when beta >= 1.
inline BasicRegion apollonius_region(Complex alpha, double beta) {
  if (std::abs(beta - 1.0) <= kBetaTolerance * std::max(1.0, beta)) return HalfPlane{alpha};
  // 1 - beta^2 without cancellation near beta = 1
  const double denom = (1.0 - beta) * (1.0 + beta);
  const Complex center = alpha / denom;
  const double radius = std::abs(alpha) * beta / std::abs(denom);
  if (beta < 1.0) return Disk{center, radius};
  return DiskComplement{center, radius};
}

inline BasicRegion gamma_a_basic(const Pencil& p, const RowStats& s, std::size_t i) {
  if (!s.in_sa) return WholePlane{};
  const Complex aii = p.a()(i, i);
  const Complex bii = p.b()(i, i);
  const double ra = *s.a_ratio;
  if (bii == Complex{}) {
    if (s.b_off_sum == 0.0) return PointAtInfinity{};
    return DiskComplement{Complex{}, std::abs(aii) * (1.0 - ra) / s.b_off_sum};
  }
  const double abs_b = std::abs(bii);
  const double beta = (abs_b * ra + s.b_off_sum) / (abs_b * (1.0 - ra));
  return apollonius_region(aii / bii, beta);
}

inline Region intersect(const Region& b_side, const Region& a_side) {
  if (is_whole_plane(b_side)) return a_side;
  if (is_whole_plane(a_side)) return b_side;
  return Intersection{*narrow(b_side), *narrow(a_side)};
}

}  // namespace detail

/// Disk around a_ii/b_ii of radius (|a_ii| r_i + R_i) / (|b_ii| (1 - r_i))
/// when i is in S^B, otherwise the whole plane.
inline Region gamma_b(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  const RowStats& s = stats[i];
  if (!s.in_sb) return WholePlane{};
  const Complex aii = p.a()(i, i);
  const Complex bii = p.b()(i, i);
  const double r = *s.b_ratio;
  const double radius = (std::abs(aii) * r + s.a_off_sum) / (std::abs(bii) * (1.0 - r));
  return Disk{aii / bii, radius};
}

inline Region gamma_a(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  return widen(detail::gamma_a_basic(p, stats[i], i));
}

/// Row region: gamma_b intersected with gamma_a. A whole-plane factor is
/// dropped; no other simplification is made.
inline Region gamma_i(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  return detail::intersect(gamma_b(p, stats, i), gamma_a(p, stats, i));
}

/// Tighter B-region: center (a_ii/b_ii)/(1 - r_i^2) and radius
/// (|a_ii| r_i + R_i (1 + r_i)) / (|b_ii| (1 - r_i^2)).
inline Region gamma_tilde_b(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  const RowStats& s = stats[i];
  if (!s.in_sb) return WholePlane{};
  const Complex aii = p.a()(i, i);
  const Complex bii = p.b()(i, i);
  const double r = *s.b_ratio;
  const double one_minus_r2 = (1.0 - r) * (1.0 + r);
  const double radius = (std::abs(aii) * r + s.a_off_sum * (1.0 + r)) / (std::abs(bii) * one_minus_r2);
  return Disk{aii / bii / one_minus_r2, radius};
}

/// Tighter A-region with alpha~ = (a_ii/b_ii)(1 - (r_i^A)^2) and
/// beta~ = r_i^A + R_i^A (1 + r_i^A) / |b_ii|. Equal to gamma_a when b_ii = 0
/// or i is not in S^A.
inline Region gamma_tilde_a(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  const RowStats& s = stats[i];
  const Complex bii = p.b()(i, i);
  if (!s.in_sa || bii == Complex{}) return gamma_a(p, stats, i);
  const Complex aii = p.a()(i, i);
  const double ra = *s.a_ratio;
  const Complex alpha = aii / bii * ((1.0 - ra) * (1.0 + ra));
  const double beta = ra + s.b_off_sum * (1.0 + ra) / std::abs(bii);
  return widen(detail::apollonius_region(alpha, beta));
}

inline Region gamma_tilde_i(const Pencil& p, std::span<const RowStats> stats, std::size_t i) {
  return detail::intersect(gamma_tilde_b(p, stats, i), gamma_tilde_a(p, stats, i));
}

inline GershFamily plain_family(const Pencil& p, std::span<const RowStats> stats) {
  GershFamily f{FamilyVariant::kPlain, {}};
  f.rows.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Region b = gamma_b(p, stats, i);
    Region a = gamma_a(p, stats, i);
    Region g = detail::intersect(b, a);
    f.rows.push_back({std::move(b), std::move(a), std::move(g)});
  }
  return f;
}

inline GershFamily tilde_family(const Pencil& p, std::span<const RowStats> stats) {
  GershFamily f{FamilyVariant::kTilde, {}};
  f.rows.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Region b = gamma_tilde_b(p, stats, i);
    Region a = gamma_tilde_a(p, stats, i);
    Region g = detail::intersect(b, a);
    f.rows.push_back({std::move(b), std::move(a), std::move(g)});
  }
  return f;
}

/// Simplified family: per row the B-region when i is in S^B, the A-region
/// otherwise. With B strictly diagonally dominant these are n disks.
inline GershFamily gamma_s(const Pencil& p, std::span<const RowStats> stats) {
  GershFamily f{FamilyVariant::kSimplified, {}};
  f.rows.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Region b = gamma_b(p, stats, i);
    Region a = gamma_a(p, stats, i);
    Region g = stats[i].in_sb ? b : a;
    f.rows.push_back({std::move(b), std::move(a), std::move(g)});
  }
  return f;
}

inline GershFamily build_family(const Pencil& p, FamilyVariant variant) {
  const auto stats = row_stats(p);
  switch (variant) {
    case FamilyVariant::kPlain: return plain_family(p, stats);
    case FamilyVariant::kTilde: return tilde_family(p, stats);
    case FamilyVariant::kSimplified: return gamma_s(p, stats);
  }
  return plain_family(p, stats);
}

inline bool family_union_membership(const GershFamily& f, const ExtendedComplex& z, double tol = 0.0) {
  for (const auto& row : f.rows) {
    if (membership(row.gamma, z, tol)) return true;
  }
  return false;
}

constexpr const char* to_string(FamilyVariant v) {
  switch (v) {
    case FamilyVariant::kPlain: return "plain";
    case FamilyVariant::kTilde: return "tilde";
    case FamilyVariant::kSimplified: return "simplified";
  }
  return "plain";
}

}  // namespace gersh
