#pragma once

// Disjoint clusters of row regions and eigenvalue counts per cluster.
//
// If the union of k row regions is disjoint from the remaining n - k regions
// and is not the entire plane, exactly k eigenvalues lie in that union.
// Certificates are conservative: any pair without an exact disjointness
// proof is treated as overlapping.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "gersh/core_model.hpp"
#include "gersh/regions.hpp"

namespace gersh {

enum class DisjointnessVerdict { kDisjoint, kIntersecting, kUnknown };

namespace detail {

inline DisjointnessVerdict verdict(bool disjoint) {
  return disjoint ? DisjointnessVerdict::kDisjoint : DisjointnessVerdict::kIntersecting;
}

/// Disk against the half-plane on alpha's side of the bisector of [0, alpha].
inline DisjointnessVerdict disk_vs_half_plane(const Disk& d, const HalfPlane& h) {
  const double len = std::abs(h.alpha);
  if (len == 0.0) return DisjointnessVerdict::kIntersecting;
  // signed distance of the center to the bisector, positive on alpha's side
  const double signed_dist = ((d.center * std::conj(h.alpha)).real() - 0.5 * len * len) / len;
  return verdict(signed_dist < -d.radius);
}

inline DisjointnessVerdict basic_pair(const BasicRegion& x, const BasicRegion& y) {
  const bool x_inf = basic_membership(x, ExtendedComplex::infinity(), 0.0);
  const bool y_inf = basic_membership(y, ExtendedComplex::infinity(), 0.0);
  if (x_inf && y_inf) return DisjointnessVerdict::kIntersecting;

  return std::visit(
      Overloaded{
          [](const Disk& a, const Disk& b) {
            return verdict(std::abs(a.center - b.center) > a.radius + b.radius);
          },
          [](const Disk& a, const DiskComplement& b) {
            return verdict(std::abs(a.center - b.center) + a.radius < b.radius);
          },
          [](const DiskComplement& a, const Disk& b) {
            return verdict(std::abs(a.center - b.center) + b.radius < a.radius);
          },
          [](const Disk& a, const HalfPlane& h) { return disk_vs_half_plane(a, h); },
          [](const HalfPlane& h, const Disk& a) { return disk_vs_half_plane(a, h); },
          [](const PointAtInfinity&, const Disk&) { return DisjointnessVerdict::kDisjoint; },
          [](const Disk&, const PointAtInfinity&) { return DisjointnessVerdict::kDisjoint; },
          // whole plane, or both sides contain infinity
          [](const auto&, const auto&) { return DisjointnessVerdict::kIntersecting; },
      },
      x, y);
}

inline std::vector<BasicRegion> factors(const Region& r) {
  if (const auto* x = std::get_if<Intersection>(&r)) return {x->left, x->right};
  return {*narrow(r)};
}

}  // namespace detail

/// Exact disjointness test for basic region pairs. An intersection is
/// disjoint from another region if one of its factors is; otherwise the
/// verdict is Intersecting only when both sides provably contain infinity,
/// and Unknown in all other cases.
inline DisjointnessVerdict pair_disjoint(const Region& r1, const Region& r2) {
  const auto f1 = detail::factors(r1);
  const auto f2 = detail::factors(r2);
  if (f1.size() == 1 && f2.size() == 1) return detail::basic_pair(f1[0], f2[0]);
  for (const auto& x : f1)
    for (const auto& y : f2)
      if (detail::basic_pair(x, y) == DisjointnessVerdict::kDisjoint) return DisjointnessVerdict::kDisjoint;
  if (contains_infinity(r1) && contains_infinity(r2)) return DisjointnessVerdict::kIntersecting;
  return DisjointnessVerdict::kUnknown;
}

struct Cluster {
  std::vector<std::size_t> indices;  // 0-based rows, ascending
  std::size_t expected_count = 0;
  bool certified = false;
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterReport {
  std::vector<Cluster> clusters;
  friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

/// Connected components of the overlap graph on rows. Rows are joined
/// unless their regions are certified disjoint.
inline ClusterReport components(const GershFamily& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pair_disjoint(f.rows[i].gamma, f.rows[j].gamma) != DisjointnessVerdict::kDisjoint) {
        const std::size_t a = find(i);
        const std::size_t b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  ClusterReport report;
  std::vector<std::optional<std::size_t>> slot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (!slot[root]) {
      slot[root] = report.clusters.size();
      report.clusters.emplace_back();
    }
    report.clusters[*slot[root]].indices.push_back(i);
  }
  for (auto& c : report.clusters) {
    c.expected_count = c.indices.size();
    c.certified = true;
    for (std::size_t i : c.indices)
      if (is_whole_plane(f.rows[i].gamma)) c.certified = false;
  }
  return report;
}

struct ClusterCount {
  std::size_t cluster = 0;
  std::size_t expected = 0;
  std::size_t found = 0;
};

struct CountVerification {
  bool passed = true;
  std::vector<ClusterCount> counts;          // certified clusters only
  std::optional<std::size_t> first_mismatch;  // index into report.clusters
};

/// Counts the given eigenvalues inside each certified cluster's union, with
/// membership slack tol_abs + tol_rel * |lambda| (none at infinity).
inline CountVerification verify_counts(const GershFamily& f, const ClusterReport& report,
                                       std::span<const ExtendedComplex> eigs, double tol_abs = 0.0,
                                       double tol_rel = 0.0) {
  CountVerification out;
  for (std::size_t c = 0; c < report.clusters.size(); ++c) {
    const Cluster& cluster = report.clusters[c];
    if (!cluster.certified) continue;
    std::size_t found = 0;
    for (const auto& z : eigs) {
      const double slack = z.is_finite() ? tol_abs + tol_rel * std::abs(z.value()) : 0.0;
      for (std::size_t i : cluster.indices) {
        if (membership(f.rows[i].gamma, z, slack)) {
          ++found;
          break;
        }
      }
    }
    out.counts.push_back({c, cluster.expected_count, found});
    if (found != cluster.expected_count && out.passed) {
      out.passed = false;
      out.first_mismatch = c;
    }
  }
  return out;
}

constexpr const char* to_string(DisjointnessVerdict v) {
  switch (v) {
    case DisjointnessVerdict::kDisjoint: return "disjoint";
    case DisjointnessVerdict::kIntersecting: return "intersecting";
    case DisjointnessVerdict::kUnknown: return "unknown";
  }
  return "unknown";
}

}  // namespace gersh
