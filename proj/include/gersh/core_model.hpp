#pragma once

// Pencil representation, the extended complex plane, per-row dominance data
// and the region algebra used by the inclusion sets.

#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gersh/complex_matrix.hpp"
#include "gersh/error.hpp"

namespace gersh {

/// The pencil A - lambda B of two square matrices of equal size.
class Pencil {
 public:
  Pencil(ComplexMatrix a, ComplexMatrix b) : a_(std::move(a)), b_(std::move(b)) {
    if (!a_.is_square() || !b_.is_square() || a_.rows() != b_.rows()) {
      throw Error(ErrorCode::kDimensionMismatch, "pencil matrices must be square and of equal size");
    }
    if (a_.rows() == 0) throw Error(ErrorCode::kDimensionMismatch, "empty pencil");
    if (!a_.all_finite() || !b_.all_finite()) {
      throw Error(ErrorCode::kNonFinite, "pencil entries must be finite");
    }
  }

  std::size_t size() const noexcept { return a_.rows(); }
  const ComplexMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& b() const noexcept { return b_; }

 private:
  ComplexMatrix a_;
  ComplexMatrix b_;
};

/// A point of the one-point compactified complex plane.
class ExtendedComplex {
 public:
  ExtendedComplex() = default;
  ExtendedComplex(Complex z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double x) : value_(Complex{x, 0.0}) {}  // NOLINT(google-explicit-constructor)

  static ExtendedComplex infinity() {
    ExtendedComplex z;
    z.value_.reset();
    return z;
  }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Precondition: is_finite().
  Complex value() const { return *value_; }

  friend bool operator==(const ExtendedComplex&, const ExtendedComplex&) = default;

 private:
  std::optional<Complex> value_ = Complex{};
};

/// Row dominance data for row i of (A, B).
struct RowStats {
  double a_off_sum = 0.0;             // R_i   = sum_{j != i} |a_ij|
  double b_off_sum = 0.0;             // R_i^A = sum_{j != i} |b_ij|
  std::optional<double> b_ratio;      // r_i   = R_i^A / |b_ii|, absent when b_ii = 0
  std::optional<double> a_ratio;      // r_i^A = R_i / |a_ii|, absent when a_ii = 0
  bool in_sb = false;                 // |b_ii| > R_i^A
  bool in_sa = false;                 // |a_ii| > R_i

  friend bool operator==(const RowStats&, const RowStats&) = default;
};

inline std::vector<RowStats> row_stats(const Pencil& p) {
  const std::size_t n = p.size();
  std::vector<RowStats> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RowStats& s = out[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      s.a_off_sum += std::abs(p.a()(i, j));
      s.b_off_sum += std::abs(p.b()(i, j));
    }
    const double aii = std::abs(p.a()(i, i));
    const double bii = std::abs(p.b()(i, i));
    if (bii > 0.0) s.b_ratio = s.b_off_sum / bii;
    if (aii > 0.0) s.a_ratio = s.a_off_sum / aii;
    s.in_sb = bii > s.b_off_sum;
    s.in_sa = aii > s.a_off_sum;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Regions

struct WholePlane {
  friend bool operator==(const WholePlane&, const WholePlane&) = default;
};

/// {z : |z - center| <= radius}; never contains infinity.
struct Disk {
  Complex center;
  double radius = 0.0;
  friend bool operator==(const Disk&, const Disk&) = default;
};

/// {z : |z - center| >= radius} together with infinity.
struct DiskComplement {
  Complex center;
  double radius = 0.0;
  friend bool operator==(const DiskComplement&, const DiskComplement&) = default;
};

/// {z : |z - alpha| <= |z|} together with infinity: the side of the
/// perpendicular bisector of [0, alpha] that contains alpha.
struct HalfPlane {
  Complex alpha;
  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

struct PointAtInfinity {
  friend bool operator==(const PointAtInfinity&, const PointAtInfinity&) = default;
};

using BasicRegion = std::variant<WholePlane, Disk, DiskComplement, HalfPlane, PointAtInfinity>;

/// Lazy intersection of two basic regions. Nesting is limited to one level
/// by construction.
struct Intersection {
  BasicRegion left;
  BasicRegion right;
  friend bool operator==(const Intersection&, const Intersection&) = default;
};

using Region =
    std::variant<WholePlane, Disk, DiskComplement, HalfPlane, PointAtInfinity, Intersection>;

inline Region widen(const BasicRegion& r) {
  return std::visit([](const auto& v) -> Region { return v; }, r);
}

inline std::optional<BasicRegion> narrow(const Region& r) {
  return std::visit(
      [](const auto& v) -> std::optional<BasicRegion> {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Intersection>) {
          return std::nullopt;
        } else {
          return BasicRegion{v};
        }
      },
      r);
}

inline bool is_whole_plane(const Region& r) { return std::holds_alternative<WholePlane>(r); }

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline bool basic_membership(const BasicRegion& r, const ExtendedComplex& z, double tol) {
  return std::visit(
      Overloaded{
          [](const WholePlane&) { return true; },
          [&](const Disk& d) {
            return z.is_finite() && std::abs(z.value() - d.center) <= d.radius + tol;
          },
          [&](const DiskComplement& d) {
            return z.is_infinite() || std::abs(z.value() - d.center) >= d.radius - tol;
          },
          [&](const HalfPlane& h) {
            return z.is_infinite() || std::abs(z.value() - h.alpha) <= std::abs(z.value()) + tol;
          },
          [&](const PointAtInfinity&) { return z.is_infinite(); },
      },
      r);
}

}  // namespace detail

/// Closed-set membership. `tol` is an absolute slack applied to every
/// distance comparison; the default of zero tests the exact set.
inline bool membership(const Region& r, const ExtendedComplex& z, double tol = 0.0) {
  if (const auto* x = std::get_if<Intersection>(&r)) {
    return detail::basic_membership(x->left, z, tol) && detail::basic_membership(x->right, z, tol);
  }
  return detail::basic_membership(*narrow(r), z, tol);
}

inline bool contains_infinity(const Region& r) {
  return membership(r, ExtendedComplex::infinity());
}

}  // namespace gersh
