#pragma once

// SVG 1.1 figures of the inclusion regions in the complex plane.
//
// The Gamma families are drawn exactly: disks as circles, disk complements as
// circles with hatching outside, half-planes as their bounding line clipped to
// the viewport. G and K have no closed-form boundary and are rasterized on an
// N x N grid. Drawing happens inside a scale(1,-1) group so that every
// coordinate in the file is the complex coordinate itself (cy = Im).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gersh/core_model.hpp"
#include "gersh/reference_sets.hpp"
#include "gersh/region_json.hpp"
#include "gersh/regions.hpp"

namespace gersh {

/// Square window [xmin, xmin + side] x [ymin, ymin + side].
struct Viewport {
  double xmin = -1.0;
  double ymin = -1.0;
  double side = 2.0;
  bool degenerate = false;  // no extent in the features; unit window used

  double xmax() const noexcept { return xmin + side; }
  double ymax() const noexcept { return ymin + side; }
  bool contains(Complex z) const noexcept {
    return z.real() >= xmin && z.real() <= xmax() && z.imag() >= ymin && z.imag() <= ymax();
  }
};

enum class ReferenceSet { kG, kK };

/// kExact paints a cell when its center lies in the set. kCoverage paints it
/// when some point of the cell may lie in the set (the per-row defect is
/// relaxed by its Lipschitz constant times the half-diagonal), so every point
/// of the set falls in a painted cell.
enum class RasterMode { kExact, kCoverage };

struct Raster {
  Viewport viewport;
  std::size_t grid = 0;
  std::vector<std::uint8_t> cells;  // row-major, iy = 0 at ymin

  double cell_size() const noexcept { return viewport.side / static_cast<double>(grid); }
  bool at(std::size_t ix, std::size_t iy) const { return cells[iy * grid + ix] != 0; }
  Complex cell_center(std::size_t ix, std::size_t iy) const {
    const double h = cell_size();
    return {viewport.xmin + (static_cast<double>(ix) + 0.5) * h, viewport.ymin + (static_cast<double>(iy) + 0.5) * h};
  }
  /// Cell containing z, if z is inside the viewport.
  std::optional<std::pair<std::size_t, std::size_t>> cell_of(Complex z) const {
    if (!viewport.contains(z)) return std::nullopt;
    const double h = cell_size();
    auto idx = [&](double t) {
      return std::min(grid - 1, static_cast<std::size_t>(std::max(0.0, std::floor(t / h))));
    };
    return std::pair{idx(z.real() - viewport.xmin), idx(z.imag() - viewport.ymin)};
  }
};

inline Raster rasterize(const Pencil& p, ReferenceSet set, const Viewport& vp, std::size_t grid,
                        RasterMode mode = RasterMode::kCoverage) {
  if (grid == 0) throw Error(ErrorCode::kPrecondition, "raster grid must be positive");
  Raster r{vp, grid, std::vector<std::uint8_t>(grid * grid, 0)};
  const double half_diag = mode == RasterMode::kCoverage ? r.cell_size() * std::sqrt(0.5) : 0.0;
  // chi(., c) is 1-Lipschitz; the K defect has constant sum_j |b_ij|
  std::vector<GRow> g_rows;
  std::vector<KRow> k_rows;
  std::vector<double> slack(p.size(), half_diag);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (set == ReferenceSet::kG) {
      g_rows.push_back(g_row(p, i));
    } else {
      k_rows.push_back(k_row(p, i));
      slack[i] = half_diag * k_row_lipschitz(p, i);
    }
  }
  for (std::size_t iy = 0; iy < grid; ++iy)
    for (std::size_t ix = 0; ix < grid; ++ix) {
      const Complex z = r.cell_center(ix, iy);
      for (std::size_t i = 0; i < p.size(); ++i) {
        const bool hit = set == ReferenceSet::kG ? in_g_row(g_rows[i], z, slack[i]) : in_k_row(k_rows[i], z, slack[i]);
        if (hit) {
          r.cells[iy * grid + ix] = 1;
          break;
        }
      }
    }
  return r;
}

struct SvgOptions {
  std::vector<FamilyVariant> families{FamilyVariant::kPlain, FamilyVariant::kTilde};
  const Pencil* pencil = nullptr;  // needed for the G and K layers
  bool raster_g = false;
  bool raster_k = false;
  std::size_t grid = 400;
  RasterMode mode = RasterMode::kCoverage;
  std::optional<Viewport> viewport;
  bool markers = true;  // eigenvalue crosses from doc.spectrum
  int pixels = 800;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const Region& family_region(const RegionRecord& r, FamilyVariant v) {
  switch (v) {
    case FamilyVariant::kTilde: return r.gamma_tilde;
    case FamilyVariant::kSimplified: return r.gamma_s;
    case FamilyVariant::kPlain: break;
  }
  return r.gamma;
}

inline std::vector<BasicRegion> parts(const Region& r) {
  if (const auto* x = std::get_if<Intersection>(&r)) return {x->left, x->right};
  return {*narrow(r)};
}

struct Extent {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void add(Complex z, double pad = 0.0) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(pad)) return;
    xmin = std::min(xmin, z.real() - pad);
    xmax = std::max(xmax, z.real() + pad);
    ymin = std::min(ymin, z.imag() - pad);
    ymax = std::max(ymax, z.imag() + pad);
  }
  bool empty() const noexcept { return xmin > xmax; }
};

inline void add_feature(Extent& e, const BasicRegion& b) {
  std::visit(Overloaded{
                 [&](const Disk& d) { e.add(d.center, d.radius); },
                 [&](const DiskComplement& d) { e.add(d.center, d.radius); },
                 [&](const HalfPlane& h) {
                   e.add(Complex{});
                   e.add(h.alpha);
                 },
                 [](const auto&) {},
             },
             b);
}

/// Segment of the line through `point` with direction `dir` inside the
/// viewport (Liang-Barsky clipping of a long segment).
inline std::optional<std::pair<Complex, Complex>> clip_line(Complex point, Complex dir, const Viewport& vp) {
  const double big = 4.0 * (vp.side + std::abs(point - Complex{vp.xmin, vp.ymin}));
  const Complex p0 = point - big * dir;
  const Complex d = 2.0 * big * dir;
  double t0 = 0.0, t1 = 1.0;
  const double pv[4] = {-d.real(), d.real(), -d.imag(), d.imag()};
  const double qv[4] = {p0.real() - vp.xmin, vp.xmax() - p0.real(), p0.imag() - vp.ymin, vp.ymax() - p0.imag()};
  for (int k = 0; k < 4; ++k) {
    if (pv[k] == 0.0) {
      if (qv[k] < 0.0) return std::nullopt;
      continue;
    }
    const double t = qv[k] / pv[k];
    if (pv[k] < 0.0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
  }
  if (t0 > t1) return std::nullopt;
  return std::pair{p0 + t0 * d, p0 + t1 * d};
}

}  // namespace detail

/// Square window around every finite feature of the chosen families and the
/// spectrum, widened by 20% of the extent on each side.
inline Viewport auto_viewport(const RegionDocument& doc, const std::vector<FamilyVariant>& families,
                              bool include_spectrum = true) {
  detail::Extent e;
  for (const auto& row : doc.rows)
    for (FamilyVariant v : families)
      for (const auto& b : detail::parts(detail::family_region(row, v))) detail::add_feature(e, b);
  if (include_spectrum && doc.spectrum)
    for (const auto& z : doc.spectrum->finite) e.add(z);
  if (e.empty()) return {-1.0, -1.0, 2.0, true};
  const double w = std::max(e.xmax - e.xmin, e.ymax - e.ymin);
  const Complex mid{0.5 * (e.xmin + e.xmax), 0.5 * (e.ymin + e.ymax)};
  if (!(w > 0.0)) return {mid.real() - 1.0, mid.imag() - 1.0, 2.0, true};
  const double side = 1.4 * w;
  return {mid.real() - 0.5 * side, mid.imag() - 0.5 * side, side, false};
}

inline std::string render_svg(const RegionDocument& doc, const SvgOptions& opts = {}) {
  using detail::num;
  const Viewport vp = opts.viewport ? *opts.viewport : auto_viewport(doc, opts.families, opts.markers);
  if ((opts.raster_g || opts.raster_k) && opts.pencil == nullptr) {
    throw Error(ErrorCode::kPrecondition, "G/K rasterization needs the pencil");
  }

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(opts.pixels) +
       "\" height=\"" + std::to_string(opts.pixels) + "\" viewBox=\"" + num(vp.xmin) + ' ' + num(-vp.ymax()) + ' ' +
       num(vp.side) + ' ' + num(vp.side) + "\" data-schema=\"" + std::string(kSchemaVersion) + "\"" +
       (vp.degenerate ? " data-viewport=\"degenerate\"" : "") + ">\n";
  const double hatch = vp.side / 80.0;
  s += "<defs>\n<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"" + num(hatch) + "\" height=\"" +
       num(hatch) + "\" patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" + num(hatch) +
       "\" stroke=\"#888\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"/></pattern>\n";
  s += "<clipPath id=\"view\"><rect x=\"" + num(vp.xmin) + "\" y=\"" + num(vp.ymin) + "\" width=\"" + num(vp.side) +
       "\" height=\"" + num(vp.side) + "\"/></clipPath>\n</defs>\n";
  s += "<g transform=\"scale(1,-1)\" clip-path=\"url(#view)\">\n";

  auto raster_layer = [&](ReferenceSet set, const char* name, const char* color) {
    const Raster r = rasterize(*opts.pencil, set, vp, opts.grid, opts.mode);
    const double h = r.cell_size();
    s += std::string("<g data-layer=\"") + name + "\" data-grid=\"" + std::to_string(opts.grid) + "\" data-mode=\"" +
         (opts.mode == RasterMode::kExact ? "exact" : "coverage") + "\" fill=\"" + color +
         "\" fill-opacity=\"0.35\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t iy = 0; iy < r.grid; ++iy) {
      std::size_t ix = 0;
      while (ix < r.grid) {
        if (!r.at(ix, iy)) {
          ++ix;
          continue;
        }
        const std::size_t start = ix;
        while (ix < r.grid && r.at(ix, iy)) ++ix;
        s += "<rect x=\"" + num(vp.xmin + static_cast<double>(start) * h) + "\" y=\"" +
             num(vp.ymin + static_cast<double>(iy) * h) + "\" width=\"" + num(static_cast<double>(ix - start) * h) +
             "\" height=\"" + num(h) + "\"/>\n";
      }
    }
    s += "</g>\n";
  };
  if (opts.raster_g) raster_layer(ReferenceSet::kG, "G", "#9ecae1");
  if (opts.raster_k) raster_layer(ReferenceSet::kK, "K", "#fdae6b");

  const char* palette[] = {"#08519c", "#a50f15", "#006d2c"};
  for (FamilyVariant v : opts.families) {
    const char* color = palette[static_cast<int>(v)];
    s += std::string("<g data-family=\"") + to_string(v) + "\" fill=\"none\" stroke=\"" + color + "\">\n";
    for (const auto& row : doc.rows) {
      const Region& region = detail::family_region(row, v);
      const std::vector<BasicRegion> ps = detail::parts(region);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const std::string attrs = std::string(" data-family=\"") + to_string(v) + "\" data-row=\"" +
                                  std::to_string(row.index) + "\"" +
                                  (ps.size() > 1 ? " data-part=\"" + std::to_string(k) + "\"" : std::string());
        std::visit(
            detail::Overloaded{
                [&](const Disk& d) {
                  s += "<circle" + attrs + " data-kind=\"disk\" cx=\"" + num(d.center.real()) + "\" cy=\"" +
                       num(d.center.imag()) + "\" r=\"" + num(d.radius) +
                       "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n";
                },
                [&](const DiskComplement& d) {
                  const double cx = d.center.real(), cy = d.center.imag(), rr = d.radius;
                  s += "<path" + attrs + " data-kind=\"disk_complement_fill\" fill=\"url(#hatch)\" stroke=\"none\" "
                       "fill-rule=\"evenodd\" d=\"M" + num(vp.xmin) + ',' + num(vp.ymin) + " H" + num(vp.xmax()) +
                       " V" + num(vp.ymax()) + " H" + num(vp.xmin) + " Z M" + num(cx + rr) + ',' + num(cy) + " A" +
                       num(rr) + ',' + num(rr) + " 0 1 0 " + num(cx - rr) + ',' + num(cy) + " A" + num(rr) + ',' +
                       num(rr) + " 0 1 0 " + num(cx + rr) + ',' + num(cy) + " Z\"/>\n";
                  s += "<circle" + attrs + " data-kind=\"disk_complement\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) +
                       "\" r=\"" + num(rr) + "\" stroke-width=\"1.5\" stroke-dasharray=\"4 2\" "
                       "vector-effect=\"non-scaling-stroke\"/>\n";
                },
                [&](const HalfPlane& h) {
                  const double m = std::abs(h.alpha);
                  if (m == 0.0) return;  // |z| <= |z| holds everywhere
                  const auto seg = detail::clip_line(0.5 * h.alpha, Complex{0.0, 1.0} * h.alpha / m, vp);
                  if (!seg) return;
                  s += "<line" + attrs + " data-kind=\"half_plane\" data-alpha-re=\"" + num(h.alpha.real()) +
                       "\" data-alpha-im=\"" + num(h.alpha.imag()) + "\" x1=\"" + num(seg->first.real()) +
                       "\" y1=\"" + num(seg->first.imag()) + "\" x2=\"" + num(seg->second.real()) + "\" y2=\"" +
                       num(seg->second.imag()) + "\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n";
                },
                [&](const PointAtInfinity&) { s += "<g" + attrs + " data-kind=\"infinity\"/>\n"; },
                [&](const WholePlane&) { s += "<g" + attrs + " data-kind=\"whole_plane\"/>\n"; },
            },
            ps[k]);
      }
    }
    s += "</g>\n";
  }

  if (opts.markers && doc.spectrum) {
    const double arm = vp.side / 150.0;
    s += "<g data-layer=\"eigenvalues\" stroke=\"#000\" stroke-width=\"1\">\n";
    for (const auto& z : doc.spectrum->finite) {
      const double x = z.real(), y = z.imag();
      s += "<path data-re=\"" + num(x) + "\" data-im=\"" + num(y) + "\" d=\"M" + num(x - arm) + ',' + num(y - arm) +
           " L" + num(x + arm) + ',' + num(y + arm) + " M" + num(x - arm) + ',' + num(y + arm) + " L" + num(x + arm) +
           ',' + num(y - arm) + "\" vector-effect=\"non-scaling-stroke\"/>\n";
    }
    s += "</g>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace gersh
