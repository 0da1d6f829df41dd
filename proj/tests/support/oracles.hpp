#pragma once

// Independent reference computations used to check the library: direct
// inequality evaluation, brute-force sampling, assignment matching and a
// small SVG scraper. None of these call into the code under test except for
// plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "gersh/complex_matrix.hpp"

namespace gersh::testing {

/// |z - alpha| <= beta |z| evaluated directly.
inline bool apollonius_holds(Complex alpha, double beta, Complex z, double tol = 0.0) {
  return std::abs(z - alpha) <= beta * std::abs(z) + tol;
}

/// Minimum-cost perfect matching (Hungarian algorithm, O(n^3)) between x and
/// y with cost |x_i - y_j| / (1 + |x_i|); returns the worst matched pair
/// distance measured by that same weight.
inline double matched_relative_error(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  const std::size_t n = x.size();
  if (y.size() != n) return std::numeric_limits<double>::infinity();
  if (n == 0) return 0.0;
  auto cost = [&](std::size_t i, std::size_t j) { return std::abs(x[i] - y[j]) / (1.0 + std::abs(x[i])); };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double worst = 0.0;
  for (std::size_t j = 1; j <= n; ++j) worst = std::max(worst, cost(p[j] - 1, j - 1));
  return worst;
}

/// Eigenvalues of a 2x2 pencil from the quadratic det(A - lambda B) = 0.
inline std::vector<Complex> eig2x2(const ComplexMatrix& a, const ComplexMatrix& b) {
  // det = (a00 - l b00)(a11 - l b11) - (a01 - l b01)(a10 - l b10) = c2 l^2 + c1 l + c0
  const Complex c2 = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0);
  const Complex c1 = -(a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0)) + (a(0, 1) * b(1, 0) + a(1, 0) * b(0, 1));
  const Complex c0 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  return {(-c1 + disc) / (2.0 * c2), (-c1 - disc) / (2.0 * c2)};
}

struct SvgCircle {
  std::string family;
  std::size_t row = 0;
  std::size_t part = 0;  // 0 without data-part
  std::string kind;
  double cx = 0, cy = 0, r = 0;
};

struct SvgRect {
  double x = 0, y = 0, w = 0, h = 0;
  bool contains(Complex z) const {
    return z.real() >= x && z.real() <= x + w && z.imag() >= y && z.imag() <= y + h;
  }
};

inline std::map<std::string, std::string> svg_attributes(const std::string& tag) {
  static const std::regex attr(R"re(([\w:-]+)="([^"]*)")re");
  std::map<std::string, std::string> out;
  for (auto it = std::sregex_iterator(tag.begin(), tag.end(), attr); it != std::sregex_iterator(); ++it)
    out[(*it)[1].str()] = (*it)[2].str();
  return out;
}

inline std::vector<SvgCircle> svg_circles(const std::string& svg) {
  static const std::regex tag(R"(<circle[^>]*>)");
  std::vector<SvgCircle> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
    auto a = svg_attributes(it->str());
    const std::size_t part = a.count("data-part") ? std::stoul(a["data-part"]) : 0;
    out.push_back({a["data-family"], static_cast<std::size_t>(std::stoul(a["data-row"])), part, a["data-kind"],
                   std::stod(a["cx"]), std::stod(a["cy"]), std::stod(a["r"])});
  }
  return out;
}

/// Rects of the raster layer whose data-layer attribute equals `layer`.
inline std::vector<SvgRect> svg_layer_rects(const std::string& svg, const std::string& layer) {
  const std::string open = "<g data-layer=\"" + layer + "\"";
  const auto start = svg.find(open);
  if (start == std::string::npos) return {};
  const auto stop = svg.find("</g>", start);
  const std::string body = svg.substr(start, stop - start);
  static const std::regex tag(R"(<rect[^>]*>)");
  std::vector<SvgRect> out;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), tag); it != std::sregex_iterator(); ++it) {
    auto a = svg_attributes(it->str());
    out.push_back({std::stod(a["x"]), std::stod(a["y"]), std::stod(a["width"]), std::stod(a["height"])});
  }
  return out;
}

}  // namespace gersh::testing
