#pragma once

// Machine-readable region document, schema "gersh/1".
//
// {
//   "schema": "gersh/1",
//   "pencil": {"n": 2, "a": {"source": "...", "checksum": "fnv1a64:..."}, "b": {...}},
//   "variant": "plain" | "tilde" | "simplified",
//   "rows": [{"index": 1, "gammaB": R, "gammaA": R, "gamma": R,
//             "gammaTilde": R, "gammaS": R}, ...],
//   "families": [{"variant": "plain", "compact": bool, "wholePlaneRows": [...]}, ...],
//   "clusters": [{"indices": [1, 2], "expectedCount": 2, "certified": true}, ...],   (optional)
//   "spectrum": {"finite": [{"re": x, "im": y}, ...], "infiniteCount": k}            (optional)
// }
//
// A region R is {"kind": "whole_plane" | "infinity"}, {"kind": "disk" |
// "disk_complement", "center": {"re", "im"}, "radius"}, {"kind":
// "half_plane", "alpha": {"re", "im"}} or {"kind": "intersection", "left": R,
// "right": R}. Row indices are 1-based.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gersh/core_model.hpp"
#include "gersh/counting.hpp"
#include "gersh/eig_oracle.hpp"
#include "gersh/error.hpp"
#include "gersh/matrix_market.hpp"
#include "gersh/regions.hpp"

namespace gersh {

inline constexpr std::string_view kSchemaVersion = "gersh/1";

struct MatrixSource {
  std::string source;
  std::string checksum;
  friend bool operator==(const MatrixSource&, const MatrixSource&) = default;
};

struct RegionRecord {
  std::size_t index = 0;  // 1-based
  Region gamma_b;
  Region gamma_a;
  Region gamma;
  Region gamma_tilde;
  Region gamma_s;
  friend bool operator==(const RegionRecord&, const RegionRecord&) = default;
};

struct FamilySummary {
  FamilyVariant variant = FamilyVariant::kPlain;
  bool compact = false;
  std::vector<std::size_t> whole_plane_rows;  // 1-based
  friend bool operator==(const FamilySummary&, const FamilySummary&) = default;
};

struct RegionDocument {
  std::size_t n = 0;
  MatrixSource a;
  MatrixSource b;
  FamilyVariant variant = FamilyVariant::kPlain;
  std::vector<RegionRecord> rows;
  std::vector<FamilySummary> families;
  std::optional<ClusterReport> clusters;
  std::optional<Spectrum> spectrum;
  friend bool operator==(const RegionDocument&, const RegionDocument&) = default;
};

/// FNV-1a 64-bit digest, rendered as "fnv1a64:<16 hex digits>".
inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline std::string matrix_checksum(const ComplexMatrix& m) {
  std::ostringstream os;
  write_matrix_market(os, m);
  return fnv1a64(os.str());
}

inline GershFamily family_of(const RegionDocument& doc, FamilyVariant v) {
  GershFamily f{v, {}};
  for (const auto& r : doc.rows) {
    switch (v) {
      case FamilyVariant::kPlain: f.rows.push_back({r.gamma_b, r.gamma_a, r.gamma}); break;
      case FamilyVariant::kTilde: f.rows.push_back({r.gamma_b, r.gamma_a, r.gamma_tilde}); break;
      case FamilyVariant::kSimplified: f.rows.push_back({r.gamma_b, r.gamma_a, r.gamma_s}); break;
    }
  }
  return f;
}

inline FamilySummary summarize(const GershFamily& f) {
  FamilySummary s{f.variant, true, {}};
  for (std::size_t i = 0; i < f.rows.size(); ++i) {
    if (is_whole_plane(f.rows[i].gamma)) s.whole_plane_rows.push_back(i + 1);
    if (contains_infinity(f.rows[i].gamma)) s.compact = false;
  }
  return s;
}

inline void sort_spectrum(Spectrum& s) {
  std::sort(s.finite.begin(), s.finite.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
}

/// Builds every family for the pencil; the cluster report (if requested) is
/// computed for `variant`.
inline RegionDocument make_region_document(const Pencil& p, FamilyVariant variant, MatrixSource a,
                                           MatrixSource b, bool with_clusters = true,
                                           std::optional<Spectrum> spectrum = std::nullopt) {
  const auto stats = row_stats(p);
  const GershFamily plain = plain_family(p, stats);
  const GershFamily tilde = tilde_family(p, stats);
  const GershFamily simple = gamma_s(p, stats);

  RegionDocument doc;
  doc.n = p.size();
  doc.a = std::move(a);
  doc.b = std::move(b);
  doc.variant = variant;
  for (std::size_t i = 0; i < p.size(); ++i) {
    doc.rows.push_back({i + 1, plain.rows[i].gamma_b, plain.rows[i].gamma_a, plain.rows[i].gamma,
                        tilde.rows[i].gamma, simple.rows[i].gamma});
  }
  doc.families = {summarize(plain), summarize(tilde), summarize(simple)};
  if (with_clusters) {
    switch (variant) {
      case FamilyVariant::kPlain: doc.clusters = components(plain); break;
      case FamilyVariant::kTilde: doc.clusters = components(tilde); break;
      case FamilyVariant::kSimplified: doc.clusters = components(simple); break;
    }
  }
  if (spectrum) {
    sort_spectrum(*spectrum);
    doc.spectrum = std::move(spectrum);
  }
  return doc;
}

// ---------------------------------------------------------------------------
// JSON conversion

inline nlohmann::json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline nlohmann::json to_json(const Region& r) {
  using nlohmann::json;
  auto basic = [](const BasicRegion& b) -> json {
    return std::visit(
        detail::Overloaded{
            [](const WholePlane&) -> json { return {{"kind", "whole_plane"}}; },
            [](const Disk& d) -> json {
              return {{"kind", "disk"}, {"center", to_json(d.center)}, {"radius", d.radius}};
            },
            [](const DiskComplement& d) -> json {
              return {{"kind", "disk_complement"}, {"center", to_json(d.center)}, {"radius", d.radius}};
            },
            [](const HalfPlane& h) -> json { return {{"kind", "half_plane"}, {"alpha", to_json(h.alpha)}}; },
            [](const PointAtInfinity&) -> json { return {{"kind", "infinity"}}; },
        },
        b);
  };
  if (const auto* x = std::get_if<Intersection>(&r)) {
    return {{"kind", "intersection"}, {"left", basic(x->left)}, {"right", basic(x->right)}};
  }
  return basic(*narrow(r));
}

inline Region region_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "whole_plane") return WholePlane{};
  if (kind == "infinity") return PointAtInfinity{};
  if (kind == "disk") return Disk{complex_from_json(j.at("center")), j.at("radius").get<double>()};
  if (kind == "disk_complement") {
    return DiskComplement{complex_from_json(j.at("center")), j.at("radius").get<double>()};
  }
  if (kind == "half_plane") return HalfPlane{complex_from_json(j.at("alpha"))};
  if (kind == "intersection") {
    const auto left = narrow(region_from_json(j.at("left")));
    const auto right = narrow(region_from_json(j.at("right")));
    if (!left || !right) throw Error(ErrorCode::kParse, "nested intersection in region document");
    return Intersection{*left, *right};
  }
  throw Error(ErrorCode::kParse, "unknown region kind '" + kind + "'");
}

inline FamilyVariant variant_from_string(std::string_view s) {
  if (s == "plain") return FamilyVariant::kPlain;
  if (s == "tilde") return FamilyVariant::kTilde;
  if (s == "simplified") return FamilyVariant::kSimplified;
  throw Error(ErrorCode::kParse, "unknown variant '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const ClusterReport& report) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : report.clusters) {
    nlohmann::json idx = nlohmann::json::array();
    for (std::size_t i : c.indices) idx.push_back(i + 1);
    arr.push_back({{"indices", idx}, {"expectedCount", c.expected_count}, {"certified", c.certified}});
  }
  return arr;
}

inline ClusterReport cluster_report_from_json(const nlohmann::json& j) {
  ClusterReport r;
  for (const auto& c : j) {
    Cluster cl;
    for (const auto& i : c.at("indices")) cl.indices.push_back(i.get<std::size_t>() - 1);
    cl.expected_count = c.at("expectedCount").get<std::size_t>();
    cl.certified = c.at("certified").get<bool>();
    r.clusters.push_back(std::move(cl));
  }
  return r;
}

inline nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json finite = nlohmann::json::array();
  for (const auto& z : s.finite) finite.push_back(to_json(z));
  return {{"finite", finite}, {"infiniteCount", s.infinite_count}};
}

inline Spectrum spectrum_from_json(const nlohmann::json& j) {
  Spectrum s;
  for (const auto& z : j.at("finite")) s.finite.push_back(complex_from_json(z));
  s.infinite_count = j.at("infiniteCount").get<std::size_t>();
  return s;
}

inline nlohmann::json to_json(const RegionDocument& doc) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : doc.rows) {
    rows.push_back({{"index", r.index},
                    {"gammaB", to_json(r.gamma_b)},
                    {"gammaA", to_json(r.gamma_a)},
                    {"gamma", to_json(r.gamma)},
                    {"gammaTilde", to_json(r.gamma_tilde)},
                    {"gammaS", to_json(r.gamma_s)}});
  }
  json families = json::array();
  for (const auto& f : doc.families) {
    families.push_back(
        {{"variant", to_string(f.variant)}, {"compact", f.compact}, {"wholePlaneRows", f.whole_plane_rows}});
  }
  json out = {{"schema", kSchemaVersion},
              {"pencil",
               {{"n", doc.n},
                {"a", {{"source", doc.a.source}, {"checksum", doc.a.checksum}}},
                {"b", {{"source", doc.b.source}, {"checksum", doc.b.checksum}}}}},
              {"variant", to_string(doc.variant)},
              {"rows", rows},
              {"families", families}};
  if (doc.clusters) out["clusters"] = to_json(*doc.clusters);
  if (doc.spectrum) out["spectrum"] = to_json(*doc.spectrum);
  return out;
}

inline RegionDocument region_document_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != kSchemaVersion) {
      throw Error(ErrorCode::kParse, "unsupported schema '" + j.at("schema").get<std::string>() + "'");
    }
    RegionDocument doc;
    const auto& p = j.at("pencil");
    doc.n = p.at("n").get<std::size_t>();
    doc.a = {p.at("a").at("source").get<std::string>(), p.at("a").at("checksum").get<std::string>()};
    doc.b = {p.at("b").at("source").get<std::string>(), p.at("b").at("checksum").get<std::string>()};
    doc.variant = variant_from_string(j.at("variant").get<std::string>());
    for (const auto& r : j.at("rows")) {
      doc.rows.push_back({r.at("index").get<std::size_t>(), region_from_json(r.at("gammaB")),
                          region_from_json(r.at("gammaA")), region_from_json(r.at("gamma")),
                          region_from_json(r.at("gammaTilde")), region_from_json(r.at("gammaS"))});
    }
    for (const auto& f : j.at("families")) {
      doc.families.push_back({variant_from_string(f.at("variant").get<std::string>()), f.at("compact").get<bool>(),
                              f.at("wholePlaneRows").get<std::vector<std::size_t>>()});
    }
    if (j.contains("clusters")) doc.clusters = cluster_report_from_json(j.at("clusters"));
    if (j.contains("spectrum")) doc.spectrum = spectrum_from_json(j.at("spectrum"));
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("region document: ") + e.what());
  }
}

}  // namespace gersh
