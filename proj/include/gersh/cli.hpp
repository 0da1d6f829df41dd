#pragma once

// Command-line front end. All results go to `out` as JSON; diagnostics go to
// `err`. Exit codes: 0 success, 1 usage, 2 data error, 3 numerical failure.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gersh/core_model.hpp"
#include "gersh/counting.hpp"
#include "gersh/eig_oracle.hpp"
#include "gersh/error.hpp"
#include "gersh/fixtures.hpp"
#include "gersh/forward_error.hpp"
#include "gersh/matrix_market.hpp"
#include "gersh/reference_sets.hpp"
#include "gersh/region_json.hpp"
#include "gersh/regions.hpp"
#include "gersh/svg.hpp"

namespace gersh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

namespace cli {

inline Complex parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(text.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? text.size() : comma)) throw std::invalid_argument(text);
    double im = 0.0;
    if (comma != std::string::npos) {
      const std::string tail = text.substr(comma + 1);
      im = std::stod(tail, &used);
      if (used != tail.size()) throw std::invalid_argument(text);
    }
    return {re, im};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--point", "expected RE,IM but got '" + text + "'");
  }
}

inline Pencil load_pencil(const std::string& a_path, const std::string& b_path) {
  return {read_matrix_market(a_path), read_matrix_market(b_path)};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParse, "cannot write '" + path + "'");
  f << text;
}

inline nlohmann::json membership_rows(const std::vector<bool>& rows) {
  nlohmann::json hits = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i]) hits.push_back(i + 1);
  return hits;
}

struct RegionsArgs {
  std::string variant = "plain";
  std::string json_out;
  std::string svg_out;
  bool with_oracle = false;
  std::string method = "auto";
  std::size_t grid = 400;
  std::string raster_mode = "coverage";
  bool no_raster = false;
};

inline OracleMethod method_from_string(const std::string& m) {
  if (m == "charpoly") return OracleMethod::kCharpoly;
  if (m == "qr") return OracleMethod::kQr;
  return OracleMethod::kAuto;
}

inline void run_regions(const Pencil& p, MatrixSource a, MatrixSource b, const RegionsArgs& args, std::ostream& out) {
  std::optional<Spectrum> spectrum;
  if (args.with_oracle) spectrum = oracle_spectrum(p, method_from_string(args.method));
  const RegionDocument doc =
      make_region_document(p, variant_from_string(args.variant), std::move(a), std::move(b), true, spectrum);
  const std::string text = to_json(doc).dump(2) + "\n";
  if (args.json_out.empty()) out << text;
  else write_text(args.json_out, text);
  if (!args.svg_out.empty()) {
    SvgOptions opts;
    opts.pencil = &p;
    opts.raster_g = opts.raster_k = !args.no_raster;
    opts.grid = args.grid;
    opts.mode = args.raster_mode == "exact" ? RasterMode::kExact : RasterMode::kCoverage;
    write_text(args.svg_out, render_svg(doc, opts));
  }
}

inline nlohmann::json spectrum_json(Spectrum s) {
  sort_spectrum(s);
  return to_json(s);
}

inline nlohmann::json bound_report_json(const ErrorBoundReport& r) {
  nlohmann::json j = {{"index", r.index + 1},
                      {"rhoSimple", r.rho_simple},
                      {"disjointCertified", r.disjoint_certified},
                      {"delta", r.delta}};
  if (r.tight) {
    j["tau0"] = r.tight->tau0;
    j["rhoTight"] = r.tight->bound;
    j["improved"] = r.tight->improved;
  }
  if (r.quadratic) {
    j["deltaPrime"] = r.quadratic->delta_prime;
    j["rQuad"] = r.quadratic->r;
    j["quadBound"] = r.quadratic->bound;
  }
  if (!r.cluster_indices.empty()) {
    nlohmann::json idx = nlohmann::json::array();
    for (std::size_t i : r.cluster_indices) idx.push_back(i + 1);
    j["clusterIndices"] = idx;
    if (r.cluster_bound) j["clusterBound"] = *r.cluster_bound;
  }
  return j;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gerschgorin-type inclusion regions for generalized eigenvalue problems", "gersh"};
  app.require_subcommand(1);

  std::string a_path, b_path;
  double tol = 0.0;
  std::string variant = "plain";
  const std::vector<std::string> variants{"plain", "tilde", "simplified"};
  const std::vector<std::string> methods{"auto", "charpoly", "qr"};

  // regions
  cli::RegionsArgs rargs;
  auto* regions = app.add_subcommand("regions", "Compute the region families and emit JSON and/or SVG");
  regions->add_option("A", a_path, "Matrix Market file for A")->required()->check(CLI::ExistingFile);
  regions->add_option("B", b_path, "Matrix Market file for B")->required()->check(CLI::ExistingFile);

  auto add_region_flags = [&](CLI::App* sub) {
    sub->add_option("--variant", rargs.variant, "Family used for the cluster report")
        ->check(CLI::IsMember(variants));
    sub->add_option("--json", rargs.json_out, "Write the region document here instead of stdout");
    sub->add_option("--svg", rargs.svg_out, "Write an SVG figure");
    sub->add_flag("--with-oracle", rargs.with_oracle, "Include the oracle spectrum");
    sub->add_option("--method", rargs.method, "Oracle method")->check(CLI::IsMember(methods));
    sub->add_option("--grid", rargs.grid, "Raster resolution for G and K")->check(CLI::PositiveNumber);
    sub->add_option("--raster-mode", rargs.raster_mode, "coverage or exact")
        ->check(CLI::IsMember({"coverage", "exact"}));
    sub->add_flag("--no-raster", rargs.no_raster, "Skip the G and K layers");
  };
  add_region_flags(regions);

  // check
  std::string point_text;
  bool at_infinity = false;
  auto* check = app.add_subcommand("check", "Membership of a point in every inclusion set");
  check->add_option("A", a_path)->required()->check(CLI::ExistingFile);
  check->add_option("B", b_path)->required()->check(CLI::ExistingFile);
  auto* point_opt = check->add_option("--point", point_text, "Point as RE,IM")->allow_extra_args(false);
  auto* inf_opt = check->add_flag("--inf", at_infinity, "Query the point at infinity");
  point_opt->excludes(inf_opt);
  check->add_option("--tol", tol, "Absolute membership tolerance")->check(CLI::NonNegativeNumber);

  // count
  bool count_oracle = false;
  double count_tol = 1e-9;
  std::string count_method = "auto";
  auto* count = app.add_subcommand("count", "Cluster report, optionally verified against the oracle");
  count->add_option("A", a_path)->required()->check(CLI::ExistingFile);
  count->add_option("B", b_path)->required()->check(CLI::ExistingFile);
  count->add_option("--variant", variant)->check(CLI::IsMember(variants));
  count->add_flag("--with-oracle", count_oracle, "Verify counts with oracle eigenvalues");
  count->add_option("--method", count_method)->check(CLI::IsMember(methods));
  count->add_option("--tol", count_tol, "Membership slack tol * (1 + |lambda|)")->check(CLI::NonNegativeNumber);

  // eigs
  std::string eig_method = "auto";
  auto* eigs = app.add_subcommand("eigs", "Oracle spectrum");
  eigs->add_option("A", a_path)->required()->check(CLI::ExistingFile);
  eigs->add_option("B", b_path)->required()->check(CLI::ExistingFile);
  eigs->add_option("--method", eig_method)->check(CLI::IsMember(methods));

  // fwderr
  std::optional<std::size_t> index;
  std::string neighbor = "own";
  auto* fwderr = app.add_subcommand("fwderr", "Forward error bounds from Ahat = Y^H A X, Bhat = Y^H B X");
  fwderr->add_option("Ahat", a_path)->required()->check(CLI::ExistingFile);
  fwderr->add_option("Bhat", b_path)->required()->check(CLI::ExistingFile);
  fwderr->add_option("--index", index, "1-based eigenvalue index (default: all)")->check(CLI::PositiveNumber);
  fwderr->add_option("--neighbor-radius", neighbor, "Modulus in the neighbouring radii: own or target")
      ->check(CLI::IsMember({"own", "target"}));

  // demo
  std::size_t demo_n = 10;
  double demo_a = 2.0, demo_b = 1.0;
  std::string write_prefix;
  auto* demo = app.add_subcommand("demo", "Built-in test pencils");
  demo->require_subcommand(1);
  auto* testmat_cmd = demo->add_subcommand("testmat", "tridiag(a, 4, a) - lambda tridiag(b, 4, b)");
  testmat_cmd->add_option("--n", demo_n)->check(CLI::PositiveNumber);
  testmat_cmd->add_option("--a", demo_a);
  testmat_cmd->add_option("--b", demo_b);
  testmat_cmd->add_option("--write", write_prefix, "Also write PREFIX_A.mtx and PREFIX_B.mtx");
  add_region_flags(testmat_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gersh: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (regions->parsed()) {
      const Pencil p = cli::load_pencil(a_path, b_path);
      cli::run_regions(p, {a_path, matrix_checksum(p.a())}, {b_path, matrix_checksum(p.b())}, rargs, out);
    } else if (testmat_cmd->parsed()) {
      const Pencil p = testmat(demo_n, demo_a, demo_b);
      if (!write_prefix.empty()) {
        write_matrix_market(write_prefix + "_A.mtx", p.a());
        write_matrix_market(write_prefix + "_B.mtx", p.b());
      }
      const std::string label = "testmat(n=" + std::to_string(demo_n) + ", a=" + detail::num(demo_a) +
                                ", b=" + detail::num(demo_b) + ")";
      cli::run_regions(p, {label + " A", matrix_checksum(p.a())}, {label + " B", matrix_checksum(p.b())}, rargs, out);
    } else if (check->parsed()) {
      if (point_text.empty() && !at_infinity) {
        err << "gersh: check needs --point RE,IM or --inf\n";
        return kExitUsage;
      }
      const Pencil p = cli::load_pencil(a_path, b_path);
      const ExtendedComplex z = at_infinity ? ExtendedComplex::infinity() : ExtendedComplex{cli::parse_point(point_text)};
      const auto stats = row_stats(p);
      nlohmann::json sets = nlohmann::json::object();
      auto family_entry = [&](const GershFamily& f) {
        std::vector<bool> rows(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) rows[i] = membership(f.rows[i].gamma, z, tol);
        const bool any = std::find(rows.begin(), rows.end(), true) != rows.end();
        return nlohmann::json{{"member", any}, {"rows", cli::membership_rows(rows)}};
      };
      sets["gamma"] = family_entry(plain_family(p, stats));
      sets["gammaTilde"] = family_entry(tilde_family(p, stats));
      sets["gammaS"] = family_entry(gamma_s(p, stats));
      std::vector<bool> g_rows(p.size()), k_rows(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        g_rows[i] = in_g_row(p, i, z, tol);
        k_rows[i] = in_k_row(p, i, z, tol);
      }
      auto ref_entry = [](const std::vector<bool>& rows) {
        const bool any = std::find(rows.begin(), rows.end(), true) != rows.end();
        return nlohmann::json{{"member", any}, {"rows", cli::membership_rows(rows)}};
      };
      sets["G"] = ref_entry(g_rows);
      sets["K"] = ref_entry(k_rows);
      nlohmann::json point = at_infinity ? nlohmann::json{{"kind", "infinity"}} : to_json(z.value());
      out << nlohmann::json{{"point", point}, {"tol", tol}, {"sets", sets}}.dump(2) << "\n";
    } else if (count->parsed()) {
      const Pencil p = cli::load_pencil(a_path, b_path);
      const GershFamily f = build_family(p, variant_from_string(variant));
      const ClusterReport report = components(f);
      nlohmann::json j = {{"variant", variant}, {"clusters", to_json(report)}};
      int code = kExitOk;
      if (count_oracle) {
        const Spectrum s = oracle_spectrum(p, cli::method_from_string(count_method));
        const auto all = s.all();
        const CountVerification v = verify_counts(f, report, all, count_tol, count_tol);
        nlohmann::json counts = nlohmann::json::array();
        for (const auto& c : v.counts) counts.push_back({{"cluster", c.cluster + 1}, {"expected", c.expected}, {"found", c.found}});
        j["spectrum"] = cli::spectrum_json(s);
        j["verification"] = {{"passed", v.passed}, {"counts", counts}};
        if (!v.passed) {
          err << "gersh: " << to_string(ErrorCode::kCountMismatch) << ": cluster " << (*v.first_mismatch + 1)
              << " does not hold the expected number of eigenvalues\n";
          code = kExitNumerical;
        }
      }
      out << j.dump(2) << "\n";
      return code;
    } else if (eigs->parsed()) {
      const Pencil p = cli::load_pencil(a_path, b_path);
      const Spectrum s = oracle_spectrum(p, cli::method_from_string(eig_method));
      out << nlohmann::json{{"n", p.size()}, {"method", eig_method}, {"spectrum", cli::spectrum_json(s)}}.dump(2)
          << "\n";
    } else if (fwderr->parsed()) {
      const ResidualData d = residual_data(read_matrix_market(a_path), read_matrix_market(b_path));
      const NeighborRadius nr = neighbor == "target" ? NeighborRadius::kTargetModulus : NeighborRadius::kOwnModulus;
      nlohmann::json reports = nlohmann::json::array();
      auto one = [&](std::size_t i) {
        ErrorBoundReport r = error_bound_report(d, i);
        if (nr == NeighborRadius::kTargetModulus && r.cluster_indices.empty()) {
          // re-evaluate the certificate with the alternative neighbour radii
          const SimpleBound sb = simple_bound(d, i, nr);
          r.disjoint_certified = sb.certified;
          if (!sb.certified) {
            r.tight.reset();
            r.quadratic.reset();
          }
        }
        reports.push_back(cli::bound_report_json(r));
      };
      if (index) {
        if (*index > d.size()) throw Error(ErrorCode::kPrecondition, "--index exceeds the matrix size");
        one(*index - 1);
      } else {
        for (std::size_t i = 0; i < d.size(); ++i) one(i);
      }
      out << nlohmann::json{{"n", d.size()}, {"neighborRadius", neighbor}, {"reports", reports}}.dump(2) << "\n";
    }
  } catch (const CLI::ValidationError& e) {
    err << "gersh: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "gersh: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.category() == ErrorCategory::kData ? kExitData : kExitNumerical;
  } catch (const std::exception& e) {
    err << "gersh: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace gersh
