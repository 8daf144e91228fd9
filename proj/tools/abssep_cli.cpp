// abssep: spectrum-level separability certificates from the command line.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "abssep/chull.hpp"
#include "abssep/criteria.hpp"
#include "abssep/error.hpp"
#include "abssep/falsify.hpp"
#include "abssep/io.hpp"
#include "abssep/polytope.hpp"
#include "abssep/report.hpp"
#include "abssep/scan.hpp"
#include "abssep/symmetric.hpp"

namespace {

using abssep::Error;
using abssep::ErrorCode;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitRun = 1;

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

struct DimsArgs {
  std::string dims;
  int d = 0;
  int n = 0;
  bool symmetric = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dims", dims, "Bipartite local dimensions, e.g. 2x3");
    cmd->add_option("--d", d, "Local dimension of each qudit");
    cmd->add_option("--n", n, "Number of qudits");
    cmd->add_flag("--symmetric", symmetric, "Symmetric subspace of N qudits");
  }

  // Flags win over dims recorded in the spectrum file.
  abssep::SystemDims resolve(const std::optional<abssep::SystemDims>& from_file) const {
    if (!dims.empty()) return abssep::parse_dims(dims);
    if (d > 0 || n > 0) {
      if (d <= 0 || n <= 0) throw Error(ErrorCode::InvalidDims, "--d and --n go together");
      return symmetric ? abssep::SystemDims::symmetric(d, n) : abssep::SystemDims::multiqudit(d, n);
    }
    if (from_file) return *from_file;
    throw Error(ErrorCode::InvalidDims, "no dimensions: pass --dims NxM, --d/--n, or record them in the file");
  }
};

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.format == "text") {
    std::cout << text;
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

abssep::Spectrum load(const std::string& arg, const DimsArgs& dims_args, abssep::SystemDims& dims) {
  const auto input = abssep::load_spectrum_arg(arg);
  dims = dims_args.resolve(input.dims);
  return abssep::validate_spectrum(input.values, dims);
}

json outcome_json(const abssep::FalsifyOutcome& o) {
  json j{{"samples_run", o.samples_run},
         {"best_min_pt_eig", o.best_min_pt_eig},
         {"witness_found", o.witness_found},
         {"best_sample", o.best_sample}};
  j["witness_unitary_seed"] = o.witness_unitary_seed ? json(*o.witness_unitary_seed) : json(nullptr);
  return j;
}

json matrix_json(const abssep::ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row_re = json::array();
    json row_im = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row_re.push_back(m(r, c).real());
      row_im.push_back(m(r, c).imag());
    }
    re.push_back(row_re);
    im.push_back(row_im);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"real", re}, {"imag", im}};
}

std::string facets_text(const std::vector<abssep::Facet>& facets) {
  std::ostringstream os;
  for (const auto& f : facets) os << abssep::describe(f) << "  [" << f.saturating_vertices << " vertices]\n";
  return os.str();
}

json facets_json(const std::vector<abssep::Facet>& facets) {
  json out = json::array();
  for (const auto& f : facets) {
    json normal = json::array();
    for (const auto& c : f.normal) {
      normal.push_back(boost::multiprecision::numerator(c).convert_to<long long>());
    }
    out.push_back({{"normal", normal},
                   {"offset", abssep::to_string(f.offset)},
                   {"saturating_vertices", f.saturating_vertices}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral certificates of absolute separability and absolute PPT"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "Master random seed");
  app.add_option("--tol", g.tol, "Hull solver residual tolerance");

  // check
  auto* check = app.add_subcommand("check", "Run every applicable criterion and the hull program");
  std::string check_spectrum;
  DimsArgs check_dims;
  bool generic = false;
  bool tight = false;
  bool no_hull = false;
  check->add_option("--spectrum", check_spectrum, "Spectrum file or comma-separated values")->required();
  check_dims.add_to(check);
  check->add_flag("--tight", tight, "Tight symmetric facets where known (default)");
  check->add_flag("--generic", generic, "Generic symmetric window only");
  check->add_flag("--no-hull", no_hull, "Skip the hull program");

  // facets
  auto* facets = app.add_subcommand("facets", "Exact facets of the hull of two eigenvalue simplexes");
  int facet_dim = 0;
  std::string alpha_minus = "-1";
  std::string alpha_plus = "2";
  std::string mode = "sector";
  facets->add_option("--dim", facet_dim, "Dimension D")->required();
  facets->add_option("--alpha-minus", alpha_minus, "Lower map parameter (p/q)");
  facets->add_option("--alpha-plus", alpha_plus, "Upper map parameter (p/q)");
  facets->add_option("--mode", mode, "brute: every facet; sector: the ordered-sector facet")
      ->check(CLI::IsMember({"brute", "sector"}));

  // solve
  auto* solve = app.add_subcommand("solve", "Hull membership with a decomposition certificate");
  std::string solve_spectrum;
  DimsArgs solve_dims;
  int max_iter = 100000;
  solve->add_option("--spectrum", solve_spectrum, "Spectrum file or comma-separated values")->required();
  solve_dims.add_to(solve);
  solve->add_option("--max-iter", max_iter, "Iteration budget");

  // falsify
  auto* falsify = app.add_subcommand("falsify", "Random search for an NPT witness unitary");
  std::string falsify_spectrum;
  DimsArgs falsify_dims;
  int samples = 10000;
  int threads = 0;
  std::string dump_witness;
  falsify->add_option("--spectrum", falsify_spectrum, "Spectrum file or comma-separated values")->required();
  falsify_dims.add_to(falsify);
  falsify->add_option("--samples", samples, "Number of Haar unitaries");
  falsify->add_option("--threads", threads, "Worker threads (0: all cores)");
  falsify->add_option("--dump-witness", dump_witness, "Write the witness unitary as JSON");

  // sym-check
  auto* sym = app.add_subcommand("sym-check", "Symmetric-subspace criteria plus the embedded PT check");
  std::string sym_spectrum;
  int sym_d = 0;
  int sym_n = 0;
  bool sym_generic = false;
  bool sym_tight = false;
  sym->add_option("--d", sym_d, "Local dimension")->required();
  sym->add_option("--n", sym_n, "Number of qudits")->required();
  sym->add_option("--spectrum", sym_spectrum, "Spectrum file or comma-separated values")->required();
  sym->add_flag("--tight", sym_tight, "Tight closed forms where known (default)");
  sym->add_flag("--generic", sym_generic, "Generic window only");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Map parameters and eigenvalue thresholds");
  DimsArgs bounds_dims;
  bounds_dims.add_to(bounds);

  // scan
  auto* scan = app.add_subcommand("scan", "Classify random spectra by detecting set (CSV)");
  std::string scan_dims = "3x3";
  int scan_samples = 100000;
  int resolution = 1;
  int scan_threads = 0;
  std::string output;
  scan->add_option("--dims", scan_dims, "Bipartite dimensions");
  scan->add_option("--samples", scan_samples, "Number of sampled directions");
  scan->add_option("--resolution", resolution, "Radial shells per direction");
  scan->add_option("--threads", scan_threads, "Worker threads (0: all cores)");
  scan->add_option("--output", output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (check->parsed()) {
      if (tight && generic) throw Error(ErrorCode::ParseError, "--tight and --generic are exclusive");
      abssep::SystemDims dims = abssep::SystemDims::bipartite(2, 2);
      const auto s = load(check_spectrum, check_dims, dims);
      abssep::CheckOptions options;
      options.use_tight = !generic;
      options.run_hull = !no_hull;
      options.hull.tol = g.tol;
      const auto report = abssep::run_check(s, dims, options);
      emit(g, abssep::report_to_json(report), abssep::report_to_text(report));
    } else if (facets->parsed()) {
      const auto lo = abssep::parse_rational(alpha_minus);
      const auto hi = abssep::parse_rational(alpha_plus);
      std::vector<abssep::Facet> found;
      if (mode == "brute") {
        auto vertices = abssep::simplex_vertices(facet_dim, lo);
        const auto upper = abssep::simplex_vertices(facet_dim, hi);
        vertices.insert(vertices.end(), upper.begin(), upper.end());
        found = abssep::brute_force_facets(vertices);
      } else {
        found.push_back(abssep::ordered_sector_facet(facet_dim, lo, hi));
      }
      emit(g, facets_json(found), facets_text(found));
    } else if (solve->parsed()) {
      abssep::SystemDims dims = abssep::SystemDims::bipartite(2, 2);
      const auto s = load(solve_spectrum, solve_dims, dims);
      abssep::HullOptions options;
      options.tol = g.tol;
      options.max_iter = max_iter;
      const auto outcome = abssep::hull_membership(s, abssep::builtin_sets(dims), options);
      json j = abssep::certificate_to_json(outcome.feasible, outcome.certificate);
      j["iterations"] = outcome.iterations;
      if (outcome.infeasible) j["diagnostic"] = outcome.infeasible->diagnostic;
      std::ostringstream text;
      text << (outcome.feasible ? "feasible" : "infeasible (advisory)") << ", residual "
           << outcome.certificate.residual << "\n";
      for (const auto& p : outcome.certificate.parts) text << "  " << p.set_id << " weight " << p.trace << "\n";
      emit(g, j, text.str());
    } else if (falsify->parsed()) {
      abssep::SystemDims dims = abssep::SystemDims::bipartite(2, 2);
      const auto s = load(falsify_spectrum, falsify_dims, dims);
      abssep::FalsifyOptions options;
      options.samples = samples;
      options.seed = g.seed;
      options.threads = threads;
      const auto outcome = dims.is_symmetric()
                               ? abssep::falsify_sap(s, dims.local_dim(), dims.parties(), options)
                               : abssep::falsify_ap(s, dims, options);
      if (!dump_witness.empty() && outcome.witness_unitary_seed) {
        std::ofstream out(dump_witness);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + dump_witness);
        json w = matrix_json(abssep::witness_unitary(static_cast<int>(s.size()), *outcome.witness_unitary_seed));
        w["seed"] = *outcome.witness_unitary_seed;
        out << w.dump(2) << "\n";
      }
      std::ostringstream text;
      text << std::setprecision(12) << "samples " << outcome.samples_run << ", best min PT eigenvalue "
           << outcome.best_min_pt_eig << "\n"
           << (outcome.witness_found ? "witness found" : "no witness found at this budget") << "\n";
      emit(g, outcome_json(outcome), text.str());
    } else if (sym->parsed()) {
      if (sym_tight && sym_generic) throw Error(ErrorCode::ParseError, "--tight and --generic are exclusive");
      const auto dims = abssep::SystemDims::symmetric(sym_d, sym_n);
      const auto input = abssep::load_spectrum_arg(sym_spectrum);
      const auto s = abssep::validate_spectrum(input.values, dims);
      abssep::CheckOptions options;
      options.use_tight = !sym_generic;
      options.hull.tol = g.tol;
      const auto report = abssep::run_check(s, dims, options);
      json j = abssep::report_to_json(report);
      std::string text = abssep::report_to_text(report);
      // Diagonal state in the Dicke basis, embedded and partially transposed.
      try {
        Eigen::VectorXd diag(static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i) diag(static_cast<Eigen::Index>(i)) = s[i];
        const abssep::DensityMatrix rho(diag.asDiagonal().toDenseMatrix().cast<abssep::Complex>(), dims);
        const auto sap = abssep::sap_check_via_embedding(rho, sym_d, sym_n);
        j["embedding"] = {{"partition_sizes", sap.partition_sizes}, {"min_pt_eig", sap.min_pt_eig}};
        std::ostringstream os;
        for (std::size_t k = 0; k < sap.min_pt_eig.size(); ++k) {
          os << "embedded PT k=" << sap.partition_sizes[k] << ": min eigenvalue " << sap.min_pt_eig[k] << "\n";
        }
        text += os.str();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DimensionTooLarge) throw;
        j["embedding"] = nullptr;
        text += "embedded PT skipped: dimension too large\n";
      }
      emit(g, j, text);
    } else if (bounds->parsed()) {
      json j;
      if (!bounds_dims.dims.empty()) {
        j = abssep::bipartite_bounds_json(abssep::parse_dims(bounds_dims.dims));
      } else {
        if (bounds_dims.d <= 0 || bounds_dims.n <= 0) throw Error(ErrorCode::InvalidDims, "bounds needs --d and --n");
        j = abssep::bounds_json(bounds_dims.d, bounds_dims.n, bounds_dims.symmetric);
      }
      std::ostringstream text;
      text << std::setprecision(12);
      for (const auto& [key, value] : j.items()) text << key << ": " << value.dump() << "\n";
      emit(g, j, text.str());
    } else if (scan->parsed()) {
      abssep::ScanOptions options;
      options.samples = scan_samples;
      options.resolution = resolution;
      options.seed = g.seed;
      options.threads = scan_threads;
      options.hull.tol = g.tol;
      const auto rows = abssep::region_scan(abssep::parse_dims(scan_dims), options);
      if (output.empty()) {
        abssep::write_scan_csv(std::cout, rows);
      } else {
        std::ofstream out(output);
        if (!out) throw Error(ErrorCode::ParseError, "cannot write " + output);
        abssep::write_scan_csv(out, rows);
      }
    }
  } catch (const abssep::InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool run_failure =
        e.code() == ErrorCode::IterationBudgetExhausted || e.code() == ErrorCode::SectorAmbiguous;
    return run_failure ? kExitRun : kExitInput;
  }
  return 0;
}
