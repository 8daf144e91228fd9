// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

#include "abssep/chull.hpp"
#include "abssep/criteria.hpp"
#include "abssep/error.hpp"
#include "abssep/falsify.hpp"
#include "abssep/maps.hpp"
#include "abssep/polytope.hpp"
#include "abssep/scan.hpp"
#include "abssep/symmetric.hpp"
#include "test_support.hpp"

using namespace abssep;

namespace {

constexpr double kVertexSlackTol = 1e-12;
constexpr double kVertexSeconds = 1.0;
constexpr double kFacetSeconds = 60.0;
constexpr int kAgreementSamples = 10000;
constexpr double kAgreementBand = 1e-6;
constexpr double kAgreementSecondsPerDim = 60.0;
constexpr double kIdentityPtTol = 1e-10;
constexpr int kPositiveControlSamples = 100000;
constexpr int kNegativeControlSamples = 10000;
constexpr int kTightnessSamples = 100000;
constexpr double kTightnessInflation = 1.01;
constexpr double kSaturationTol = 1e-10;
constexpr double kRootTol = 1e-3;
constexpr int kConsistencySamples = 10000;
constexpr double kMapTol = 1e-12;
constexpr int kEquivariancePairs = 100;
constexpr int kPtStates = 1000;
constexpr double kPtRangeTol = 1e-10;
constexpr int kReducedStates = 1000;
constexpr double kReducedTol = 1e-12;
constexpr int kScanSamples = 100000;

struct Result {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

SystemDims square_dims(int dim) {
  for (int n = static_cast<int>(std::sqrt(dim)); n >= 2; --n) {
    if (dim % n == 0 && dim / n >= 2) return SystemDims::bipartite(n, dim / n);
  }
  return SystemDims::bipartite(2, dim / 2);
}

Facet closed_form_facet(int dim) {
  const auto coeffs = hierarchy_coefficients(dim, 0);
  return canonical_facet(RationalVector(coeffs.begin(), coeffs.end()), Rational(1));
}

Facet linear_facet(const LinearFacet& f) {
  return canonical_facet(RationalVector(f.coefficients.begin(), f.coefficients.end()), Rational(f.offset));
}

Result vertex_saturation() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int dim : {4, 6, 8, 9, 12, 16, 64}) {
    const auto dims = square_dims(dim);
    std::vector<double> plus(static_cast<std::size_t>(dim), 1.0 / (dim + 2.0));
    plus.back() = 1.0 - (dim - 1.0) / (dim + 2.0);
    std::vector<double> minus(static_cast<std::size_t>(dim), 1.0 / (dim - 1.0));
    minus.front() = 0.0;
    worst = std::max(worst, std::abs(ch_facet(Spectrum::from_values(plus), dims).slack));
    worst = std::max(worst, std::abs(ch_facet(Spectrum::from_values(minus), dims).slack));
  }
  const double t = seconds_since(t0);
  return {worst <= kVertexSlackTol && t < kVertexSeconds, "max |slack| " + fmt(worst) + ", " + fmt(t) + " s"};
}

Result facet_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream os;
  for (int dim = 3; dim <= 7; ++dim) {
    auto vertices = simplex_vertices(dim, Rational(2));
    const auto lower = simplex_vertices(dim, Rational(-1));
    vertices.insert(vertices.end(), lower.begin(), lower.end());
    const auto facets = brute_force_facets(vertices);
    std::vector<Facet> ordered;
    for (const auto& f : facets) {
      if (std::is_sorted(f.normal.begin(), f.normal.end(), std::greater<>())) ordered.push_back(f);
    }
    const bool match = ordered.size() == 1 && ordered.front() == closed_form_facet(dim);
    ok = ok && match;
    if (dim == 3) ok = ok && facets.size() == 6;
    os << "D=" << dim << ":" << facets.size() << (match ? "" : "(mismatch)") << " ";
  }
  const double t = seconds_since(t0);
  os << fmt(t) << " s";
  return {ok && t < kFacetSeconds, os.str()};
}

Result symmetric_closed_forms() {
  struct Case {
    int dim;
    Rational am;
    Rational ap;
    LinearFacet expected;
  };
  const std::vector<Case> cases{
      {3, Rational(-3, 4), Rational(1), {{7, 5, 0}, 3}},
      {4, Rational(-2, 3), Rational(2, 3), {{6, 6, 2, 0}, 3}},
      {4, Rational(-1, 3), Rational(2, 3), {{9, 5, 0, 0}, 3}},
      {6, Rational(-2, 3), Rational(1), {{5, 5, 4, 0, 0, 0}, 2}},
      {10, Rational(-5, 8), Rational(1), {{13, 13, 13, 13, 3, 0, 0, 0, 0, 0}, 5}},
  };
  int matched = 0;
  int total = 0;
  for (const auto& c : cases) {
    ++total;
    if (ordered_sector_facet(c.dim, c.am, c.ap) == linear_facet(c.expected)) ++matched;
  }
  for (int n = 2; n <= 7; ++n) {
    ++total;
    const Rational cnk(static_cast<long long>(binomial(n, n / 2)));
    const auto f = ordered_sector_facet(n + 1, Rational(-1) / cnk, Rational(2) / cnk);
    if (f == linear_facet(symmetric_facet_coefficients(2, n, false))) ++matched;
  }
  return {matched == total, std::to_string(matched) + "/" + std::to_string(total) + " exact matches"};
}

Result solver_facet_agreement() {
  bool ok = true;
  std::ostringstream os;
  for (int dim : {4, 6, 9, 16}) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(2024, static_cast<std::uint64_t>(dim)));
    const auto sets = two_simplex_sets(dim);
    int disagreements = 0;
    int banded = 0;
    int feasible = 0;
    for (int i = 0; i < kAgreementSamples; ++i) {
      const double conc = std::array<double, 3>{1.0, 10.0, 100.0}[static_cast<std::size_t>(i % 3)];
      const auto s = Spectrum::from_values(sample_dirichlet(rng, dim, conc));
      const double slack = ch_facet(s, square_dims(dim)).slack;
      if (std::abs(slack) < kAgreementBand) {
        ++banded;
        continue;
      }
      try {
        const bool inside = hull_membership(s, sets).feasible;
        feasible += inside ? 1 : 0;
        if (inside != (slack > 0)) ++disagreements;
      } catch (const Error&) {
        ++disagreements;
      }
    }
    const double t = seconds_since(t0);
    ok = ok && disagreements == 0 && t < kAgreementSecondsPerDim;
    os << "D=" << dim << ": " << disagreements << " disagreements, " << feasible << " feasible, " << banded
       << " in band, " << fmt(t) << " s; ";
  }
  return {ok, os.str()};
}

Result identity_pt_bound() {
  double worst = 0.0;
  for (auto [d, n, k] : std::vector<std::tuple<int, int, int>>{
           {2, 2, 1}, {2, 3, 1}, {2, 4, 1}, {2, 4, 2}, {2, 5, 2}, {3, 2, 1}, {3, 3, 1}, {4, 2, 1}}) {
    worst = std::max(worst, std::abs(symmetric_identity_pt_min_eig(d, n, k) - 1.0 / static_cast<double>(binomial(n, k))));
  }
  return {worst <= kIdentityPtTol, "max deviation " + fmt(worst)};
}

Result falsifier_controls() {
  const auto dims = SystemDims::bipartite(2, 2);
  FalsifyOptions opts;
  opts.seed = 6;
  opts.samples = kPositiveControlSamples;
  const std::vector<double> npt{1.0 / 7, 1.0 / 7, 1.0 / 7, 4.0 / 7};
  const auto pos = falsify_ap(Spectrum::from_values(npt), dims, opts);
  opts.samples = kNegativeControlSamples;
  const std::vector<double> werner{1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5};
  const auto neg1 = falsify_ap(Spectrum::from_values(werner), dims, opts);
  const auto neg2 = falsify_ap(Spectrum::maximally_mixed(4), dims, opts);
  return {pos.witness_found && !neg1.witness_found && !neg2.witness_found,
          "positive best " + fmt(pos.best_min_pt_eig) + ", boundary best " + fmt(neg1.best_min_pt_eig) +
              ", mixed best " + fmt(neg2.best_min_pt_eig)};
}

Result tightness_probe() {
  const double alpha = 2.0 / 3.0 * kTightnessInflation;
  const double low = 1.0 / (4.0 + alpha);
  const std::vector<double> inflated{low, low, low, 1.0 - 3.0 * low};
  const std::vector<double> exact{3.0 / 14, 3.0 / 14, 3.0 / 14, 5.0 / 14};
  FalsifyOptions opts;
  opts.seed = 8;
  opts.samples = kTightnessSamples;
  const auto hit = falsify_sap(Spectrum::from_values(inflated), 2, 3, opts);
  const auto miss = falsify_sap(Spectrum::from_values(exact), 2, 3, opts);
  return {hit.witness_found && !miss.witness_found,
          "inflated best " + fmt(hit.best_min_pt_eig) + ", exact best " + fmt(miss.best_min_pt_eig)};
}

// Purity of the normalized image of a pure state, computed at matrix level.
double mapped_pure_purity(int d, int n, double alpha) {
  const auto dims = SystemDims::multiqudit(d, n);
  const int dim = dims.total_dim();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  psi(0) = 1.0;
  const ComplexMatrix m = reduction_map(DensityMatrix::from_pure(psi, dims), alpha).matrix() / (dim + alpha);
  return (m * m).trace().real();
}

Result multipartite_roots() {
  double worst = 0.0;
  for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const auto b = multipartite_alpha_bounds(d, n);
    const double dim = std::pow(d, n);
    const double target = 1.0 / (dim - multipartite_ball_param(d, n).A);
    worst = std::max(worst, std::abs(mapped_pure_purity(d, n, b.alpha_plus) - target));
    worst = std::max(worst, std::abs(mapped_pure_purity(d, n, b.alpha_minus) - target));
  }
  // Grid scan for the first sign change above zero, then bisection.
  const double target = 1.0 / (8.0 - 16.0 / 19.0);
  const auto g = [&](double a) { return mapped_pure_purity(2, 3, a) - target; };
  double lo = 0.0;
  double hi = 0.0;
  for (double a = 0.0; a < 4.0; a += 1e-3) {
    if (g(a) <= 0 && g(a + 1e-3) > 0) {
      lo = a;
      hi = a + 1e-3;
      break;
    }
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? hi : lo) = mid;
  }
  const double brute = 0.5 * (lo + hi);
  const double formula = multipartite_alpha_bounds(2, 3).alpha_plus;
  const bool ok = worst <= kSaturationTol && std::abs(formula - brute) <= kRootTol && std::abs(formula - 1.1915) <= kRootTol;
  return {ok, "saturation residual " + fmt(worst) + ", alpha+ " + fmt(formula) + " vs scanned " + fmt(brute)};
}

Result criteria_consistency() {
  int violations = 0;
  long checks = 0;
  for (int dim : {4, 6, 9, 16}) {
    const auto dims = square_dims(dim);
    Rng rng(derive_seed(77, static_cast<std::uint64_t>(dim)));
    const int top = (dim + 1) / 3;
    for (int i = 0; i < kConsistencySamples; ++i) {
      const double conc = (i % 2 == 0) ? 1.0 : 10.0;
      auto raw = sample_dirichlet(rng, dim, conc);
      const auto s = Spectrum::from_values(raw);
      const auto [lo, hi] = reduction_min_max(s, dims);
      const auto facet = ch_facet(s, dims);
      const auto ap = ap_necessary_2x2(s);
      const auto gb = gurvits_barnum(s, dims);
      ++checks;
      if ((lo.passed || hi.passed) && !facet.passed) ++violations;
      if (facet.passed && !ap.passed) ++violations;
      if (s.max() <= 1.0 / (dim - 1.0) && !gb.passed) ++violations;
      std::vector<CriterionVerdict> levels;
      for (int k = 0; k <= top; ++k) levels.push_back(hierarchy(s, dims, k));
      for (int k = 1; k <= top; ++k) {
        if (levels[static_cast<std::size_t>(k)].passed && !levels[static_cast<std::size_t>(k) - 1].passed) ++violations;
      }
      std::shuffle(raw.begin(), raw.end(), rng);
      const auto p = Spectrum::from_values(raw);
      const auto [plo, phi] = reduction_min_max(p, dims);
      const auto same = [](const CriterionVerdict& a, const CriterionVerdict& b) {
        return a.passed == b.passed && a.slack == b.slack;
      };
      if (!same(plo, lo) || !same(phi, hi) || !same(ch_facet(p, dims), facet) || !same(ap_necessary_2x2(p), ap) ||
          !same(gurvits_barnum(p, dims), gb) || !same(two_smallest(p, dims), two_smallest(s, dims))) {
        ++violations;
      }
      for (int k = 0; k <= top; ++k) {
        if (!same(hierarchy(p, dims, k), levels[static_cast<std::size_t>(k)])) ++violations;
      }

      // A point on the purity sphere 1/(D-1) around the mixed state.
      std::normal_distribution<double> gauss;
      std::vector<double> dir(static_cast<std::size_t>(dim));
      for (auto& v : dir) v = gauss(rng);
      const double mean = std::accumulate(dir.begin(), dir.end(), 0.0) / dim;
      double norm = 0.0;
      for (auto& v : dir) {
        v -= mean;
        norm += v * v;
      }
      norm = std::sqrt(norm);
      const double radius = std::sqrt(1.0 / (dim - 1.0) - 1.0 / dim);
      for (double v : dir) {
        if (1.0 / dim + radius * v / norm < -1e-12) ++violations;
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " + std::to_string(checks) + " spectra"};
}

Result map_algebra() {
  double round_trip = 0.0;
  double equivariance = 0.0;
  double pt_low = 0.0;
  double pt_high = 0.0;
  Rng rng(99);
  for (int dim : {4, 9, 16}) {
    const auto dims = square_dims(dim);
    for (int i = 0; i < kEquivariancePairs; ++i) {
      const auto rho = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, dim), dims);
      const double alpha = std::uniform_real_distribution<double>(-1.0, 2.0)(rng);
      if (std::abs(alpha) < 1e-3) continue;
      const auto back = inverse_reduction_map(reduction_map(rho, alpha), alpha);
      round_trip = std::max(round_trip, (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
      const ComplexMatrix u = haar_unitary(dim, rng);
      const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), dims);
      const ComplexMatrix lhs = reduction_map(rotated, alpha).matrix();
      const ComplexMatrix rhs = u * reduction_map(rho, alpha).matrix() * u.adjoint();
      equivariance = std::max(equivariance, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  const std::vector<int> mask{1};
  for (int i = 0; i < kPtStates; ++i) {
    const int dim = std::vector<int>{4, 6, 9, 8}[static_cast<std::size_t>(i % 4)];
    const auto dims = square_dims(dim);
    const double conc = (i % 3 == 0) ? 0.05 : 1.0;
    const auto rho = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, dim, conc), dims);
    const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, mask).matrix());
    pt_low = std::min(pt_low, ev(0));
    pt_high = std::max(pt_high, ev(ev.size() - 1));
  }
  const bool ok = round_trip <= kMapTol && equivariance <= kMapTol && pt_low >= -0.5 - kPtRangeTol &&
                  pt_high <= 1.0 + kPtRangeTol;
  return {ok, "round trip " + fmt(round_trip) + ", equivariance " + fmt(equivariance) + ", PT range [" +
                  fmt(pt_low) + ", " + fmt(pt_high) + "]"};
}

Result reduced_state_bound() {
  Rng rng(111);
  const auto dims = SystemDims::multiqudit(2, 3);
  const std::vector<int> traced{0};
  double worst = 1.0;
  int failures = 0;
  for (int i = 0; i < kReducedStates; ++i) {
    const double floor = 0.1 + 0.02 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto s = abssep::testing::random_spectrum_above(rng, 8, floor);
    const auto rho = abssep::testing::random_state(rng, s, dims);
    const double reduced = hermitian_eigenvalues(partial_trace(rho, traced).matrix())(0);
    worst = std::min(worst, reduced);
    if (reduced < 1.0 / 6.0 - kReducedTol) ++failures;
    if (!reduced_state_bound_check(rho, 2, 3, 1)) ++failures;
  }
  return {failures == 0, "smallest reduced eigenvalue " + fmt(worst) + " (bound 1/6)"};
}

Result region_scan_3x3() {
  const auto t0 = std::chrono::steady_clock::now();
  ScanOptions opts;
  opts.samples = kScanSamples;
  opts.seed = 1;
  const auto rows = region_scan(SystemDims::bipartite(3, 3), opts);
  std::map<RegionClass, int> counts;
  for (const auto& r : rows) ++counts[r.region];
  std::ofstream csv("acceptance_scan_3x3.csv");
  write_scan_csv(csv, rows);
  std::ostringstream os;
  bool ok = csv.good();
  for (auto c : {RegionClass::BallOnly, RegionClass::SimplexOnly, RegionClass::Both, RegionClass::HullOnly,
                 RegionClass::Undetected}) {
    os << to_string(c) << "=" << counts[c] << " ";
    if (c != RegionClass::Undetected) ok = ok && counts[c] > 0;
  }
  os << fmt(seconds_since(t0)) << " s, CSV acceptance_scan_3x3.csv";
  return {ok, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"vertex saturation", vertex_saturation},
      {"facet recovery", facet_recovery},
      {"symmetric closed forms", symmetric_closed_forms},
      {"solver-facet agreement", solver_facet_agreement},
      {"symmetric identity PT bound", identity_pt_bound},
      {"falsifier controls", falsifier_controls},
      {"tightness probe", tightness_probe},
      {"multipartite roots", multipartite_roots},
      {"criteria consistency", criteria_consistency},
      {"map algebra", map_algebra},
      {"reduced-state bound", reduced_state_bound},
      {"3x3 region scan", region_scan_3x3},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Result r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failures;
    std::printf("%s %2d %s: %s\n", r.pass ? "PASS" : "FAIL", index, name, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
