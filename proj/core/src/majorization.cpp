#include <algorithm>
#include <cmath>
#include <numeric>

#include "abssep/error.hpp"
#include "abssep/random.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

std::string_view to_string(MajorizationRelation r) noexcept {
  switch (r) {
    case MajorizationRelation::XMajorizedByY: return "XMajorizedByY";
    case MajorizationRelation::YMajorizedByX: return "YMajorizedByX";
    case MajorizationRelation::Equal: return "Equal";
    case MajorizationRelation::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

namespace {

// True when every ascending prefix sum of `a` is >= the matching one of `b`.
bool prefix_dominates(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t k = 0; k + 1 < a.size(); ++k) {
    sa += a[k];
    sb += b[k];
    if (sa < sb - tol) return false;
  }
  return true;
}

}  // namespace

MajorizationRelation majorizes(std::span<const double> x, std::span<const double> y, double sum_tol) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "majorization needs equal lengths");
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());

  const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
  const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
  if (std::abs(sx - sy) > sum_tol) return MajorizationRelation::Incomparable;

  bool equal = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - ys[i]) > sum_tol) {
      equal = false;
      break;
    }
  }
  if (equal) return MajorizationRelation::Equal;
  if (prefix_dominates(xs, ys, sum_tol)) return MajorizationRelation::XMajorizedByY;
  if (prefix_dominates(ys, xs, sum_tol)) return MajorizationRelation::YMajorizedByX;
  return MajorizationRelation::Incomparable;
}

MajorizationRelation majorizes(const Spectrum& x, const Spectrum& y) {
  return majorizes(x.values(), y.values(), kDefaultTolerances.trace);
}

SchurProbeReport schur_convex_probe(const ScalarFunction& f, int dim, int samples, std::uint64_t seed,
                                    const Tolerances& tol) {
  if (dim < 2 || samples < 1) throw Error(ErrorCode::PreconditionUnmet, "schur probe needs dim >= 2, samples >= 1");
  SchurProbeReport report;
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  const double h = tol.fd_step;
  const auto n = static_cast<std::size_t>(dim);

  std::vector<double> x(n);
  std::vector<double> grad(n);
  std::vector<double> probe(n);
  std::vector<std::size_t> perm(n);

  while (report.samples < samples) {
    for (auto& v : x) v = unif(rng);
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    for (auto& v : x) v /= total;

    // Entries closer than a few steps would let the stencil straddle a kink of
    // order-statistic functions; redraw those.
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    bool distinct = true;
    for (std::size_t i = 1; i < n; ++i) {
      if (sorted[i] - sorted[i - 1] < 10.0 * h) distinct = false;
    }
    if (!distinct) continue;
    ++report.samples;

    for (std::size_t i = 0; i < n; ++i) {
      probe = x;
      probe[i] = x[i] + h;
      const double up = f(probe);
      probe[i] = x[i] - h;
      const double down = f(probe);
      grad[i] = (up - down) / (2.0 * h);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double margin = (x[i] - x[j]) * (grad[i] - grad[j]);
        report.worst_margin = std::min(report.worst_margin, margin);
        if (margin < -tol.fd_margin) ++report.violations;
      }
    }

    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < n; ++i) probe[i] = x[perm[i]];
    const double fx = f(x);
    const double fp = f(probe);
    if (std::abs(fx - fp) > 1e-12 * std::max(1.0, std::abs(fx))) ++report.symmetry_violations;
  }
  return report;
}

}  // namespace abssep
