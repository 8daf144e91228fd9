#include "abssep/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <thread>

#include "abssep/error.hpp"
#include "abssep/random.hpp"

namespace abssep {

namespace {

constexpr std::array<std::pair<RegionClass, std::string_view>, 5> kRegionNames{{
    {RegionClass::BallOnly, "ball-only"},
    {RegionClass::SimplexOnly, "simplex-only"},
    {RegionClass::Both, "both"},
    {RegionClass::HullOnly, "hull-only"},
    {RegionClass::Undetected, "undetected"},
}};

// Per-sample Dirichlet concentration, log-uniform: small values give spiky
// directions that reach the simplex tips, large ones stay near the center.
constexpr double kLogConcentrationLo = -1.5;
constexpr double kLogConcentrationHi = 0.5;

}  // namespace

std::string_view to_string(RegionClass c) noexcept {
  for (const auto& [e, name] : kRegionNames) {
    if (e == c) return name;
  }
  return "undetected";
}

std::optional<RegionClass> region_class_from_string(std::string_view s) noexcept {
  for (const auto& [e, name] : kRegionNames) {
    if (name == s) return e;
  }
  return std::nullopt;
}

RegionClass classify_region(std::span<const double> spectrum, int dim, const HullOptions& hull) {
  const double d = dim;
  const double purity = std::inner_product(spectrum.begin(), spectrum.end(), spectrum.begin(), 0.0);
  const double lo = *std::min_element(spectrum.begin(), spectrum.end());
  const double hi = *std::max_element(spectrum.begin(), spectrum.end());
  const bool in_ball = purity <= 1.0 / (d - 1.0);
  const bool in_simplex = lo >= 1.0 / (d + 2.0);
  if (in_ball && in_simplex) return RegionClass::Both;
  if (in_ball) return RegionClass::BallOnly;
  if (in_simplex) return RegionClass::SimplexOnly;
  // Both sets lie inside these convex bounds, hence so does their hull.
  if (hi > std::max(2.0 / d, 3.0 / (d + 2.0))) return RegionClass::Undetected;
  if (purity > std::max(1.0 / (d - 1.0), (d + 8.0) / ((d + 2.0) * (d + 2.0)))) return RegionClass::Undetected;
  const std::vector<ConvexSetDescriptor> sets{ConvexSetDescriptor::min_simplex(dim, 2.0),
                                              ConvexSetDescriptor::ball(dim, 1.0)};
  try {
    if (hull_membership(spectrum, sets, hull).feasible) return RegionClass::HullOnly;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IterationBudgetExhausted) throw;
  }
  return RegionClass::Undetected;
}

std::vector<ScanRow> region_scan(const SystemDims& dims, const ScanOptions& options) {
  if (!dims.is_bipartite()) throw Error(ErrorCode::InvalidDims, "region scans need bipartite dims");
  if (options.samples < 0 || options.resolution < 1) {
    throw Error(ErrorCode::PreconditionUnmet, "need samples >= 0 and resolution >= 1");
  }
  const int dim = dims.total_dim();
  const auto per_sample = static_cast<std::size_t>(options.resolution);
  std::vector<ScanRow> rows(static_cast<std::size_t>(options.samples) * per_sample);

  auto work = [&](int begin, int end) {
    std::vector<double> point(static_cast<std::size_t>(dim));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> log_conc(kLogConcentrationLo, kLogConcentrationHi);
    for (int i = begin; i < end; ++i) {
      Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(i)));
      const double concentration = std::pow(10.0, log_conc(rng));
      const auto direction = sample_dirichlet(rng, dim, concentration);
      for (int j = 0; j < options.resolution; ++j) {
        const double radius = (j + unit(rng)) / options.resolution;
        for (std::size_t k = 0; k < point.size(); ++k) {
          point[k] = 1.0 / dim + radius * (direction[k] - 1.0 / dim);
        }
        ScanRow& row = rows[static_cast<std::size_t>(i) * per_sample + static_cast<std::size_t>(j)];
        row.purity = std::inner_product(point.begin(), point.end(), point.begin(), 0.0);
        row.lambda_min = *std::min_element(point.begin(), point.end());
        row.region = classify_region(point, dim, options.hull);
      }
    }
  };

  int workers = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, options.samples));
  if (workers == 1) {
    work(0, options.samples);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(static_cast<long long>(options.samples) * w / workers);
      const int end = static_cast<int>(static_cast<long long>(options.samples) * (w + 1) / workers);
      pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "purity,lambda_min,class\n";
  out << std::setprecision(17);
  for (const auto& row : rows) out << row.purity << "," << row.lambda_min << "," << to_string(row.region) << "\n";
}

}  // namespace abssep
