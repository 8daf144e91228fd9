#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "abssep/chull.hpp"

namespace abssep {

/// Which of the purity ball and the min-eigenvalue simplex detect a spectrum.
enum class RegionClass { BallOnly, SimplexOnly, Both, HullOnly, Undetected };
std::string_view to_string(RegionClass c) noexcept;
std::optional<RegionClass> region_class_from_string(std::string_view s) noexcept;

struct ScanRow {
  double purity = 0.0;
  double lambda_min = 0.0;
  RegionClass region = RegionClass::Undetected;
};

struct ScanOptions {
  int samples = 100000;
  int resolution = 1;  // radial shells per sampled direction
  std::uint64_t seed = 1;
  int threads = 0;
  HullOptions hull;
};

/// Classifies one spectrum against {min simplex, ball} for a bipartite D.
RegionClass classify_region(std::span<const double> spectrum, int dim, const HullOptions& hull = {});

/// Draws `samples` Dirichlet directions (concentration log-uniform in
/// [10^-1.5, 10^0.5]) from the maximally mixed point and
/// `resolution` jittered radii along each; returns samples * resolution rows in
/// sample order.
std::vector<ScanRow> region_scan(const SystemDims& dims, const ScanOptions& options);

/// CSV with header "purity,lambda_min,class".
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace abssep
