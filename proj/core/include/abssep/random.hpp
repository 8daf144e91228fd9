#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace abssep {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based per-sample seed: independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Dirichlet(concentration, ..., concentration) sample of length `dim`.
inline std::vector<double> sample_dirichlet(Rng& rng, int dim, double concentration = 1.0) {
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> out(static_cast<std::size_t>(dim));
  double total = 0.0;
  for (auto& v : out) {
    v = gamma(rng);
    total += v;
  }
  for (auto& v : out) v /= total;
  return out;
}

}  // namespace abssep
