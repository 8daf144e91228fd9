#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abssep/tolerances.hpp"

namespace abssep {

/// Exact binomial coefficient; throws on overflow of 64 bits.
std::uint64_t binomial(int n, int k);

/// Integer power with overflow check.
std::uint64_t ipow(int base, int exp);

enum class Layout { Bipartite, Multiqudit, Symmetric, Single };

/// Dimension layout of the system a spectrum belongs to.
///
/// Bipartite holds local dimensions (n, m); Multiqudit and Symmetric hold the
/// local dimension `d` and particle count `n`. Single is an unfactorized
/// system, produced when a partial trace leaves one factor. Construct through
/// the named factories, which validate the ranges.
class SystemDims {
 public:
  static SystemDims bipartite(int n, int m);
  static SystemDims multiqudit(int d, int n);
  static SystemDims symmetric(int d, int n);
  static SystemDims single(int d);

  Layout layout() const noexcept { return layout_; }
  bool is_bipartite() const noexcept { return layout_ == Layout::Bipartite; }
  bool is_multiqudit() const noexcept { return layout_ == Layout::Multiqudit; }
  bool is_symmetric() const noexcept { return layout_ == Layout::Symmetric; }
  bool is_single() const noexcept { return layout_ == Layout::Single; }

  // Bipartite accessors.
  int n() const noexcept { return first_; }
  int m() const noexcept { return second_; }
  // Multiqudit / symmetric accessors.
  int local_dim() const noexcept { return first_; }
  int parties() const noexcept { return second_; }

  /// N*M, d^N or binomial(N+d-1, d-1).
  int total_dim() const;

  /// Local factor dimensions of the tensor-product space; empty for the
  /// symmetric subspace, which carries no factorization of its own, and {d}
  /// for a single system.
  std::vector<int> factors() const;

  std::string describe() const;

  friend bool operator==(const SystemDims&, const SystemDims&) = default;

 private:
  SystemDims(Layout layout, int first, int second) : layout_(layout), first_(first), second_(second) {}

  Layout layout_;
  int first_;
  int second_;
};

/// A validated spectrum: nonnegative, unit trace, stored in ascending order.
///
/// Immutable once built. All criteria read `values()` and may assume
/// `values()[0]` is the smallest eigenvalue.
class Spectrum {
 public:
  /// Validates without a dimension layout (length >= 2 only).
  static Spectrum from_values(std::span<const double> raw, const Tolerances& tol = kDefaultTolerances);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  double purity() const noexcept;

  /// Maximally mixed spectrum of length `dim`.
  static Spectrum maximally_mixed(int dim);

 private:
  explicit Spectrum(std::vector<double> sorted) : values_(std::move(sorted)) {}
  friend Spectrum validate_spectrum(std::span<const double>, const SystemDims&, const Tolerances&);

  std::vector<double> values_;
};

/// Checks length against `dims`, rejects entries below -tol.positivity and
/// traces off by more than tol.trace, then clamps, normalizes and sorts.
Spectrum validate_spectrum(std::span<const double> raw, const SystemDims& dims,
                           const Tolerances& tol = kDefaultTolerances);

enum class MajorizationRelation { XMajorizedByY, YMajorizedByX, Equal, Incomparable };

std::string_view to_string(MajorizationRelation r) noexcept;

/// Majorization in the ascending convention: x ≺ y iff the sums agree and every
/// ascending prefix sum of x dominates that of y. Inputs need not be sorted or
/// normalized; sums must agree within `sum_tol`.
MajorizationRelation majorizes(std::span<const double> x, std::span<const double> y, double sum_tol = 1e-9);
MajorizationRelation majorizes(const Spectrum& x, const Spectrum& y);

struct SchurProbeReport {
  int samples = 0;
  int violations = 0;           // pairwise Schur-condition failures
  int symmetry_violations = 0;  // f(x) != f(P x) for a random permutation P
  double worst_margin = 0.0;    // most negative (x_i - x_j)(df_i - df_j) seen
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Samples random nonnegative vectors with distinct entries and checks the
/// Schur condition (x_i - x_j)(∂_i f - ∂_j f) >= -tol.fd_margin with central
/// differences of step tol.fd_step, plus permutation symmetry.
SchurProbeReport schur_convex_probe(const ScalarFunction& f, int dim, int samples, std::uint64_t seed,
                                    const Tolerances& tol = kDefaultTolerances);

}  // namespace abssep
