#include "abssep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw Error(ErrorCode::DimensionTooLarge, "binomial overflow");
    }
    // result * num is always divisible by i at this point.
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t ipow(int base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
      throw Error(ErrorCode::DimensionTooLarge, "power overflow");
    }
    result *= static_cast<std::uint64_t>(base);
  }
  return result;
}

SystemDims SystemDims::bipartite(int n, int m) {
  if (n < 2 || m < 2) throw Error(ErrorCode::InvalidDims, "bipartite local dimensions must be >= 2");
  return SystemDims(Layout::Bipartite, n, m);
}

SystemDims SystemDims::multiqudit(int d, int n) {
  if (d < 2 || n < 2) throw Error(ErrorCode::InvalidDims, "multiqudit requires d >= 2 and N >= 2");
  return SystemDims(Layout::Multiqudit, d, n);
}

SystemDims SystemDims::symmetric(int d, int n) {
  if (d < 2 || n < 2) throw Error(ErrorCode::InvalidDims, "symmetric subspace requires d >= 2 and N >= 2");
  return SystemDims(Layout::Symmetric, d, n);
}

SystemDims SystemDims::single(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDims, "a single system needs d >= 2");
  return SystemDims(Layout::Single, d, 1);
}

int SystemDims::total_dim() const {
  std::uint64_t dim = 0;
  switch (layout_) {
    case Layout::Bipartite: dim = static_cast<std::uint64_t>(first_) * static_cast<std::uint64_t>(second_); break;
    case Layout::Multiqudit: dim = ipow(first_, second_); break;
    case Layout::Symmetric: dim = binomial(second_ + first_ - 1, first_ - 1); break;
    case Layout::Single: dim = static_cast<std::uint64_t>(first_); break;
  }
  if (dim > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw Error(ErrorCode::DimensionTooLarge, "total dimension exceeds int range");
  }
  return static_cast<int>(dim);
}

std::vector<int> SystemDims::factors() const {
  switch (layout_) {
    case Layout::Bipartite: return {first_, second_};
    case Layout::Multiqudit: return std::vector<int>(static_cast<std::size_t>(second_), first_);
    case Layout::Symmetric: return {};
    case Layout::Single: return {first_};
  }
  return {};
}

std::string SystemDims::describe() const {
  std::ostringstream os;
  switch (layout_) {
    case Layout::Bipartite: os << first_ << "x" << second_; break;
    case Layout::Multiqudit: os << "multiqudit(d=" << first_ << ",N=" << second_ << ")"; break;
    case Layout::Symmetric: os << "symmetric(d=" << first_ << ",N=" << second_ << ")"; break;
    case Layout::Single: os << "single(" << first_ << ")"; break;
  }
  return os.str();
}

namespace {

std::vector<double> checked_sorted(std::span<const double> raw, const Tolerances& tol) {
  if (raw.size() < 2) throw Error(ErrorCode::LengthMismatch, "a spectrum needs at least two eigenvalues");
  std::vector<double> values(raw.begin(), raw.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NegativeEigenvalue, "non-finite eigenvalue");
    if (values[i] < -tol.positivity) {
      std::ostringstream os;
      os << "entry " << i << " = " << values[i];
      throw Error(ErrorCode::NegativeEigenvalue, os.str());
    }
    values[i] = std::max(values[i], 0.0);
  }
  // Sort before summing so the result does not depend on input order.
  std::sort(values.begin(), values.end());
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (std::abs(sum - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "trace " << sum << " differs from 1";
    throw Error(ErrorCode::TraceError, os.str());
  }
  for (auto& v : values) v /= sum;
  return values;
}

}  // namespace

Spectrum validate_spectrum(std::span<const double> raw, const SystemDims& dims, const Tolerances& tol) {
  const auto expected = static_cast<std::size_t>(dims.total_dim());
  if (raw.size() != expected) {
    std::ostringstream os;
    os << "got " << raw.size() << " eigenvalues, " << dims.describe() << " needs " << expected;
    throw Error(ErrorCode::LengthMismatch, os.str());
  }
  return Spectrum(checked_sorted(raw, tol));
}

Spectrum Spectrum::from_values(std::span<const double> raw, const Tolerances& tol) {
  return Spectrum(checked_sorted(raw, tol));
}

Spectrum Spectrum::maximally_mixed(int dim) {
  if (dim < 2) throw Error(ErrorCode::LengthMismatch, "dimension must be >= 2");
  return Spectrum(std::vector<double>(static_cast<std::size_t>(dim), 1.0 / dim));
}

double Spectrum::purity() const noexcept {
  return std::inner_product(values_.begin(), values_.end(), values_.begin(), 0.0);
}

}  // namespace abssep
