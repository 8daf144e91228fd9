#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "abssep/spectrum.hpp"

namespace abssep {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Hermitian operator on a space described by `dims`.
///
/// `normalized()` is false for intermediate map outputs whose trace is not one
/// (reduction-like maps scale the trace); such matrices are never silently
/// renormalized.
class DensityMatrix {
 public:
  /// Validates Hermiticity (tol.hermitian), and when `normalized` also unit
  /// trace (tol.trace).
  DensityMatrix(ComplexMatrix entries, SystemDims dims, bool normalized = true,
                const Tolerances& tol = kDefaultTolerances);

  static DensityMatrix maximally_mixed(const SystemDims& dims);
  /// U diag(s) U^dagger.
  static DensityMatrix from_spectrum(const Spectrum& s, const ComplexMatrix& unitary, const SystemDims& dims);
  static DensityMatrix from_pure(const Eigen::VectorXcd& psi, const SystemDims& dims);

  const ComplexMatrix& matrix() const noexcept { return entries_; }
  const SystemDims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  bool normalized() const noexcept { return normalized_; }
  double trace() const { return entries_.trace().real(); }

 private:
  ComplexMatrix entries_;
  SystemDims dims_;
  bool normalized_;
};

/// Lambda_alpha(rho) = Tr(rho) 1 + alpha rho. Output is unnormalized.
DensityMatrix reduction_map(const DensityMatrix& rho, double alpha);

/// (sigma - Tr(sigma) 1 / (D + alpha)) / alpha. Throws AlphaZero.
DensityMatrix inverse_reduction_map(const DensityMatrix& sigma, double alpha);

/// Eigenvalue action of the reduction map: l -> 1 + alpha l, divided by
/// D + alpha when `normalize`. For alpha < -1 the result may have negative
/// entries; it is then returned as raw values without Spectrum validation.
std::vector<double> spectrum_level_map(const Spectrum& s, double alpha, bool normalize);

/// Partial transpose over the tensor factors listed in `mask` (indices into
/// dims().factors()). Throws MaskInvalid for empty factorization, duplicate or
/// out-of-range indices.
DensityMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> mask);

/// Traces out the listed factors; the result lives on the remaining factors
/// (bipartite -> multiqudit-like layout is kept as a generic factor list).
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, std::span<const int> factors,
                                   std::span<const int> traced);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced);

/// Ascending eigenvalues of a Hermitian matrix (no trace or sign validation).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Ascending spectrum of a state; throws NotHermitian.
Spectrum hermitian_spectrum(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// Max |A - A^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);

/// Index permutation implementing the partial transpose on a raw matrix.
ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, std::span<const int> factors, std::span<const int> mask);

}  // namespace abssep
