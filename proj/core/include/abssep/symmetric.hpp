#pragma once

#include <vector>

#include "abssep/maps.hpp"

namespace abssep {

/// Largest full tensor dimension d^N the dense symmetric routines accept.
inline constexpr int kMaxEmbedDim = 2048;

/// Occupation-number basis of the symmetric subspace of N qudits.
///
/// Column j of `isometry` is the normalized symmetrization of the occupation
/// vector `occupations[j]`; occupations run in descending lexicographic order,
/// so for d = 2 the first column is |0...0>.
struct DickeBasis {
  int d = 0;
  int n = 0;
  std::vector<std::vector<int>> occupations;
  ComplexMatrix isometry;  // d^N x D_S, orthonormal columns

  int symmetric_dim() const noexcept { return static_cast<int>(isometry.cols()); }
  int full_dim() const noexcept { return static_cast<int>(isometry.rows()); }
};

/// Throws DimensionTooLarge when d^N exceeds 2^20.
DickeBasis build_dicke_basis(int d, int n);

/// V rho V^dagger. rho must carry symmetric(d, N) dims matching the basis.
DensityMatrix embed(const DensityMatrix& rho_s, const DickeBasis& basis);

/// Isometry onto S(k) (x) S(N-k), the support of any partially transposed
/// symmetric operator.
ComplexMatrix split_support(int d, int n, int k);

/// Smallest eigenvalue of the partial transpose (first k qudits) of the
/// symmetric projector, taken on its support.
double symmetric_identity_pt_min_eig(int d, int n, int k);

struct SapReport {
  std::vector<int> partition_sizes;   // k = 1 .. floor(N/2)
  std::vector<double> min_pt_eig;     // on the support, per k
  double overall_min = 0.0;
};

/// Embeds rho_s, transposes the first k qudits for every k <= floor(N/2) and
/// reports the smallest eigenvalue on the support of each.
SapReport sap_check_via_embedding(const DensityMatrix& rho_s, int d, int n);

/// Same check on a raw D_S x D_S matrix with precomputed bases (hot loop form).
class SymmetricPtChecker {
 public:
  SymmetricPtChecker(int d, int n);

  int symmetric_dim() const noexcept { return basis_.symmetric_dim(); }
  /// Per-k minimum eigenvalues of the partial transposes of V m V^dagger.
  std::vector<double> min_eigs(const ComplexMatrix& m) const;

 private:
  DickeBasis basis_;
  std::vector<int> factors_;
  std::vector<ComplexMatrix> supports_;  // index k - 1
};

}  // namespace abssep
