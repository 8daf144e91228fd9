#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "abssep/maps.hpp"
#include "abssep/random.hpp"

namespace abssep {

/// Haar-random unitary: Ginibre matrix, QR, phases of R's diagonal moved into Q.
ComplexMatrix haar_unitary(int dim, Rng& rng);
ComplexMatrix haar_unitary(int dim, std::uint64_t seed);

struct FalsifyOutcome {
  int samples_run = 0;
  double best_min_pt_eig = 0.0;
  std::optional<std::uint64_t> witness_unitary_seed;  // regenerate with haar_unitary(dim, seed)
  bool witness_found = false;
  int best_sample = -1;
};

struct FalsifyOptions {
  int samples = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  double negative_tol = kDefaultTolerances.negative;
};

/// Bipartitions searched for a state on `dims`: {0} for bipartite, every
/// subset of at most N/2 qudits (up to complement) for multiqudit.
std::vector<std::vector<int>> search_masks(const SystemDims& dims);

/// Smallest partial-transpose eigenvalue of U diag(s) U^dagger over the masks.
double min_pt_eigenvalue(const Spectrum& s, const ComplexMatrix& unitary, const SystemDims& dims,
                         const std::vector<std::vector<int>>& masks);

/// Random search for a unitary making diag(s) NPT. Sample i uses the seed
/// derive_seed(options.seed, i), so the outcome does not depend on threads.
FalsifyOutcome falsify_ap(const Spectrum& s, const SystemDims& dims, const FalsifyOptions& options = {});

/// Same search restricted to unitaries on the symmetric subspace of N qudits.
FalsifyOutcome falsify_sap(const Spectrum& s, int d, int n, const FalsifyOptions& options = {});

/// Unitary of size dim for a recorded witness seed.
ComplexMatrix witness_unitary(int dim, std::uint64_t witness_seed);

}  // namespace abssep
