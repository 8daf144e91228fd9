#include "abssep/falsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "abssep/error.hpp"
#include "abssep/symmetric.hpp"

namespace abssep {

namespace {

struct Best {
  double value = std::numeric_limits<double>::infinity();
  int index = -1;
};

bool better(const Best& a, const Best& b) {
  if (a.value != b.value) return a.value < b.value;
  return a.index >= 0 && (b.index < 0 || a.index < b.index);
}

// Runs `evaluate(i)` for i in [0, samples) over worker threads; the merge is
// by (value, lowest index), so the result is schedule independent.
template <typename Evaluate>
Best parallel_minimum(int samples, int threads, const Evaluate& evaluate) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, samples));
  std::vector<Best> partial(static_cast<std::size_t>(workers));
  auto run = [&](int w) {
    const int begin = static_cast<int>(static_cast<long long>(samples) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(samples) * (w + 1) / workers);
    Best local;
    for (int i = begin; i < end; ++i) {
      const Best candidate{evaluate(i), i};
      if (better(candidate, local)) local = candidate;
    }
    partial[static_cast<std::size_t>(w)] = local;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  Best best;
  for (const auto& p : partial) {
    if (better(p, best)) best = p;
  }
  return best;
}

FalsifyOutcome finish(const Best& best, int samples, const FalsifyOptions& options) {
  FalsifyOutcome out;
  out.samples_run = samples;
  out.best_min_pt_eig = best.value;
  out.best_sample = best.index;
  out.witness_found = best.value < -options.negative_tol;
  if (out.witness_found) out.witness_unitary_seed = derive_seed(options.seed, static_cast<std::uint64_t>(best.index));
  return out;
}

void require_samples(int samples) {
  if (samples < 1) throw Error(ErrorCode::PreconditionUnmet, "need at least one sample");
}

ComplexMatrix conjugate_diagonal(const Spectrum& s, const ComplexMatrix& u) {
  Eigen::VectorXd diag(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) diag(static_cast<Eigen::Index>(i)) = s[i];
  ComplexMatrix rho = u * diag.asDiagonal() * u.adjoint();
  return (0.5 * (rho + rho.adjoint())).eval();
}

}  // namespace

ComplexMatrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::PreconditionUnmet, "unitary dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

ComplexMatrix haar_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(dim, rng);
}

ComplexMatrix witness_unitary(int dim, std::uint64_t witness_seed) { return haar_unitary(dim, witness_seed); }

std::vector<std::vector<int>> search_masks(const SystemDims& dims) {
  if (dims.is_bipartite()) return {{0}};
  if (!dims.is_multiqudit()) throw Error(ErrorCode::InvalidDims, "falsify_ap needs bipartite or multiqudit dims");
  const int n = dims.parties();
  std::vector<std::vector<int>> masks;
  for (unsigned bits = 1; bits < (1u << n); ++bits) {
    const int size = __builtin_popcount(bits);
    if (size > n / 2) continue;
    // A half-size subset and its complement give the same spectrum up to transpose.
    if (2 * size == n && !(bits & 1u)) continue;
    std::vector<int> mask;
    for (int q = 0; q < n; ++q) {
      if (bits & (1u << q)) mask.push_back(q);
    }
    masks.push_back(std::move(mask));
  }
  std::sort(masks.begin(), masks.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return masks;
}

double min_pt_eigenvalue(const Spectrum& s, const ComplexMatrix& unitary, const SystemDims& dims,
                         const std::vector<std::vector<int>>& masks) {
  const ComplexMatrix rho = conjugate_diagonal(s, unitary);
  const auto factors = dims.factors();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& mask : masks) {
    best = std::min(best, hermitian_eigenvalues(partial_transpose_matrix(rho, factors, mask))(0));
  }
  return best;
}

FalsifyOutcome falsify_ap(const Spectrum& s, const SystemDims& dims, const FalsifyOptions& options) {
  require_samples(options.samples);
  if (static_cast<int>(s.size()) != dims.total_dim()) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length does not match " + dims.describe());
  }
  const auto masks = search_masks(dims);
  const int dim = dims.total_dim();
  const Best best = parallel_minimum(options.samples, options.threads, [&](int i) {
    const ComplexMatrix u = haar_unitary(dim, derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    return min_pt_eigenvalue(s, u, dims, masks);
  });
  return finish(best, options.samples, options);
}

FalsifyOutcome falsify_sap(const Spectrum& s, int d, int n, const FalsifyOptions& options) {
  require_samples(options.samples);
  const SymmetricPtChecker checker(d, n);
  const int dim = checker.symmetric_dim();
  if (static_cast<int>(s.size()) != dim) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length must equal the symmetric dimension");
  }
  const Best best = parallel_minimum(options.samples, options.threads, [&](int i) {
    const ComplexMatrix u = haar_unitary(dim, derive_seed(options.seed, static_cast<std::uint64_t>(i)));
    const auto eigs = checker.min_eigs(conjugate_diagonal(s, u));
    return *std::min_element(eigs.begin(), eigs.end());
  });
  return finish(best, options.samples, options);
}

}  // namespace abssep
