#include "abssep/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

namespace {

constexpr std::uint64_t kMaxBasisDim = std::uint64_t{1} << 20;

// All occupation vectors of n particles in d modes, descending lexicographic.
void enumerate_occupations(int d, int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const auto mode = current.size();
  if (static_cast<int>(mode) == d - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int take = remaining; take >= 0; --take) {
    current.push_back(take);
    enumerate_occupations(d, remaining - take, current, out);
    current.pop_back();
  }
}

double multinomial(int n, const std::vector<int>& occupation) {
  double log_value = std::lgamma(n + 1.0);
  for (int k : occupation) log_value -= std::lgamma(k + 1.0);
  return std::round(std::exp(log_value));
}

void check_embed_dim(int d, int n) {
  if (ipow(d, n) > static_cast<std::uint64_t>(kMaxEmbedDim)) {
    std::ostringstream os;
    os << "d^N = " << d << "^" << n << " exceeds the dense limit " << kMaxEmbedDim;
    throw Error(ErrorCode::DimensionTooLarge, os.str());
  }
}

// Kronecker product of two isometries (first factor most significant).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

DickeBasis build_dicke_basis(int d, int n) {
  if (d < 2 || n < 1) throw Error(ErrorCode::InvalidDims, "Dicke basis needs d >= 2 and N >= 1");
  if (ipow(d, n) > kMaxBasisDim) throw Error(ErrorCode::DimensionTooLarge, "d^N exceeds 2^20");
  DickeBasis basis;
  basis.d = d;
  basis.n = n;
  std::vector<int> scratch;
  enumerate_occupations(d, n, scratch, basis.occupations);

  std::map<std::vector<int>, Eigen::Index> column_of;
  for (std::size_t j = 0; j < basis.occupations.size(); ++j) {
    column_of.emplace(basis.occupations[j], static_cast<Eigen::Index>(j));
  }
  const auto full = static_cast<Eigen::Index>(ipow(d, n));
  basis.isometry = ComplexMatrix::Zero(full, static_cast<Eigen::Index>(basis.occupations.size()));
  std::vector<double> norm(basis.occupations.size());
  for (std::size_t j = 0; j < norm.size(); ++j) norm[j] = 1.0 / std::sqrt(multinomial(n, basis.occupations[j]));

  std::vector<int> occupation(static_cast<std::size_t>(d));
  for (Eigen::Index idx = 0; idx < full; ++idx) {
    std::fill(occupation.begin(), occupation.end(), 0);
    Eigen::Index rem = idx;
    for (int q = 0; q < n; ++q) {
      ++occupation[static_cast<std::size_t>(rem % d)];
      rem /= d;
    }
    const Eigen::Index col = column_of.at(occupation);
    basis.isometry(idx, col) = norm[static_cast<std::size_t>(col)];
  }
  return basis;
}

DensityMatrix embed(const DensityMatrix& rho_s, const DickeBasis& basis) {
  if (!(rho_s.dims() == SystemDims::symmetric(basis.d, basis.n)) || rho_s.dim() != basis.symmetric_dim()) {
    throw Error(ErrorCode::DimsMismatch, "state does not live on the symmetric subspace of this basis");
  }
  ComplexMatrix full = basis.isometry * rho_s.matrix() * basis.isometry.adjoint();
  return DensityMatrix(std::move(full), SystemDims::multiqudit(basis.d, basis.n), rho_s.normalized());
}

ComplexMatrix split_support(int d, int n, int k) {
  if (k < 1 || k >= n) throw Error(ErrorCode::PreconditionUnmet, "need 1 <= k < N");
  return kron(build_dicke_basis(d, k).isometry, build_dicke_basis(d, n - k).isometry);
}

double symmetric_identity_pt_min_eig(int d, int n, int k) {
  if (n < 2 || k < 1 || k > n / 2) throw Error(ErrorCode::PreconditionUnmet, "need 1 <= k <= floor(N/2)");
  check_embed_dim(d, n);
  const DickeBasis basis = build_dicke_basis(d, n);
  const ComplexMatrix projector = basis.isometry * basis.isometry.adjoint();
  const std::vector<int> factors(static_cast<std::size_t>(n), d);
  std::vector<int> mask(static_cast<std::size_t>(k));
  std::iota(mask.begin(), mask.end(), 0);
  const ComplexMatrix pt = partial_transpose_matrix(projector, factors, mask);
  const ComplexMatrix w = split_support(d, n, k);
  return hermitian_eigenvalues(w.adjoint() * pt * w)(0);
}

SymmetricPtChecker::SymmetricPtChecker(int d, int n) : basis_(), factors_(static_cast<std::size_t>(n), d) {
  if (n < 2) throw Error(ErrorCode::InvalidDims, "symmetric checks need N >= 2");
  check_embed_dim(d, n);
  basis_ = build_dicke_basis(d, n);
  for (int k = 1; k <= n / 2; ++k) supports_.push_back(split_support(d, n, k));
}

std::vector<double> SymmetricPtChecker::min_eigs(const ComplexMatrix& m) const {
  if (m.rows() != basis_.symmetric_dim() || m.cols() != basis_.symmetric_dim()) {
    throw Error(ErrorCode::DimsMismatch, "matrix size differs from the symmetric dimension");
  }
  const ComplexMatrix full = basis_.isometry * m * basis_.isometry.adjoint();
  std::vector<double> out;
  out.reserve(supports_.size());
  std::vector<int> mask;
  for (std::size_t k = 1; k <= supports_.size(); ++k) {
    mask.push_back(static_cast<int>(k) - 1);
    const ComplexMatrix pt = partial_transpose_matrix(full, factors_, mask);
    const ComplexMatrix& w = supports_[k - 1];
    ComplexMatrix compressed = w.adjoint() * pt * w;
    compressed = (0.5 * (compressed + compressed.adjoint())).eval();
    out.push_back(hermitian_eigenvalues(compressed)(0));
  }
  return out;
}

SapReport sap_check_via_embedding(const DensityMatrix& rho_s, int d, int n) {
  if (!(rho_s.dims() == SystemDims::symmetric(d, n))) {
    throw Error(ErrorCode::DimsMismatch, "state dims differ from symmetric(d, N)");
  }
  const SymmetricPtChecker checker(d, n);
  SapReport report;
  report.min_pt_eig = checker.min_eigs(rho_s.matrix());
  for (int k = 1; k <= n / 2; ++k) report.partition_sizes.push_back(k);
  report.overall_min = *std::min_element(report.min_pt_eig.begin(), report.min_pt_eig.end());
  return report;
}

}  // namespace abssep
