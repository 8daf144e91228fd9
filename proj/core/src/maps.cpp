#include "abssep/maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, SystemDims dims, bool normalized, const Tolerances& tol)
    : entries_(std::move(entries)), dims_(dims), normalized_(normalized) {
  if (entries_.rows() != entries_.cols() || entries_.rows() != dims_.total_dim()) {
    std::ostringstream os;
    os << "matrix is " << entries_.rows() << "x" << entries_.cols() << ", " << dims_.describe() << " needs "
       << dims_.total_dim();
    throw Error(ErrorCode::DimsMismatch, os.str());
  }
  if (hermiticity_defect(entries_) > tol.hermitian) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  if (normalized_ && std::abs(trace() - 1.0) > tol.trace) {
    throw Error(ErrorCode::TraceError, "state trace differs from 1");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(const SystemDims& dims) {
  const int dim = dims.total_dim();
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), dims);
}

DensityMatrix DensityMatrix::from_spectrum(const Spectrum& s, const ComplexMatrix& unitary, const SystemDims& dims) {
  const auto dim = static_cast<Eigen::Index>(s.size());
  if (unitary.rows() != dim || unitary.cols() != dim) throw Error(ErrorCode::DimsMismatch, "unitary size mismatch");
  Eigen::VectorXd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) diag(i) = s[static_cast<std::size_t>(i)];
  ComplexMatrix rho = unitary * diag.asDiagonal() * unitary.adjoint();
  // Remove rounding asymmetry so the Hermiticity check is about inputs, not arithmetic.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(std::move(rho), dims);
}

DensityMatrix DensityMatrix::from_pure(const Eigen::VectorXcd& psi, const SystemDims& dims) {
  const Eigen::VectorXcd unit = psi.normalized();
  return DensityMatrix(unit * unit.adjoint(), dims);
}

DensityMatrix reduction_map(const DensityMatrix& rho, double alpha) {
  const int dim = rho.dim();
  ComplexMatrix out = rho.trace() * ComplexMatrix::Identity(dim, dim) + alpha * rho.matrix();
  return DensityMatrix(std::move(out), rho.dims(), false);
}

DensityMatrix inverse_reduction_map(const DensityMatrix& sigma, double alpha) {
  if (alpha == 0.0) throw Error(ErrorCode::AlphaZero, "the reduction map is not invertible at alpha = 0");
  const int dim = sigma.dim();
  ComplexMatrix out =
      (sigma.matrix() - sigma.trace() * ComplexMatrix::Identity(dim, dim) / (dim + alpha)) / alpha;
  return DensityMatrix(std::move(out), sigma.dims(), false);
}

std::vector<double> spectrum_level_map(const Spectrum& s, double alpha, bool normalize) {
  const double dim = static_cast<double>(s.size());
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = 1.0 + alpha * s[i];
    if (normalize) out[i] /= dim + alpha;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_mask(std::span<const int> factors, std::span<const int> mask) {
  if (factors.empty()) throw Error(ErrorCode::MaskInvalid, "space has no tensor factorization");
  std::vector<bool> seen(factors.size(), false);
  for (int k : mask) {
    if (k < 0 || static_cast<std::size_t>(k) >= factors.size()) {
      throw Error(ErrorCode::MaskInvalid, "factor index out of range");
    }
    if (seen[static_cast<std::size_t>(k)]) throw Error(ErrorCode::MaskInvalid, "duplicate factor index");
    seen[static_cast<std::size_t>(k)] = true;
  }
}

// Big-endian strides: the first factor is the most significant digit.
std::vector<Eigen::Index> strides_of(std::span<const int> factors) {
  std::vector<Eigen::Index> strides(factors.size());
  Eigen::Index stride = 1;
  for (std::size_t k = factors.size(); k-- > 0;) {
    strides[k] = stride;
    stride *= factors[k];
  }
  return strides;
}

}  // namespace

ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, std::span<const int> factors,
                                       std::span<const int> mask) {
  check_mask(factors, mask);
  const Eigen::Index dim = m.rows();
  const auto strides = strides_of(factors);
  // For every index precompute the part of the index living on masked factors.
  std::vector<Eigen::Index> masked_part(static_cast<std::size_t>(dim), 0);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index part = 0;
    for (int k : mask) {
      const auto kk = static_cast<std::size_t>(k);
      part += ((idx / strides[kk]) % factors[kk]) * strides[kk];
    }
    masked_part[static_cast<std::size_t>(idx)] = part;
  }
  ComplexMatrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Eigen::Index cm = masked_part[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Eigen::Index rm = masked_part[static_cast<std::size_t>(r)];
      // Swap the masked digits of row and column.
      out(r - rm + cm, c - cm + rm) = m(r, c);
    }
  }
  return out;
}

DensityMatrix partial_transpose(const DensityMatrix& rho, std::span<const int> mask) {
  const auto factors = rho.dims().factors();
  return DensityMatrix(partial_transpose_matrix(rho.matrix(), factors, mask), rho.dims(), rho.normalized());
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, std::span<const int> factors, std::span<const int> traced) {
  check_mask(factors, traced);
  std::vector<bool> is_traced(factors.size(), false);
  for (int k : traced) is_traced[static_cast<std::size_t>(k)] = true;

  const auto strides = strides_of(factors);
  std::vector<std::size_t> kept_axes;
  std::vector<std::size_t> traced_axes;
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (is_traced[k]) {
      traced_axes.push_back(k);
      traced_dim *= factors[k];
    } else {
      kept_axes.push_back(k);
      kept_dim *= factors[k];
    }
  }

  // Map (kept index, traced index) -> full index.
  auto offsets = [&](const std::vector<std::size_t>& axes, Eigen::Index count) {
    std::vector<Eigen::Index> out(static_cast<std::size_t>(count));
    for (Eigen::Index i = 0; i < count; ++i) {
      Eigen::Index rem = i;
      Eigen::Index full = 0;
      for (std::size_t a = axes.size(); a-- > 0;) {
        const int f = factors[axes[a]];
        full += (rem % f) * strides[axes[a]];
        rem /= f;
      }
      out[static_cast<std::size_t>(i)] = full;
    }
    return out;
  };
  const auto kept_off = offsets(kept_axes, kept_dim);
  const auto traced_off = offsets(traced_axes, traced_dim);

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index j = 0; j < kept_dim; ++j) {
    for (Eigen::Index i = 0; i < kept_dim; ++i) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        const auto tt = traced_off[static_cast<std::size_t>(t)];
        acc += m(kept_off[static_cast<std::size_t>(i)] + tt, kept_off[static_cast<std::size_t>(j)] + tt);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> traced) {
  const auto factors = rho.dims().factors();
  ComplexMatrix reduced = partial_trace_matrix(rho.matrix(), factors, traced);

  std::vector<int> kept;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (std::find(traced.begin(), traced.end(), static_cast<int>(k)) == traced.end()) kept.push_back(factors[k]);
  }
  if (kept.empty()) throw Error(ErrorCode::MaskInvalid, "cannot trace out every factor");

  SystemDims dims = SystemDims::single(kept.front());
  const bool uniform = std::all_of(kept.begin(), kept.end(), [&](int f) { return f == kept.front(); });
  if (kept.size() == 2 && !(rho.dims().is_multiqudit() && uniform)) {
    dims = SystemDims::bipartite(kept[0], kept[1]);
  } else if (kept.size() >= 2) {
    if (!uniform) throw Error(ErrorCode::InvalidDims, "remaining factors have unequal dimensions");
    dims = SystemDims::multiqudit(kept.front(), static_cast<int>(kept.size()));
  }
  return DensityMatrix(std::move(reduced), dims, rho.normalized());
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Spectrum hermitian_spectrum(const DensityMatrix& rho, const Tolerances& tol) {
  if (hermiticity_defect(rho.matrix()) > tol.hermitian) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return Spectrum::from_values(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())), tol);
}

}  // namespace abssep
