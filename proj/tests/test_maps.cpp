#include <doctest.h>

#include <cmath>

#include "abssep/error.hpp"
#include "abssep/maps.hpp"
#include "test_support.hpp"

using namespace abssep;
using abssep::testing::make_spectrum;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Naive bipartite partial transpose of the second factor.
ComplexMatrix naive_pt_b(const ComplexMatrix& m, int na, int nb) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l) out(i * nb + j, k * nb + l) = m(i * nb + l, k * nb + j);
  return out;
}

// Naive trace over the second factor.
ComplexMatrix naive_trace_b(const ComplexMatrix& m, int na, int nb) {
  ComplexMatrix out = ComplexMatrix::Zero(na, na);
  for (int i = 0; i < na; ++i)
    for (int k = 0; k < na; ++k)
      for (int j = 0; j < nb; ++j) out(i, k) += m(i * nb + j, k * nb + j);
  return out;
}

Eigen::VectorXcd bell_phi_plus() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return psi;
}

// Columns: the four Bell states, with the singlet last.
ComplexMatrix bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = r;
  u(3, 0) = r;
  u(0, 1) = r;
  u(3, 1) = -r;
  u(1, 2) = r;
  u(2, 2) = r;
  u(1, 3) = r;
  u(2, 3) = -r;
  return u;
}

}  // namespace

TEST_CASE("density matrix validation") {
  const auto dims = SystemDims::bipartite(2, 2);
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = Complex(0.1, 0.0);
  try {
    DensityMatrix(m, dims);
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 4), dims), Error);
  CHECK_NOTHROW(DensityMatrix(ComplexMatrix::Identity(4, 4), dims, false));
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0, dims), Error);
}

TEST_CASE("reduction_map") {
  const auto dims = SystemDims::bipartite(2, 2);
  const auto pure = DensityMatrix::from_pure(bell_phi_plus(), dims);
  const auto out = reduction_map(pure, 2.0);
  CHECK_FALSE(out.normalized());
  CHECK(out.trace() == doctest::Approx(6.0));
  const RealVector ev = hermitian_eigenvalues(out.matrix());
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(3.0));

  const auto mms = DensityMatrix::maximally_mixed(dims);
  CHECK(max_abs(reduction_map(mms, 0.7).matrix() - ComplexMatrix::Identity(4, 4) * (1.0 + 0.7 / 4)) < 1e-15);
  CHECK(max_abs(reduction_map(pure, 0.0).matrix() - ComplexMatrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("inverse_reduction_map") {
  const auto dims = SystemDims::bipartite(2, 2);
  Rng rng(51);
  const auto rho = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, 4), dims);
  const auto back = inverse_reduction_map(reduction_map(rho, 2.0), 2.0);
  CHECK(max_abs(back.matrix() - rho.matrix()) <= 1e-12);

  std::vector<double> v(4, 1.0 / 6);
  v.back() = 0.5;
  const auto sigma = abssep::testing::random_state(rng, Spectrum::from_values(v), dims);
  const RealVector ev = hermitian_eigenvalues(inverse_reduction_map(sigma, 2.0).matrix());
  CHECK(std::abs(ev(0)) < 1e-12);
  CHECK(ev(3) > 0.1);

  const auto mms = DensityMatrix::maximally_mixed(dims);
  CHECK(max_abs(inverse_reduction_map(mms, -0.5).matrix() - ComplexMatrix::Identity(4, 4) / 14.0) < 1e-15);
  try {
    inverse_reduction_map(mms, 0.0);
    FAIL("expected AlphaZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AlphaZero);
  }
}

TEST_CASE("spectrum_level_map") {
  auto out = spectrum_level_map(make_spectrum({0, 0, 0, 1}), 2.0, true);
  CHECK(out[0] == doctest::Approx(1.0 / 6));
  CHECK(out[3] == doctest::Approx(0.5));
  out = spectrum_level_map(make_spectrum({0, 0, 0, 1}), -1.0, true);
  CHECK(out[0] == doctest::Approx(0.0));
  CHECK(out[3] == doctest::Approx(1.0 / 3));
  out = spectrum_level_map(make_spectrum({0.1, 0.2, 0.3, 0.4}), 1e-12, true);
  for (double x : out) CHECK(x == doctest::Approx(0.25));
  out = spectrum_level_map(make_spectrum({0.1, 0.2, 0.3, 0.4}), 2.0, false);
  CHECK(out[0] == doctest::Approx(1.2));
}

TEST_CASE("level map agrees with the matrix map") {
  Rng rng(52);
  for (int n : {2, 3}) {
    const auto dims = SystemDims::bipartite(n, n);
    for (int i = 0; i < 50; ++i) {
      const auto s = abssep::testing::random_spectrum(rng, n * n);
      const auto rho = abssep::testing::random_state(rng, s, dims);
      const double alpha = -0.9 + 0.06 * i;
      RealVector ev = hermitian_eigenvalues(reduction_map(rho, alpha).matrix());
      auto lv = spectrum_level_map(s, alpha, true);
      std::sort(lv.begin(), lv.end());
      for (int k = 0; k < n * n; ++k) CHECK(std::abs(ev(k) / (n * n + alpha) - lv[k]) <= 1e-12);
    }
  }
}

TEST_CASE("unitary equivariance") {
  Rng rng(53);
  for (int n : {2, 3, 4}) {
    const auto dims = SystemDims::bipartite(n, n);
    for (int i = 0; i < 20; ++i) {
      const auto rho = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, n * n), dims);
      const ComplexMatrix u = haar_unitary(n * n, rng);
      const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), dims, true);
      const ComplexMatrix lhs = reduction_map(rotated, 1.5).matrix();
      const ComplexMatrix rhs = u * reduction_map(rho, 1.5).matrix() * u.adjoint();
      CHECK(max_abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("partial_transpose") {
  const auto dims = SystemDims::bipartite(2, 2);
  const std::vector<int> mask_b{1};
  const auto pure = DensityMatrix::from_pure(bell_phi_plus(), dims);
  CHECK(hermitian_eigenvalues(partial_transpose(pure, mask_b).matrix())(0) == doctest::Approx(-0.5));

  Eigen::VectorXcd prod = Eigen::VectorXcd::Zero(4);
  prod(1) = 1.0;
  CHECK(hermitian_eigenvalues(partial_transpose(DensityMatrix::from_pure(prod, dims), mask_b).matrix())(0) >= -1e-15);

  const auto werner = DensityMatrix::from_spectrum(make_spectrum({1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5}), bell_basis(), dims);
  CHECK(std::abs(hermitian_eigenvalues(partial_transpose(werner, mask_b).matrix())(0)) < 1e-14);

  const std::vector<int> bad{2};
  const std::vector<int> dup{0, 0};
  try {
    partial_transpose(pure, bad);
    FAIL("expected MaskInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaskInvalid);
  }
  CHECK_THROWS_AS(partial_transpose(pure, dup), Error);
  const auto sym = DensityMatrix::maximally_mixed(SystemDims::symmetric(2, 2));
  CHECK_THROWS_AS(partial_transpose(sym, mask_b), Error);
}

TEST_CASE("partial transpose properties") {
  Rng rng(54);
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}}) {
    const auto dims = SystemDims::bipartite(n, m);
    const std::vector<int> mask_b{1};
    const std::vector<int> mask_a{0};
    for (int i = 0; i < 40; ++i) {
      const auto rho = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, n * m, 0.3), dims);
      const auto pt = partial_transpose(rho, mask_b);
      CHECK(max_abs(pt.matrix() - naive_pt_b(rho.matrix(), n, m)) == 0.0);
      CHECK(max_abs(partial_transpose(pt, mask_b).matrix() - rho.matrix()) == 0.0);
      CHECK(std::abs(pt.trace() - 1.0) < 1e-12);
      CHECK(hermiticity_defect(pt.matrix()) < 1e-15);
      // Transposing A equals the full transpose of transposing B.
      CHECK(max_abs(partial_transpose(rho, mask_a).matrix() - pt.matrix().transpose()) == 0.0);
      const RealVector ev = hermitian_eigenvalues(pt.matrix());
      CHECK(ev(0) >= -0.5 - 1e-10);
      CHECK(ev(n * m - 1) <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("partial_trace") {
  const auto mms = DensityMatrix::maximally_mixed(SystemDims::multiqudit(2, 3));
  const std::vector<int> first{0};
  const auto red = partial_trace(mms, first);
  CHECK(red.dims() == SystemDims::multiqudit(2, 2));
  CHECK(max_abs(red.matrix() - ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);

  Rng rng(55);
  const ComplexMatrix ua = haar_unitary(2, rng);
  const ComplexMatrix ub = haar_unitary(3, rng);
  Eigen::VectorXd la(2);
  la << 0.3, 0.7;
  Eigen::VectorXd lb(3);
  lb << 0.2, 0.3, 0.5;
  const ComplexMatrix ra = ua * la.cast<Complex>().asDiagonal() * ua.adjoint();
  const ComplexMatrix rb = ub * lb.cast<Complex>().asDiagonal() * ub.adjoint();
  ComplexMatrix prod(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) prod.block(i * 3, k * 3, 3, 3) = ra(i, k) * rb;
  const DensityMatrix rho(prod, SystemDims::bipartite(2, 3));
  const std::vector<int> b{1};
  const auto reduced = partial_trace(rho, b);
  CHECK(reduced.dims() == SystemDims::single(2));
  CHECK(max_abs(reduced.matrix() - ra) < 1e-14);

  for (int i = 0; i < 30; ++i) {
    const auto r = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, 6), SystemDims::bipartite(2, 3));
    const auto t = partial_trace(r, b);
    CHECK(max_abs(t.matrix() - naive_trace_b(r.matrix(), 2, 3)) < 1e-15);
    CHECK(std::abs(t.trace() - 1.0) < 1e-12);
    CHECK(hermitian_eigenvalues(t.matrix())(0) >= -1e-12);
  }
  const std::vector<int> all{0, 1};
  CHECK_THROWS_AS(partial_trace(rho, all), Error);
}

TEST_CASE("linearity under mixing") {
  Rng rng(56);
  const auto dims = SystemDims::bipartite(2, 3);
  const std::vector<int> mask{1};
  const auto r1 = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, 6), dims);
  const auto r2 = abssep::testing::random_state(rng, abssep::testing::random_spectrum(rng, 6), dims);
  const DensityMatrix mix(0.3 * r1.matrix() + 0.7 * r2.matrix(), dims);
  CHECK(max_abs(partial_transpose(mix, mask).matrix() -
                (0.3 * partial_transpose(r1, mask).matrix() + 0.7 * partial_transpose(r2, mask).matrix())) < 1e-15);
  CHECK(max_abs(partial_trace(mix, mask).matrix() -
                (0.3 * partial_trace(r1, mask).matrix() + 0.7 * partial_trace(r2, mask).matrix())) < 1e-15);
}

TEST_CASE("hermitian_spectrum") {
  const auto dims = SystemDims::bipartite(2, 3);
  const auto s = hermitian_spectrum(DensityMatrix::maximally_mixed(dims));
  for (double x : s.values()) CHECK(x == doctest::Approx(1.0 / 6));

  ComplexMatrix diag = ComplexMatrix::Zero(6, 6);
  const std::vector<double> d{0.3, 0.05, 0.2, 0.1, 0.25, 0.1};
  for (int i = 0; i < 6; ++i) diag(i, i) = d[static_cast<std::size_t>(i)];
  const auto ds = hermitian_spectrum(DensityMatrix(diag, dims));
  CHECK(ds[0] == doctest::Approx(0.05));
  CHECK(ds[5] == doctest::Approx(0.3));

  Rng rng(57);
  for (int i = 0; i < 50; ++i) {
    const auto lam = abssep::testing::random_spectrum(rng, 6);
    const auto rho = abssep::testing::random_state(rng, lam, dims);
    const auto out = hermitian_spectrum(rho);
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(out[k] - lam[k]) <= 1e-10);
  }
}
