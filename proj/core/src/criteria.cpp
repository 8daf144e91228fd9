#include "abssep/criteria.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

namespace {

constexpr std::array<std::pair<CriterionId, std::string_view>, 13> kCriterionNames{{
    {CriterionId::GbBall, "gb_ball"},
    {CriterionId::ReductionMin, "reduction_min"},
    {CriterionId::ReductionMax, "reduction_max"},
    {CriterionId::ChFacet, "ch_facet"},
    {CriterionId::Hierarchy, "hierarchy_k"},
    {CriterionId::TwoSmallest, "two_smallest"},
    {CriterionId::Ap2x2, "ap_2x2"},
    {CriterionId::MultiBall, "multi_ball"},
    {CriterionId::MultiMin, "multi_min"},
    {CriterionId::MultiMax, "multi_max"},
    {CriterionId::SymMin, "sym_min"},
    {CriterionId::SymMax, "sym_max"},
    {CriterionId::SymFacet, "sym_facet"},
}};

constexpr std::array<std::pair<Certifies, std::string_view>, 6> kCertifiesNames{{
    {Certifies::AS, "AS"},
    {Certifies::AP, "AP"},
    {Certifies::SAS, "SAS"},
    {Certifies::SAP, "SAP"},
    {Certifies::FullySeparable, "FullySeparable"},
    {Certifies::NotAP, "NotAP"},
}};

constexpr std::array<std::pair<Provenance, std::string_view>, 3> kProvenanceNames{{
    {Provenance::Analytic, "Analytic"},
    {Provenance::NumericalEvidence, "NumericalEvidence"},
    {Provenance::Conjectured, "Conjectured"},
}};

template <typename Enum, std::size_t N>
std::string_view lookup_name(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
  for (const auto& [e, name] : table) {
    if (e == value) return name;
  }
  return "unknown";
}

template <typename Enum, std::size_t N>
std::optional<Enum> lookup_value(const std::array<std::pair<Enum, std::string_view>, N>& table,
                                 std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  return std::nullopt;
}

std::vector<int> index_range(int first, int last_inclusive) {
  std::vector<int> out;
  for (int i = first; i <= last_inclusive; ++i) out.push_back(i);
  return out;
}

int facet_pivot(int dim) { return (dim + 1) / 3; }

void require_factorized(const SystemDims& dims, std::string_view what) {
  if (dims.is_symmetric()) {
    throw Error(ErrorCode::SymmetricDimsUnsupported, std::string(what) + " is not claimed on the symmetric subspace");
  }
  if (dims.is_single()) throw Error(ErrorCode::InvalidDims, std::string(what) + " needs a composite system");
}

void require_length(const Spectrum& s, const SystemDims& dims) {
  if (static_cast<int>(s.size()) != dims.total_dim()) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length does not match " + dims.describe());
  }
}

Provenance weaker(Provenance a, Provenance b) {
  return static_cast<int>(a) > static_cast<int>(b) ? a : b;
}

}  // namespace

std::string_view to_string(CriterionId id) noexcept { return lookup_name(kCriterionNames, id); }
std::optional<CriterionId> criterion_from_string(std::string_view s) noexcept {
  return lookup_value(kCriterionNames, s);
}
std::string_view to_string(Certifies c) noexcept { return lookup_name(kCertifiesNames, c); }
std::optional<Certifies> certifies_from_string(std::string_view s) noexcept {
  return lookup_value(kCertifiesNames, s);
}
std::string_view to_string(Provenance p) noexcept { return lookup_name(kProvenanceNames, p); }
std::optional<Provenance> provenance_from_string(std::string_view s) noexcept {
  return lookup_value(kProvenanceNames, s);
}

std::string_view to_string(BallSource s) noexcept {
  return s == BallSource::QubitImproved ? "QubitImproved" : "GenericQudit";
}

CriterionVerdict make_verdict(CriterionId id, Certifies certifies, double raw_slack, std::vector<int> inputs_used,
                              double tol) {
  CriterionVerdict v;
  v.id = id;
  v.certifies = certifies;
  v.slack = std::abs(raw_slack) <= tol ? 0.0 : raw_slack;
  v.passed = v.slack >= 0.0;
  v.inputs_used = std::move(inputs_used);
  return v;
}

CriterionVerdict gurvits_barnum(const Spectrum& s, const SystemDims& dims) {
  require_factorized(dims, "the purity ball");
  require_length(s, dims);
  const int dim = static_cast<int>(s.size());
  if (dims.is_multiqudit()) {
    const auto param = multipartite_ball_param(dims.local_dim(), dims.parties());
    return make_verdict(CriterionId::MultiBall, Certifies::FullySeparable, 1.0 / (dim - param.A) - s.purity(),
                        index_range(0, dim - 1));
  }
  return make_verdict(CriterionId::GbBall, Certifies::AS, 1.0 / (dim - 1.0) - s.purity(), index_range(0, dim - 1));
}

std::pair<CriterionVerdict, CriterionVerdict> reduction_min_max(const Spectrum& s, const SystemDims& dims) {
  require_factorized(dims, "the reduction criterion");
  require_length(s, dims);
  const int dim = static_cast<int>(s.size());
  return {make_verdict(CriterionId::ReductionMin, Certifies::AS, s.min() - 1.0 / (dim + 2.0), {0}),
          make_verdict(CriterionId::ReductionMax, Certifies::AS, 1.0 / (dim - 1.0) - s.max(), {dim - 1})};
}

CriterionVerdict ap_necessary_2x2(const Spectrum& s) {
  if (s.size() < 4) throw Error(ErrorCode::LengthMismatch, "the 2x2 AP block needs at least 4 eigenvalues");
  const int last = static_cast<int>(s.size()) - 1;
  const double off = s[1] - s[static_cast<std::size_t>(last)];
  CriterionVerdict v =
      make_verdict(CriterionId::Ap2x2, Certifies::NotAP, 4.0 * s[0] * s[2] - off * off, {0, 1, 2, last});
  v.passed = v.passed && s[0] >= 0.0;
  return v;
}

double ch_facet_margin(std::span<const double> x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const int dim = static_cast<int>(sorted.size());
  const int c = facet_pivot(dim);
  double lhs = 0.0;
  for (int i = 0; i < c; ++i) lhs += 3.0 * sorted[static_cast<std::size_t>(i)];
  lhs += static_cast<double>(dim + 2 - 3 * c) * sorted[static_cast<std::size_t>(c)];
  return lhs - std::accumulate(sorted.begin(), sorted.end(), 0.0);
}

CriterionVerdict ch_facet(const Spectrum& s, const SystemDims& dims) {
  require_factorized(dims, "the two-simplex facet");
  require_length(s, dims);
  const int dim = static_cast<int>(s.size());
  const auto coeffs = hierarchy_coefficients(dim, 0);
  double lhs = 0.0;
  for (int i = 0; i < dim; ++i) lhs += coeffs[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
  return make_verdict(CriterionId::ChFacet, Certifies::AS, lhs - 1.0, index_range(0, facet_pivot(dim)));
}

std::vector<int> hierarchy_coefficients(int dim, int kappa) {
  const int c = facet_pivot(dim);
  if (kappa < 0 || kappa > c) {
    std::ostringstream os;
    os << "kappa = " << kappa << " outside [0, " << c << "]";
    throw Error(ErrorCode::KappaOutOfRange, os.str());
  }
  // Each substitution folds the pivot coefficient into the next-lower index;
  // the coefficient total stays D + 2.
  const int top = c - kappa;
  std::vector<int> coeffs(static_cast<std::size_t>(dim), 0);
  for (int i = 0; i < top; ++i) coeffs[static_cast<std::size_t>(i)] = 3;
  coeffs[static_cast<std::size_t>(top)] = dim + 2 - 3 * top;
  return coeffs;
}

CriterionVerdict hierarchy(const Spectrum& s, const SystemDims& dims, int kappa) {
  require_factorized(dims, "the facet hierarchy");
  require_length(s, dims);
  const int dim = static_cast<int>(s.size());
  const auto coeffs = hierarchy_coefficients(dim, kappa);
  double lhs = 0.0;
  for (int i = 0; i < dim; ++i) lhs += coeffs[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
  auto v = make_verdict(CriterionId::Hierarchy, Certifies::AS, lhs - 1.0, index_range(0, facet_pivot(dim) - kappa));
  v.level = kappa;
  return v;
}

CriterionVerdict two_smallest(const Spectrum& s, const SystemDims& dims) {
  require_factorized(dims, "the two-eigenvalue criterion");
  require_length(s, dims);
  const double dim = static_cast<double>(s.size());
  return make_verdict(CriterionId::TwoSmallest, Certifies::AS, (dim - 1.0) * s[1] + 3.0 * s[0] - 1.0, {0, 1});
}

MultipartiteBallParam multipartite_ball_param(int d, int n) {
  if (d < 2 || n < 2) throw Error(ErrorCode::InvalidDims, "multipartite ball needs d >= 2, N >= 2");
  if (d == 2 && n >= 3) {
    constexpr double beta = 54.0 / 17.0;
    const double two_n = std::ldexp(1.0, n);
    return {beta * two_n / (beta + std::pow(3.0, n)), BallSource::QubitImproved};
  }
  return {std::ldexp(1.0, 2 - n), BallSource::GenericQudit};
}

AlphaBounds multipartite_alpha_bounds(int d, int n) {
  const double a = multipartite_ball_param(d, n).A;
  const double dim = static_cast<double>(ipow(d, n));
  const double root = std::sqrt(a * (dim - 1.0) * (dim - a));
  const double denom = dim - a - 1.0;
  AlphaBounds b;
  b.alpha_plus = (a + root) / denom;
  b.alpha_minus = (a - root) / denom;
  return b;
}

std::pair<CriterionVerdict, CriterionVerdict> multipartite_min_max(const Spectrum& s, int d, int n) {
  const double dim = static_cast<double>(ipow(d, n));
  if (static_cast<double>(s.size()) != dim) throw Error(ErrorCode::LengthMismatch, "spectrum length must be d^N");
  const auto bounds = multipartite_alpha_bounds(d, n);
  const int last = static_cast<int>(s.size()) - 1;
  return {make_verdict(CriterionId::MultiMin, Certifies::FullySeparable, s.min() - 1.0 / (dim + bounds.alpha_plus),
                       {0}),
          make_verdict(CriterionId::MultiMax, Certifies::FullySeparable,
                       1.0 / (dim - std::abs(bounds.alpha_minus)) - s.max(), {last})};
}

bool reduced_state_bound_check(const DensityMatrix& rho, int d, int n, int k, const Tolerances& tol) {
  if (!(rho.dims() == SystemDims::multiqudit(d, n))) throw Error(ErrorCode::DimsMismatch, "rho must live on d^N");
  if (k < 1 || k >= n) throw Error(ErrorCode::PreconditionUnmet, "need 1 <= k < N");
  const double dim = static_cast<double>(ipow(d, n));
  const double own_min = hermitian_eigenvalues(rho.matrix())(0);
  if (own_min < 1.0 / (dim + 2.0) - tol.slack) {
    throw Error(ErrorCode::PreconditionUnmet, "lambda_min(rho) is below 1/(d^N + 2)");
  }
  std::vector<int> traced(static_cast<std::size_t>(k));
  std::iota(traced.begin(), traced.end(), 0);
  const auto factors = rho.dims().factors();
  const ComplexMatrix reduced = partial_trace_matrix(rho.matrix(), factors, traced);
  const double reduced_min = hermitian_eigenvalues(reduced)(0);
  return reduced_min >= static_cast<double>(ipow(d, k)) / (dim + 2.0) - tol.slack;
}

AlphaBounds symmetric_generic_alpha_bounds(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidDims, "symmetric bounds need N >= 2");
  const double c = static_cast<double>(binomial(n, n / 2));
  AlphaBounds b;
  b.alpha_minus = -1.0 / c;
  b.alpha_plus = 2.0 / c;
  return b;
}

AlphaBounds symmetric_alpha_bounds(int d, int n) {
  if (d < 2) throw Error(ErrorCode::InvalidDims, "symmetric bounds need d >= 2");
  AlphaBounds b = symmetric_generic_alpha_bounds(n);
  if (d == 2 && n == 2) {
    b.alpha_minus = -3.0 / 4.0;
    b.alpha_plus = 1.0;
  } else if (d == 2 && n == 3) {
    b.alpha_minus = -2.0 / 3.0;
    b.alpha_plus = 2.0 / 3.0;
    b.lower_provenance = Provenance::NumericalEvidence;
  } else if (d == 3 && n == 2) {
    b.alpha_minus = -2.0 / 3.0;
    b.alpha_plus = 1.0;
  } else if (d == 4 && n == 2) {
    b.alpha_minus = -5.0 / 8.0;
    b.alpha_plus = 1.0;
    b.lower_provenance = Provenance::Conjectured;
  }
  return b;
}

bool symmetric_certifies_sas(int d, int n) noexcept { return d == 2 && (n == 2 || n == 3); }

std::pair<CriterionVerdict, CriterionVerdict> symmetric_min_max(const Spectrum& s, int d, int n) {
  const int dim = SystemDims::symmetric(d, n).total_dim();
  if (static_cast<int>(s.size()) != dim) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length must equal the symmetric dimension");
  }
  const auto bounds = symmetric_alpha_bounds(d, n);
  const Certifies cert = symmetric_certifies_sas(d, n) ? Certifies::SAS : Certifies::SAP;
  auto lo = make_verdict(CriterionId::SymMin, cert, s.min() - 1.0 / (dim + bounds.alpha_plus), {0});
  lo.provenance = bounds.upper_provenance;
  auto hi = make_verdict(CriterionId::SymMax, cert, 1.0 / (dim - std::abs(bounds.alpha_minus)) - s.max(), {dim - 1});
  hi.provenance = bounds.lower_provenance;
  return {lo, hi};
}

LinearFacet symmetric_facet_coefficients(int d, int n, bool use_tight) {
  if (use_tight) {
    if (d == 2 && n == 2) return {{7, 5, 0}, 3};
    if (d == 2 && n == 3) return {{6, 6, 2, 0}, 3};
    if (d == 3 && n == 2) return {{5, 5, 4, 0, 0, 0}, 2};
    if (d == 4 && n == 2) return {{13, 13, 13, 13, 3, 0, 0, 0, 0, 0}, 5};
  }
  if (d != 2) {
    std::ostringstream os;
    os << "no closed-form symmetric facet for d=" << d << ", N=" << n << (use_tight ? " (tight)" : " (generic)");
    throw Error(ErrorCode::UnsupportedDims, os.str());
  }
  // N symmetric qubits, generic window; D_S = N + 1.
  const long long c = static_cast<long long>(binomial(n, n / 2));
  const int pivot = (n + 1) / 3;
  LinearFacet f;
  f.coefficients.assign(static_cast<std::size_t>(n + 1), 0);
  for (int i = 0; i < pivot; ++i) f.coefficients[static_cast<std::size_t>(i)] = 3 * c;
  f.coefficients[static_cast<std::size_t>(pivot)] = c * (n + 1 - 3 * pivot) + 2;
  f.offset = c;
  const long long g = std::accumulate(f.coefficients.begin(), f.coefficients.end(), f.offset,
                                      [](long long acc, long long v) { return std::gcd(acc, v); });
  for (auto& v : f.coefficients) v /= g;
  f.offset /= g;
  return f;
}

CriterionVerdict evaluate_sector_facet(const Spectrum& s, const LinearFacet& facet, CriterionId id,
                                       Certifies certifies, Provenance provenance) {
  if (facet.coefficients.size() != s.size()) throw Error(ErrorCode::LengthMismatch, "facet length mismatch");
  double lhs = 0.0;
  std::vector<int> used;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (facet.coefficients[i] != 0) {
      lhs += static_cast<double>(facet.coefficients[i]) * s[i];
      used.push_back(static_cast<int>(i));
    }
  }
  auto v = make_verdict(id, certifies, lhs - static_cast<double>(facet.offset), std::move(used));
  v.provenance = provenance;
  return v;
}

CriterionVerdict symmetric_ch_facet(const Spectrum& s, int d, int n, bool use_tight) {
  const int dim = SystemDims::symmetric(d, n).total_dim();
  if (static_cast<int>(s.size()) != dim) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length must equal the symmetric dimension");
  }
  const auto facet = symmetric_facet_coefficients(d, n, use_tight);
  const AlphaBounds bounds = use_tight ? symmetric_alpha_bounds(d, n) : symmetric_generic_alpha_bounds(n);
  const Certifies cert = symmetric_certifies_sas(d, n) ? Certifies::SAS : Certifies::SAP;
  return evaluate_sector_facet(s, facet, CriterionId::SymFacet, cert,
                               weaker(bounds.lower_provenance, bounds.upper_provenance));
}

double two_qubit_sas_margin(const Spectrum& s) {
  if (s.size() != 3) throw Error(ErrorCode::LengthMismatch, "two symmetric qubits have 3 eigenvalues");
  return std::sqrt(s[0]) + std::sqrt(s[1]) - 1.0;
}

}  // namespace abssep
