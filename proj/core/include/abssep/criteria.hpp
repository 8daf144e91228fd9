#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "abssep/maps.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

enum class CriterionId {
  GbBall,
  ReductionMin,
  ReductionMax,
  ChFacet,
  Hierarchy,
  TwoSmallest,
  Ap2x2,
  MultiBall,
  MultiMin,
  MultiMax,
  SymMin,
  SymMax,
  SymFacet,
};

/// Stable identifier used in report JSON ("gb_ball", "hierarchy_k", ...).
std::string_view to_string(CriterionId id) noexcept;
std::optional<CriterionId> criterion_from_string(std::string_view s) noexcept;

/// What a passing verdict certifies. NotAP is certified by a *failing*
/// necessary condition.
enum class Certifies { AS, AP, SAS, SAP, FullySeparable, NotAP };
std::string_view to_string(Certifies c) noexcept;
std::optional<Certifies> certifies_from_string(std::string_view s) noexcept;

enum class Provenance { Analytic, NumericalEvidence, Conjectured };
std::string_view to_string(Provenance p) noexcept;
std::optional<Provenance> provenance_from_string(std::string_view s) noexcept;

struct CriterionVerdict {
  CriterionId id{};
  Certifies certifies{};
  bool passed = false;
  double slack = 0.0;  // raw inequality margin; >= 0 iff passed
  std::vector<int> inputs_used;
  std::optional<int> level;  // hierarchy level kappa
  Provenance provenance = Provenance::Analytic;
};

/// Builds a verdict whose sign convention is consistent: |slack| <= tol is
/// snapped to exactly 0 and counts as passing.
CriterionVerdict make_verdict(CriterionId id, Certifies certifies, double raw_slack, std::vector<int> inputs_used,
                              double tol = kDefaultTolerances.slack);

/// Reduction-map parameter window [alpha_minus, alpha_plus].
struct AlphaBounds {
  double alpha_minus = -1.0;
  double alpha_plus = 2.0;
  Provenance lower_provenance = Provenance::Analytic;
  Provenance upper_provenance = Provenance::Analytic;
};

enum class BallSource { GenericQudit, QubitImproved };
std::string_view to_string(BallSource s) noexcept;

/// Purity-ball parameter: Tr(rho^2) <= 1/(D - A).
struct MultipartiteBallParam {
  double A = 1.0;
  BallSource source = BallSource::GenericQudit;
};

// --- bipartite ---------------------------------------------------------------

/// Purity ball. Bipartite uses A = 1 ("gb_ball", certifies AS); multiqudit uses
/// multipartite_ball_param ("multi_ball", certifies FullySeparable).
CriterionVerdict gurvits_barnum(const Spectrum& s, const SystemDims& dims);

/// (lambda_min >= 1/(D+2), lambda_max <= 1/(D-1)).
std::pair<CriterionVerdict, CriterionVerdict> reduction_min_max(const Spectrum& s, const SystemDims& dims);

/// Necessary AP condition from the leading 2x2 block: 4 l0 l2 - (l1 - l_{D-1})^2 >= 0.
CriterionVerdict ap_necessary_2x2(const Spectrum& s);

/// Ordered-sector facet of the hull of the two reduction simplexes.
CriterionVerdict ch_facet(const Spectrum& s, const SystemDims& dims);

/// Raw facet margin for an arbitrary (unsorted, possibly unnormalized) vector:
/// 3 sum_{i<c} x_(i) + (D + 2 - 3c) x_(c) - sum(x), c = floor((D+1)/3).
double ch_facet_margin(std::span<const double> x);

/// Level-kappa weakening of ch_facet; kappa = floor((D+1)/3) is (D+2) l0 >= 1.
CriterionVerdict hierarchy(const Spectrum& s, const SystemDims& dims, int kappa);

/// Coefficients of hierarchy level kappa (index i -> coefficient), length D.
std::vector<int> hierarchy_coefficients(int dim, int kappa);

/// (D-1) l1 + 3 l0 >= 1.
CriterionVerdict two_smallest(const Spectrum& s, const SystemDims& dims);

// --- multipartite ------------------------------------------------------------

MultipartiteBallParam multipartite_ball_param(int d, int n);

/// Roots alpha*_± = (A ± sqrt(A (D-1)(D-A))) / (D - A - 1) with D = d^N.
AlphaBounds multipartite_alpha_bounds(int d, int n);

std::pair<CriterionVerdict, CriterionVerdict> multipartite_min_max(const Spectrum& s, int d, int n);

/// For rho on d^N with lambda_min >= 1/(d^N + 2): whether the reduction to
/// N - k qudits (first k traced out) has lambda_min >= d^k / (d^N + 2).
/// Throws PreconditionUnmet when rho itself misses its bound.
bool reduced_state_bound_check(const DensityMatrix& rho, int d, int n, int k,
                               const Tolerances& tol = kDefaultTolerances);

// --- symmetric subspace ------------------------------------------------------

/// Generic window [-1/C, 2/C], C = binomial(N, floor(N/2)), overridden by the
/// tight values for (d,N) = (2,2), (2,3), (3,2), (4,2).
AlphaBounds symmetric_alpha_bounds(int d, int n);

/// Window [-1/C, 2/C] without the tight overrides.
AlphaBounds symmetric_generic_alpha_bounds(int n);

std::pair<CriterionVerdict, CriterionVerdict> symmetric_min_max(const Spectrum& s, int d, int n);

/// Linear facet in the ordered sector of the symmetric eigenvalue space.
struct LinearFacet {
  std::vector<long long> coefficients;  // applied to ascending eigenvalues
  long long offset = 0;                 // coefficients . lambda >= offset
};

/// Closed-form symmetric facet; throws UnsupportedDims when no closed form is
/// available (callers fall back to the polytope module).
LinearFacet symmetric_facet_coefficients(int d, int n, bool use_tight);

CriterionVerdict symmetric_ch_facet(const Spectrum& s, int d, int n, bool use_tight);

/// Evaluates an arbitrary ordered-sector facet on a spectrum ("sym_facet").
CriterionVerdict evaluate_sector_facet(const Spectrum& s, const LinearFacet& facet, CriterionId id,
                                       Certifies certifies, Provenance provenance);

/// Reference oracle for two symmetric qubits: sqrt(l0) + sqrt(l1) >= 1 fully
/// characterizes SAS there. Returns the margin.
double two_qubit_sas_margin(const Spectrum& s);

/// Whether symmetric (d, N) criteria certify SAS rather than only SAP.
bool symmetric_certifies_sas(int d, int n) noexcept;

}  // namespace abssep
