#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abssep/chull.hpp"
#include "abssep/criteria.hpp"

namespace abssep {

enum class Aggregate { AsCertified, FullySepCertified, SapCertified, NotAp, Inconclusive };
std::string_view to_string(Aggregate a) noexcept;
std::optional<Aggregate> aggregate_from_string(std::string_view s) noexcept;

/// Raised when a report would claim NOT_AP and a separability certificate at
/// once; that is a bug or a counterexample, never an input problem.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct HullReport {
  bool feasible = false;
  DecompositionCertificate certificate;
  std::string diagnostic;  // stall message when not feasible
};

struct CertificateReport {
  std::vector<double> spectrum;  // ascending
  SystemDims dims = SystemDims::bipartite(2, 2);
  std::vector<CriterionVerdict> verdicts;
  std::optional<HullReport> hull_certificate;
  Aggregate aggregate = Aggregate::Inconclusive;
  std::vector<std::string> provenance_notes;
};

struct CheckOptions {
  bool use_tight = true;  // symmetric facet: tight closed forms where known
  bool run_hull = true;
  HullOptions hull;
};

/// Runs every criterion that applies to `dims`, then the hull program over
/// builtin_sets, and derives the aggregate verdict.
CertificateReport run_check(const Spectrum& s, const SystemDims& dims, const CheckOptions& options = {});

/// Symmetric facet through the closed forms, falling back to the exact
/// ordered-sector computation when no closed form exists.
CriterionVerdict symmetric_facet_verdict(const Spectrum& s, int d, int n, bool use_tight,
                                         std::vector<std::string>* notes = nullptr);

nlohmann::json verdict_to_json(const CriterionVerdict& v);
CriterionVerdict verdict_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(bool feasible, const DecompositionCertificate& cert);
nlohmann::json report_to_json(const CertificateReport& r);
CertificateReport report_from_json(const nlohmann::json& j);
std::string report_to_text(const CertificateReport& r);

/// Thresholds for d^N (or the symmetric subspace when `symmetric`).
nlohmann::json bounds_json(int d, int n, bool symmetric);
/// Thresholds for a bipartite N x M system.
nlohmann::json bipartite_bounds_json(const SystemDims& dims);

}  // namespace abssep
