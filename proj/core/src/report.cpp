#include "abssep/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "abssep/error.hpp"
#include "abssep/io.hpp"
#include "abssep/polytope.hpp"

namespace abssep {

namespace {

constexpr std::array<std::pair<Aggregate, std::string_view>, 5> kAggregateNames{{
    {Aggregate::AsCertified, "AS_CERTIFIED"},
    {Aggregate::FullySepCertified, "FULLY_SEP_CERTIFIED"},
    {Aggregate::SapCertified, "SAP_CERTIFIED"},
    {Aggregate::NotAp, "NOT_AP"},
    {Aggregate::Inconclusive, "INCONCLUSIVE"},
}};

// Exact symmetric window used by the ordered-sector fallback.
std::pair<Rational, Rational> symmetric_alpha_rationals(int d, int n, bool use_tight) {
  if (use_tight) {
    if (d == 2 && n == 2) return {Rational(-3, 4), Rational(1)};
    if (d == 2 && n == 3) return {Rational(-2, 3), Rational(2, 3)};
    if (d == 3 && n == 2) return {Rational(-2, 3), Rational(1)};
    if (d == 4 && n == 2) return {Rational(-5, 8), Rational(1)};
  }
  const auto c = static_cast<long long>(binomial(n, n / 2));
  return {Rational(-1, c), Rational(2, c)};
}

void note_provenance(const CriterionVerdict& v, std::vector<std::string>& notes) {
  if (v.provenance == Provenance::Analytic) return;
  notes.push_back(std::string(to_string(v.id)) + " rests on a " + std::string(to_string(v.provenance)) +
                  " bound");
}

HullReport run_hull(const Spectrum& s, const SystemDims& dims, const HullOptions& options,
                    std::vector<std::string>& notes) {
  HullReport report;
  try {
    const auto outcome = hull_membership(s, builtin_sets(dims), options);
    report.feasible = outcome.feasible;
    report.certificate = outcome.certificate;
    if (outcome.infeasible) report.diagnostic = outcome.infeasible->diagnostic;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::IterationBudgetExhausted) throw;
    report.feasible = false;
    report.diagnostic = e.what();
    notes.emplace_back("hull program hit its iteration budget; result is inconclusive");
  }
  if (!report.feasible) notes.emplace_back("hull infeasibility is advisory and does not indicate entanglement");
  return report;
}

bool any_passed(const std::vector<CriterionVerdict>& verdicts, Certifies kind) {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [&](const CriterionVerdict& v) { return v.certifies == kind && v.passed; });
}

template <typename Enum>
Enum enum_field(const nlohmann::json& j, const char* key, std::optional<Enum> (*parse)(std::string_view) noexcept) {
  const auto text = j.at(key).get<std::string>();
  const auto value = parse(text);
  if (!value) throw Error(ErrorCode::ParseError, std::string("unknown ") + key + " '" + text + "'");
  return *value;
}

}  // namespace

std::string_view to_string(Aggregate a) noexcept {
  for (const auto& [e, name] : kAggregateNames) {
    if (e == a) return name;
  }
  return "INCONCLUSIVE";
}

std::optional<Aggregate> aggregate_from_string(std::string_view s) noexcept {
  for (const auto& [e, name] : kAggregateNames) {
    if (name == s) return e;
  }
  return std::nullopt;
}

CriterionVerdict symmetric_facet_verdict(const Spectrum& s, int d, int n, bool use_tight,
                                         std::vector<std::string>* notes) {
  try {
    return symmetric_ch_facet(s, d, n, use_tight);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedDims) throw;
  }
  const auto [lo, hi] = symmetric_alpha_rationals(d, n, use_tight);
  const int dim = SystemDims::symmetric(d, n).total_dim();
  const Facet facet = ordered_sector_facet(dim, lo, hi);
  if (notes) notes->push_back("sym_facet computed by exact ordered-sector enumeration: " + describe(facet));
  const AlphaBounds bounds = use_tight ? symmetric_alpha_bounds(d, n) : symmetric_generic_alpha_bounds(n);
  const Provenance prov = static_cast<int>(bounds.lower_provenance) > static_cast<int>(bounds.upper_provenance)
                              ? bounds.lower_provenance
                              : bounds.upper_provenance;
  const Certifies cert = symmetric_certifies_sas(d, n) ? Certifies::SAS : Certifies::SAP;
  return evaluate_sector_facet(s, to_linear_facet(facet), CriterionId::SymFacet, cert, prov);
}

CertificateReport run_check(const Spectrum& s, const SystemDims& dims, const CheckOptions& options) {
  if (static_cast<int>(s.size()) != dims.total_dim()) {
    throw Error(ErrorCode::LengthMismatch, "spectrum length does not match " + dims.describe());
  }
  CertificateReport report;
  report.spectrum.assign(s.values().begin(), s.values().end());
  report.dims = dims;
  auto& verdicts = report.verdicts;
  auto& notes = report.provenance_notes;

  switch (dims.layout()) {
    case Layout::Bipartite: {
      const int dim = dims.total_dim();
      verdicts.push_back(gurvits_barnum(s, dims));
      const auto [lo, hi] = reduction_min_max(s, dims);
      verdicts.push_back(lo);
      verdicts.push_back(hi);
      verdicts.push_back(ch_facet(s, dims));
      for (int kappa = 1; kappa <= (dim + 1) / 3; ++kappa) verdicts.push_back(hierarchy(s, dims, kappa));
      verdicts.push_back(two_smallest(s, dims));
      const auto ap = ap_necessary_2x2(s);
      verdicts.push_back(ap);
      if (options.run_hull) report.hull_certificate = run_hull(s, dims, options.hull, notes);
      const bool separable = any_passed(verdicts, Certifies::AS) ||
                             (report.hull_certificate && report.hull_certificate->feasible);
      if (separable && !ap.passed) {
        throw InternalInconsistency("spectrum is certified AS but fails the necessary AP condition");
      }
      report.aggregate = separable ? Aggregate::AsCertified : (ap.passed ? Aggregate::Inconclusive : Aggregate::NotAp);
      break;
    }
    case Layout::Multiqudit: {
      const int d = dims.local_dim();
      const int n = dims.parties();
      verdicts.push_back(gurvits_barnum(s, dims));
      const auto [lo, hi] = multipartite_min_max(s, d, n);
      verdicts.push_back(lo);
      verdicts.push_back(hi);
      if (multipartite_ball_param(d, n).source == BallSource::QubitImproved) {
        notes.emplace_back("multi_ball uses the improved qubit purity parameter");
      }
      if (options.run_hull) report.hull_certificate = run_hull(s, dims, options.hull, notes);
      const bool separable = any_passed(verdicts, Certifies::FullySeparable) ||
                             (report.hull_certificate && report.hull_certificate->feasible);
      report.aggregate = separable ? Aggregate::FullySepCertified : Aggregate::Inconclusive;
      break;
    }
    case Layout::Symmetric: {
      const int d = dims.local_dim();
      const int n = dims.parties();
      const auto [lo, hi] = symmetric_min_max(s, d, n);
      verdicts.push_back(lo);
      verdicts.push_back(hi);
      try {
        verdicts.push_back(symmetric_facet_verdict(s, d, n, options.use_tight, &notes));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DimensionTooLarge) throw;
        notes.emplace_back("sym_facet skipped: symmetric dimension above the exact enumeration limit");
      }
      for (const auto& v : verdicts) note_provenance(v, notes);
      if (options.run_hull) report.hull_certificate = run_hull(s, dims, options.hull, notes);
      const bool certified = std::any_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passed; }) ||
                             (report.hull_certificate && report.hull_certificate->feasible);
      report.aggregate = certified ? Aggregate::SapCertified : Aggregate::Inconclusive;
      if (certified && symmetric_certifies_sas(d, n)) {
        notes.emplace_back("for two or three symmetric qubits the passing criteria also certify SAS");
      }
      break;
    }
    case Layout::Single: throw Error(ErrorCode::InvalidDims, "a single system has no separability question");
  }
  return report;
}

nlohmann::json verdict_to_json(const CriterionVerdict& v) {
  nlohmann::json j{{"id", to_string(v.id)},
                   {"certifies", to_string(v.certifies)},
                   {"passed", v.passed},
                   {"slack", v.slack},
                   {"inputs_used", v.inputs_used},
                   {"provenance", to_string(v.provenance)}};
  if (v.level) j["level"] = *v.level;
  return j;
}

CriterionVerdict verdict_from_json(const nlohmann::json& j) {
  CriterionVerdict v;
  v.id = enum_field<CriterionId>(j, "id", criterion_from_string);
  v.certifies = enum_field<Certifies>(j, "certifies", certifies_from_string);
  v.provenance = enum_field<Provenance>(j, "provenance", provenance_from_string);
  v.passed = j.at("passed").get<bool>();
  v.slack = j.at("slack").get<double>();
  v.inputs_used = j.at("inputs_used").get<std::vector<int>>();
  if (j.contains("level")) v.level = j.at("level").get<int>();
  return v;
}

nlohmann::json certificate_to_json(bool feasible, const DecompositionCertificate& cert) {
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : cert.parts) parts.push_back({{"set", p.set_id}, {"trace", p.trace}, {"vector", p.vector}});
  return {{"feasible", feasible}, {"residual", cert.residual}, {"parts", parts}};
}

nlohmann::json report_to_json(const CertificateReport& r) {
  nlohmann::json j;
  j["input"] = {{"spectrum", r.spectrum}, {"dims", dims_to_json(r.dims)}};
  j["verdicts"] = nlohmann::json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back(verdict_to_json(v));
  if (r.hull_certificate) {
    j["hull_certificate"] = certificate_to_json(r.hull_certificate->feasible, r.hull_certificate->certificate);
    if (!r.hull_certificate->diagnostic.empty()) j["hull_certificate"]["diagnostic"] = r.hull_certificate->diagnostic;
  } else {
    j["hull_certificate"] = nullptr;
  }
  j["aggregate"] = to_string(r.aggregate);
  j["provenance_notes"] = r.provenance_notes;
  return j;
}

CertificateReport report_from_json(const nlohmann::json& j) {
  try {
    CertificateReport r;
    r.spectrum = j.at("input").at("spectrum").get<std::vector<double>>();
    r.dims = dims_from_json(j.at("input").at("dims"));
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
    const auto& hull = j.at("hull_certificate");
    if (!hull.is_null()) {
      HullReport h;
      h.feasible = hull.at("feasible").get<bool>();
      h.certificate.residual = hull.at("residual").get<double>();
      for (const auto& p : hull.at("parts")) {
        h.certificate.parts.push_back(
            {p.at("set").get<std::string>(), p.at("trace").get<double>(), p.at("vector").get<std::vector<double>>()});
      }
      if (hull.contains("diagnostic")) h.diagnostic = hull.at("diagnostic").get<std::string>();
      r.hull_certificate = std::move(h);
    }
    r.aggregate = enum_field<Aggregate>(j, "aggregate", aggregate_from_string);
    r.provenance_notes = j.at("provenance_notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string report_to_text(const CertificateReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "dims:      " << r.dims.describe() << "\n";
  os << "spectrum: ";
  for (double v : r.spectrum) os << " " << v;
  os << "\n";
  for (const auto& v : r.verdicts) {
    std::string name(to_string(v.id));
    if (v.level) name += "[" + std::to_string(*v.level) + "]";
    os << "  " << std::left << std::setw(16) << name << (v.passed ? "pass" : "fail") << "  slack " << std::setw(20)
       << v.slack << " certifies " << to_string(v.certifies);
    if (v.provenance != Provenance::Analytic) os << " (" << to_string(v.provenance) << ")";
    os << "\n";
  }
  if (r.hull_certificate) {
    const auto& h = *r.hull_certificate;
    os << "hull:      " << (h.feasible ? "feasible" : "infeasible") << ", residual " << h.certificate.residual << "\n";
    if (h.feasible) {
      for (const auto& p : h.certificate.parts) os << "  part " << p.set_id << " weight " << p.trace << "\n";
    }
  }
  os << "aggregate: " << to_string(r.aggregate) << "\n";
  for (const auto& note : r.provenance_notes) os << "note: " << note << "\n";
  return os.str();
}

nlohmann::json bounds_json(int d, int n, bool symmetric) {
  nlohmann::json j{{"d", d}, {"n", n}};
  if (symmetric) {
    const int dim = SystemDims::symmetric(d, n).total_dim();
    const auto b = symmetric_alpha_bounds(d, n);
    j["symmetric"] = true;
    j["D_S"] = dim;
    j["alpha_minus"] = b.alpha_minus;
    j["alpha_plus"] = b.alpha_plus;
    j["lambda_min_threshold"] = 1.0 / (dim + b.alpha_plus);
    j["lambda_max_threshold"] = 1.0 / (dim - std::abs(b.alpha_minus));
    j["provenance"] = {{"lower", to_string(b.lower_provenance)}, {"upper", to_string(b.upper_provenance)}};
    j["certifies"] = to_string(symmetric_certifies_sas(d, n) ? Certifies::SAS : Certifies::SAP);
    return j;
  }
  const auto dims = SystemDims::multiqudit(d, n);
  const double dim = dims.total_dim();
  const auto ball = multipartite_ball_param(d, n);
  const auto b = multipartite_alpha_bounds(d, n);
  j["symmetric"] = false;
  j["D"] = dims.total_dim();
  j["A"] = ball.A;
  j["ball_source"] = to_string(ball.source);
  j["alpha_minus"] = b.alpha_minus;
  j["alpha_plus"] = b.alpha_plus;
  j["lambda_min_threshold"] = 1.0 / (dim + b.alpha_plus);
  j["lambda_max_threshold"] = 1.0 / (dim - std::abs(b.alpha_minus));
  j["purity_threshold"] = 1.0 / (dim - ball.A);
  j["provenance"] = {{"lower", to_string(b.lower_provenance)}, {"upper", to_string(b.upper_provenance)}};
  j["certifies"] = to_string(Certifies::FullySeparable);
  return j;
}

nlohmann::json bipartite_bounds_json(const SystemDims& dims) {
  if (!dims.is_bipartite()) throw Error(ErrorCode::InvalidDims, "expected bipartite dims");
  const double dim = dims.total_dim();
  return {{"dims", dims_to_json(dims)},
          {"D", dims.total_dim()},
          {"A", 1.0},
          {"alpha_minus", -1.0},
          {"alpha_plus", 2.0},
          {"lambda_min_threshold", 1.0 / (dim + 2.0)},
          {"lambda_max_threshold", 1.0 / (dim - 1.0)},
          {"purity_threshold", 1.0 / (dim - 1.0)},
          {"provenance", {{"lower", "Analytic"}, {"upper", "Analytic"}}},
          {"certifies", "AS"}};
}

}  // namespace abssep
