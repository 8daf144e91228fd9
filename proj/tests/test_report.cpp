#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "abssep/error.hpp"
#include "abssep/io.hpp"
#include "abssep/report.hpp"
#include "abssep/scan.hpp"
#include "test_support.hpp"

using namespace abssep;
using abssep::testing::make_spectrum;

namespace {

bool has_passing(const CertificateReport& r, CriterionId id) {
  for (const auto& v : r.verdicts) {
    if (v.id == id && v.passed) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dims parsing and json") {
  CHECK(parse_dims("2x3") == SystemDims::bipartite(2, 3));
  CHECK(parse_dims("3X3") == SystemDims::bipartite(3, 3));
  for (const char* bad : {"2", "x3", "2x", "2x3x4", "ax2"}) CHECK_THROWS_AS(parse_dims(bad), Error);
  for (const auto& dims : {SystemDims::bipartite(2, 3), SystemDims::multiqudit(2, 4), SystemDims::symmetric(3, 2),
                           SystemDims::single(5)}) {
    CHECK(dims_from_json(dims_to_json(dims)) == dims);
  }
  const auto j = nlohmann::json::parse(R"({"type":"bipartite","n":2,"m":3})");
  CHECK(dims_from_json(j) == SystemDims::bipartite(2, 3));
}

TEST_CASE("spectrum input formats") {
  auto in = spectrum_from_json(nlohmann::json::parse(R"({"eigenvalues":[0.5,0.5,0,0],"dims":{"type":"bipartite","n":2,"m":2}})"));
  CHECK(in.values.size() == 4);
  REQUIRE(in.dims.has_value());
  CHECK(*in.dims == SystemDims::bipartite(2, 2));
  in = spectrum_from_json(nlohmann::json::parse("[0.25,0.75]"));
  CHECK_FALSE(in.dims.has_value());

  in = parse_spectrum_text("# comment\n0.1\n0.2  # trailing\n\n0.7\n");
  CHECK(in.values == std::vector<double>{0.1, 0.2, 0.7});
  in = parse_spectrum_text(R"({"eigenvalues":[1,0]})");
  CHECK(in.values == std::vector<double>{1, 0});
  CHECK_THROWS_AS(parse_spectrum_text("0.1\nfoo\n"), Error);

  CHECK(parse_value_list("0.1, 0.2,0.7") == std::vector<double>{0.1, 0.2, 0.7});
  CHECK_THROWS_AS(parse_value_list("0.1,,0.2"), Error);

  const std::string path = "abssep_test_spectrum.txt";
  {
    std::ofstream out(path);
    out << "0.25\n0.25\n0.25\n0.25\n";
  }
  CHECK(load_spectrum_arg(path).values.size() == 4);
  std::remove(path.c_str());
  CHECK(load_spectrum_arg("0.5,0.5").values.size() == 2);
}

TEST_CASE("bipartite aggregates") {
  const auto dims = SystemDims::bipartite(2, 2);
  auto r = run_check(make_spectrum({1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5}), dims);
  CHECK(r.aggregate == Aggregate::AsCertified);
  CHECK(has_passing(r, CriterionId::ReductionMin));

  r = run_check(make_spectrum({0, 0, 0, 1}), dims);
  CHECK(r.aggregate == Aggregate::NotAp);
  REQUIRE(r.hull_certificate.has_value());
  CHECK_FALSE(r.hull_certificate->feasible);

  // Between the tight AP boundary and every sufficient set: passes the 2x2
  // condition yet nothing certifies it.
  r = run_check(make_spectrum({0.052, 0.243, 0.243, 0.462}), dims);
  CHECK(r.aggregate == Aggregate::Inconclusive);

  const auto d9 = SystemDims::bipartite(3, 3);
  r = run_check(make_spectrum({0.08, 0.11, 0.11, 0.11, 0.11, 0.11, 0.11, 0.11, 0.15}), d9);
  CHECK(r.aggregate == Aggregate::AsCertified);
  CHECK(has_passing(r, CriterionId::GbBall));
  CHECK_FALSE(has_passing(r, CriterionId::ReductionMin));
  CHECK_FALSE(has_passing(r, CriterionId::ReductionMax));

  CHECK_THROWS_AS(run_check(Spectrum::maximally_mixed(6), dims), Error);
}

TEST_CASE("NOT_AP and certificates never coexist") {
  Rng rng(91);
  for (int n : {2, 3}) {
    const auto dims = SystemDims::bipartite(n, n);
    for (int i = 0; i < 300; ++i) {
      const auto s = abssep::testing::random_spectrum(rng, n * n, i % 2 == 0 ? 1.0 : 10.0);
      CertificateReport r;
      CHECK_NOTHROW(r = run_check(s, dims));
      const bool any_as = has_passing(r, CriterionId::GbBall) || has_passing(r, CriterionId::ChFacet) ||
                          (r.hull_certificate && r.hull_certificate->feasible);
      CHECK((r.aggregate == Aggregate::AsCertified) == any_as);
      CHECK_FALSE((r.aggregate == Aggregate::NotAp && any_as));
    }
  }
}

TEST_CASE("multiqudit and symmetric aggregates") {
  auto r = run_check(Spectrum::maximally_mixed(8), SystemDims::multiqudit(2, 3));
  CHECK(r.aggregate == Aggregate::FullySepCertified);
  std::vector<double> pure(8, 0.0);
  pure[0] = 1.0;
  r = run_check(Spectrum::from_values(pure), SystemDims::multiqudit(2, 3));
  CHECK(r.aggregate == Aggregate::Inconclusive);

  r = run_check(make_spectrum({0.1, 0.3, 0.3, 0.3}), SystemDims::symmetric(2, 3));
  CHECK(r.aggregate == Aggregate::SapCertified);
  CHECK_FALSE(r.provenance_notes.empty());

  // No closed form for (3, 3): the exact ordered-sector facet is used instead.
  std::vector<std::string> notes;
  const auto v = symmetric_facet_verdict(Spectrum::maximally_mixed(10), 3, 3, true, &notes);
  CHECK(v.passed);
  CHECK(v.id == CriterionId::SymFacet);
  REQUIRE(notes.size() == 1);
}

TEST_CASE("report json round trip") {
  Rng rng(92);
  for (const auto& dims : {SystemDims::bipartite(2, 3), SystemDims::multiqudit(2, 3), SystemDims::symmetric(2, 4)}) {
    for (int i = 0; i < 20; ++i) {
      const auto s = abssep::testing::random_spectrum(rng, dims.total_dim(), 5.0);
      const auto r = run_check(s, dims);
      const auto j = report_to_json(r);
      const auto back = report_from_json(nlohmann::json::parse(j.dump()));
      CHECK(report_to_json(back) == j);
      CHECK(back.aggregate == r.aggregate);
      CHECK(report_to_text(r).find(std::string("aggregate: ") + std::string(to_string(r.aggregate))) !=
            std::string::npos);
    }
  }
  const auto j = report_to_json(run_check(make_spectrum({1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5}), SystemDims::bipartite(2, 2)));
  CHECK(j.at("aggregate") == "AS_CERTIFIED");
  CHECK(j.at("verdicts").at(0).at("id") == "gb_ball");
  CHECK(j.at("hull_certificate").at("parts").at(0).contains("set"));
}

TEST_CASE("bounds") {
  auto j = bounds_json(2, 3, false);
  CHECK(j.at("alpha_plus").get<double>() == doctest::Approx(1.1915).epsilon(1e-4));
  CHECK(j.at("A").get<double>() == doctest::Approx(16.0 / 19));
  j = bounds_json(2, 2, true);
  CHECK(j.at("lambda_min_threshold").get<double>() == doctest::Approx(0.25));
  CHECK(j.at("lambda_max_threshold").get<double>() == doctest::Approx(4.0 / 9));
  j = bounds_json(4, 2, true);
  CHECK(j.at("lambda_min_threshold").get<double>() == doctest::Approx(1.0 / 11));
  CHECK(j.at("lambda_max_threshold").get<double>() == doctest::Approx(8.0 / 75));
  CHECK(j.at("provenance").at("lower") == "Conjectured");
  j = bipartite_bounds_json(SystemDims::bipartite(2, 2));
  CHECK(j.at("lambda_min_threshold").get<double>() == doctest::Approx(1.0 / 6));
}

TEST_CASE("region classification") {
  CHECK(classify_region(make_spectrum({0.092, 0.092, 0.092, 0.092, 0.092, 0.092, 0.092, 0.092, 0.264}).values(), 9) ==
        RegionClass::SimplexOnly);
  CHECK(classify_region(Spectrum::maximally_mixed(9).values(), 9) == RegionClass::Both);
  CHECK(classify_region(make_spectrum({0.08, 0.11, 0.11, 0.11, 0.11, 0.11, 0.11, 0.11, 0.15}).values(), 9) ==
        RegionClass::BallOnly);
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  CHECK(classify_region(pure, 9) == RegionClass::Undetected);
  for (auto c : {RegionClass::BallOnly, RegionClass::SimplexOnly, RegionClass::Both, RegionClass::HullOnly,
                 RegionClass::Undetected}) {
    CHECK(region_class_from_string(to_string(c)) == c);
  }
}

TEST_CASE("region scan") {
  ScanOptions opts;
  opts.samples = 2000;
  opts.resolution = 1;
  opts.seed = 4;
  const auto rows = region_scan(SystemDims::bipartite(2, 2), opts);
  CHECK(rows.size() == 2000);
  // At D = 4 the min simplex sits inside the ball, so the hull adds nothing.
  for (const auto& r : rows) {
    CHECK(r.region != RegionClass::HullOnly);
    CHECK(r.region != RegionClass::SimplexOnly);
  }
  opts.resolution = 3;
  opts.samples = 100;
  opts.threads = 1;
  const auto a = region_scan(SystemDims::bipartite(3, 3), opts);
  opts.threads = 3;
  const auto b = region_scan(SystemDims::bipartite(3, 3), opts);
  REQUIRE(a.size() == 300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].purity == b[i].purity);
    CHECK(a[i].region == b[i].region);
  }
  std::ostringstream os;
  write_scan_csv(os, a);
  const auto text = os.str();
  CHECK(text.rfind("purity,lambda_min,class\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 301);
  CHECK_THROWS_AS(region_scan(SystemDims::multiqudit(2, 3), opts), Error);
}
