#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "abssep/criteria.hpp"

namespace abssep {

using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// Parses "p/q", an integer or a finite decimal ("-0.75") exactly.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Half-space normal . x >= offset inside the polytope.
///
/// Normal form: the smallest coefficient is shifted to 0 using the trace-one
/// constraint, then coefficients and offset are scaled to coprime integers.
struct Facet {
  RationalVector normal;
  Rational offset;
  int saturating_vertices = 0;

  friend bool operator==(const Facet& a, const Facet& b) { return a.normal == b.normal && a.offset == b.offset; }
};

/// Rewrites (normal, offset) in normal form; the inequality keeps its meaning
/// on the trace-one hyperplane.
Facet canonical_facet(RationalVector normal, Rational offset);

/// The D permutations of (1 - (D-1)/(D+alpha), 1/(D+alpha), ...), the large
/// entry at position i for vertex i.
std::vector<RationalVector> simplex_vertices(int dim, const Rational& alpha);

/// Facets of conv(vertices) inside the trace-one hyperplane by trying every
/// (D-1)-subset. Cost C(V, D-1) eliminations. Throws DegenerateInput when the
/// vertices do not affinely span the hyperplane.
std::vector<Facet> brute_force_facets(const std::vector<RationalVector>& vertices);

/// All facets of the two-simplex hull with non-increasing coefficients, i.e.
/// the ones binding on the ascending sector.
std::vector<Facet> ordered_sector_candidates(int dim, const Rational& alpha_minus, const Rational& alpha_plus);

/// The single ordered-sector facet; throws SectorAmbiguous (listing every
/// candidate) when more than one binds, DimensionTooLarge for D > 12.
Facet ordered_sector_facet(int dim, const Rational& alpha_minus, const Rational& alpha_plus);

/// normal . x - offset.
Rational facet_slack(const Facet& f, const RationalVector& x);

/// Integer form for the criteria module; throws if not integral.
LinearFacet to_linear_facet(const Facet& f);

std::string describe(const Facet& f);

}  // namespace abssep
