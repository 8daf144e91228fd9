#include "abssep/polytope.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "abssep/error.hpp"

namespace abssep {

namespace {

using boost::multiprecision::cpp_int;
using Matrix = std::vector<RationalVector>;

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// The unique (up to scale) null vector, or empty when the nullspace is not a line.
RationalVector null_line(Matrix m, std::size_t cols) {
  const auto pivots = row_reduce(m, cols);
  if (pivots.size() + 1 != cols) return {};
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  const auto free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
  RationalVector v(cols, Rational(0));
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_col];
  return v;
}

// Hyperplane n . x = b through `points` with the gauge sum(n) = 0.
bool hyperplane_through(const std::vector<const RationalVector*>& points, std::size_t dim, RationalVector& normal,
                        Rational& offset) {
  Matrix m;
  m.reserve(points.size() + 1);
  for (const auto* p : points) {
    RationalVector row(p->begin(), p->end());
    row.push_back(Rational(-1));
    m.push_back(std::move(row));
  }
  RationalVector gauge(dim, Rational(1));
  gauge.push_back(Rational(0));
  m.push_back(std::move(gauge));
  const auto line = null_line(std::move(m), dim + 1);
  if (line.empty()) return false;
  normal.assign(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(dim));
  offset = line[dim];
  return true;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Orients the hyperplane so every vertex satisfies normal . v >= offset.
// Returns false when vertices lie strictly on both sides.
bool orient_supporting(RationalVector& normal, Rational& offset, const std::vector<RationalVector>& vertices) {
  bool below = false;
  bool above = false;
  for (const auto& v : vertices) {
    const Rational s = dot(normal, v) - offset;
    if (s > 0) above = true;
    if (s < 0) below = true;
    if (above && below) return false;
  }
  if (!above && !below) return false;
  if (below) {
    for (auto& c : normal) c = -c;
    offset = -offset;
  }
  return true;
}

int count_saturating(const Facet& f, const std::vector<RationalVector>& vertices) {
  int count = 0;
  for (const auto& v : vertices) {
    if (facet_slack(f, v) == 0) ++count;
  }
  return count;
}

std::vector<RationalVector> unique_vertices(const std::vector<RationalVector>& vertices) {
  std::vector<RationalVector> out;
  for (const auto& v : vertices) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::size_t affine_rank(const std::vector<RationalVector>& vertices) {
  if (vertices.size() < 2) return 0;
  const std::size_t dim = vertices.front().size();
  Matrix m;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    RationalVector row(dim);
    for (std::size_t c = 0; c < dim; ++c) row[c] = vertices[i][c] - vertices[0][c];
    m.push_back(std::move(row));
  }
  return row_reduce(m, dim).size();
}

bool parse_integer(std::string_view text, cpp_int& out) {
  if (text.empty()) return false;
  std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  out = cpp_int(std::string(text.substr(text.front() == '+' ? 1 : 0)));
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string bad = "not a rational number: '" + std::string(text) + "'";
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int num;
    cpp_int den;
    if (!parse_integer(text.substr(0, slash), num) || !parse_integer(text.substr(slash + 1), den) || den == 0) {
      throw Error(ErrorCode::ParseError, bad);
    }
    return Rational(num, den);
  }
  if (const auto dot_pos = text.find('.'); dot_pos != std::string_view::npos) {
    const bool negative = !text.empty() && text.front() == '-';
    std::string_view whole = text.substr(0, dot_pos);
    std::string_view frac = text.substr(dot_pos + 1);
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw Error(ErrorCode::ParseError, bad);
    cpp_int w = 0;
    cpp_int f = 0;
    if (!whole.empty() && !parse_integer(whole, w)) throw Error(ErrorCode::ParseError, bad);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+' || !parse_integer(frac, f))) {
      throw Error(ErrorCode::ParseError, bad);
    }
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value = Rational(w) + Rational(f, scale);
    return negative ? Rational(-value) : value;
  }
  cpp_int num;
  if (!parse_integer(text, num)) throw Error(ErrorCode::ParseError, bad);
  return Rational(num);
}

std::string to_string(const Rational& r) {
  const cpp_int den = boost::multiprecision::denominator(r);
  std::string out = boost::multiprecision::numerator(r).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

Facet canonical_facet(RationalVector normal, Rational offset) {
  if (normal.empty()) throw Error(ErrorCode::DegenerateInput, "empty normal");
  const Rational shift = *std::min_element(normal.begin(), normal.end());
  for (auto& c : normal) c -= shift;
  offset -= shift;
  if (std::all_of(normal.begin(), normal.end(), [](const Rational& c) { return c == 0; })) {
    throw Error(ErrorCode::DegenerateInput, "normal is parallel to the trace direction");
  }
  cpp_int den_lcm = boost::multiprecision::denominator(offset);
  for (const auto& c : normal) den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
  cpp_int num_gcd = boost::multiprecision::numerator(Rational(offset * den_lcm));
  for (const auto& c : normal) {
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(Rational(c * den_lcm)));
  }
  if (num_gcd < 0) num_gcd = -num_gcd;
  const Rational scale = Rational(den_lcm, num_gcd);
  Facet f;
  f.normal.reserve(normal.size());
  for (const auto& c : normal) f.normal.push_back(c * scale);
  f.offset = offset * scale;
  return f;
}

std::vector<RationalVector> simplex_vertices(int dim, const Rational& alpha) {
  if (dim < 2) throw Error(ErrorCode::PreconditionUnmet, "simplex needs D >= 2");
  const Rational denom = Rational(dim) + alpha;
  if (denom <= 0) throw Error(ErrorCode::PreconditionUnmet, "need D + alpha > 0");
  const Rational small = 1 / denom;
  const Rational big = 1 - Rational(dim - 1) / denom;
  std::vector<RationalVector> out(static_cast<std::size_t>(dim), RationalVector(static_cast<std::size_t>(dim), small));
  for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = big;
  return out;
}

Rational facet_slack(const Facet& f, const RationalVector& x) { return dot(f.normal, x) - f.offset; }

std::vector<Facet> brute_force_facets(const std::vector<RationalVector>& input) {
  if (input.empty()) throw Error(ErrorCode::DegenerateInput, "no vertices");
  const auto vertices = unique_vertices(input);
  const std::size_t dim = vertices.front().size();
  for (const auto& v : vertices) {
    if (v.size() != dim) throw Error(ErrorCode::LengthMismatch, "vertices of unequal length");
  }
  if (dim < 2 || affine_rank(vertices) != dim - 1) {
    throw Error(ErrorCode::DegenerateInput, "vertices do not affinely span the trace-one hyperplane");
  }
  const std::size_t choose = dim - 1;
  std::vector<Facet> facets;
  std::vector<std::size_t> idx(choose);
  for (std::size_t i = 0; i < choose; ++i) idx[i] = i;
  std::vector<const RationalVector*> points(choose);
  const std::size_t n = vertices.size();
  while (true) {
    for (std::size_t i = 0; i < choose; ++i) points[i] = &vertices[idx[i]];
    RationalVector normal;
    Rational offset;
    if (hyperplane_through(points, dim, normal, offset) && orient_supporting(normal, offset, vertices)) {
      Facet f = canonical_facet(std::move(normal), std::move(offset));
      if (std::find(facets.begin(), facets.end(), f) == facets.end()) facets.push_back(std::move(f));
    }
    // Next combination in lexicographic order.
    std::size_t pos = choose;
    while (pos > 0 && idx[pos - 1] == n - choose + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < choose; ++i) idx[i] = idx[i - 1] + 1;
  }
  for (auto& f : facets) f.saturating_vertices = count_saturating(f, vertices);
  return facets;
}

std::vector<Facet> ordered_sector_candidates(int dim, const Rational& alpha_minus, const Rational& alpha_plus) {
  if (dim < 3) throw Error(ErrorCode::PreconditionUnmet, "ordered sector facet needs D >= 3");
  if (dim > 12) throw Error(ErrorCode::DimensionTooLarge, "ordered sector facet is limited to D <= 12");
  const auto lower = simplex_vertices(dim, alpha_minus);  // small entry at position i
  const auto upper = simplex_vertices(dim, alpha_plus);   // large entry at position i
  std::vector<RationalVector> all(lower);
  all.insert(all.end(), upper.begin(), upper.end());
  const auto vertices = unique_vertices(all);
  const auto udim = static_cast<std::size_t>(dim);

  // On the ascending sector the binding facet is saturated by lower-simplex
  // vertices with the small entry in front and upper-simplex vertices with
  // the large entry at the back.
  std::vector<Facet> found;
  for (int b = 0; b <= dim; ++b) {
    for (int t = 0; t <= dim; ++t) {
      if (b + t < dim - 1) continue;
      std::vector<const RationalVector*> points;
      for (int i = 0; i < b; ++i) points.push_back(&lower[static_cast<std::size_t>(i)]);
      for (int i = dim - t; i < dim; ++i) points.push_back(&upper[static_cast<std::size_t>(i)]);
      RationalVector normal;
      Rational offset;
      if (!hyperplane_through(points, udim, normal, offset)) continue;
      if (!orient_supporting(normal, offset, vertices)) continue;
      Facet f = canonical_facet(std::move(normal), std::move(offset));
      if (!std::is_sorted(f.normal.begin(), f.normal.end(), std::greater<>())) continue;
      if (std::find(found.begin(), found.end(), f) == found.end()) found.push_back(std::move(f));
    }
  }
  for (auto& f : found) f.saturating_vertices = count_saturating(f, vertices);
  return found;
}

Facet ordered_sector_facet(int dim, const Rational& alpha_minus, const Rational& alpha_plus) {
  auto found = ordered_sector_candidates(dim, alpha_minus, alpha_plus);
  if (found.size() == 1) return found.front();
  std::ostringstream os;
  os << found.size() << " binding facets for D=" << dim << ", alpha=(" << to_string(alpha_minus) << ", "
     << to_string(alpha_plus) << ")";
  for (const auto& f : found) os << "; " << describe(f);
  throw Error(ErrorCode::SectorAmbiguous, os.str());
}

LinearFacet to_linear_facet(const Facet& f) {
  auto to_ll = [](const Rational& r) {
    if (boost::multiprecision::denominator(r) != 1) throw Error(ErrorCode::PreconditionUnmet, "facet is not integral");
    return boost::multiprecision::numerator(r).convert_to<long long>();
  };
  LinearFacet out;
  for (const auto& c : f.normal) out.coefficients.push_back(to_ll(c));
  out.offset = to_ll(f.offset);
  return out;
}

std::string describe(const Facet& f) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < f.normal.size(); ++i) os << (i ? "," : "") << to_string(f.normal[i]);
  os << ") >= " << to_string(f.offset);
  return os.str();
}

}  // namespace abssep
