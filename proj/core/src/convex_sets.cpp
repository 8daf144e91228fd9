#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "abssep/chull.hpp"
#include "abssep/error.hpp"

namespace abssep {

namespace {

double sum_of(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

// Projection onto the polyhedral cone {p : p_i >= g * sum(p)}, 0 < g < 1/D.
//
// KKT: the active set is the k smallest entries of y. Active entries sit at
// g*S, the rest are shifted down by g*M with M the total multiplier; (S, M)
// solve a 2x2 linear system for each k and the right k brackets the
// threshold g*(S + M).
void project_min_cone(std::span<const double> y, double g, std::span<double> out) {
  const auto dim = y.size();
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  const double total = sum_of(y);

  double best_violation = std::numeric_limits<double>::infinity();
  std::size_t best_k = 0;
  double best_s = 0.0;
  double best_m = 0.0;
  double prefix = 0.0;
  for (std::size_t k = 0; k <= dim; ++k) {
    if (k > 0) prefix += y[order[k - 1]];
    const double kg = static_cast<double>(k) * g;
    const double rest = static_cast<double>(dim - k) * g;
    // [-kg, 1-kg; 1-kg, rest] [S; M] = [-prefix; total - prefix]
    const double a11 = -kg, a12 = 1.0 - kg, a21 = 1.0 - kg, a22 = rest;
    const double det = a11 * a22 - a12 * a21;
    const double b1 = -prefix, b2 = total - prefix;
    const double s = (b1 * a22 - a12 * b2) / det;
    const double m = (a11 * b2 - a21 * b1) / det;
    const double theta = g * (s + m);
    double violation = std::max(0.0, -m);
    if (k > 0) violation = std::max(violation, y[order[k - 1]] - theta);
    if (k < dim) violation = std::max(violation, theta - y[order[k]]);
    if (violation < best_violation) {
      best_violation = violation;
      best_k = k;
      best_s = s;
      best_m = m;
      if (violation == 0.0) break;
    }
  }
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t i = order[r];
    out[i] = r < best_k ? g * best_s : y[i] - g * best_m;
  }
}

}  // namespace

std::vector<double> project_simplex(std::span<const double> y, double radius) {
  const auto dim = y.size();
  std::vector<double> out(dim, 0.0);
  if (dim == 0) return out;
  if (radius <= 0.0) return out;
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) shift = candidate;
  }
  for (std::size_t i = 0; i < dim; ++i) out[i] = std::max(y[i] - shift, 0.0);
  return out;
}

ConvexSetDescriptor::ConvexSetDescriptor(Kind kind, int dim, double param, std::string id)
    : kind_(kind), dim_(dim), param_(param), id_(std::move(id)) {}

ConvexSetDescriptor ConvexSetDescriptor::min_simplex(int dim, double alpha_plus, std::string id) {
  if (dim < 2 || !(alpha_plus > 0.0)) throw Error(ErrorCode::PreconditionUnmet, "min simplex needs D >= 2, alpha_+ > 0");
  return ConvexSetDescriptor(Kind::MinSimplex, dim, alpha_plus, std::move(id));
}

ConvexSetDescriptor ConvexSetDescriptor::max_simplex(int dim, double alpha_minus, std::string id) {
  const double beta = std::abs(alpha_minus);
  if (dim < 2 || !(beta > 0.0) || beta >= dim) {
    throw Error(ErrorCode::PreconditionUnmet, "max simplex needs 0 < |alpha_-| < D");
  }
  return ConvexSetDescriptor(Kind::MaxSimplex, dim, beta, std::move(id));
}

ConvexSetDescriptor ConvexSetDescriptor::ball(int dim, double a, std::string id) {
  if (dim < 2 || !(a > 0.0) || a >= dim) throw Error(ErrorCode::PreconditionUnmet, "ball needs 0 < A < D");
  return ConvexSetDescriptor(Kind::Ball, dim, a, std::move(id));
}

double ConvexSetDescriptor::threshold() const {
  switch (kind_) {
    case Kind::MinSimplex: return 1.0 / (dim_ + param_);
    case Kind::MaxSimplex: return 1.0 / (dim_ - param_);
    case Kind::Ball: return 1.0 / (dim_ - param_);
  }
  return 0.0;
}

double ConvexSetDescriptor::membership(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw Error(ErrorCode::LengthMismatch, "vector length differs from set");
  const double trace = sum_of(x);
  switch (kind_) {
    case Kind::MinSimplex: return *std::min_element(x.begin(), x.end()) - trace * threshold();
    case Kind::MaxSimplex: return trace * threshold() - *std::max_element(x.begin(), x.end());
    case Kind::Ball: {
      const double sq = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
      return trace * trace * threshold() - sq;
    }
  }
  return 0.0;
}

std::vector<double> ConvexSetDescriptor::project(std::span<const double> point, double trace) const {
  if (static_cast<int>(point.size()) != dim_) throw Error(ErrorCode::LengthMismatch, "vector length differs from set");
  if (trace < 0.0) throw Error(ErrorCode::PreconditionUnmet, "trace must be nonnegative");
  const auto dim = point.size();
  const double level = trace * threshold();
  std::vector<double> out(dim);
  switch (kind_) {
    case Kind::MinSimplex: {
      std::vector<double> shifted(dim);
      for (std::size_t i = 0; i < dim; ++i) shifted[i] = point[i] - level;
      const auto z = project_simplex(shifted, trace - static_cast<double>(dim) * level);
      for (std::size_t i = 0; i < dim; ++i) out[i] = z[i] + level;
      break;
    }
    case Kind::MaxSimplex: {
      std::vector<double> flipped(dim);
      for (std::size_t i = 0; i < dim; ++i) flipped[i] = level - point[i];
      const auto z = project_simplex(flipped, static_cast<double>(dim) * level - trace);
      for (std::size_t i = 0; i < dim; ++i) out[i] = level - z[i];
      break;
    }
    case Kind::Ball: {
      const double mean_in = sum_of(point) / static_cast<double>(dim);
      const double centre = trace / static_cast<double>(dim);
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < dim; ++i) norm_sq += (point[i] - mean_in) * (point[i] - mean_in);
      const double radius_sq = std::max(0.0, trace * trace * (threshold() - 1.0 / static_cast<double>(dim)));
      const double scale = norm_sq > radius_sq ? std::sqrt(radius_sq / norm_sq) : 1.0;
      for (std::size_t i = 0; i < dim; ++i) out[i] = centre + scale * (point[i] - mean_in);
      break;
    }
  }
  return out;
}

std::vector<double> ConvexSetDescriptor::extreme_point(std::span<const double> direction) const {
  if (static_cast<int>(direction.size()) != dim_) throw Error(ErrorCode::LengthMismatch, "vector length differs from set");
  const auto dim = direction.size();
  const double level = threshold();
  if (kind_ == Kind::Ball) {
    const double mean = sum_of(direction) / static_cast<double>(dim);
    double norm = 0.0;
    for (double v : direction) norm += (v - mean) * (v - mean);
    norm = std::sqrt(norm);
    std::vector<double> out(dim, 1.0 / static_cast<double>(dim));
    if (norm == 0.0) return out;
    const double radius = std::sqrt(std::max(0.0, level - 1.0 / static_cast<double>(dim)));
    for (std::size_t i = 0; i < dim; ++i) out[i] -= radius * (direction[i] - mean) / norm;
    return out;
  }
  // Vertices: every entry at the threshold except one.
  const double peak = 1.0 - static_cast<double>(dim - 1) * level;
  const auto it = kind_ == Kind::MinSimplex ? std::min_element(direction.begin(), direction.end())
                                            : std::max_element(direction.begin(), direction.end());
  std::vector<double> out(dim, level);
  out[static_cast<std::size_t>(it - direction.begin())] = peak;
  return out;
}

void ConvexSetDescriptor::project_cone(std::span<const double> y, std::span<double> out) const {
  const auto dim = y.size();
  switch (kind_) {
    case Kind::MinSimplex: project_min_cone(y, threshold(), out); break;
    case Kind::MaxSimplex: {
      // p_i <= h sum(p)  <=>  (-p)_i >= h sum(-p)
      std::vector<double> neg(dim);
      for (std::size_t i = 0; i < dim; ++i) neg[i] = -y[i];
      project_min_cone(neg, threshold(), out);
      for (auto& v : out) v = -v;
      break;
    }
    case Kind::Ball: {
      // Second-order cone ||w|| <= kappa * tau in the split p = tau u + w, u = 1/sqrt(D).
      const double root_d = std::sqrt(static_cast<double>(dim));
      const double tau = sum_of(y) / root_d;
      const double mean = tau / root_d;
      double w_norm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) w_norm += (y[i] - mean) * (y[i] - mean);
      w_norm = std::sqrt(w_norm);
      const double kappa = std::sqrt(param_ / (static_cast<double>(dim) - param_));
      if (w_norm <= kappa * tau) {
        std::copy(y.begin(), y.end(), out.begin());
      } else if (kappa * w_norm <= -tau) {
        std::fill(out.begin(), out.end(), 0.0);
      } else {
        const double a = (kappa * w_norm + tau) / (kappa * kappa + 1.0);
        const double new_mean = a / root_d;
        const double w_scale = kappa * a / w_norm;
        for (std::size_t i = 0; i < dim; ++i) out[i] = new_mean + w_scale * (y[i] - mean);
      }
      break;
    }
  }
}

}  // namespace abssep
