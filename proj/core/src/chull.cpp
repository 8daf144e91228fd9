#include "abssep/chull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "abssep/criteria.hpp"
#include "abssep/error.hpp"

namespace abssep {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

DecompositionCertificate make_certificate(const std::vector<std::vector<double>>& parts,
                                          const std::vector<ConvexSetDescriptor>& sets, double residual) {
  DecompositionCertificate cert;
  cert.residual = residual;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    CertificatePart part;
    part.set_id = sets[k].id();
    const double t = std::accumulate(parts[k].begin(), parts[k].end(), 0.0);
    part.vector.assign(parts[k].size(), 0.0);
    if (t > 0.0) {
      part.trace = t;
      for (std::size_t i = 0; i < parts[k].size(); ++i) part.vector[i] = parts[k][i] / t;
    }
    cert.parts.push_back(std::move(part));
  }
  return cert;
}


constexpr double kStationaryGap = 1e-12;
constexpr double kDropWeight = 1e-14;

std::vector<double> recombine(const DecompositionCertificate& cert, std::size_t dim) {
  std::vector<double> total(dim, 0.0);
  for (const auto& part : cert.parts) {
    for (std::size_t i = 0; i < dim; ++i) total[i] += part.trace * part.vector[i];
  }
  return total;
}

// Active atoms of the minimum-norm-point iteration, stored shifted by -x.
struct Corral {
  std::vector<int> set_of;
  std::vector<std::vector<double>> atoms;
  std::vector<Eigen::VectorXd> shifted;
  Eigen::VectorXd weights;

  std::size_t size() const { return atoms.size(); }

  void clear() {
    set_of.clear();
    atoms.clear();
    shifted.clear();
    weights.resize(0);
  }

  void add(int set, std::vector<double> atom, const Eigen::Ref<const Eigen::VectorXd>& target) {
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(atom.data(), target.size()) - target;
    set_of.push_back(set);
    atoms.push_back(std::move(atom));
    shifted.push_back(std::move(y));
    weights.conservativeResize(static_cast<Eigen::Index>(atoms.size()));
    weights(weights.size() - 1) = 0.0;
  }

  bool contains(const std::vector<double>& atom) const {
    return std::any_of(atoms.begin(), atoms.end(), [&](const auto& a) { return distance(a, atom) == 0.0; });
  }

  void erase(std::size_t j) {
    set_of.erase(set_of.begin() + static_cast<std::ptrdiff_t>(j));
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
    shifted.erase(shifted.begin() + static_cast<std::ptrdiff_t>(j));
    const auto n = weights.size();
    const auto jj = static_cast<Eigen::Index>(j);
    weights.segment(jj, n - jj - 1) = weights.tail(n - jj - 1).eval();
    weights.conservativeResize(n - 1);
  }

  Eigen::VectorXd point() const {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(shifted.front().size());
    for (std::size_t j = 0; j < size(); ++j) z += weights(static_cast<Eigen::Index>(j)) * shifted[j];
    return z;
  }

  // Weights of the point of minimum norm in the affine hull.
  Eigen::VectorXd affine_minimizer() const {
    const auto m = static_cast<Eigen::Index>(size());
    Eigen::VectorXd mu = Eigen::VectorXd::Ones(m);
    if (m == 1) return mu;
    Eigen::MatrixXd diffs(shifted.front().size(), m - 1);
    for (Eigen::Index j = 1; j < m; ++j) diffs.col(j - 1) = shifted[static_cast<std::size_t>(j)] - shifted.front();
    const Eigen::VectorXd c = diffs.completeOrthogonalDecomposition().solve(-shifted.front());
    mu(0) = 1.0 - c.sum();
    mu.tail(m - 1) = c;
    return mu;
  }

  // Wolfe's minor cycle: move to the affine minimizer, dropping atoms whose
  // weight would turn negative.
  void reduce() {
    for (std::size_t guard = 0; guard <= atoms.size() + 1 && size() > 1; ++guard) {
      const Eigen::VectorXd mu = affine_minimizer();
      if ((mu.array() > kDropWeight).all()) {
        weights = mu;
        return;
      }
      double theta = 1.0;
      for (Eigen::Index j = 0; j < mu.size(); ++j) {
        if (mu(j) <= kDropWeight) {
          const double step = weights(j) - mu(j);
          theta = std::min(theta, step > 0.0 ? weights(j) / step : 0.0);
        }
      }
      weights = ((1.0 - theta) * weights + theta * mu).eval();
      for (std::size_t j = size(); j-- > 0;) {
        if (weights(static_cast<Eigen::Index>(j)) <= kDropWeight && size() > 1) erase(j);
      }
      weights = (weights.array().max(0.0)).matrix();
      weights /= weights.sum();
    }
  }
};

}  // namespace

Spectrum diagonal_reduction(const DensityMatrix& rho, const Tolerances& tol) { return hermitian_spectrum(rho, tol); }

HullOutcome hull_membership(std::span<const double> x, const std::vector<ConvexSetDescriptor>& sets,
                            const HullOptions& options) {
  if (sets.empty()) throw Error(ErrorCode::PreconditionUnmet, "no convex sets given");
  if (options.tol < 1e-10) throw Error(ErrorCode::PreconditionUnmet, "tolerance must be >= 1e-10");
  const std::size_t dim = x.size();
  for (const auto& set : sets) {
    if (static_cast<std::size_t>(set.dim()) != dim) {
      throw Error(ErrorCode::LengthMismatch, "set " + set.id() + " has a different dimension");
    }
  }
  const std::size_t count = sets.size();

  HullOutcome outcome;
  std::vector<std::vector<double>> parts(count, std::vector<double>(dim, 0.0));

  // A point already inside one set (up to rounding) needs no mixing.
  for (std::size_t k = 0; k < count; ++k) {
    if (sets[k].membership(x) >= -kDefaultTolerances.slack) {
      parts[k].assign(x.begin(), x.end());
      outcome.feasible = true;
      outcome.certificate = make_certificate(parts, sets, 0.0);
      return outcome;
    }
  }

  const Eigen::Map<const Eigen::VectorXd> target(x.data(), static_cast<Eigen::Index>(dim));
  Corral corral;
  {
    // Start from the member nearest to x.
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
      const auto p = sets[k].project(x, 1.0);
      const double d = distance(p, x);
      if (d < nearest) {
        nearest = d;
        corral.clear();
        corral.add(static_cast<int>(k), p, target);
        corral.weights(0) = 1.0;
      }
    }
  }

  const auto finish = [&](double residual) {
    for (auto& part : parts) std::fill(part.begin(), part.end(), 0.0);
    for (std::size_t j = 0; j < corral.size(); ++j) {
      auto& part = parts[static_cast<std::size_t>(corral.set_of[j])];
      for (std::size_t i = 0; i < dim; ++i) part[i] += corral.weights(static_cast<Eigen::Index>(j)) * corral.atoms[j][i];
    }
    return make_certificate(parts, sets, residual);
  };
  const auto infeasible = [&](double residual, int iter, const std::string& why) {
    outcome.certificate = finish(residual);
    std::ostringstream os;
    os << why << "; best residual " << residual << " after " << iter << " iterations";
    outcome.infeasible = InfeasibleReport{residual, iter, os.str()};
    return outcome;
  };

  Eigen::VectorXd z = corral.point();
  double window_start = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    outcome.iterations = iter;
    const double residual = z.norm();
    if (residual <= options.tol) {
      outcome.feasible = true;
      outcome.certificate = finish(residual);
      outcome.certificate.residual = distance(x, recombine(outcome.certificate, dim));
      return outcome;
    }
    if (iter % options.stall_window == 0) {
      if (window_start - residual <= options.stall_ratio * residual) {
        return infeasible(residual, iter, "residual stalled");
      }
      window_start = residual;
    }

    // Member of the union minimizing z . (a - x).
    const std::span<const double> dir(z.data(), dim);
    int best_set = -1;
    std::vector<double> best_atom;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < count; ++k) {
      auto a = sets[k].extreme_point(dir);
      const double value = z.dot(Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(dim)) - target);
      if (value < best_value) {
        best_value = value;
        best_set = static_cast<int>(k);
        best_atom = std::move(a);
      }
    }
    // Every member lies strictly on the far side of a hyperplane through x.
    if (best_value > 0.0) return infeasible(residual, iter, "separating hyperplane found");
    if (residual * residual - best_value <= kStationaryGap * residual * residual || corral.contains(best_atom)) {
      return infeasible(residual, iter, "minimum distance reached");
    }

    corral.add(best_set, std::move(best_atom), target);
    corral.reduce();
    z = corral.point();
  }
  std::ostringstream os;
  os << "residual " << z.norm() << " still decreasing after " << options.max_iter << " iterations";
  throw Error(ErrorCode::IterationBudgetExhausted, os.str());
}

HullOutcome hull_membership(const Spectrum& s, const std::vector<ConvexSetDescriptor>& sets,
                            const HullOptions& options) {
  return hull_membership(s.values(), sets, options);
}

bool validate_certificate(const DecompositionCertificate& cert, std::span<const double> x,
                          const std::vector<ConvexSetDescriptor>& sets, double combine_tol, const Tolerances& tol) {
  std::vector<double> total(x.size(), 0.0);
  double weight = 0.0;
  for (const auto& part : cert.parts) {
    const auto it = std::find_if(sets.begin(), sets.end(), [&](const auto& s) { return s.id() == part.set_id; });
    if (it == sets.end() || part.vector.size() != x.size() || part.trace < 0.0) return false;
    weight += part.trace;
    if (part.trace == 0.0) continue;
    if (it->membership(part.vector) < -tol.projection) return false;
    for (std::size_t i = 0; i < x.size(); ++i) total[i] += part.trace * part.vector[i];
  }
  const double expected = std::accumulate(x.begin(), x.end(), 0.0);
  return distance(x, total) <= combine_tol && std::abs(weight - expected) <= combine_tol * std::sqrt(x.size());
}

std::vector<ConvexSetDescriptor> two_simplex_sets(int dim, double alpha_minus, double alpha_plus) {
  return {ConvexSetDescriptor::min_simplex(dim, alpha_plus), ConvexSetDescriptor::max_simplex(dim, alpha_minus)};
}

std::vector<ConvexSetDescriptor> builtin_sets(const SystemDims& dims) {
  const int dim = dims.total_dim();
  switch (dims.layout()) {
    case Layout::Bipartite:
      return {ConvexSetDescriptor::min_simplex(dim, 2.0), ConvexSetDescriptor::max_simplex(dim, -1.0),
              ConvexSetDescriptor::ball(dim, 1.0)};
    case Layout::Multiqudit: {
      const auto bounds = multipartite_alpha_bounds(dims.local_dim(), dims.parties());
      const auto param = multipartite_ball_param(dims.local_dim(), dims.parties());
      return {ConvexSetDescriptor::min_simplex(dim, bounds.alpha_plus),
              ConvexSetDescriptor::max_simplex(dim, bounds.alpha_minus),
              ConvexSetDescriptor::ball(dim, param.A, "multi_ball")};
    }
    case Layout::Symmetric: {
      const auto bounds = symmetric_alpha_bounds(dims.local_dim(), dims.parties());
      return {ConvexSetDescriptor::min_simplex(dim, bounds.alpha_plus),
              ConvexSetDescriptor::max_simplex(dim, bounds.alpha_minus)};
    }
    case Layout::Single: break;
  }
  throw Error(ErrorCode::InvalidDims, "no built-in sets for " + dims.describe());
}

}  // namespace abssep
