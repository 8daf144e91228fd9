#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abssep/maps.hpp"
#include "abssep/spectrum.hpp"

namespace abssep {

/// A convex cone in eigenvalue space, sliced by the trace.
///
/// All three kinds are homogeneous: x is a member iff x / Tr(x) is, so the
/// same descriptor serves normalized spectra and unnormalized parts.
class ConvexSetDescriptor {
 public:
  enum class Kind { MinSimplex, MaxSimplex, Ball };

  /// Entries >= Tr(x) / (D + alpha_plus); alpha_plus > 0.
  static ConvexSetDescriptor min_simplex(int dim, double alpha_plus, std::string id = "min_simplex");
  /// Entries <= Tr(x) / (D - beta) with beta = |alpha_minus| in (0, D).
  static ConvexSetDescriptor max_simplex(int dim, double alpha_minus, std::string id = "max_simplex");
  /// sum x_i^2 <= Tr(x)^2 / (D - A); 0 < A < D.
  static ConvexSetDescriptor ball(int dim, double a, std::string id = "gb_ball");

  const std::string& id() const noexcept { return id_; }
  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double parameter() const noexcept { return param_; }

  /// Threshold at unit trace: lambda_min bound, lambda_max bound or purity bound.
  double threshold() const;

  /// Signed slack at the vector's own trace; >= 0 iff member.
  double membership(std::span<const double> x) const;

  /// Euclidean projection onto the members with trace `trace`.
  std::vector<double> project(std::span<const double> point, double trace) const;

  /// Unit-trace member minimizing direction . a.
  std::vector<double> extreme_point(std::span<const double> direction) const;

  /// Euclidean projection onto the whole cone (trace free).
  void project_cone(std::span<const double> y, std::span<double> out) const;

 private:
  ConvexSetDescriptor(Kind kind, int dim, double param, std::string id);

  Kind kind_;
  int dim_;
  double param_;  // alpha_plus, |alpha_minus| or A
  std::string id_;
};

struct CertificatePart {
  std::string set_id;
  double trace = 0.0;           // weight t_i; the weights sum to 1
  std::vector<double> vector;   // unit-trace member, or zeros when trace is 0
};

struct DecompositionCertificate {
  std::vector<CertificatePart> parts;
  double residual = 0.0;  // || x - sum_i t_i vector_i ||_2
};

struct InfeasibleReport {
  double best_residual = 0.0;
  int iterations = 0;
  std::string diagnostic;
};

struct HullOutcome {
  bool feasible = false;
  /// Best decomposition found; meaningful as a certificate only when feasible.
  DecompositionCertificate certificate;
  std::optional<InfeasibleReport> infeasible;
  int iterations = 0;
};

struct HullOptions {
  double tol = 1e-9;
  int max_iter = 100000;
  int stall_window = 200;
  double stall_ratio = 1e-6;
};

/// Spectrum of a state. Every hull test runs on this vector: the constraints
/// are unitarily invariant and dephasing in the eigenbasis of rho keeps a
/// feasible decomposition feasible.
Spectrum diagonal_reduction(const DensityMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// Decides whether `x` is a convex combination of members of `sets`.
///
/// Minimum-norm-point iteration over extreme points of the sets: each step
/// adds the member minimizing the residual direction and moves to the nearest
/// point of the active atoms' hull. Returns feasible once the residual is at
/// most options.tol. A hyperplane separating x from every set, a stationary
/// residual or a stalled residual yields an advisory InfeasibleReport (the
/// programs are sufficient conditions only); hitting max_iter while the
/// residual still falls throws IterationBudgetExhausted.
HullOutcome hull_membership(std::span<const double> x, const std::vector<ConvexSetDescriptor>& sets,
                            const HullOptions& options = {});
HullOutcome hull_membership(const Spectrum& s, const std::vector<ConvexSetDescriptor>& sets,
                            const HullOptions& options = {});

/// Re-checks a certificate: recombination within `combine_tol` and every part a
/// member within tol.projection.
bool validate_certificate(const DecompositionCertificate& cert, std::span<const double> x,
                          const std::vector<ConvexSetDescriptor>& sets, double combine_tol,
                          const Tolerances& tol = kDefaultTolerances);

/// Min-simplex, max-simplex and purity ball for bipartite and multiqudit dims;
/// the two simplexes only for the symmetric subspace.
std::vector<ConvexSetDescriptor> builtin_sets(const SystemDims& dims);

/// Two simplexes of the two-simplex hull for dimension `dim`.
std::vector<ConvexSetDescriptor> two_simplex_sets(int dim, double alpha_minus = -1.0, double alpha_plus = 2.0);

/// Euclidean projection of y onto {z >= 0, sum z = radius}.
std::vector<double> project_simplex(std::span<const double> y, double radius);

}  // namespace abssep
