#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnor/elk.hpp"
#include "milnor/numeric.hpp"

namespace milnor {

struct OracleConfig {
  double epsilon = 0.25;
  /// Regular value offset; derived from the boundary gradient when unset.
  std::optional<double> eta;
  int grid = 24;
  double newton_tol = 1e-12;
  double dedupe_radius = 1e-6;
  int cells = 512;
  /// Points per circle when counting sign changes for slice chi.
  int circle_samples = 8192;
  /// Level-set thickening for slice chi; derived from alpha when unset.
  std::optional<double> eta_slice;
  /// Slice offset a (unit-normal units); epsilon/4 when unset.
  std::optional<double> slice_offset;
  /// Level alpha; derived from the polar values in the slice when unset.
  std::optional<double> slice_level;
  int seed_scales = 6;
  int max_newton_iter = 80;
  int max_shrinks = 6;

  /// Throws Error unless 0 < newton_tol < dedupe_radius < eta < epsilon.
  void validate() const;
};

class OracleError : public Error {
 public:
  enum class Reason { unstable, no_convergence, boundary_zero };
  OracleError(Reason r, const std::string& what) : Error(what), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

struct PreimagePoint {
  Vec x;
  int jacobian_sign = 0;
  double residual = 0;
};

struct NumericDegree {
  long degree = 0;
  double epsilon = 0;
  double eta = 0;
  /// Signed counts at eta/2, eta, 2 eta.
  std::vector<long> stability_counts;
  std::vector<PreimagePoint> points;
  double boundary_min_gradient = 0;
  /// Slope of log min|grad| against log radius; reported, not used.
  double fitted_exponent = 0;
  std::vector<std::string> log;

  DegreeReport to_report() const;
};

/// Degree of grad g at the origin by counting signed preimages of eta e1.
NumericDegree numeric_degree(const ScalarField& g, const OracleConfig& cfg);

struct CriticalPoint {
  Vec x;
  double residual = 0;
  bool nondegenerate = false;
};

/// Zeros of grad g in the ball of radius r found from a lattice of seeds,
/// excluding those within r/64 of the origin.
std::vector<CriticalPoint> find_critical_points(const ScalarField& g, double r, const OracleConfig& cfg);

/// Minimum of |grad g| over the sphere of radius r (sampled, then refined).
double sphere_min_gradient(const ScalarField& g, double r, int per_axis, Vec* argmin = nullptr);

/// Empirical evidence (not a proof) that the origin is an isolated critical
/// point within the ball of radius cfg.epsilon.
struct IsolationEvidence {
  bool isolated = false;
  std::vector<std::pair<double, double>> sphere_minima;  // (radius, min |grad|)
  std::vector<Vec> witnesses;
  std::string note;
};

IsolationEvidence check_isolated(const ScalarField& g, const OracleConfig& cfg);

struct SliceChi {
  long chi = 0;
  /// Same count with doubled sampling density.
  long chi_fine = 0;
  /// Sign changes of f - level along the boundary circle of the slice disk.
  int boundary_crossings = 0;
  /// Singular points of the level curve (slice coordinates) and the number
  /// of half-branches leaving each.
  std::vector<std::pair<Vec, int>> singular;
  double radius = 0;
};

/// chi of C = {f = level} cap {<n, x> = offset} cap B_epsilon for n = 3.
///
/// C is a graph whose vertices are its boundary points and its singular
/// points, so chi(C) = B/2 + sum_p (1 - r_p/2) with B the boundary crossings
/// and r_p the half-branches at p. Singular points are critical points of the
/// slice within eta_slice of the level; r_p is read from sign changes on
/// shrinking circles around p. The count is repeated at doubled sampling
/// (`samples` and 2 `samples` points per circle); the two must agree.
SliceChi slice_chi(const ScalarField& f, const Vec& unit_normal, double offset, double level, double epsilon,
                   int samples, double eta_slice, int grid = 24);

/// chi of the cubical complex of grid cells (inside the slice disk) whose
/// corner values meet [level - eta_slice, level + eta_slice], at `cells` and
/// 2 `cells` per side. Reliable only when every feature of the curve and its
/// complement is wider than a cell.
SliceChi slice_chi_cubical(const ScalarField& f, const Vec& unit_normal, double offset, double level,
                           double epsilon, int cells, double eta_slice);

}  // namespace milnor
