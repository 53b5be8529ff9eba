#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnor/linear_change.hpp"
#include "milnor/oracle.hpp"
#include "milnor/szafraniec.hpp"

namespace milnor {

/// The chosen direction fails an empirical genericity screen.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// Retries or scans ran out (perturbed directions, Le-Iomdine exponents).
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

/// The germ is outside what the polar module handles (dim Sigma_f > 1, n < 2).
class UnsupportedGermError : public Error {
 public:
  using Error::Error;
};

/// Half-branch of the relative polar curve, sampled at decreasing radii.
struct PolarBranch {
  std::vector<Vec> points;
  int sign_fx1 = 0;
  int sign_x1 = 0;
  /// Sign of the Hessian determinant on the branch.
  int sigma = 0;
};

/// Half-branch of Sigma_f minus the origin.
struct CriticalBranch {
  std::vector<Vec> points;
  int sign_x1 = 0;
  /// Local degree of grad f restricted to the slice through the branch.
  long tau = 0;
  /// Same degree from the exact slice germ, when the branch point is rational.
  std::optional<long> tau_exact;
};

struct SliceGammas {
  long pp = 0, pm = 0, mp = 0, mm = 0;
  double offset = 0;
  double level = 0;
  double eta_slice = 0;
  std::vector<std::string> log;
};

struct BranchGammas {
  long plus = 0;
  long minus = 0;
  std::vector<CriticalBranch> branches;
  std::vector<std::string> log;
};

struct IdentityCheck {
  std::string identity;
  long lhs = 0;
  long rhs = 0;
  bool holds = false;
  /// Unenforced checks are reported but never raise.
  bool enforced = true;
};

struct PolarIndexReport {
  std::size_t n = 0;
  /// Primitive integral direction v.
  RationalVector direction;
  long lambda_plus = 0;
  long lambda_minus = 0;
  std::optional<long> gamma_pp, gamma_pm, gamma_mp, gamma_mm;
  std::optional<long> gamma_plus, gamma_minus;
  long chi_fibre_pos = 0;
  long chi_fibre_neg = 0;
  /// chi(Lk{f = 0}); present when dim Sigma_f = 1.
  std::optional<long> chi_link;
  /// 0 when the critical point is isolated, 1 for a curve of critical points.
  int critical_dim = 0;
  std::vector<PolarBranch> branches;
  std::vector<CriticalBranch> critical_branches;
  std::optional<SliceGammas> slices;
  std::vector<IdentityCheck> checks;
  std::vector<std::string> genericity_log;
};

/// Half-branches of Sigma_f minus the origin, sampled on spheres of radii
/// epsilon 2^-j. Empty when the critical point looks isolated.
std::vector<CriticalBranch> sample_critical_locus(const Polynomial& f, const OracleConfig& cfg,
                                                  std::vector<std::string>* log = nullptr);

/// Half-branches of the polar curve of f relative to <v, x>, found on spheres
/// of radii epsilon 2^-j and matched across radii by direction.
std::vector<PolarBranch> sample_polar_curve(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg,
                                            std::vector<std::string>* log = nullptr);

/// (lambda+, lambda-): sums of sigma over branches with f_x1 > 0 and < 0.
std::pair<long, long> lambda_indices(const std::vector<PolarBranch>& branches);

/// The four slice defects for n = 3 from slice Euler characteristics,
/// re-run at half the offset.
SliceGammas gamma_slice_indices(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg);

/// gamma+ and gamma- as sums of tau over the critical half-branches.
BranchGammas gamma_branch_indices(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg);

/// (chi_fibre_neg, chi_fibre_pos) from lambda and the four slice defects.
/// Both expressions per fibre are evaluated; a mismatch throws.
std::pair<long, long> chi_khim_polar(const PolarIndexReport& r, std::vector<IdentityCheck>* checks = nullptr);

/// (chi_fibre_neg, chi_fibre_pos) from lambda+- and gamma+- when Sigma_f is
/// a curve. The printed negative-fibre alternative 1 - lambda+ + gamma+ is
/// reported unenforced; 1 - lambda+ - gamma+ is enforced.
std::pair<long, long> chi_khim_onedim(long lambda_plus, long lambda_minus, long gamma_plus, long gamma_minus,
                                      std::size_t n, std::vector<IdentityCheck>* checks = nullptr);

/// Full polar computation. Starts from `v` (default all ones) and retries up
/// to 16 perturbed rational directions when a screen fails.
PolarIndexReport polar_indices(const Polynomial& f, const std::optional<RationalVector>& v, const OracleConfig& cfg);

struct LeIomdineCase {
  int k = 0;
  Polynomial g;
  IsolationEvidence isolation;
  DegreeReport degree;
  std::optional<long> oracle_degree;
  std::string oracle_note;
  long chi_g_neg = 0;
  long chi_g_pos = 0;
  std::vector<IdentityCheck> checks;
};

struct LeIomdineReport {
  PolarIndexReport polar;
  /// Exponent fitted from |f_x1| against |x1| on the polar curve.
  int n0 = 0;
  std::vector<int> scanned;
  std::vector<LeIomdineCase> cases;
  bool all_pass = false;
};

/// Checks for g = f + <v, x>^k against the polar data of f. Throws
/// ExhaustedError when g fails the isolation screen.
LeIomdineCase le_iomdine_check(const Polynomial& f, const PolarIndexReport& polar, int k, const OracleConfig& cfg,
                               int cap = 64);

/// Scan k upward from max(3, n0 + 2) to 32 for the first k with k and k+1
/// both isolated, or use the given k, and run both parities.
LeIomdineReport le_iomdine(const Polynomial& f, const std::optional<RationalVector>& v, std::optional<int> k,
                           const OracleConfig& cfg, int cap = 64);

/// Best rational approximation with denominator at most max_den.
Rational rationalize(double x, long max_den);

/// Positive primitive integral multiple of a nonzero rational vector.
RationalVector primitive_direction(const RationalVector& v);

}  // namespace milnor
