#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnor/elk.hpp"
#include "milnor/weights.hpp"

namespace milnor {

/// g1 = f - omega, g2 = -f - omega with omega = sum x_i^(2 a_i) / (2 a_i).
struct SzafraniecPair {
  int p = 0;
  std::vector<int> a_i;
  Polynomial omega;
  Polynomial g1;
  Polynomial g2;
};

/// Smallest p with 2p > d and every d_i dividing p.
int szafraniec_exponent(const Weights& w);

SzafraniecPair build_pair(const Polynomial& f, const Weights& w);

struct TraceEntry {
  std::string formula;
  std::vector<std::pair<std::string, long>> inputs;
};

struct EulerReport {
  std::size_t n = 0;
  long chi_fibre_pos = 0;
  long chi_fibre_neg = 0;
  std::optional<long> chi_link_le;
  std::optional<long> chi_link_ge;
  std::optional<long> chi_link_eq;
  std::vector<TraceEntry> formula_trace;
  /// Degrees the values were derived from, keyed by germ label.
  std::vector<std::pair<std::string, DegreeReport>> degrees;
};

/// chi of the unit sphere S^(n-1).
long chi_sphere(std::size_t n);

/// Global fibres f^-1(+-1) and links of a weighted homogeneous polynomial
/// from the degrees of grad g1 and grad g2.
EulerReport chi_weighted_homogeneous(const Polynomial& f, const Weights& w, int cap = 64);

/// Milnor fibres and links of a germ with an algebraically isolated
/// critical point, from deg grad f.
EulerReport chi_isolated(const Polynomial& f, int cap = 64);

/// Fibres and links from already known degrees of grad g1, grad g2, where
/// g1 and g2 are +f and -f minus a positive definite correction. Used with
/// g+- = +-f - (sum x_i^2)^d for an externally supplied d.
EulerReport chi_from_pair_degrees(std::size_t n, long deg_g1, long deg_g2);

/// g+- = +-f - (sum x_i^2)^d.
std::pair<Polynomial, Polynomial> radial_pair(const Polynomial& f, int d);

/// Links of {f <= 0}, {f >= 0} recovered from the two fibres by parity of n.
std::pair<long, long> link_relations(long chi_fibre_pos, long chi_fibre_neg, std::size_t n);

/// Parity relations between fibres and links hold for the report.
bool parity_relations_hold(const EulerReport& r);
/// chi(le) + chi(ge) - chi(eq) = chi(S^(n-1)).
bool mayer_vietoris_holds(const EulerReport& r);

}  // namespace milnor
