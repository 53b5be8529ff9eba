#pragma once

#include <span>
#include <vector>

#include "milnor/linear_change.hpp"
#include "milnor/polynomial.hpp"

namespace milnor {

/// Anti-graded reverse lexicographic order with x1 > ... > xn; the constant
/// monomial is the largest element. This is the order `local_greater`
/// implements and `Polynomial` stores its terms in.
struct LocalOrder {
  static bool greater(const Monomial& a, const Monomial& b) { return local_greater(a, b); }
};

/// Standard basis of an ideal of the local ring Q[x]_(x).
///
/// When `complete`, the leading ideal is generated by the leading monomials
/// of `generators` together with every monomial of degree
/// >= `truncation_degree` (the maximal ideal to that power lies in the ideal).
struct StandardBasis {
  std::vector<Polynomial> generators;
  LocalOrder order;
  int ecart_bound = 64;
  int truncation_degree = 0;
  bool complete = false;

  std::vector<Monomial> leading_monomials() const;
};

class InconclusiveError : public Error {
 public:
  enum class Reason {
    /// The degree cap was reached before finite-dimensionality was proven.
    cap_exhausted,
    /// The standard basis is finished and some variable has no pure power
    /// in the leading ideal: the quotient is infinite dimensional.
    not_zero_dimensional,
  };
  InconclusiveError(Reason reason, StandardBasis partial, const std::string& what)
      : Error(what), reason_(reason), partial_(std::move(partial)) {}
  Reason reason() const { return reason_; }
  const StandardBasis& partial() const { return partial_; }

 private:
  Reason reason_;
  StandardBasis partial_;
};

/// Mora's tangent cone algorithm. Once the leading ideal contains a pure
/// power of every variable, the number of standard monomials bounds the
/// nilpotency index and all further work is done modulo that power of the
/// maximal ideal.
StandardBasis standard_basis(std::span<const Polynomial> ideal_gens, int cap = 64);

/// Fully reduced representative supported on standard monomials.
/// Requires a complete basis. The reduction never multiplies by a unit, so
/// p - normal_form(p) lies in the ideal of the local ring.
Polynomial normal_form(const Polynomial& p, const StandardBasis& sb);

/// Finite-dimensional local algebra Q[x]_(x) / I.
struct LocalAlgebra {
  StandardBasis sb;
  /// Standard monomials, largest first in the local order (so 1 leads).
  std::vector<Monomial> basis;
  std::size_t dim = 0;
  /// mult_tables[i] is multiplication by x_i; column c holds the
  /// coordinates of x_i * basis[c].
  std::vector<RationalMatrix> mult_tables;

  /// Coordinates of the class of p in `basis`.
  RationalVector coordinates(const Polynomial& p) const;
  /// Index of a standard monomial, or -1.
  long index_of(const Monomial& m) const;
};

LocalAlgebra local_algebra(const StandardBasis& sb);

/// Convenience: local algebra of the gradient ideal of g.
LocalAlgebra gradient_algebra(const Polynomial& g, int cap = 64);

}  // namespace milnor
