#pragma once

#include <optional>
#include <string>
#include <vector>

#include "milnor/local_algebra.hpp"

namespace milnor {

/// Linear form on a local algebra, in the coordinates of its basis.
struct LinearFunctional {
  RationalVector coefficients;

  Rational operator()(const RationalVector& v) const;
};

struct Inertia {
  long n_plus = 0;
  long n_minus = 0;
  long n_zero = 0;

  long signature() const { return n_plus - n_minus; }
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// The bilinear form B(a, b) = phi(a b) and its inertia.
struct SignatureCertificate {
  RationalMatrix form;
  Inertia inertia;
  /// Basis monomial phi extracts (for the default functional).
  std::optional<Monomial> functional_monomial;
  LinearFunctional functional;
  /// Class of the Hessian determinant in basis coordinates.
  RationalVector hessian_class;
};

enum class DegreeMethod { elk_exact, numeric_oracle };
std::string to_string(DegreeMethod m);

struct DegreeReport {
  long degree = 0;
  DegreeMethod method = DegreeMethod::elk_exact;
  std::size_t algebra_dim = 0;
  std::optional<SignatureCertificate> certificate;
  std::vector<std::string> evidence;
};

/// Raised when phi(a b) is degenerate; the ELK hypotheses are then violated.
class DegenerateFormError : public Error {
 public:
  using Error::Error;
};

/// Coefficient extraction at the local-smallest monomial in the support of
/// `hessian_class`, with the sign making phi(hessian_class) > 0.
LinearFunctional choose_functional(const LocalAlgebra& a, const RationalVector& hessian_class,
                                   Monomial* chosen = nullptr);

/// Symmetric matrix of phi(basis[i] * basis[j]).
RationalMatrix bilinear_form(const LocalAlgebra& a, const LinearFunctional& phi);

/// Inertia by symmetric elimination with rational pivots; a zero diagonal
/// with a nonzero partner entry is handled as a hyperbolic 2x2 block.
Inertia exact_signature(const RationalMatrix& b);

/// Signature certificate for a given functional. Throws DegenerateFormError
/// when the form has a kernel or when phi(J) <= 0.
SignatureCertificate elk_signature(const LocalAlgebra& a, const RationalVector& hessian_class,
                                   const LinearFunctional& phi);

/// Local degree of grad g at the origin. Throws InconclusiveError when the
/// local algebra cannot be shown finite dimensional.
DegreeReport elk_degree(const Polynomial& g, int cap = 64);

/// Same, reusing an already computed local algebra of grad g.
DegreeReport elk_degree(const Polynomial& g, const LocalAlgebra& a);

}  // namespace milnor
