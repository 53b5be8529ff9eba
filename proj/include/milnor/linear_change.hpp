#pragma once

#include <vector>

#include "milnor/polynomial.hpp"

namespace milnor {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

/// Linear coordinates y = forward * x, x = inverse * y.
struct CoordinateChange {
  RationalMatrix forward;
  RationalMatrix inverse;

  /// Express a polynomial in x as a polynomial in y.
  Polynomial to_new(const Polynomial& p_in_x) const;
  /// Express a polynomial in y as a polynomial in x.
  Polynomial to_old(const Polynomial& p_in_y) const;
};

/// A germ written in coordinates whose first coordinate is the linear form
/// v*(x) = <v, x>.
///
/// The rows of the change are pairwise orthogonal, so the map is an
/// orthogonal transformation followed by positive axis scalings. The new
/// first coordinate is exactly <v, x>: half-spaces {v* > 0} and {y1 > 0}
/// coincide, and {y1 = c} is the hyperplane {<v/|v|, x> = c / |v|}.
struct RotatedGerm {
  Polynomial polynomial;
  CoordinateChange change;
  /// |v|^2, the square of the scale between y1 and the unit linear form.
  Rational first_axis_norm_sq;
};

RotatedGerm rotate_to_e1(const Polynomial& p, const RationalVector& v);

/// Rational basis of the orthogonal complement of v, pairwise orthogonal
/// and primitive-integral, obtained by exact Gram-Schmidt.
RationalMatrix orthogonal_complement(const RationalVector& v);

/// Rational rotation (I - S)(I + S)^{-1} for skew-symmetric S; det = +1.
RationalMatrix cayley_rotation(const RationalMatrix& skew);

RationalMatrix invert(const RationalMatrix& m);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
Rational determinant(const RationalMatrix& m);
RationalMatrix identity_matrix(std::size_t n);

/// p(A x), i.e. the composition of p with the linear map A.
Polynomial compose_linear(const Polynomial& p, const RationalMatrix& a);

}  // namespace milnor
