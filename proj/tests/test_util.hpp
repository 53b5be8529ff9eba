#pragma once

#include <random>

#include "milnor/linear_change.hpp"
#include "milnor/parser.hpp"
#include "milnor/polynomial.hpp"

namespace milnor::test {

inline Polynomial P(const std::string& text, const std::vector<std::string>& vars = {"x", "y", "z"}) {
  return parse(text, vars);
}

inline Rational random_rational(std::mt19937& rng, int span = 9) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 4);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Random polynomial with up to `terms` terms of degree <= max_deg.
inline Polynomial random_polynomial(const RingPtr& ring, std::mt19937& rng, int terms = 5, int max_deg = 4) {
  Polynomial p(ring);
  std::uniform_int_distribution<int> e(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Monomial m(ring->nvars());
    int budget = e(rng);
    for (std::size_t i = 0; i < ring->nvars() && budget > 0; ++i) {
      std::uniform_int_distribution<int> take(0, budget);
      m[i] = take(rng);
      budget -= m[i];
    }
    p.add_term(m, random_rational(rng));
  }
  return p;
}

/// Random rotation with rational entries (Cayley transform of a skew matrix
/// with half-integer entries; larger denominators make the rotated germs slow).
inline RationalMatrix random_rotation(std::size_t n, std::mt19937& rng) {
  RationalMatrix s(n, RationalVector(n, Rational(0)));
  std::uniform_int_distribution<int> e(-2, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      s[i][j] = Rational(e(rng), 2);
      s[i][j].canonicalize();
      s[j][i] = -s[i][j];
    }
  return cayley_rotation(s);
}

}  // namespace milnor::test
