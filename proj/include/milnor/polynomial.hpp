#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace milnor {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& q);
double to_double(const Rational& q);

/// Exponent vector x1^e1 ... xn^en.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t size() const { return exps.size(); }
  int operator[](std::size_t i) const { return exps[i]; }
  int& operator[](std::size_t i) { return exps[i]; }
  int degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// Requires divides(other) to hold in reverse: other | *this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Degree-reverse-lexicographic comparison, x1 > x2 > ... > xn.
bool grevlex_greater(const Monomial& a, const Monomial& b);

/// Anti-graded local order: lower total degree is larger, ties broken by
/// grevlex. The constant monomial is the largest element.
bool local_greater(const Monomial& a, const Monomial& b);

struct LocalDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return local_greater(a, b); }
};

/// Variable names shared by all polynomials of one ring.
struct Ring {
  std::vector<std::string> names;
  std::size_t nvars() const { return names.size(); }
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);
/// Ring with names x1..xn (or x,y,z,w when n <= 4).
RingPtr make_default_ring(std::size_t nvars);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in local-descending order so that `leading()` is the
/// leading term for the anti-graded local order; canonical printing uses
/// grevlex instead. Zero coefficients are never stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, LocalDescending>;

  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, const Rational& constant);
  Polynomial(RingPtr ring, const Monomial& m, const Rational& c = 1);

  static Polynomial variable(RingPtr ring, std::size_t i);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->nvars(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Lowest total degree among the terms; -1 for zero.
  int order() const;
  Rational coefficient(const Monomial& m) const;

  /// Leading monomial/coefficient for the local order. Requires nonzero.
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial times_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned e) const;

  /// Drop every term of total degree >= bound.
  Polynomial truncated(int bound) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  /// Substitute x_i -> images[i]; all images must live in one common ring.
  Polynomial compose(std::span<const Polynomial> images) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  RingPtr ring_;
  TermMap terms_;
};

/// Formal partial derivative with respect to variable index i (0-based).
Polynomial partial(const Polynomial& p, std::size_t i);
std::vector<Polynomial> gradient(const Polynomial& p);
/// Determinant of the matrix of second partial derivatives.
Polynomial hessian_det(const Polynomial& p);
/// Determinant of a square matrix of polynomials (cofactor expansion).
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring);

/// Canonical text: terms in grevlex order, explicit `*`, no spaces around `^`.
std::string to_string(const Polynomial& p);

}  // namespace milnor
