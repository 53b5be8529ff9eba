#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "milnor/linear_change.hpp"
#include "milnor/parser.hpp"
#include "milnor/weights.hpp"
#include "test_util.hpp"

using namespace milnor;
using milnor::test::P;

TEST_CASE("parse examples") {
  CHECK(P("y^2 - z*x^3").size() == 2);
  const Polynomial f = P("x^2*y - y^4 - y*z^3");
  CHECK(f.size() == 3);
  CHECK(f.coefficient(Monomial({2, 1, 0})) == 1);
  CHECK(f.coefficient(Monomial({0, 4, 0})) == -1);
  CHECK(parse("0", {"x"}).is_zero());
  CHECK(P("1/6*x^6").coefficient(Monomial({6, 0, 0})) == Rational(1, 6));
  CHECK(P("(x-y)^2") == P("x^2 - 2*x*y + y^2"));
  CHECK(P("-x^2 + -(-y)") == P("y - x^2"));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(P("x^2 +"), ParseError);
  CHECK_THROWS_AS(P("x^2 + q"), ParseError);
  CHECK_THROWS_AS(P("x^^2"), ParseError);
  CHECK_THROWS_AS(P("(x"), ParseError);
  CHECK_THROWS_AS(P("x/0"), ParseError);
}

TEST_CASE("variable inference") {
  CHECK(infer_variables("y^2 - z*x^3") == std::vector<std::string>{"x", "y", "z"});
  CHECK(infer_variables("x^2") == std::vector<std::string>{"x"});
  CHECK(infer_variables("x2*x10 + x1") == std::vector<std::string>{"x1", "x2", "x10"});
}

TEST_CASE("canonical printing is grevlex") {
  CHECK(to_string(P("y^2 - z*x^3")) == "-x^3*z + y^2");
  CHECK(to_string(P("x^3 + x^2*z - y^2")) == "x^3 + x^2*z - y^2");
  CHECK(to_string(P("0")) == "0");
  CHECK(to_string(P("1/2 - x")) == "-x + 1/2");
}

TEST_CASE("partial derivatives") {
  CHECK(partial(P("y^2 - z*x^3"), 1) == P("2*y"));
  CHECK(partial(P("x^2*y - y^4 - y*z^3"), 0) == P("2*x*y"));
  CHECK(partial(P("5"), 2).is_zero());
}

TEST_CASE("Hessian determinant") {
  CHECK(hessian_det(P("x^2 + y^2", {"x", "y"})) == P("4", {"x", "y"}));
  CHECK(hessian_det(P("x^2 - y^2", {"x", "y"})) == P("-4", {"x", "y"}));
  CHECK(hessian_det(parse("x^3", {"x"})) == parse("6*x", {"x"}));
}

TEST_CASE("weight detection") {
  auto w = detect_weights(P("x^3 + x^2*z - y^2"));
  REQUIRE(w);
  CHECK(*w == Weights{{2, 3, 2}, 6});
  w = detect_weights(P("x^2*y - y^4 - y*z^3"));
  REQUIRE(w);
  CHECK(*w == Weights{{3, 2, 2}, 8});
  w = detect_weights(P("x + y^2", {"x", "y"}));
  REQUIRE(w);
  CHECK(*w == Weights{{2, 1}, 2});
  CHECK_FALSE(detect_weights(P("y^2 + x^3*y^2", {"x", "y"})));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  const RingPtr ring = make_default_ring(3);
  for (int t = 0; t < 50; ++t) {
    const auto a = test::random_polynomial(ring, rng), b = test::random_polynomial(ring, rng),
               c = test::random_polynomial(ring, rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Polynomial(ring));
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937 rng(12);
  const RingPtr ring = make_default_ring(3);
  for (int t = 0; t < 50; ++t) {
    const auto p = test::random_polynomial(ring, rng, 6, 6);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(partial(partial(p, i), j) == partial(partial(p, j), i));
  }
}

TEST_CASE("Euler relation for detected weights") {
  for (const char* s : {"x^3 + x^2*z - y^2", "x^2*y - y^4 - y*z^3", "y^2 - z*x^2", "y^2 - z*x^3",
                        "x^3 - x*y^2 + x*y*z + 2*x^2*y - 2*y^3 - y^2*z - x*z^2 + y*z^2", "x^5 + y^3 + z^2"}) {
    const Polynomial p = P(s);
    const auto w = detect_weights(p);
    REQUIRE(w);
    CHECK(is_weighted_homogeneous(p, *w));
    CHECK(euler_vector_field(p, *w) == p * Rational(w->d));
  }
}

TEST_CASE("parse of print is the identity") {
  std::mt19937 rng(13);
  const std::vector<std::string> vars{"x", "y", "z"};
  const RingPtr ring = make_ring(vars);
  for (int t = 0; t < 100; ++t) {
    const auto p = test::random_polynomial(ring, rng, 6, 5);
    CHECK(parse(to_string(p), vars) == p);
  }
}

TEST_CASE("rotation to e1") {
  const Polynomial x = P("x", {"x"});
  SUBCASE("e1 is the identity") {
    const Polynomial f = P("y^2 - z*x^3");
    CHECK(rotate_to_e1(f, {1, 0, 0}).polynomial == f);
  }
  SUBCASE("-e1 flips the sign of x1") {
    CHECK(rotate_to_e1(x, {-1}).polynomial == -x);
  }
  SUBCASE("round trip on random polynomials") {
    std::mt19937 rng(14);
    const RingPtr ring = make_default_ring(3);
    const RationalVector v{1, 1, 1};
    const auto rg = rotate_to_e1(P("y^2 - z*x^2"), v);
    for (int t = 0; t < 100; ++t) {
      const auto p = test::random_polynomial(ring, rng);
      CHECK(rg.change.to_old(rg.change.to_new(p)) == p);
    }
  }
  SUBCASE("first coordinate is the linear form") {
    for (int b : {2, 3}) {
      const Polynomial f = P("y^2 - z*x^" + std::to_string(b));
      const RationalVector v{1, 1, 1};
      const auto rg = rotate_to_e1(f, v);
      CHECK(rg.first_axis_norm_sq == 3);
      std::mt19937 rng(15 + b);
      for (int t = 0; t < 100; ++t) {
        RationalVector y{test::random_rational(rng), test::random_rational(rng), test::random_rational(rng)};
        RationalVector xpt(3, Rational(0));
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) xpt[i] += rg.change.inverse[i][j] * y[j];
        CHECK(rg.polynomial.evaluate(y) == f.evaluate(xpt));
        CHECK(xpt[0] + xpt[1] + xpt[2] == y[0]);
      }
    }
  }
  SUBCASE("rows are orthogonal") {
    const auto rg = rotate_to_e1(P("y^2 - z*x^2"), {1, 2, 3});
    const auto& m = rg.change.forward;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        Rational dot = 0;
        for (std::size_t k = 0; k < 3; ++k) dot += m[i][k] * m[j][k];
        CHECK(dot == 0);
      }
  }
}

TEST_CASE("Cayley rotations are orthogonal with det 1") {
  std::mt19937 rng(16);
  for (int t = 0; t < 10; ++t) {
    const auto r = test::random_rotation(3, rng);
    CHECK(determinant(r) == 1);
    RationalMatrix rt(3, RationalVector(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) rt[i][j] = r[j][i];
    CHECK(multiply(r, rt) == identity_matrix(3));
  }
}
