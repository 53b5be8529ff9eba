#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "milnor/elk.hpp"
#include "milnor/szafraniec.hpp"
#include "milnor/weights.hpp"
#include "test_util.hpp"

using namespace milnor;
using milnor::test::P;

namespace {

SzafraniecPair pair_of(const std::string& f) {
  const Polynomial p = P(f);
  return build_pair(p, *detect_weights(p));
}

const char* const kTwoCusps = "x^2*y - y^4 - y*z^3";
const char* const kCuspFamily = "x^3 + x^2*z - y^2";
const char* const kCubic = "x^3 - x*y^2 + x*y*z + 2*x^2*y - 2*y^3 - y^2*z - x*z^2 + y*z^2";

}  // namespace

TEST_CASE("exact signature") {
  CHECK(exact_signature({{2, 0}, {0, -3}}) == Inertia{1, 1, 0});
  CHECK(exact_signature({{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
  CHECK(exact_signature(RationalMatrix(3, RationalVector(3, Rational(0)))) == Inertia{0, 0, 3});
  CHECK(exact_signature({{1, 2}, {2, 4}}) == Inertia{1, 0, 1});
  CHECK(exact_signature({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}) == Inertia{2, 1, 0});
  CHECK(exact_signature({{Rational(1, 3), 1}, {1, Rational(1, 5)}}).signature() == 0);
}

TEST_CASE("functional choice") {
  SUBCASE("dimension two") {
    const auto a = gradient_algebra(parse("x^3", {"x"}));
    const auto j = a.coordinates(hessian_det(parse("x^3", {"x"})));
    Monomial m;
    const auto phi = choose_functional(a, j, &m);
    CHECK(m == Monomial(std::vector<int>{1}));
    CHECK(phi(j) > 0);
    CHECK(phi.coefficients[0] == 0);
  }
  SUBCASE("dimension one") {
    const Polynomial g = P("x^2 + y^2", {"x", "y"});
    const auto a = gradient_algebra(g);
    const auto j = a.coordinates(hessian_det(g));
    Monomial m;
    const auto phi = choose_functional(a, j, &m);
    CHECK(m.is_one());
    CHECK(phi(j) > 0);
  }
  SUBCASE("g1 of the cusp family") {
    const auto sp = pair_of(kCuspFamily);
    const auto r = elk_degree(sp.g1);
    REQUIRE(r.certificate);
    REQUIRE(r.certificate->functional_monomial);
    CHECK(*r.certificate->functional_monomial == Monomial({0, 0, 5}));
  }
}

TEST_CASE("trivial degrees") {
  CHECK(elk_degree(P("x^2 + y^2", {"x", "y"})).degree == 1);
  CHECK(elk_degree(P("x^2 - y^2", {"x", "y"})).degree == -1);
  CHECK(elk_degree(parse("x^3", {"x"})).degree == 0);
  CHECK(elk_degree(parse("x^2", {"x"})).degree == 1);
  CHECK(elk_degree(P("x^3 - 3*x*y^2", {"x", "y"})).degree == -2);
  CHECK_THROWS_AS(elk_degree(P("(x-y)^2", {"x", "y"})), InconclusiveError);
}

TEST_CASE("worked example degrees") {
  auto sp = pair_of(kTwoCusps);
  CHECK(elk_degree(sp.g1).degree == 1);
  CHECK(elk_degree(sp.g2).degree == 1);
  sp = pair_of(kCuspFamily);
  CHECK(elk_degree(sp.g1).degree == 1);
  CHECK(elk_degree(sp.g2).degree == -1);
  sp = pair_of(kCubic);
  CHECK(elk_degree(sp.g1).degree == 3);
}

TEST_CASE("nondegenerate quadratic forms") {
  std::mt19937 rng(31);
  const RingPtr ring = make_default_ring(3);
  for (int t = 0; t < 20; ++t) {
    Polynomial q(ring);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) {
        Monomial m(3);
        ++m[i];
        ++m[j];
        q.add_term(m, test::random_rational(rng));
      }
    const Rational det = hessian_det(q).coefficient(Monomial(3));
    if (det == 0) continue;
    CHECK(elk_degree(q).degree == sgn(det));
  }
}

TEST_CASE("phi independence") {
  for (const char* f : {kTwoCusps, kCuspFamily, kCubic}) {
    const auto sp = pair_of(f);
    for (const auto& g : {sp.g1, sp.g2}) {
      const auto a = gradient_algebra(g);
      const auto j = a.coordinates(hessian_det(g));
      const auto base = elk_signature(a, j, choose_functional(a, j));
      int alternatives = 0;
      for (std::size_t k = 0; k < a.dim && alternatives < 4; ++k) {
        for (int s : {1, -1, 3}) {
          LinearFunctional phi = choose_functional(a, j);
          phi.coefficients[k] += s;
          if (phi(j) <= 0) continue;
          try {
            const auto alt = elk_signature(a, j, phi);
            CHECK(alt.inertia.signature() == base.inertia.signature());
            ++alternatives;
          } catch (const DegenerateFormError&) {
          }
        }
      }
      CHECK(alternatives > 0);
    }
  }
}

TEST_CASE("degree bounded by the algebra dimension") {
  for (const char* f : {"x^3 + y^4", "x^4 - y^4", "x^2*y - y^3", "x^5 + y^3"}) {
    const auto r = elk_degree(P(f, {"x", "y"}));
    CHECK(std::abs(r.degree) <= long(r.algebra_dim));
  }
}

TEST_CASE("degree is invariant under rotations") {
  std::mt19937 rng(32);
  const std::vector<std::string> germs{"x^2*y - y^3 + z^2", "x^3 + y^4 - z^2", "x^2 + y^2 - z^2 + x*y*z",
                                       "x^3 - 3*x*y^2 + z^4", "x^4 + y^4 + z^2"};
  for (const auto& s : germs) {
    const Polynomial g = P(s);
    const long d = elk_degree(g).degree;
    for (int t = 0; t < 5; ++t) CHECK(elk_degree(compose_linear(g, test::random_rotation(3, rng))).degree == d);
  }
}
