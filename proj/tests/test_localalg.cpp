#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "milnor/local_algebra.hpp"
#include "milnor/szafraniec.hpp"
#include "milnor/weights.hpp"
#include "test_util.hpp"

using namespace milnor;
using milnor::test::P;

namespace {

RationalMatrix mat_mul(const RationalMatrix& a, const RationalMatrix& b) { return multiply(a, b); }

SzafraniecPair pair_of(const std::string& f) {
  const Polynomial p = P(f);
  return build_pair(p, *detect_weights(p));
}

}  // namespace

TEST_CASE("maximal ideal") {
  const auto g = gradient(P("x^2 + y^2", {"x", "y"}));
  const auto sb = standard_basis(g);
  CHECK(sb.complete);
  const auto a = local_algebra(sb);
  CHECK(a.dim == 1);
  REQUIRE(a.basis.size() == 1);
  CHECK(a.basis[0].is_one());
  CHECK(a.mult_tables[0] == RationalMatrix{{0}});
}

TEST_CASE("x^3 in one variable") {
  const auto a = gradient_algebra(parse("x^3", {"x"}));
  CHECK(a.dim == 2);
  CHECK(a.basis[0].is_one());
  CHECK(a.basis[1] == Monomial(std::vector<int>{1}));
  CHECK(a.mult_tables[0] == RationalMatrix{{0, 0}, {1, 0}});
}

TEST_CASE("classical Milnor numbers") {
  CHECK(gradient_algebra(P("x^2 + y^2 + z^2")).dim == 1);
  for (int k = 1; k <= 8; ++k) CHECK(gradient_algebra(parse("x^" + std::to_string(k + 1), {"x"})).dim == std::size_t(k));
  CHECK(gradient_algebra(P("x^3 + y^4", {"x", "y"})).dim == 6);
  CHECK(gradient_algebra(P("x^2*y + y^3", {"x", "y"})).dim == 4);
  CHECK(gradient_algebra(P("x^5 + y^3", {"x", "y"})).dim == 8);
}

TEST_CASE("non-isolated critical points are rejected") {
  try {
    gradient_algebra(P("(x-y)^2", {"x", "y"}));
    FAIL("expected InconclusiveError");
  } catch (const InconclusiveError& e) {
    CHECK(e.reason() == InconclusiveError::Reason::not_zero_dimensional);
  }
  CHECK_THROWS_AS(gradient_algebra(P("y^2 - z*x^2")), InconclusiveError);
}

TEST_CASE("g1 of the cusp family has a finite local algebra") {
  const auto sp = pair_of("x^3 + x^2*z - y^2");
  const auto a = gradient_algebra(sp.g1);
  CHECK(a.sb.complete);
  CHECK(a.dim == 7);
  CHECK(gradient_algebra(sp.g2).dim > 0);
}

TEST_CASE("normal forms") {
  const auto sp = pair_of("x^2*y - y^4 - y*z^3");
  const auto grad = gradient(sp.g1);
  const auto sb = standard_basis(grad);
  for (const auto& g : grad) CHECK(normal_form(g, sb).is_zero());
  for (const auto& g : sb.generators) CHECK(normal_form(g, sb).is_zero());
  const Polynomial one(sp.g1.ring(), Rational(1));
  CHECK(normal_form(one, sb) == one);
  std::mt19937 rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto p = test::random_polynomial(sp.g1.ring(), rng, 6, 6);
    const auto nf = normal_form(p, sb);
    CHECK(normal_form(nf, sb) == nf);
  }
}

TEST_CASE("Hessian class is nonzero for the bundled pairs") {
  for (const char* f : {"x^2*y - y^4 - y*z^3", "x^3 + x^2*z - y^2",
                        "x^3 - x*y^2 + x*y*z + 2*x^2*y - 2*y^3 - y^2*z - x*z^2 + y*z^2"}) {
    const auto sp = pair_of(f);
    for (const auto& g : {sp.g1, sp.g2}) {
      const auto a = gradient_algebra(g);
      CHECK_FALSE(normal_form(hessian_det(g), a.sb).is_zero());
    }
  }
}

TEST_CASE("multiplication tables commute") {
  std::mt19937 rng(22);
  const RingPtr ring = make_default_ring(3);
  int tested = 0;
  for (int t = 0; tested < 10 && t < 40; ++t) {
    // A random perturbation of higher order keeps the critical point isolated.
    Polynomial g = P("x^3 + y^4 + z^3 + x*y*z");
    g += test::random_polynomial(ring, rng, 4, 5).truncated(6) - test::random_polynomial(ring, rng, 4, 2);
    g = g.truncated(6);
    Polynomial low(ring);
    for (const auto& [m, c] : g.terms())
      if (m.degree() >= 3) low.add_term(m, c);
    LocalAlgebra a;
    try {
      a = gradient_algebra(low);
    } catch (const InconclusiveError&) {
      continue;
    }
    ++tested;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        CHECK(mat_mul(a.mult_tables[i], a.mult_tables[j]) == mat_mul(a.mult_tables[j], a.mult_tables[i]));
  }
  CHECK(tested == 10);
}

TEST_CASE("dimension is invariant under permuting variables") {
  std::vector<std::string> vars{"x", "y", "z"};
  std::sort(vars.begin(), vars.end());
  const std::string f = "x^3 + y^3 + z^3 + x*y^2";
  const std::size_t base = gradient_algebra(parse(f, vars)).dim;
  while (std::next_permutation(vars.begin(), vars.end())) CHECK(gradient_algebra(parse(f, vars)).dim == base);
}

TEST_CASE("the degree cap is reported") {
  try {
    standard_basis(gradient(parse("x^20", {"x"})), 5);
    FAIL("expected InconclusiveError");
  } catch (const InconclusiveError& e) {
    CHECK(e.reason() == InconclusiveError::Reason::cap_exhausted);
  }
}
