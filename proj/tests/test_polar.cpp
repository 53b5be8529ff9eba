#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "milnor/polar.hpp"
#include "test_util.hpp"

using namespace milnor;
using milnor::test::P;

namespace {

const OracleConfig kCfg{};

RationalVector random_direction(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  for (;;) {
    RationalVector v{d(rng), d(rng), d(rng)};
    if (v[0] != 0 || v[1] != 0 || v[2] != 0) return v;
  }
}

bool contains(const std::vector<std::string>& log, const std::string& needle) {
  for (const auto& s : log)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("rationalize and primitive directions") {
  CHECK(rationalize(0.5, 16) == Rational(1, 2));
  CHECK(rationalize(1.0 / 3.0, 1024) == Rational(1, 3));
  CHECK(rationalize(-0.75, 16) == Rational(-3, 4));
  CHECK(rationalize(3.14159265358979, 10) == Rational(22, 7));
  CHECK(primitive_direction({2, 4, 6}) == RationalVector{1, 2, 3});
  CHECK(primitive_direction({Rational(1, 2), Rational(1, 3), 0}) == RationalVector{3, 2, 0});
  CHECK_THROWS_AS(primitive_direction({0, 0}), Error);
}

TEST_CASE("polar curve of the umbrella germs") {
  for (int b : {2, 3}) {
    const auto branches = sample_polar_curve(P("y^2 - z*x^" + std::to_string(b)), {1, 1, 1}, kCfg);
    CHECK(branches.size() == 2);
    for (const auto& br : branches)
      for (const auto& p : br.points) {
        const double x = p[0];
        CHECK(std::abs(p[1] + std::pow(x, b) / 2) < 1e-8);
        CHECK(std::abs(p[2] - x / b) < 1e-8);
      }
  }
}

TEST_CASE("lambda indices") {
  CHECK(lambda_indices({}) == std::pair<long, long>{0, 0});
  const auto morse = sample_polar_curve(P("x^2 + y^2", {"x", "y"}), {1, 2}, kCfg);
  CHECK(morse.size() == 2);
  CHECK(lambda_indices(morse) == std::pair<long, long>{1, 1});
  auto br = sample_polar_curve(P("y^2 - z*x^2"), {1, 1, 1}, kCfg);
  CHECK(lambda_indices(br) == std::pair<long, long>{0, -2});
  br = sample_polar_curve(P("y^2 - z*x^3"), {1, 1, 1}, kCfg);
  CHECK(lambda_indices(br) == std::pair<long, long>{-1, -1});
}

TEST_CASE("critical locus sampling") {
  CHECK(sample_critical_locus(P("x^2 + y^2 + z^2"), kCfg).empty());
  const auto c = sample_critical_locus(P("y^2 - z*x^2"), kCfg);
  CHECK(c.size() == 2);
  for (const auto& br : c)
    for (const auto& p : br.points) {
      CHECK(std::abs(p[0]) < 1e-8);
      CHECK(std::abs(p[1]) < 1e-8);
    }
}

TEST_CASE("slice defects") {
  auto s = gamma_slice_indices(P("y^2 - z*x^2"), {1, 1, 1}, kCfg);
  CHECK(s.pp == -1);
  CHECK(s.pm == 1);
  CHECK(s.mp == -1);
  CHECK(s.mm == 1);
  s = gamma_slice_indices(P("y^2 - z*x^3"), {1, 1, 1}, kCfg);
  CHECK(s.pp == 0);
  CHECK(s.pm == 0);
  CHECK(s.mp == 0);
  CHECK(s.mm == 0);
}

TEST_CASE("branch defects with exact slice degrees") {
  auto g = gamma_branch_indices(P("y^2 - z*x^2"), {1, 1, 1}, kCfg);
  CHECK(g.plus == -1);
  CHECK(g.minus == 1);
  for (const auto& b : g.branches) {
    REQUIRE(b.tau_exact);
    CHECK(*b.tau_exact == b.tau);
  }
  g = gamma_branch_indices(P("y^2 - z*x^3"), {1, 1, 1}, kCfg);
  CHECK(g.plus == 0);
  CHECK(g.minus == 0);
}

TEST_CASE("fibre formulas") {
  auto [neg, pos] = chi_khim_onedim(0, -2, -1, 1, 3);
  CHECK(neg == 2);
  CHECK(pos == 0);
  std::tie(neg, pos) = chi_khim_onedim(-1, -1, 0, 0, 3);
  CHECK(neg == 2);
  CHECK(pos == 0);
  std::vector<IdentityCheck> checks;
  chi_khim_onedim(0, -2, -1, 1, 3, &checks);
  bool printed_found = false;
  for (const auto& c : checks) {
    if (c.enforced) CHECK(c.holds);
    else printed_found = true;
  }
  CHECK(printed_found);
  CHECK_THROWS_AS(chi_khim_onedim(0, -2, 1, 1, 3), OracleError);
}

TEST_CASE("umbrella germs") {
  const auto r2 = polar_indices(P("y^2 - z*x^2"), std::nullopt, kCfg);
  CHECK(r2.critical_dim == 1);
  CHECK(r2.lambda_plus == 0);
  CHECK(r2.lambda_minus == -2);
  CHECK(r2.gamma_plus == -1);
  CHECK(r2.gamma_minus == 1);
  CHECK(r2.gamma_pp == -1);
  CHECK(r2.gamma_pm == 1);
  CHECK(r2.gamma_mp == -1);
  CHECK(r2.gamma_mm == 1);
  CHECK(r2.chi_fibre_neg == 2);
  CHECK(r2.chi_fibre_pos == 0);
  CHECK(r2.chi_link == 0);
  for (const auto& c : r2.checks)
    if (c.enforced) CHECK(c.holds);

  const auto r3 = polar_indices(P("y^2 - z*x^3"), std::nullopt, kCfg);
  CHECK(r3.lambda_plus == -1);
  CHECK(r3.lambda_minus == -1);
  CHECK(r3.gamma_plus == 0);
  CHECK(r3.gamma_minus == 0);
  CHECK(r3.chi_fibre_neg == 2);
  CHECK(r3.chi_fibre_pos == 0);
  CHECK(r3.chi_link == 0);
}

TEST_CASE("Morse germs") {
  auto r = polar_indices(P("x^2 + y^2 + z^2"), std::nullopt, kCfg);
  CHECK(r.lambda_plus == 1);
  CHECK(r.lambda_minus == 1);
  CHECK(r.gamma_pp == 0);
  CHECK(r.gamma_mm == 0);
  CHECK(r.chi_fibre_neg == 0);
  CHECK(r.chi_fibre_pos == 2);
  r = polar_indices(P("x^2 + y^2", {"x", "y"}), std::nullopt, kCfg);
  CHECK(r.chi_fibre_neg == 0);
  CHECK(r.chi_fibre_pos == 0);
  CHECK(contains(r.genericity_log, "slice defects vanish"));
}

TEST_CASE("index identity over random directions") {
  std::mt19937 rng(51);
  for (const char* f : {"y^2 - z*x^2", "y^2 - z*x^3"}) {
    const Polynomial p = P(f);
    for (int t = 0; t < 5; ++t) {
      const auto r = polar_indices(p, random_direction(rng), kCfg);
      CHECK(r.lambda_minus + *r.gamma_minus == r.lambda_plus + *r.gamma_plus);
      CHECK(r.chi_fibre_neg == 2);
      CHECK(r.chi_fibre_pos == 0);
      for (const auto& c : r.checks)
        if (c.enforced) CHECK(c.holds);
    }
  }
}

TEST_CASE("reversing the direction swaps the indices") {
  const Polynomial p = P("y^2 - z*x^2");
  const auto a = polar_indices(p, RationalVector{1, 2, 3}, kCfg);
  const auto b = polar_indices(p, RationalVector{-1, -2, -3}, kCfg);
  CHECK(a.direction == RationalVector{1, 2, 3});
  CHECK(a.lambda_plus == b.lambda_minus);
  CHECK(a.lambda_minus == b.lambda_plus);
  CHECK(a.gamma_plus == b.gamma_minus);
  CHECK(a.gamma_minus == b.gamma_plus);
}

TEST_CASE("directions failing the screen are replaced") {
  // For x^2 - y^2 the polar curve of (1,1) lies in {f = 0}.
  const auto r = polar_indices(P("x^2 - y^2", {"x", "y"}), RationalVector{1, 1}, kCfg);
  CHECK(r.direction != RationalVector{1, 1});
  CHECK(contains(r.genericity_log, "f vanishes on a polar point"));
  CHECK(r.chi_fibre_neg == 2);
  CHECK(r.chi_fibre_pos == 2);
}

TEST_CASE("unsupported germs") {
  CHECK_THROWS_AS(polar_indices(parse("x^3", {"x"}), std::nullopt, kCfg), UnsupportedGermError);
  CHECK_THROWS_AS(gamma_slice_indices(P("x^2 - y^2 + w^2 - z^2", {"x", "y", "z", "w"}), {1, 1, 1, 1}, kCfg),
                  UnsupportedGermError);
}

TEST_CASE("Le-Iomdine with a given exponent") {
  const auto r = le_iomdine(P("y^2 - z*x^2"), std::nullopt, 6, kCfg);
  REQUIRE(r.cases.size() == 2);
  CHECK(r.cases[0].k == 6);
  CHECK(r.cases[1].k == 7);
  CHECK(r.cases[0].degree.degree == -1);
  CHECK(r.cases[1].degree.degree == -2);
  CHECK(r.all_pass);
}

TEST_CASE("Le-Iomdine below the exponent bound") {
  // k = 2 passes the isolation screen but is too small for the identities.
  const auto r = le_iomdine(P("y^2 - z*x^2"), std::nullopt, 2, kCfg);
  CHECK(r.n0 == 3);
  CHECK_FALSE(r.all_pass);
}

TEST_CASE("Le-Iomdine on an isolated germ is degenerate") {
  const auto r = le_iomdine(P("x^2 + y^2 - z^2"), std::nullopt, std::nullopt, kCfg);
  CHECK(r.polar.critical_dim == 0);
  CHECK(r.all_pass);
  for (const auto& c : r.cases) CHECK(c.degree.degree == elk_degree(P("x^2 + y^2 - z^2")).degree);
}
