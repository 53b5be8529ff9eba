#include "milnor/szafraniec.hpp"

#include <numeric>

namespace milnor {

namespace {

long sign_pow(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

void fill_links(EulerReport& r, long le, long ge) {
  r.chi_link_le = le;
  r.chi_link_ge = ge;
  r.chi_link_eq = le + ge - chi_sphere(r.n);
  r.formula_trace.push_back({"link_eq = link_le + link_ge - chi(S^(n-1))",
                             {{"link_le", le}, {"link_ge", ge}, {"chi_sphere", chi_sphere(r.n)}}});
}

}  // namespace

long chi_sphere(std::size_t n) { return n == 0 ? 0 : 1 - sign_pow(n); }

int szafraniec_exponent(const Weights& w) {
  int l = 1;
  for (int di : w.d_i) {
    if (di <= 0) throw Error("weights must be positive");
    l = std::lcm(l, di);
  }
  // Smallest multiple of lcm(d_i) exceeding d/2.
  return (w.d / (2 * l) + 1) * l;
}

SzafraniecPair build_pair(const Polynomial& f, const Weights& w) {
  if (!is_weighted_homogeneous(f, w)) throw Error("polynomial is not weighted homogeneous for the given weights");
  if (w.d_i.size() != f.nvars()) throw Error("weights have the wrong length");
  SzafraniecPair sp{.p = szafraniec_exponent(w), .a_i = {}, .omega = Polynomial(f.ring()), .g1 = f, .g2 = f};
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    const int a = sp.p / w.d_i[i];
    sp.a_i.push_back(a);
    Monomial m(f.nvars());
    m[i] = 2 * a;
    sp.omega.add_term(m, Rational(1, 2 * a));
  }
  sp.g1 = f - sp.omega;
  sp.g2 = -f - sp.omega;
  return sp;
}

EulerReport chi_from_pair_degrees(std::size_t n, long deg_g1, long deg_g2) {
  EulerReport r;
  r.n = n;
  const long s = sign_pow(n);
  r.chi_fibre_pos = 1 - s * deg_g1;
  r.chi_fibre_neg = 1 - s * deg_g2;
  r.formula_trace.push_back({"fibre_pos = 1 - (-1)^n deg g1", {{"n", static_cast<long>(n)}, {"deg_g1", deg_g1}}});
  r.formula_trace.push_back({"fibre_neg = 1 - (-1)^n deg g2", {{"n", static_cast<long>(n)}, {"deg_g2", deg_g2}}});
  const long le = 1 - deg_g1;
  const long ge = 1 - deg_g2;
  r.formula_trace.push_back({"link_le = 1 - deg g1", {{"deg_g1", deg_g1}}});
  r.formula_trace.push_back({"link_ge = 1 - deg g2", {{"deg_g2", deg_g2}}});
  fill_links(r, le, ge);
  return r;
}

EulerReport chi_weighted_homogeneous(const Polynomial& f, const Weights& w, int cap) {
  const SzafraniecPair sp = build_pair(f, w);
  DegreeReport d1 = elk_degree(sp.g1, cap);
  DegreeReport d2 = elk_degree(sp.g2, cap);
  EulerReport r = chi_from_pair_degrees(f.nvars(), d1.degree, d2.degree);
  r.formula_trace.insert(r.formula_trace.begin(),
                         TraceEntry{"szafraniec pair", {{"p", sp.p}, {"d", w.d}}});
  r.degrees.emplace_back("g1", std::move(d1));
  r.degrees.emplace_back("g2", std::move(d2));
  return r;
}

EulerReport chi_isolated(const Polynomial& f, int cap) {
  DegreeReport d = elk_degree(f, cap);
  EulerReport r;
  r.n = f.nvars();
  const long s = sign_pow(r.n);
  const long deg = d.degree;
  // chi(f^-1(delta) cap B) = 1 - sign(-delta)^n deg.
  r.chi_fibre_pos = 1 - s * deg;
  r.chi_fibre_neg = 1 - deg;
  r.formula_trace.push_back({"fibre_pos = 1 - (-1)^n deg f", {{"n", static_cast<long>(r.n)}, {"deg_f", deg}}});
  r.formula_trace.push_back({"fibre_neg = 1 - deg f", {{"deg_f", deg}}});
  const long le = 1 - deg;
  const long ge = 1 - s * deg;
  r.formula_trace.push_back({"link_le = 1 - deg f", {{"deg_f", deg}}});
  r.formula_trace.push_back({"link_ge = 1 + (-1)^(n-1) deg f", {{"n", static_cast<long>(r.n)}, {"deg_f", deg}}});
  fill_links(r, le, ge);
  r.degrees.emplace_back("f", std::move(d));
  return r;
}

std::pair<Polynomial, Polynomial> radial_pair(const Polynomial& f, int d) {
  if (d <= 0) throw Error("radial exponent must be positive");
  Polynomial r2(f.ring());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    Monomial m(f.nvars());
    m[i] = 2;
    r2.add_term(m, 1);
  }
  const Polynomial w = r2.pow(static_cast<unsigned>(d));
  return {f - w, -f - w};
}

std::pair<long, long> link_relations(long chi_fibre_pos, long chi_fibre_neg, std::size_t n) {
  if (n % 2 == 0) return {chi_fibre_pos, chi_fibre_neg};
  return {2 - chi_fibre_pos, 2 - chi_fibre_neg};
}

bool parity_relations_hold(const EulerReport& r) {
  if (!r.chi_link_le || !r.chi_link_ge) return true;
  const auto [le, ge] = link_relations(r.chi_fibre_pos, r.chi_fibre_neg, r.n);
  return le == *r.chi_link_le && ge == *r.chi_link_ge;
}

bool mayer_vietoris_holds(const EulerReport& r) {
  if (!r.chi_link_le || !r.chi_link_ge || !r.chi_link_eq) return true;
  return *r.chi_link_le + *r.chi_link_ge - *r.chi_link_eq == chi_sphere(r.n);
}

}  // namespace milnor
