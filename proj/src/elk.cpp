#include "milnor/elk.hpp"

#include <algorithm>
#include <map>

namespace milnor {

Rational LinearFunctional::operator()(const RationalVector& v) const {
  if (v.size() != coefficients.size()) throw Error("functional applied to a vector of the wrong size");
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (coefficients[i] != 0) s += coefficients[i] * v[i];
  return s;
}

std::string to_string(DegreeMethod m) {
  return m == DegreeMethod::elk_exact ? "elk_exact" : "numeric_oracle";
}

LinearFunctional choose_functional(const LocalAlgebra& a, const RationalVector& hessian_class, Monomial* chosen) {
  if (hessian_class.size() != a.dim) throw Error("Hessian class has the wrong size");
  // basis is local-descending, so the last nonzero entry is the smallest.
  for (std::size_t k = a.dim; k-- > 0;) {
    if (hessian_class[k] == 0) continue;
    LinearFunctional phi{RationalVector(a.dim, 0)};
    phi.coefficients[k] = hessian_class[k] > 0 ? 1 : -1;
    if (chosen) *chosen = a.basis[k];
    return phi;
  }
  throw DegenerateFormError("Hessian determinant vanishes in the local algebra");
}

RationalMatrix bilinear_form(const LocalAlgebra& a, const LinearFunctional& phi) {
  const RingPtr& ring = a.sb.generators.front().ring();
  std::map<Monomial, Rational, LocalDescending> cache;
  RationalMatrix b(a.dim, RationalVector(a.dim, 0));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i; j < a.dim; ++j) {
      const Monomial m = a.basis[i] * a.basis[j];
      auto it = cache.find(m);
      if (it == cache.end()) it = cache.emplace(m, phi(a.coordinates(Polynomial(ring, m)))).first;
      b[i][j] = b[j][i] = it->second;
    }
  return b;
}

Inertia exact_signature(const RationalMatrix& input) {
  RationalMatrix b = input;
  const std::size_t n = b.size();
  for (const auto& row : b)
    if (row.size() != n) throw Error("signature of a non-square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (b[i][j] != b[j][i]) throw Error("signature of a non-symmetric matrix");

  Inertia in;
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  auto remove = [&](std::size_t idx) { active.erase(std::find(active.begin(), active.end(), idx)); };

  while (!active.empty()) {
    std::optional<std::size_t> diag;
    for (std::size_t i : active)
      if (b[i][i] != 0) {
        diag = i;
        break;
      }
    if (diag) {
      const std::size_t p = *diag;
      const Rational piv = b[p][p];
      (piv > 0 ? in.n_plus : in.n_minus) += 1;
      remove(p);
      for (std::size_t r : active) {
        if (b[r][p] == 0) continue;
        const Rational f = b[r][p] / piv;
        for (std::size_t s : active) b[r][s] -= f * b[p][s];
      }
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> off;
    for (std::size_t i : active) {
      for (std::size_t j : active)
        if (j != i && b[i][j] != 0) {
          off = std::make_pair(i, j);
          break;
        }
      if (off) break;
    }
    if (!off) {
      in.n_zero += static_cast<long>(active.size());
      break;
    }
    // Block [[0, c], [c, 0]]: one positive and one negative direction.
    const auto [p, q] = *off;
    const Rational c = b[p][q];
    in.n_plus += 1;
    in.n_minus += 1;
    remove(p);
    remove(q);
    RationalMatrix next = b;
    for (std::size_t r : active)
      for (std::size_t s : active) next[r][s] = b[r][s] - (b[r][p] * b[q][s] + b[r][q] * b[p][s]) / c;
    b = std::move(next);
  }
  return in;
}

SignatureCertificate elk_signature(const LocalAlgebra& a, const RationalVector& hessian_class,
                                   const LinearFunctional& phi) {
  if (phi(hessian_class) <= 0) throw DegenerateFormError("functional is not positive on the Hessian class");
  SignatureCertificate cert;
  cert.functional = phi;
  cert.hessian_class = hessian_class;
  cert.form = bilinear_form(a, phi);
  cert.inertia = exact_signature(cert.form);
  if (cert.inertia.n_zero != 0)
    throw DegenerateFormError("bilinear form has a kernel of dimension " + std::to_string(cert.inertia.n_zero));
  return cert;
}

DegreeReport elk_degree(const Polynomial& g, const LocalAlgebra& a) {
  const RationalVector j = a.coordinates(hessian_det(g));
  Monomial chosen;
  const LinearFunctional phi = choose_functional(a, j, &chosen);
  SignatureCertificate cert = elk_signature(a, j, phi);
  cert.functional_monomial = chosen;
  DegreeReport r;
  r.degree = cert.inertia.signature();
  r.method = DegreeMethod::elk_exact;
  r.algebra_dim = a.dim;
  r.certificate = std::move(cert);
  return r;
}

DegreeReport elk_degree(const Polynomial& g, int cap) { return elk_degree(g, gradient_algebra(g, cap)); }

}  // namespace milnor
