#include "milnor/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace milnor {

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars);
  m.exps.at(i) = 1;
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += other.exps[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= other.exps[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::max(exps[i], other.exps[i]);
  return r;
}

namespace {

// Same-degree grevlex tie-break: a > b iff the last nonzero entry of a - b is negative.
int grevlex_tie(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

bool grevlex_greater(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da > db;
  return grevlex_tie(a, b) > 0;
}

bool local_greater(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return grevlex_tie(a, b) > 0;
}

// -------------------------------------------------------------------- Ring

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(Ring{std::move(names)});
}

RingPtr make_default_ring(std::size_t nvars) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i)
    names.push_back(nvars <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1));
  return make_ring(std::move(names));
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  add_term(Monomial(ring_->nvars()), constant);
}

Polynomial::Polynomial(RingPtr ring, const Monomial& m, const Rational& c) : ring_(std::move(ring)) {
  if (m.size() != ring_->nvars()) throw Error("monomial length does not match ring");
  add_term(m, c);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  const std::size_t n = ring->nvars();
  if (i >= n) throw Error("variable index out of range");
  return Polynomial(std::move(ring), Monomial::variable(n, i));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

int Polynomial::order() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw Error("leading monomial of zero polynomial");
  return terms_.begin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading coefficient of zero polynomial");
  return terms_.begin()->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars() != nvars()) throw Error("ring mismatch in addition");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars() != nvars()) throw Error("ring mismatch in subtraction");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw Error("ring mismatch in multiplication");
  Polynomial r(a.ring_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_hint(r.terms_.end(), mm * m, cc * c);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(ring_, Rational(1));
  Polynomial base(*this);
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::truncated(int bound) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_)
    if (m.degree() < bound) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw Error("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars()) throw Error("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int k = 0; k < m[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images) const {
  if (images.size() != nvars()) throw Error("compose needs one image per variable");
  if (images.empty()) return *this;
  const RingPtr& target = images[0].ring();
  // Cache powers of each image; exponents are small in practice.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t i, int e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(target, Rational(1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * power_of(i, m[i]);
    r += t;
  }
  return r;
}

// ------------------------------------------------------------ calculus

Polynomial partial(const Polynomial& p, std::size_t i) {
  if (i >= p.nvars()) throw Error("partial derivative index out of range");
  Polynomial r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[i] == 0) continue;
    Monomial d(m);
    d[i] -= 1;
    r.add_term(d, c * m[i]);
  }
  return r;
}

std::vector<Polynomial> gradient(const Polynomial& p) {
  std::vector<Polynomial> g;
  g.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) g.push_back(partial(p, i));
  return g;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m, const RingPtr& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(ring, Rational(1));
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial det(ring);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][j] * determinant(minor, ring);
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

Polynomial hessian_det(const Polynomial& p) {
  const std::size_t n = p.nvars();
  std::vector<Polynomial> g = gradient(p);
  std::vector<std::vector<Polynomial>> h;
  h.reserve(n);
  for (std::size_t i = 0; i < n; ++i) h.push_back(gradient(g[i]));
  return determinant(h, p.ring());
}

// ------------------------------------------------------------- printing

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return grevlex_greater(a.first, b.first); });
  const auto& names = p.ring()->names;
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      out << to_string(mag);
      continue;
    }
    if (mag != 1) out << to_string(mag) << '*';
    bool first_factor = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_factor) out << '*';
      first_factor = false;
      out << names[i];
      if (m[i] > 1) out << '^' << m[i];
    }
  }
  return out.str();
}

}  // namespace milnor
