#include "milnor/linear_change.hpp"

namespace milnor {

namespace {

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Scale a nonzero rational vector to a primitive integer vector, keeping
// its direction (positive scale).
RationalVector primitive(const RationalVector& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
  Integer g = 0;
  for (const auto& q : v) g = gcd(g, Integer(q.get_num()) * (den / Integer(q.get_den())));
  RationalVector out;
  for (const auto& q : v) out.emplace_back(Rational(q * den) / g);
  return out;
}

}  // namespace

RationalMatrix identity_matrix(std::size_t n) {
  RationalMatrix m(n, RationalVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RationalMatrix r(n, RationalVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

RationalMatrix invert(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  RationalMatrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error("singular matrix");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    const Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a = m;
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

RationalMatrix orthogonal_complement(const RationalVector& v) {
  const std::size_t n = v.size();
  std::vector<RationalVector> rows{v};
  for (std::size_t i = 0; i < n && rows.size() < n; ++i) {
    RationalVector w(n, 0);
    w[i] = 1;
    for (const auto& r : rows) {
      const Rational f = dot(w, r) / dot(r, r);
      for (std::size_t j = 0; j < n; ++j) w[j] -= f * r[j];
    }
    bool zero = true;
    for (const auto& q : w) zero = zero && q == 0;
    if (!zero) rows.push_back(primitive(w));
  }
  rows.erase(rows.begin());
  return rows;
}

RationalMatrix cayley_rotation(const RationalMatrix& skew) {
  const std::size_t n = skew.size();
  RationalMatrix minus = identity_matrix(n), plus = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      minus[i][j] -= skew[i][j];
      plus[i][j] += skew[i][j];
    }
  return multiply(minus, invert(plus));
}

Polynomial compose_linear(const Polynomial& p, const RationalMatrix& a) {
  const std::size_t n = p.nvars();
  std::vector<Polynomial> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img(p.ring());
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != 0) img += Polynomial::variable(p.ring(), j) * a[i][j];
    images.push_back(std::move(img));
  }
  return p.compose(images);
}

Polynomial CoordinateChange::to_new(const Polynomial& p_in_x) const { return compose_linear(p_in_x, inverse); }

Polynomial CoordinateChange::to_old(const Polynomial& p_in_y) const { return compose_linear(p_in_y, forward); }

RotatedGerm rotate_to_e1(const Polynomial& p, const RationalVector& v) {
  if (v.size() != p.nvars()) throw Error("direction has wrong dimension");
  bool zero = true;
  for (const auto& q : v) zero = zero && q == 0;
  if (zero) throw Error("direction must be nonzero");

  RationalMatrix forward{v};
  for (auto& row : orthogonal_complement(v)) forward.push_back(std::move(row));
  CoordinateChange change{forward, invert(forward)};
  return RotatedGerm{change.to_new(p), std::move(change), dot(v, v)};
}

}  // namespace milnor
