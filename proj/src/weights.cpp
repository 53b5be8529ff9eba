#include "milnor/weights.hpp"

#include <algorithm>
#include <numeric>

namespace milnor {

namespace {

// Rational null space of the matrix whose rows are (alpha, -1).
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const Rational f = rows[k][c];
      for (std::size_t j = 0; j < cols; ++j) rows[k][j] -= f * rows[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Weights> from_primitive(const std::vector<Rational>& v, int max_weight) {
  Integer lcm_den = 1;
  for (const auto& q : v) lcm_den = lcm(lcm_den, Integer(q.get_den()));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& q : v) {
    Integer z = Integer(q.get_num()) * (lcm_den / Integer(q.get_den()));
    g = gcd(g, z);
    ints.push_back(z);
  }
  if (g == 0) return std::nullopt;
  if (ints.back() < 0) g = -g;
  Weights w;
  for (std::size_t i = 0; i + 1 < ints.size(); ++i) {
    Integer di = ints[i] / g;
    if (di <= 0 || di > max_weight) return std::nullopt;
    w.d_i.push_back(static_cast<int>(di.get_si()));
  }
  Integer d = ints.back() / g;
  if (d <= 0 || !d.fits_sint_p()) return std::nullopt;
  w.d = static_cast<int>(d.get_si());
  return w;
}

}  // namespace

bool is_weighted_homogeneous(const Polynomial& p, const Weights& w) {
  if (w.d_i.size() != p.nvars()) return false;
  for (const auto& [m, c] : p.terms()) {
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += static_cast<long>(m[i]) * w.d_i[i];
    if (s != w.d) return false;
  }
  return true;
}

std::optional<Weights> detect_weights(const Polynomial& p, WeightSearch search) {
  if (p.is_zero()) return std::nullopt;
  const std::size_t n = p.nvars();
  for (const auto& [m, c] : p.terms())
    if (m.is_one()) return std::nullopt;

  std::vector<std::vector<Rational>> rows;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Rational> row;
    for (int e : m.exps) row.emplace_back(e);
    row.emplace_back(-1);
    rows.push_back(std::move(row));
  }
  auto basis = null_space(std::move(rows), n + 1);
  if (basis.empty()) return std::nullopt;
  if (basis.size() == 1) return from_primitive(basis[0], search.max_weight);

  // Several free directions: enumerate weight vectors, keeping the one with
  // the smallest total degree (first in lexicographic order on ties).
  if (n > 4) return std::nullopt;
  const Monomial& first = p.terms().begin()->first;
  std::optional<Weights> best;
  std::vector<int> w(n, 1);
  for (;;) {
    int d = 0;
    for (std::size_t i = 0; i < n; ++i) d += first[i] * w[i];
    if (!best || d < best->d) {
      Weights cand{w, d};
      if (is_weighted_homogeneous(p, cand)) best = cand;
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++w[k] <= search.max_weight) break;
      w[k] = 1;
      if (k == 0) return best;
    }
  }
}

Polynomial euler_vector_field(const Polynomial& p, const Weights& w) {
  Polynomial r(p.ring());
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    r += Polynomial::variable(p.ring(), i) * partial(p, i) * Rational(w.d_i.at(i));
  }
  return r;
}

}  // namespace milnor
