#include "milnor/local_algebra.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>

namespace milnor {

namespace {

struct Element {
  Polynomial poly;
  Monomial lm;
  int ecart = 0;
  bool alive = true;
};

Element make_element(Polynomial p) {
  const Rational lc = p.leading_coefficient();
  if (lc != 1) p *= 1 / lc;
  Monomial lm = p.leading_monomial();
  const int ecart = p.degree() - lm.degree();
  return Element{std::move(p), std::move(lm), ecart, true};
}

// h - (LC(h)/LC(g)) * (LM(h)/LM(g)) * g, with LM(g) | LM(h) and LC(g) = 1.
Polynomial reduce_leading(const Polynomial& h, const Element& g) {
  const Monomial shift = h.leading_monomial() / g.lm;
  return h - g.poly.times_monomial(shift, h.leading_coefficient());
}

// Monomials not divisible by any of `lms`, restricted to degree < bound when
// bound > 0. Sorted largest first in the local order.
std::vector<Monomial> staircase(const std::vector<Monomial>& lms, std::size_t nvars, int bound,
                                std::size_t limit) {
  std::set<Monomial, LocalDescending> seen;
  std::deque<Monomial> queue{Monomial(nvars)};
  std::vector<Monomial> out;
  seen.insert(queue.front());
  while (!queue.empty()) {
    Monomial m = std::move(queue.front());
    queue.pop_front();
    if (bound > 0 && m.degree() >= bound) continue;
    bool reducible = false;
    for (const auto& lm : lms)
      if (lm.divides(m)) {
        reducible = true;
        break;
      }
    if (reducible) continue;
    out.push_back(m);
    if (out.size() > limit) throw Error("staircase exceeds size limit");
    for (std::size_t i = 0; i < nvars; ++i) {
      Monomial next = m;
      next[i] += 1;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(), local_greater);
  return out;
}

std::optional<std::vector<int>> pure_powers(const std::vector<Monomial>& lms, std::size_t nvars) {
  std::vector<int> k(nvars, std::numeric_limits<int>::max());
  for (const auto& lm : lms) {
    int var = -1;
    int count = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (lm[i] > 0) {
        var = static_cast<int>(i);
        ++count;
      }
    if (count == 1) k[var] = std::min(k[var], lm[var]);
    if (count == 0) std::fill(k.begin(), k.end(), 0);  // unit ideal
  }
  for (int e : k)
    if (e == std::numeric_limits<int>::max()) return std::nullopt;
  return k;
}

// p modulo m^bound. When the leading monomial itself lies in m^bound the
// monomial is kept: it belongs to the ideal and still marks the staircase.
Polynomial clip(const Polynomial& p, int bound) {
  Polynomial t = p.truncated(bound);
  if (t.is_zero() && !p.is_zero()) return Polynomial(p.ring(), p.leading_monomial());
  return t;
}

constexpr std::size_t kStaircaseLimit = 200000;
constexpr long kMaxReductionSteps = 5'000'000;

class MoraEngine {
 public:
  MoraEngine(std::size_t nvars, int cap, int probe = 0) : nvars_(nvars), cap_(cap), trunc_(probe), probe_(probe) {}

  StandardBasis run(std::span<const Polynomial> gens) {
    saturate(gens);
    StandardBasis sb = snapshot();
    if (trunc_ == 0) {
      sb.complete = false;
      throw InconclusiveError(InconclusiveError::Reason::not_zero_dimensional, std::move(sb),
                              "critical point is not algebraically isolated: the local algebra is "
                              "infinite dimensional");
    }
    finalize(sb);
    return sb;
  }

  // Standard basis of I + m^probe. It is one of I itself when every standard
  // monomial has degree <= probe - 2: then m^(s+1) lies in I + m^(s+2), hence
  // in I by Nakayama.
  std::optional<StandardBasis> probe(std::span<const Polynomial> gens) {
    saturate(gens);
    StandardBasis sb = snapshot();
    finalize(sb);
    if (sb.truncation_degree >= probe_) return std::nullopt;
    return sb;
  }

 private:
  void saturate(std::span<const Polynomial> gens) {
    for (const auto& g : gens) {
      if (g.nvars() != nvars_) throw Error("generators live in different rings");
      if (!g.is_zero()) insert(g);
    }
    if (elements_.empty() && probe_ == 0) throw Error("standard basis of the zero ideal");
    if (!ring_) ring_ = gens[0].ring();

    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const auto& a, const auto& b) {
        return pair_key(a) < pair_key(b);
      });
      auto [i, j] = *best;
      pairs_.erase(best);
      if (!elements_[i].alive || !elements_[j].alive) continue;
      Polynomial s = spoly(elements_[i], elements_[j]);
      Polynomial h = reduce(std::move(s));
      if (!h.is_zero()) insert(std::move(h));
    }
  }

  std::tuple<int, std::size_t, std::size_t> pair_key(const std::pair<std::size_t, std::size_t>& p) const {
    return {elements_[p.first].lm.lcm(elements_[p.second].lm).degree(), p.first, p.second};
  }

  Polynomial spoly(const Element& a, const Element& b) const {
    const Monomial l = a.lm.lcm(b.lm);
    return a.poly.times_monomial(l / a.lm, 1) - b.poly.times_monomial(l / b.lm, 1);
  }

  void check_cap(const Polynomial& h) {
    if (trunc_ == 0 && h.degree() > cap_)
      throw InconclusiveError(InconclusiveError::Reason::cap_exhausted, snapshot(),
                              "degree cap " + std::to_string(cap_) +
                                  " exhausted before the local algebra was proven finite");
    if (++steps_ > kMaxReductionSteps)
      throw InconclusiveError(InconclusiveError::Reason::cap_exhausted, snapshot(),
                              "reduction step budget exhausted");
  }

  Polynomial reduce(Polynomial h) {
    if (trunc_ > 0) return reduce_truncated(std::move(h));
    return reduce_mora(std::move(h));
  }

  // Mora's weak normal form with ecart control.
  Polynomial reduce_mora(Polynomial h) {
    std::vector<Element> extra;
    while (!h.is_zero()) {
      check_cap(h);
      const Monomial& lm = h.leading_monomial();
      const Element* pick = nullptr;
      auto consider = [&](const Element& e) {
        if (!e.alive || !e.lm.divides(lm)) return;
        if (pick == nullptr || e.ecart < pick->ecart) pick = &e;
      };
      for (const auto& e : elements_) consider(e);
      for (const auto& e : extra) consider(e);
      if (pick == nullptr) break;
      const int h_ecart = h.degree() - lm.degree();
      Element chosen = *pick;
      if (chosen.ecart > h_ecart) extra.push_back(make_element(h));
      h = reduce_leading(h, chosen);
      // A highest corner found mid-reduction would be stale for `extra`;
      // the truncated route takes over on the next call.
    }
    return h;
  }

  // Full reduction modulo m^trunc_: every term is reduced, so the result is
  // supported on standard monomials. Terminates because only finitely many
  // monomials have degree < trunc_.
  Polynomial reduce_truncated(Polynomial h) const {
    h = h.truncated(trunc_);
    Polynomial result(h.ring());
    while (!h.is_zero()) {
      const Monomial lm = h.leading_monomial();
      const Element* pick = nullptr;
      for (const auto& e : elements_)
        if (e.alive && e.lm.divides(lm)) {
          pick = &e;
          break;
        }
      if (pick == nullptr) {
        result.add_term(lm, h.leading_coefficient());
        h.add_term(lm, -h.leading_coefficient());
        continue;
      }
      h = reduce_leading(h, *pick).truncated(trunc_);
    }
    return result;
  }

  void insert(Polynomial h) {
    if (!ring_) ring_ = h.ring();
    if (trunc_ > 0) {
      h = h.truncated(trunc_);
      if (h.is_zero()) return;
    }
    check_cap(h);
    const std::size_t idx = elements_.size();
    elements_.push_back(make_element(std::move(h)));
    for (std::size_t k = 0; k < idx; ++k)
      if (elements_[k].alive) pairs_.emplace_back(k, idx);
    update_corner();
  }

  void update_corner() {
    std::vector<Monomial> lms;
    for (const auto& e : elements_)
      if (e.alive) lms.push_back(e.lm);
    auto powers = pure_powers(lms, nvars_);
    if (!powers) return;
    for (int k : *powers)
      if (k > cap_)
        throw InconclusiveError(InconclusiveError::Reason::cap_exhausted, snapshot(),
                                "pure power exponent exceeds the degree cap");
    const int bound = std::max<int>(1, static_cast<int>(staircase(lms, nvars_, 0, kStaircaseLimit).size()));
    if (trunc_ != 0 && bound >= trunc_) return;
    trunc_ = bound;
    for (auto& e : elements_)
      if (e.alive) e = make_element(clip(e.poly, trunc_));
  }

  StandardBasis snapshot() const {
    StandardBasis sb;
    sb.ecart_bound = cap_;
    sb.truncation_degree = trunc_;
    for (const auto& e : elements_)
      if (e.alive) sb.generators.push_back(e.poly);
    return sb;
  }

  // Inter-reduce, tighten the truncation degree, fully reduce tails.
  void finalize(StandardBasis& sb) {
    std::vector<Element> kept;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const auto& e = elements_[i];
      if (!e.alive) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < elements_.size() && !redundant; ++j) {
        if (j == i || !elements_[j].alive) continue;
        const auto& o = elements_[j];
        if (o.lm.divides(e.lm) && (o.lm != e.lm || j < i)) redundant = true;
      }
      if (!redundant) kept.push_back(e);
    }
    std::vector<Monomial> lms;
    for (const auto& e : kept) lms.push_back(e.lm);
    auto std_monomials = staircase(lms, nvars_, trunc_, kStaircaseLimit);
    int max_deg = 0;
    for (const auto& m : std_monomials) max_deg = std::max(max_deg, m.degree());
    trunc_ = max_deg + 1;

    std::sort(kept.begin(), kept.end(), [](const Element& a, const Element& b) { return local_greater(a.lm, b.lm); });
    elements_.clear();
    for (auto& e : kept) elements_.push_back(make_element(clip(e.poly, trunc_)));
    // Tail reduction: reduce everything below each leading term.
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      Element self = elements_[i];
      elements_[i].alive = false;
      Polynomial tail = self.poly;
      tail.add_term(self.lm, -1);
      Polynomial reduced = reduce_truncated(tail);
      reduced.add_term(self.lm, 1);
      elements_[i] = make_element(std::move(reduced));
    }
    sb.generators.clear();
    for (const auto& e : elements_) sb.generators.push_back(e.poly);
    sb.truncation_degree = trunc_;
    sb.complete = true;
  }

  std::size_t nvars_;
  int cap_;
  RingPtr ring_;
  std::vector<Element> elements_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  int trunc_ = 0;
  int probe_ = 0;
  long steps_ = 0;
};

// Truncation degrees tried before falling back to Mora's algorithm, whose
// weak normal forms can grow to the degree cap before a corner appears.
constexpr int kProbes[] = {8, 16, 32};

}  // namespace

std::vector<Monomial> StandardBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : generators) out.push_back(g.leading_monomial());
  return out;
}

StandardBasis standard_basis(std::span<const Polynomial> ideal_gens, int cap) {
  if (ideal_gens.empty()) throw Error("standard basis needs at least one generator");
  if (cap < 1) throw Error("degree cap must be positive");
  for (int t : kProbes) {
    if (t > cap) break;
    try {
      MoraEngine probe(ideal_gens[0].nvars(), cap, t);
      if (auto sb = probe.probe(ideal_gens)) return std::move(*sb);
    } catch (const InconclusiveError&) {
    }
  }
  MoraEngine engine(ideal_gens[0].nvars(), cap);
  return engine.run(ideal_gens);
}

Polynomial normal_form(const Polynomial& p, const StandardBasis& sb) {
  if (!sb.complete) throw Error("normal form requires a complete standard basis");
  const int bound = sb.truncation_degree;
  std::vector<Element> elements;
  for (const auto& g : sb.generators) elements.push_back(make_element(g));
  Polynomial h = p.truncated(bound);
  Polynomial result(p.ring());
  while (!h.is_zero()) {
    const Monomial lm = h.leading_monomial();
    const Element* pick = nullptr;
    for (const auto& e : elements)
      if (e.lm.divides(lm)) {
        pick = &e;
        break;
      }
    if (pick == nullptr) {
      result.add_term(lm, h.leading_coefficient());
      h.add_term(lm, -h.leading_coefficient());
      continue;
    }
    h = reduce_leading(h, *pick).truncated(bound);
  }
  return result;
}

RationalVector LocalAlgebra::coordinates(const Polynomial& p) const {
  Polynomial nf = normal_form(p, sb);
  RationalVector v(dim, 0);
  for (const auto& [m, c] : nf.terms()) {
    const long k = index_of(m);
    if (k < 0) throw Error("normal form left the standard monomials");
    v[static_cast<std::size_t>(k)] = c;
  }
  return v;
}

long LocalAlgebra::index_of(const Monomial& m) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), m, local_greater);
  if (it == basis.end() || *it != m) return -1;
  return static_cast<long>(it - basis.begin());
}

LocalAlgebra local_algebra(const StandardBasis& sb) {
  if (!sb.complete) throw Error("local algebra requires a complete standard basis");
  if (sb.generators.empty()) throw Error("empty standard basis");
  const RingPtr& ring = sb.generators.front().ring();
  const std::size_t n = ring->nvars();
  LocalAlgebra a;
  a.sb = sb;
  a.basis = staircase(sb.leading_monomials(), n, sb.truncation_degree, kStaircaseLimit);
  a.dim = a.basis.size();
  for (std::size_t i = 0; i < n; ++i) {
    RationalMatrix table(a.dim, RationalVector(a.dim, 0));
    for (std::size_t c = 0; c < a.dim; ++c) {
      Monomial shifted = a.basis[c];
      shifted[i] += 1;
      RationalVector col = a.coordinates(Polynomial(ring, shifted));
      for (std::size_t r = 0; r < a.dim; ++r) table[r][c] = col[r];
    }
    a.mult_tables.push_back(std::move(table));
  }
  return a;
}

LocalAlgebra gradient_algebra(const Polynomial& g, int cap) {
  std::vector<Polynomial> grad = gradient(g);
  return local_algebra(standard_basis(grad, cap));
}

}  // namespace milnor
