#include "milnor/polar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace milnor {

namespace {

constexpr int kRadii = 5;
constexpr std::size_t kMaxCriticalPerSphere = 16;
constexpr std::size_t kMaxPolarPerSphere = 64;
constexpr int kDirectionRetries = 16;
constexpr int kMaxExponent = 32;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string fmt(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

long sign_pow(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

Vec to_vec(const RationalVector& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = to_double(v[i]);
  return out;
}

std::vector<double> radii(const OracleConfig& cfg) {
  std::vector<double> r;
  for (int j = 0; j < kRadii; ++j) r.push_back(cfg.epsilon * std::pow(0.5, j));
  return r;
}

IdentityCheck check(std::string identity, long lhs, long rhs, bool enforced = true) {
  return IdentityCheck{std::move(identity), lhs, rhs, lhs == rhs, enforced};
}

// Chains of points across radii (index 0 = largest radius), matched by unit
// direction starting from the smallest radius. Chains extend upward while
// the matching stays a bijection; the two smallest radii must match.
std::vector<std::vector<Vec>> match_chains(const std::vector<std::vector<Vec>>& by_radius, const std::string& what) {
  const int last = static_cast<int>(by_radius.size()) - 1;
  std::vector<std::vector<Vec>> chains;
  for (const auto& p : by_radius[last]) chains.push_back({p});
  for (int j = last - 1; j >= 0; --j) {
    const auto& level = by_radius[j];
    bool ok = level.size() == chains.size();
    std::vector<int> assign(chains.size(), -1);
    std::vector<char> used(level.size(), 0);
    for (std::size_t c = 0; ok && c < chains.size(); ++c) {
      const Vec d = chains[c].front().normalized();
      double d1 = INFINITY, d2 = INFINITY;
      int best = -1;
      for (std::size_t i = 0; i < level.size(); ++i) {
        const double dist = (level[i].normalized() - d).norm();
        if (dist < d1) {
          d2 = d1;
          d1 = dist;
          best = static_cast<int>(i);
        } else if (dist < d2) {
          d2 = dist;
        }
      }
      if (best < 0 || used[best] || !(d1 < 0.5 * d2)) {
        ok = false;
        break;
      }
      used[best] = 1;
      assign[c] = best;
    }
    if (!ok) {
      if (j == last - 1)
        throw GenericityError(what + ": branches at the two smallest radii do not match (" +
                              std::to_string(level.size()) + " vs " + std::to_string(chains.size()) + " points)");
      break;
    }
    for (std::size_t c = 0; c < chains.size(); ++c) chains[c].insert(chains[c].begin(), level[assign[c]]);
  }
  std::sort(chains.begin(), chains.end(),
            [](const auto& a, const auto& b) { return lexicographic_less(a.back(), b.back()); });
  return chains;
}

std::vector<Vec> critical_points_on_sphere(const PolynomialField& F, double r, const OracleConfig& cfg) {
  const NewtonSystem sys = [&F, r](const Vec& x, Vec& out, Mat& j) {
    const auto n = x.size();
    out.resize(n + 1);
    j.resize(n + 1, n);
    out.head(n) = F.gradient(x);
    out[n] = (x.squaredNorm() - r * r) / (2 * r);
    j.topRows(n) = F.hessian(x);
    j.row(n) = x.transpose() / r;
  };
  std::vector<Vec> hits;
  for (const auto& seed : sphere_samples(F.dim(), r, cfg.grid)) {
    NewtonResult res = damped_newton(sys, seed, cfg.newton_tol, cfg.max_newton_iter, 2 * r);
    if (res.converged) hits.push_back(res.x);
  }
  return dedupe(std::move(hits), r * 1e-3);
}

std::vector<std::vector<Vec>> critical_by_radius(const PolynomialField& F, const OracleConfig& cfg) {
  std::vector<std::vector<Vec>> out;
  for (double r : radii(cfg)) {
    auto pts = critical_points_on_sphere(F, r, cfg);
    if (pts.size() > kMaxCriticalPerSphere)
      throw UnsupportedGermError("critical locus meets the sphere of radius " + fmt(r) + " in " +
                                 std::to_string(pts.size()) + " clusters; only dim Sigma_f <= 1 is supported");
    out.push_back(std::move(pts));
  }
  return out;
}

bool near_any(const Vec& x, const std::vector<Vec>& pts, double radius) {
  for (const auto& p : pts)
    if ((x - p).norm() < radius) return true;
  return false;
}

struct Frame {
  Vec v;  // unit direction
  Mat w;  // orthonormal complement
};

Frame make_frame(const RationalVector& dir) {
  Frame fr;
  fr.v = to_vec(dir).normalized();
  fr.w = orthonormal_complement(fr.v);
  return fr;
}

// Polar points on the sphere of radius r, off the sampled critical locus.
std::vector<Vec> polar_points_on_sphere(const PolynomialField& F, const Frame& fr, double r,
                                        const std::vector<Vec>& critical, const OracleConfig& cfg) {
  const NewtonSystem sys = [&F, &fr, r](const Vec& x, Vec& out, Mat& j) {
    const auto n = x.size();
    out.resize(n);
    j.resize(n, n);
    out.head(n - 1) = fr.w.transpose() * F.gradient(x);
    out[n - 1] = (x.squaredNorm() - r * r) / (2 * r);
    j.topRows(n - 1) = fr.w.transpose() * F.hessian(x);
    j.row(n - 1) = x.transpose() / r;
  };
  std::vector<Vec> hits;
  for (const auto& seed : sphere_samples(F.dim(), r, cfg.grid)) {
    NewtonResult res = damped_newton(sys, seed, cfg.newton_tol, cfg.max_newton_iter, 2 * r);
    if (!res.converged) continue;
    if (F.gradient(res.x).norm() < 1e-9 || near_any(res.x, critical, r * 1e-3)) continue;
    hits.push_back(res.x);
  }
  return dedupe(std::move(hits), r * 1e-3);
}

// Polar and critical points in the slice {<v, x> = c} inside B_epsilon.
struct SlicePoints {
  std::vector<Vec> polar;
  std::vector<Vec> critical;
};

SlicePoints slice_critical_points(const PolynomialField& F, const Frame& fr, double c, const OracleConfig& cfg) {
  const double eps = cfg.epsilon;
  const double rad = std::sqrt(std::max(0.0, eps * eps - c * c));
  const NewtonSystem sys = [&F, &fr, c](const Vec& x, Vec& out, Mat& j) {
    const auto n = x.size();
    out.resize(n);
    j.resize(n, n);
    out.head(n - 1) = fr.w.transpose() * F.gradient(x);
    out[n - 1] = fr.v.dot(x) - c;
    j.topRows(n - 1) = fr.w.transpose() * F.hessian(x);
    j.row(n - 1) = fr.v.transpose();
  };
  SlicePoints out;
  std::vector<Vec> polar, crit;
  const Vec centre = c * fr.v;
  for (const auto& y : cube_lattice(F.dim() - 1, rad, cfg.grid)) {
    if (y.norm() > rad) continue;
    NewtonResult res = damped_newton(sys, centre + fr.w * y, cfg.newton_tol, cfg.max_newton_iter, 2 * eps);
    if (!res.converged || res.x.norm() >= eps) continue;
    if (F.gradient(res.x).norm() < 1e-9)
      crit.push_back(res.x);
    else
      polar.push_back(res.x);
  }
  out.critical = dedupe(std::move(crit), eps * 1e-4);
  for (auto& p : dedupe(std::move(polar), eps * 1e-4))
    if (!near_any(p, out.critical, eps * 1e-4)) out.polar.push_back(std::move(p));
  return out;
}

// Smallest |f| among nonzero critical values of f on the slice disk and on
// its boundary circle.
double slice_critical_value_gap(const PolynomialField& F, const Frame& fr, double c, const OracleConfig& cfg,
                                std::vector<std::string>& log) {
  double beta = INFINITY;
  for (const auto& p : slice_critical_points(F, fr, c, cfg).polar) beta = std::min(beta, std::abs(F.value(p)));
  if (F.dim() == 3) {
    const double rad = std::sqrt(cfg.epsilon * cfg.epsilon - c * c);
    const int m = 4096;
    std::vector<double> vals(m);
    for (int i = 0; i < m; ++i) {
      const double t = 2 * M_PI * i / m;
      Vec y(2);
      y << rad * std::cos(t), rad * std::sin(t);
      vals[i] = F.value(c * fr.v + fr.w * y);
    }
    for (int i = 0; i < m; ++i) {
      const double a = vals[(i + m - 1) % m], b = vals[i], d = vals[(i + 1) % m];
      if ((b >= a && b >= d) || (b <= a && b <= d)) {
        if (std::abs(b) < 1e-12)
          throw GenericityError("zero level of the slice is tangent to the boundary circle at offset " + fmt(c));
        beta = std::min(beta, std::abs(b));
      }
    }
  }
  if (!std::isfinite(beta)) log.push_back("no nonzero critical value in the slice at offset " + fmt(c));
  return beta;
}

SliceGammas slices_at(const PolynomialField& F, const Frame& fr, double a, const OracleConfig& cfg) {
  SliceGammas g;
  g.offset = a;
  if (cfg.slice_level) {
    g.level = *cfg.slice_level;
  } else {
    const double beta =
        std::min(slice_critical_value_gap(F, fr, a, cfg, g.log), slice_critical_value_gap(F, fr, -a, cfg, g.log));
    g.level = std::isfinite(beta) ? std::min(1e-3, beta / 10) : 1e-4;
  }
  g.eta_slice = cfg.eta_slice ? *cfg.eta_slice : g.level / 20;
  if (!(g.eta_slice < g.level)) throw Error("eta_slice must be below the slice level");
  auto chi = [&](double offset, double level) {
    return slice_chi(F, fr.v, offset, level, cfg.epsilon, cfg.circle_samples, g.eta_slice, cfg.grid).chi;
  };
  const long zero_p = chi(a, 0), zero_m = chi(-a, 0);
  g.pp = zero_p - chi(a, g.level);
  g.pm = zero_m - chi(-a, g.level);
  g.mp = zero_p - chi(a, -g.level);
  g.mm = zero_m - chi(-a, -g.level);
  g.log.push_back("offset " + fmt(a) + ", level " + fmt(g.level) + ", band " + fmt(g.eta_slice) + ": gamma(++,+-,-+,--) = (" +
                  std::to_string(g.pp) + "," + std::to_string(g.pm) + "," + std::to_string(g.mp) + "," +
                  std::to_string(g.mm) + ")");
  return g;
}

SliceGammas slice_gammas(const PolynomialField& F, const Frame& fr, const OracleConfig& cfg) {
  if (F.dim() != 3) throw UnsupportedGermError("slice defects need three variables");
  const double a = cfg.slice_offset ? *cfg.slice_offset : cfg.epsilon / 4;
  SliceGammas g = slices_at(F, fr, a, cfg);
  const SliceGammas h = slices_at(F, fr, a / 2, cfg);
  g.log.insert(g.log.end(), h.log.begin(), h.log.end());
  if (g.pp != h.pp || g.pm != h.pm || g.mp != h.mp || g.mm != h.mm)
    throw OracleError(OracleError::Reason::unstable, "slice defects change between offsets " + fmt(a) + " and " + fmt(a / 2));
  return g;
}

// Gauss-Newton on grad f = 0, <v, x> = c from a seed.
std::optional<Vec> critical_point_in_slice(const PolynomialField& F, const Frame& fr, double c, const Vec& seed,
                                           const OracleConfig& cfg) {
  const NewtonSystem sys = [&F, &fr, c](const Vec& x, Vec& out, Mat& j) {
    const auto n = x.size();
    out.resize(n + 1);
    j.resize(n + 1, n);
    out.head(n) = F.gradient(x);
    out[n] = fr.v.dot(x) - c;
    j.topRows(n) = F.hessian(x);
    j.row(n) = fr.v.transpose();
  };
  NewtonResult res = damped_newton(sys, seed, cfg.newton_tol, 4 * cfg.max_newton_iter, 2 * cfg.epsilon);
  if (!res.converged) return std::nullopt;
  return res.x;
}

// Exact local degree of the slice germ R(c, y_q + z), where R is f in the
// coordinates y = forward x and <v, x> = c. The branch point is snapped to a
// rational point of the plane: negligible coordinates become 0, the others
// except a pivot are rationalized with growing denominators, and the pivot
// is solved from <v, x> = c. The first snap at which the slice gradient
// vanishes exactly is used.
std::optional<long> exact_tau(const RotatedGerm& rg, const RationalVector& dir, const Rational& c, const Vec& q,
                              int cap, std::string& note) {
  const std::size_t n = rg.polynomial.nvars();
  std::vector<char> small(n);
  std::size_t pivot = n;
  for (std::size_t j = 0; j < n; ++j) {
    small[j] = std::abs(q[static_cast<Eigen::Index>(j)]) < 1e-4 * q.norm();
    if (!small[j] && dir[j] != 0 && (pivot == n || abs(dir[j]) > abs(dir[pivot]))) pivot = j;
  }
  if (pivot == n) {
    note = "exact slice degree unavailable: no pivot coordinate";
    return std::nullopt;
  }
  const RingPtr ring = make_default_ring(n - 1);
  for (long den : {16L, 256L, 4096L, 65536L, 1L << 20}) {
    RationalVector x(n, Rational(0));
    Rational rest = c;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == pivot || small[j]) continue;
      x[j] = rationalize(q[static_cast<Eigen::Index>(j)], den);
      rest -= dir[j] * x[j];
    }
    x[pivot] = rest / dir[pivot];
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < n; ++i) {
      Rational yi = 0;
      for (std::size_t j = 0; j < n; ++j) yi += rg.change.forward[i][j] * x[j];
      if (i == 0)
        images.emplace_back(ring, yi);
      else
        images.push_back(Polynomial(ring, yi) + Polynomial::variable(ring, i - 1));
    }
    const Polynomial h = rg.polynomial.compose(images);
    bool linear_free = true;
    for (std::size_t i = 0; i < n - 1; ++i) linear_free = linear_free && h.coefficient(Monomial::variable(n - 1, i)) == 0;
    if (!linear_free) continue;
    try {
      return elk_degree(h - Polynomial(ring, h.coefficient(Monomial(n - 1))), cap).degree;
    } catch (const Error& e) {
      note = std::string("exact slice degree unavailable: ") + e.what();
      return std::nullopt;
    }
  }
  note = "exact slice degree unavailable: branch point is not rational";
  return std::nullopt;
}

BranchGammas branch_gammas(const Polynomial& f, const PolynomialField& F, const RationalVector& dir, const Frame& fr,
                           const std::vector<std::vector<Vec>>& chains, const OracleConfig& cfg, int cap) {
  BranchGammas out;
  const Vec vint = to_vec(dir);
  const double vnorm = vint.norm();
  const double a_req = cfg.slice_offset ? *cfg.slice_offset : cfg.epsilon / 4;
  const Rational c = rationalize(a_req * vnorm, 1024);
  const double a = to_double(c) / vnorm;
  const RotatedGerm rg = rotate_to_e1(f, dir);
  out.log.push_back("critical branch slices at <v/|v|, x> = +-" + fmt(a) + " (<v, x> = +-" + to_string(c) + ")");

  for (const auto& chain : chains) {
    CriticalBranch cb;
    cb.points = chain;
    const Vec& p = chain.back();
    cb.sign_x1 = sign_of(fr.v.dot(p));
    std::vector<long> taus;
    for (int half = 0; half < 2; ++half) {
      const double off = cb.sign_x1 * a / (half ? 2 : 1);
      const Rational c_off = Rational(cb.sign_x1) * c / (half ? 2 : 1);
      const Vec seed = p * (off / fr.v.dot(p));
      const auto q = critical_point_in_slice(F, fr, off, seed, cfg);
      if (!q)
        throw OracleError(OracleError::Reason::no_convergence,
                          "critical branch point not found in the slice at offset " + fmt(off));
      // Radius: half the distance to any other critical point of the slice.
      OracleConfig sub = cfg;
      double rad = std::abs(off) / 2;
      const SlicePoints sp = slice_critical_points(F, fr, off, cfg);
      for (const auto& o : sp.polar) rad = std::min(rad, (o - *q).norm() / 2);
      for (const auto& o : sp.critical)
        if ((o - *q).norm() > cfg.epsilon * 1e-3) rad = std::min(rad, (o - *q).norm() / 2);
      sub.epsilon = rad;
      sub.eta.reset();
      const AffineSlice slice(F, *q, fr.w);
      const NumericDegree nd = numeric_degree(slice, sub);
      long tau = nd.degree;
      std::string note;
      const auto exact = exact_tau(rg, dir, c_off, *q, cap, note);
      if (exact && *exact != tau)
        throw OracleError(OracleError::Reason::unstable, "slice degree at the critical branch: numeric " +
                                                             std::to_string(tau) + ", exact " + std::to_string(*exact));
      if (half == 0) cb.tau_exact = exact;
      out.log.push_back("tau at offset " + fmt(off) + ": " + std::to_string(tau) +
                        (exact ? " (exact route agrees)" : " (" + note + ")"));
      taus.push_back(tau);
    }
    if (taus[0] != taus[1])
      throw OracleError(OracleError::Reason::unstable, "tau differs between offsets a and a/2: " +
                                                           std::to_string(taus[0]) + " vs " + std::to_string(taus[1]));
    cb.tau = taus[0];
    (cb.sign_x1 > 0 ? out.plus : out.minus) += cb.tau;
    out.branches.push_back(std::move(cb));
  }
  return out;
}

void screen_critical_direction(const Frame& fr, const std::vector<std::vector<Vec>>& chains) {
  for (const auto& chain : chains)
    for (const auto& p : chain)
      if (std::abs(fr.v.dot(p)) < 1e-3 * p.norm())
        throw GenericityError("the linear form nearly vanishes on the critical locus");
}

std::vector<PolarBranch> polar_branches(const PolynomialField& F, const Frame& fr,
                                        const std::vector<std::vector<Vec>>& critical, const OracleConfig& cfg,
                                        std::vector<std::string>& log) {
  const auto rs = radii(cfg);
  std::vector<std::vector<Vec>> by_radius;
  for (std::size_t j = 0; j < rs.size(); ++j) {
    auto pts = polar_points_on_sphere(F, fr, rs[j], critical[j], cfg);
    if (pts.size() > kMaxPolarPerSphere)
      throw GenericityError("polar set meets the sphere of radius " + fmt(rs[j]) + " in " + std::to_string(pts.size()) +
                            " points; it is not a curve");
    by_radius.push_back(std::move(pts));
  }
  const auto chains = match_chains(by_radius, "polar curve");
  std::vector<PolarBranch> out;
  const std::size_t n = F.dim();
  for (const auto& chain : chains) {
    PolarBranch b;
    b.points = chain;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const Vec& x = chain[i];
      const Mat h = F.hessian(x);
      const double det = h.determinant();
      const double scale = std::pow(std::max(h.norm(), 1e-300), static_cast<double>(n));
      if (!(std::abs(det) > 1e-12 * scale)) throw GenericityError("Hessian determinant vanishes on a polar point");
      if (!(std::abs(F.value(x)) > 1e-14)) throw GenericityError("f vanishes on a polar point");
      if (!(std::abs(fr.v.dot(x)) > 1e-6 * x.norm())) throw GenericityError("the linear form vanishes on a polar point");
      const int s_fx1 = sign_of(fr.v.dot(F.gradient(x)));
      const int s_x1 = sign_of(fr.v.dot(x));
      const int s_det = sign_of(det);
      if (i == 0) {
        b.sign_fx1 = s_fx1;
        b.sign_x1 = s_x1;
        b.sigma = s_det;
      } else if (s_fx1 != b.sign_fx1 || s_x1 != b.sign_x1 || s_det != b.sigma) {
        throw GenericityError("signs change along a polar branch");
      }
    }
    out.push_back(std::move(b));
  }
  log.push_back("polar curve: " + std::to_string(out.size()) + " half-branch(es), matched over " +
                std::to_string(out.empty() ? 0 : out.front().points.size()) + " radii; signs constant; Hessian, f and " +
                "the linear form nonzero on all samples");
  return out;
}

std::vector<std::vector<Vec>> critical_chains(const PolynomialField& F, const OracleConfig& cfg) {
  const auto by_radius = critical_by_radius(F, cfg);
  bool empty = true;
  for (const auto& l : by_radius) empty = empty && l.empty();
  if (empty) return {};
  return match_chains(by_radius, "critical locus");
}

PolarIndexReport polar_once(const Polynomial& f, const PolynomialField& F, const RationalVector& dir,
                            const std::vector<std::vector<Vec>>& crit_chains,
                            const std::vector<std::vector<Vec>>& crit_by_radius, const OracleConfig& cfg) {
  PolarIndexReport r;
  r.n = f.nvars();
  r.direction = dir;
  r.critical_dim = crit_chains.empty() ? 0 : 1;
  const Frame fr = make_frame(dir);
  screen_critical_direction(fr, crit_chains);
  if (r.critical_dim == 1) r.genericity_log.push_back("linear form nonzero on the sampled critical locus");

  r.branches = polar_branches(F, fr, crit_by_radius, cfg, r.genericity_log);
  std::tie(r.lambda_plus, r.lambda_minus) = lambda_indices(r.branches);

  if (r.n == 3) {
    SliceGammas g = slice_gammas(F, fr, cfg);
    r.gamma_pp = g.pp;
    r.gamma_pm = g.pm;
    r.gamma_mp = g.mp;
    r.gamma_mm = g.mm;
    r.genericity_log.insert(r.genericity_log.end(), g.log.begin(), g.log.end());
    r.slices = std::move(g);
  } else if (r.critical_dim == 0) {
    r.gamma_pp = r.gamma_pm = r.gamma_mp = r.gamma_mm = 0;
    r.genericity_log.push_back("isolated critical point: slice defects vanish");
  }

  std::optional<std::pair<long, long>> polar_chi, onedim_chi;
  if (r.gamma_pp) polar_chi = chi_khim_polar(r, &r.checks);
  if (r.critical_dim == 1) {
    BranchGammas bg = branch_gammas(f, F, dir, fr, crit_chains, cfg, 64);
    r.gamma_plus = bg.plus;
    r.gamma_minus = bg.minus;
    r.critical_branches = std::move(bg.branches);
    r.genericity_log.insert(r.genericity_log.end(), bg.log.begin(), bg.log.end());
    onedim_chi = chi_khim_onedim(r.lambda_plus, r.lambda_minus, *r.gamma_plus, *r.gamma_minus, r.n, &r.checks);
    if (r.gamma_pp) {
      const long s = sign_pow(r.n - 1);
      r.checks.push_back(check("gamma(-,-) = gamma-", *r.gamma_mm, *r.gamma_minus));
      r.checks.push_back(check("gamma(-,+) = gamma+", *r.gamma_mp, *r.gamma_plus));
      r.checks.push_back(check("gamma(+,+) = (-1)^(n-1) gamma+", *r.gamma_pp, s * *r.gamma_plus));
      r.checks.push_back(check("gamma(+,-) = (-1)^(n-1) gamma-", *r.gamma_pm, s * *r.gamma_minus));
    }
  }
  if (polar_chi && onedim_chi) {
    r.checks.push_back(check("fibre_neg: polar = one-dimensional", polar_chi->first, onedim_chi->first));
    r.checks.push_back(check("fibre_pos: polar = one-dimensional", polar_chi->second, onedim_chi->second));
  }
  const auto chosen = polar_chi ? *polar_chi : *onedim_chi;
  r.chi_fibre_neg = chosen.first;
  r.chi_fibre_pos = chosen.second;

  const auto [le, ge] = link_relations(r.chi_fibre_pos, r.chi_fibre_neg, r.n);
  const long eq = le + ge - chi_sphere(r.n);
  r.chi_link = eq;
  if (r.critical_dim == 1) {
    const long by_parity = r.n % 2 == 0 ? 2 - (r.lambda_plus + r.lambda_minus) : *r.gamma_plus + *r.gamma_minus;
    r.checks.push_back(check("link{f=0} from indices = link{f=0} from fibres", by_parity, eq));
  }
  for (const auto& c : r.checks)
    if (c.enforced && !c.holds)
      throw OracleError(OracleError::Reason::unstable, "identity fails: " + c.identity + " (" + std::to_string(c.lhs) +
                                                           " vs " + std::to_string(c.rhs) + ")");
  return r;
}

int fitted_n0(const PolynomialField& F, const std::vector<PolarBranch>& branches, const RationalVector& dir) {
  const Vec v = to_vec(dir).normalized();
  double worst = 0;
  for (const auto& b : branches) {
    if (b.points.size() < 2) continue;
    std::vector<double> lx, ly;
    for (const auto& x : b.points) {
      lx.push_back(std::log(std::abs(v.dot(x))));
      ly.push_back(std::log(std::abs(v.dot(F.gradient(x)))));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx > 0) worst = std::max(worst, sxy / sxx);
  }
  return static_cast<int>(std::floor(worst)) + 1;
}

Polynomial perturbation(const Polynomial& f, const RationalVector& dir, int k) {
  Polynomial lin(f.ring());
  for (std::size_t i = 0; i < dir.size(); ++i) lin += Polynomial::variable(f.ring(), i) * dir[i];
  return f + lin.pow(static_cast<unsigned>(k));
}

}  // namespace

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw Error("cannot rationalize a non-finite value");
  // Continued fraction convergents h/k with k <= max_den.
  Integer h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const Integer ai(a);
    const Integer h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1 / frac;
  }
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

RationalVector primitive_direction(const RationalVector& v) {
  Integer l = 1;
  bool zero = true;
  for (const auto& q : v) {
    zero = zero && q == 0;
    l = lcm(l, Integer(q.get_den()));
  }
  if (zero) throw Error("direction must be nonzero");
  Integer g = 0;
  std::vector<Integer> ints;
  for (const auto& q : v) {
    Integer z = Integer(q.get_num()) * (l / Integer(q.get_den()));
    ints.push_back(z);
    g = gcd(g, z);
  }
  RationalVector out;
  for (const auto& z : ints) out.emplace_back(Integer(z / g));
  return out;
}

std::vector<CriticalBranch> sample_critical_locus(const Polynomial& f, const OracleConfig& cfg,
                                                  std::vector<std::string>* log) {
  const PolynomialField F(f);
  std::vector<CriticalBranch> out;
  for (auto& chain : critical_chains(F, cfg)) {
    CriticalBranch c;
    c.points = std::move(chain);
    out.push_back(std::move(c));
  }
  if (log) log->push_back("critical locus: " + std::to_string(out.size()) + " half-branch(es)");
  return out;
}

std::vector<PolarBranch> sample_polar_curve(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg,
                                            std::vector<std::string>* log) {
  cfg.validate();
  if (f.nvars() < 2) throw UnsupportedGermError("the polar curve needs at least two variables");
  const PolynomialField F(f);
  const auto crit = critical_by_radius(F, cfg);
  std::vector<std::string> local;
  auto out = polar_branches(F, make_frame(primitive_direction(v)), crit, cfg, local);
  if (log) log->insert(log->end(), local.begin(), local.end());
  return out;
}

std::pair<long, long> lambda_indices(const std::vector<PolarBranch>& branches) {
  long plus = 0, minus = 0;
  for (const auto& b : branches) (b.sign_fx1 > 0 ? plus : minus) += b.sigma;
  return {plus, minus};
}

SliceGammas gamma_slice_indices(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg) {
  cfg.validate();
  const PolynomialField F(f);
  return slice_gammas(F, make_frame(primitive_direction(v)), cfg);
}

BranchGammas gamma_branch_indices(const Polynomial& f, const RationalVector& v, const OracleConfig& cfg) {
  cfg.validate();
  const PolynomialField F(f);
  const RationalVector dir = primitive_direction(v);
  const Frame fr = make_frame(dir);
  const auto chains = critical_chains(F, cfg);
  screen_critical_direction(fr, chains);
  return branch_gammas(f, F, dir, fr, chains, cfg, 64);
}

std::pair<long, long> chi_khim_polar(const PolarIndexReport& r, std::vector<IdentityCheck>* checks) {
  if (!r.gamma_pp || !r.gamma_pm || !r.gamma_mp || !r.gamma_mm) throw Error("slice defects are not available");
  const long s = sign_pow(r.n);
  const long neg1 = 1 - r.lambda_minus - *r.gamma_mm;
  const long neg2 = 1 - r.lambda_plus - *r.gamma_mp;
  const long pos1 = 1 - s * r.lambda_minus - *r.gamma_pp;
  const long pos2 = 1 - s * r.lambda_plus - *r.gamma_pm;
  std::vector<IdentityCheck> local{
      check("1 - lambda- - gamma(-,-) = 1 - lambda+ - gamma(-,+)", neg1, neg2),
      check("1 - (-1)^n lambda- - gamma(+,+) = 1 - (-1)^n lambda+ - gamma(+,-)", pos1, pos2)};
  if (checks) checks->insert(checks->end(), local.begin(), local.end());
  for (const auto& c : local)
    if (!c.holds)
      throw OracleError(OracleError::Reason::unstable, "polar fibre expressions disagree: " + c.identity + " (" +
                                                           std::to_string(c.lhs) + " vs " + std::to_string(c.rhs) + ")");
  return {neg1, pos1};
}

std::pair<long, long> chi_khim_onedim(long lambda_plus, long lambda_minus, long gamma_plus, long gamma_minus,
                                      std::size_t n, std::vector<IdentityCheck>* checks) {
  const long s = sign_pow(n);
  const long neg1 = 1 - lambda_minus - gamma_minus;
  const long neg2 = 1 - lambda_plus - gamma_plus;
  const long neg_printed = 1 - lambda_plus + gamma_plus;
  const long pos1 = 1 - s * (lambda_plus - gamma_minus);
  const long pos2 = 1 - s * (lambda_minus - gamma_plus);
  std::vector<IdentityCheck> local{
      check("1 - lambda- - gamma- = 1 - lambda+ - gamma+", neg1, neg2),
      check("1 - lambda- - gamma- = 1 - lambda+ + gamma+ (printed sign)", neg1, neg_printed, false),
      check("1 - (-1)^n (lambda+ - gamma-) = 1 - (-1)^n (lambda- - gamma+)", pos1, pos2),
      check("lambda- + gamma- = lambda+ + gamma+", lambda_minus + gamma_minus, lambda_plus + gamma_plus)};
  if (n % 2 == 0) {
    local.push_back(check("fibre_pos - fibre_neg = gamma+ + gamma-", pos1 - neg1, gamma_plus + gamma_minus));
    local.push_back(check("fibre_pos + fibre_neg = 2 - (lambda+ + lambda-)", pos1 + neg1, 2 - (lambda_plus + lambda_minus)));
  } else {
    local.push_back(check("fibre_pos - fibre_neg = lambda+ + lambda-", pos1 - neg1, lambda_plus + lambda_minus));
    local.push_back(check("fibre_pos + fibre_neg = 2 - (gamma+ + gamma-)", pos1 + neg1, 2 - (gamma_plus + gamma_minus)));
  }
  if (checks) checks->insert(checks->end(), local.begin(), local.end());
  for (const auto& c : local)
    if (c.enforced && !c.holds)
      throw OracleError(OracleError::Reason::unstable, "one-dimensional fibre expressions disagree: " + c.identity +
                                                           " (" + std::to_string(c.lhs) + " vs " +
                                                           std::to_string(c.rhs) + ")");
  return {neg1, pos1};
}

PolarIndexReport polar_indices(const Polynomial& f, const std::optional<RationalVector>& v, const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t n = f.nvars();
  if (n < 2) throw UnsupportedGermError("polar indices need at least two variables");
  const RationalVector base = primitive_direction(v ? *v : RationalVector(n, Rational(1)));
  if (base.size() != n) throw Error("direction has the wrong dimension");
  const PolynomialField F(f);
  const auto crit_by_radius = critical_by_radius(F, cfg);
  bool empty = true;
  for (const auto& l : crit_by_radius) empty = empty && l.empty();
  const auto crit_chains = empty ? std::vector<std::vector<Vec>>{} : match_chains(crit_by_radius, "critical locus");

  std::vector<std::string> rejected;
  std::mt19937 rng(20160517);
  std::uniform_int_distribution<int> jitter(-2, 2);
  for (int attempt = 0; attempt <= kDirectionRetries; ++attempt) {
    RationalVector dir = base;
    if (attempt > 0) {
      bool zero = true;
      for (auto& q : dir) {
        q = 4 * q + jitter(rng);
        zero = zero && q == 0;
      }
      if (zero) dir[0] = 1;
      dir = primitive_direction(dir);
    }
    try {
      PolarIndexReport r = polar_once(f, F, dir, crit_chains, crit_by_radius, cfg);
      r.genericity_log.insert(r.genericity_log.begin(), rejected.begin(), rejected.end());
      r.genericity_log.insert(r.genericity_log.begin() + static_cast<long>(rejected.size()),
                              "direction " + fmt(dir) + " accepted");
      return r;
    } catch (const GenericityError& e) {
      rejected.push_back("direction " + fmt(dir) + " rejected: " + e.what());
    } catch (const OracleError& e) {
      rejected.push_back("direction " + fmt(dir) + " rejected: " + e.what());
    }
  }
  std::string msg = "no generic direction found after " + std::to_string(kDirectionRetries) + " perturbations";
  if (!rejected.empty()) msg += "; last: " + rejected.back();
  throw ExhaustedError(msg);
}

LeIomdineCase le_iomdine_check(const Polynomial& f, const PolarIndexReport& polar, int k, const OracleConfig& cfg,
                               int cap) {
  if (k < 1) throw Error("k must be positive");
  LeIomdineCase c{.k = k, .g = perturbation(f, polar.direction, k), .isolation = {}, .degree = {}, .oracle_degree = {},
                  .oracle_note = {}, .checks = {}};
  const PolynomialField G(c.g);
  c.isolation = check_isolated(G, cfg);
  if (!c.isolation.isolated)
    throw ExhaustedError("g = f + <v, x>^" + std::to_string(k) + " fails the isolation screen: " + c.isolation.note);
  c.degree = elk_degree(c.g, cap);
  try {
    c.oracle_degree = numeric_degree(G, cfg).degree;
  } catch (const OracleError& e) {
    c.oracle_note = e.what();
  }
  const long deg = c.degree.degree;
  const std::size_t n = f.nvars();
  const long s = sign_pow(n);
  c.chi_g_neg = 1 - deg;
  c.chi_g_pos = 1 - s * deg;
  const long lp = polar.lambda_plus, lm = polar.lambda_minus;
  const long gp = polar.gamma_plus.value_or(0), gm = polar.gamma_minus.value_or(0);
  const long fneg = polar.chi_fibre_neg, fpos = polar.chi_fibre_pos;
  const long t = sign_pow(n - 1);
  if (k % 2 == 1) {
    c.checks.push_back(check("deg g = lambda-", deg, lm));
    c.checks.push_back(check("deg g = lambda+ + gamma+ - gamma-", deg, lp + gp - gm));
    c.checks.push_back(check("chi(g = -delta) = chi(f = -delta) + gamma-", c.chi_g_neg, fneg + gm));
    c.checks.push_back(check("chi(g = delta) = chi(f = delta) + (-1)^(n-1) gamma+", c.chi_g_pos, fpos + t * gp));
  } else {
    c.checks.push_back(check("deg g = lambda- + gamma-", deg, lm + gm));
    c.checks.push_back(check("deg g = lambda+ + gamma+", deg, lp + gp));
    c.checks.push_back(check("chi(g = -delta) = chi(f = -delta)", c.chi_g_neg, fneg));
    c.checks.push_back(
        check("chi(g = delta) = chi(f = delta) + (-1)^(n-1) (gamma+ + gamma-)", c.chi_g_pos, fpos + t * (gp + gm)));
  }
  if (c.oracle_degree)
    c.checks.push_back(check("numeric deg g = exact deg g", *c.oracle_degree, deg));
  else
    c.checks.push_back(IdentityCheck{"numeric deg g = exact deg g (oracle failed: " + c.oracle_note + ")", 0, deg, false,
                                     true});
  return c;
}

LeIomdineReport le_iomdine(const Polynomial& f, const std::optional<RationalVector>& v, std::optional<int> k,
                           const OracleConfig& cfg, int cap) {
  LeIomdineReport rep;
  rep.polar = polar_indices(f, v, cfg);
  if (rep.polar.critical_dim > 1) throw UnsupportedGermError("critical locus of dimension above one");
  const PolynomialField F(f);
  rep.n0 = fitted_n0(F, rep.polar.branches, rep.polar.direction);
  int k0 = 0;
  if (k) {
    k0 = *k;
    rep.scanned.push_back(k0);
  } else {
    std::map<int, bool> isolated;
    auto iso = [&](int j) {
      auto it = isolated.find(j);
      if (it != isolated.end()) return it->second;
      const bool ok = check_isolated(PolynomialField(perturbation(f, rep.polar.direction, j)), cfg).isolated;
      isolated[j] = ok;
      rep.scanned.push_back(j);
      return ok;
    };
    for (int j = std::max(3, rep.n0 + 2); j < kMaxExponent; ++j)
      if (iso(j) && iso(j + 1)) {
        k0 = j;
        break;
      }
    if (k0 == 0)
      throw ExhaustedError("no k up to " + std::to_string(kMaxExponent) + " with f + <v, x>^k and f + <v, x>^(k+1) isolated");
  }
  rep.cases.push_back(le_iomdine_check(f, rep.polar, k0, cfg, cap));
  rep.cases.push_back(le_iomdine_check(f, rep.polar, k0 + 1, cfg, cap));
  rep.all_pass = true;
  for (const auto& c : rep.cases)
    for (const auto& ch : c.checks) rep.all_pass = rep.all_pass && (ch.holds || !ch.enforced);
  return rep;
}

}  // namespace milnor
