#include "milnor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace milnor {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Keep the total seed count manageable in higher dimension.
int seeds_per_axis(std::size_t n, int grid) {
  const double cap = 20000.0;
  const int by_cap = static_cast<int>(std::floor(std::pow(cap, 1.0 / static_cast<double>(n))));
  return std::max(2, std::min(grid, by_cap));
}

NewtonSystem gradient_system(const ScalarField& g, const Vec& target) {
  return [&g, target](const Vec& x, Vec& f, Mat& j) {
    f = g.gradient(x) - target;
    j = g.hessian(x);
  };
}

// One Newton correction at x; genuine zeros have a negligible correction,
// points crawling along a degenerate valley do not.
double correction_length(const ScalarField& g, const Vec& x) {
  const Vec f = g.gradient(x);
  const Mat h = g.hessian(x);
  return h.completeOrthogonalDecomposition().solve(f).norm();
}

// Fixed direction with no vanishing or rationally related components; e1
// fails to be a regular direction for germs whose gradient has a repeated
// factor in one coordinate.
Vec target_direction(std::size_t n) {
  Vec u(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 1) * 0.6180339887498949;
    u[static_cast<Eigen::Index>(i)] = (t - std::floor(t)) + 0.25;
  }
  return u.normalized();
}

bool well_conditioned(const Mat& h) {
  Eigen::JacobiSVD<Mat> svd(h);
  const auto& s = svd.singularValues();
  return s.size() > 0 && s(0) > 0 && s(s.size() - 1) > 1e-8 * s(0);
}

}  // namespace

void OracleConfig::validate() const {
  if (!(epsilon > 0)) throw Error("epsilon must be positive");
  if (!(newton_tol > 0)) throw Error("newton_tol must be positive");
  if (!(newton_tol < dedupe_radius)) throw Error("newton_tol must be below dedupe_radius");
  if (eta && !(dedupe_radius < *eta && *eta < epsilon)) throw Error("eta must lie between dedupe_radius and epsilon");
  if (grid < 2) throw Error("grid must be at least 2");
  if (cells < 8) throw Error("cells must be at least 8");
  if (circle_samples < 64) throw Error("circle_samples must be at least 64");
  if (eta_slice && !(*eta_slice > 0)) throw Error("eta_slice must be positive");
  if (slice_offset && !(*slice_offset > 0 && *slice_offset < epsilon)) throw Error("slice_offset must lie in (0, epsilon)");
  if (slice_level && !(*slice_level > 0)) throw Error("slice_level must be positive");
  if (seed_scales < 1) throw Error("seed_scales must be positive");
}

DegreeReport NumericDegree::to_report() const {
  DegreeReport r;
  r.degree = degree;
  r.method = DegreeMethod::numeric_oracle;
  r.evidence = log;
  return r;
}

double sphere_min_gradient(const ScalarField& g, double r, int per_axis, Vec* argmin) {
  const std::size_t n = g.dim();
  std::vector<std::pair<double, Vec>> samples;
  for (auto& x : sphere_samples(n, r, per_axis)) samples.emplace_back(g.gradient(x).norm(), std::move(x));
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lexicographic_less(a.second, b.second);
  });
  double best = samples.front().first;
  Vec best_x = samples.front().second;
  // Projected descent on |grad g|^2 from the best samples.
  const std::size_t starts = std::min<std::size_t>(8, samples.size());
  for (std::size_t s = 0; s < starts && n > 1; ++s) {
    Vec x = samples[s].second;
    double val = samples[s].first;
    double step = r * 0.05;
    for (int it = 0; it < 200 && step > r * 1e-12; ++it) {
      const Vec gr = g.gradient(x);
      const Mat hess = g.hessian(x);
      // Gauss-Newton step for grad g = 0 restricted to the tangent space, then back onto the sphere.
      const Mat t = orthonormal_complement(x.normalized());
      const Vec c = (hess * t).colPivHouseholderQr().solve(-gr);
      Vec y = x + t * c;
      bool moved = false;
      if (y.allFinite() && y.norm() > 0) {
        y *= r / y.norm();
        const double v = g.gradient(y).norm();
        if (v < val) {
          x = y;
          val = v;
          moved = true;
        }
      }
      if (moved) continue;
      Vec d = hess * gr;
      d -= x * (x.dot(d) / x.squaredNorm());
      if (d.norm() == 0) break;
      y = x - step * d.normalized();
      y *= r / y.norm();
      const double v = g.gradient(y).norm();
      if (v < val) {
        x = y;
        val = v;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    if (val < best) {
      best = val;
      best_x = x;
    }
  }
  if (argmin) *argmin = best_x;
  return best;
}

std::vector<CriticalPoint> find_critical_points(const ScalarField& g, double r, const OracleConfig& cfg) {
  const std::size_t n = g.dim();
  const int per_axis = std::max(4, seeds_per_axis(n, cfg.grid) / 2);
  const Vec zero = Vec::Zero(static_cast<Eigen::Index>(n));
  const NewtonSystem sys = gradient_system(g, zero);
  std::vector<Vec> hits;
  for (double s : {r, r / 4, r / 16})
    for (const auto& seed : cube_lattice(n, s, per_axis)) {
      NewtonResult res = damped_newton(sys, seed, cfg.newton_tol, cfg.max_newton_iter, 2 * r);
      if (!res.converged) continue;
      const double norm = res.x.norm();
      if (norm <= r / 64 || norm > r) continue;
      if (correction_length(g, res.x) > 1e-6 * norm) continue;
      hits.push_back(res.x);
    }
  std::vector<CriticalPoint> out;
  for (auto& x : dedupe(std::move(hits), cfg.dedupe_radius)) {
    CriticalPoint c;
    c.residual = g.gradient(x).norm();
    c.nondegenerate = well_conditioned(g.hessian(x));
    c.x = std::move(x);
    out.push_back(std::move(c));
  }
  return out;
}

IsolationEvidence check_isolated(const ScalarField& g, const OracleConfig& cfg) {
  IsolationEvidence ev;
  const double floor = 1e-11;
  const int per_axis = 4 * cfg.grid;
  bool ok = true;
  for (double r : {cfg.epsilon, cfg.epsilon / 2, cfg.epsilon / 4}) {
    Vec at;
    const double m = sphere_min_gradient(g, r, per_axis, &at);
    ev.sphere_minima.emplace_back(r, m);
    if (!(m > floor)) {
      ok = false;
      ev.witnesses.push_back(at);
    }
  }
  const auto zeros = find_critical_points(g, cfg.epsilon, cfg);
  for (const auto& c : zeros) ev.witnesses.push_back(c.x);
  if (!zeros.empty()) ok = false;
  ev.isolated = ok;
  if (ok)
    ev.note = "no critical point found in the punctured ball; sphere minima bounded away from zero (evidence, not proof)";
  else if (!zeros.empty())
    ev.note = std::to_string(zeros.size()) + " critical point(s) found away from the origin";
  else
    ev.note = "gradient vanishes (numerically) on a sampled sphere";
  return ev;
}

NumericDegree numeric_degree(const ScalarField& g, const OracleConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.dim();
  const int sphere_axis = 4 * cfg.grid;
  NumericDegree out;
  double eps = cfg.epsilon;

  double boundary_min = 0;
  for (int shrink = 0;; ++shrink) {
    const auto crit = find_critical_points(g, eps, cfg);
    bool degenerate = false;
    double nearest = eps;
    for (const auto& c : crit) {
      degenerate = degenerate || !c.nondegenerate;
      nearest = std::min(nearest, c.x.norm());
    }
    if (degenerate)
      throw OracleError(OracleError::Reason::unstable,
                        "degenerate critical points away from the origin: the critical point is not isolated");
    if (crit.empty()) {
      boundary_min = sphere_min_gradient(g, eps, sphere_axis);
      if (!(boundary_min > 1e-12))
        throw OracleError(OracleError::Reason::boundary_zero, "gradient vanishes on the sphere of radius " + fmt(eps));
      break;
    }
    if (shrink >= cfg.max_shrinks)
      throw OracleError(OracleError::Reason::unstable, "spurious critical points persist after shrinking epsilon");
    out.log.push_back("spurious critical point at radius " + fmt(nearest) + "; epsilon " + fmt(eps) + " -> " +
                      fmt(nearest / 2));
    eps = nearest / 2;
  }
  out.epsilon = eps;
  out.boundary_min_gradient = boundary_min;

  // Reported only: slope of log min|grad| over log radius.
  {
    std::vector<double> lx, ly;
    for (int j = 0; j < 4; ++j) {
      const double r = eps * std::pow(0.5, j);
      const double m = j == 0 ? boundary_min : sphere_min_gradient(g, r, sphere_axis);
      if (m > 0) {
        lx.push_back(std::log(r));
        ly.push_back(std::log(m));
      }
    }
    if (lx.size() >= 2) {
      const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
      const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
      double sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
      }
      out.fitted_exponent = sxx > 0 ? sxy / sxx : 0;
    }
  }

  const double eta = cfg.eta ? *cfg.eta : std::min(1e-3, boundary_min / 4);
  if (!(eta < boundary_min))
    throw OracleError(OracleError::Reason::unstable, "eta " + fmt(eta) + " is not below the boundary minimum of |grad g|");
  out.eta = eta;

  const int per_axis = seeds_per_axis(n, cfg.grid);
  auto count = [&](double e, std::vector<PreimagePoint>* keep) {
    const Vec target = e * target_direction(n);
    const NewtonSystem sys = gradient_system(g, target);
    std::vector<Vec> hits;
    for (int j = 0; j < cfg.seed_scales; ++j) {
      const double s = eps * std::pow(0.25, j);
      // Inner scales only need to resolve a small neighbourhood.
      const int axis = j == 0 ? per_axis : std::max(4, per_axis / 2);
      for (const auto& seed : cube_lattice(n, s, axis)) {
        NewtonResult res = damped_newton(sys, seed, cfg.newton_tol, cfg.max_newton_iter, 2 * eps);
        if (res.converged && res.x.norm() < eps) hits.push_back(res.x);
      }
    }
    long sum = 0;
    for (auto& x : dedupe(std::move(hits), cfg.dedupe_radius)) {
      const Mat h = g.hessian(x);
      if (!well_conditioned(h))
        throw OracleError(OracleError::Reason::unstable, "eta " + fmt(e) + " is not a regular value");
      PreimagePoint p;
      p.jacobian_sign = sign_of(h.determinant());
      p.residual = (g.gradient(x) - target).norm();
      p.x = std::move(x);
      sum += p.jacobian_sign;
      if (keep) keep->push_back(std::move(p));
    }
    return sum;
  };

  out.stability_counts.push_back(count(eta / 2, nullptr));
  out.stability_counts.push_back(count(eta, &out.points));
  out.stability_counts.push_back(count(2 * eta, nullptr));
  if (out.stability_counts[0] != out.stability_counts[1] || out.stability_counts[1] != out.stability_counts[2])
    throw OracleError(OracleError::Reason::unstable, "signed preimage counts differ across eta/2, eta, 2 eta: " +
                                                         std::to_string(out.stability_counts[0]) + ", " +
                                                         std::to_string(out.stability_counts[1]) + ", " +
                                                         std::to_string(out.stability_counts[2]));
  out.degree = out.stability_counts[1];
  out.log.push_back("epsilon " + fmt(eps) + ", eta " + fmt(eta) + ", " + std::to_string(out.points.size()) +
                    " preimage(s), boundary min |grad| " + fmt(boundary_min));
  return out;
}

SliceChi slice_chi_cubical(const ScalarField& f, const Vec& unit_normal, double offset, double level,
                           double epsilon, int cells, double eta_slice) {
  if (f.dim() != 3) throw Error("slice chi needs three variables");
  SliceChi out;
  const double r2 = epsilon * epsilon - offset * offset;
  if (r2 <= 0) return out;
  const double radius = std::sqrt(r2);
  out.radius = radius;
  const Vec nrm = unit_normal.normalized();
  const Mat frame = orthonormal_complement(nrm);
  const Vec centre = offset * nrm;

  auto chi_at = [&](int m) -> long {
    const int v = m + 1;
    const double h = 2 * radius / m;
    std::vector<double> val(static_cast<std::size_t>(v) * v);
    std::vector<char> inside(val.size());
    Vec y(2);
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j) {
        y << -radius + i * h, -radius + j * h;
        const std::size_t k = static_cast<std::size_t>(i) * v + j;
        inside[k] = y.norm() <= radius;
        val[k] = f.value(centre + frame * y) - level;
      }
    std::vector<char> vert(val.size(), 0), hedge(static_cast<std::size_t>(m) * v, 0), vedge(hedge.size(), 0);
    long faces = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const std::size_t c[4] = {static_cast<std::size_t>(i) * v + j, static_cast<std::size_t>(i + 1) * v + j,
                                  static_cast<std::size_t>(i) * v + j + 1, static_cast<std::size_t>(i + 1) * v + j + 1};
        double lo = val[c[0]], hi = val[c[0]];
        bool in = true;
        for (auto k : c) {
          lo = std::min(lo, val[k]);
          hi = std::max(hi, val[k]);
          in = in && inside[k];
        }
        if (!in || lo > eta_slice || hi < -eta_slice) continue;
        ++faces;
        for (auto k : c) vert[k] = 1;
        // hedge (i, j) joins (i, j)-(i+1, j); vedge (i, j) joins (i, j)-(i, j+1).
        hedge[static_cast<std::size_t>(i) * v + j] = 1;
        hedge[static_cast<std::size_t>(i) * v + j + 1] = 1;
        vedge[static_cast<std::size_t>(j) * v + i] = 1;
        vedge[static_cast<std::size_t>(j) * v + i + 1] = 1;
      }
    long nv = 0, ne = 0;
    for (char c : vert) nv += c;
    for (char c : hedge) ne += c;
    for (char c : vedge) ne += c;
    return nv - ne + faces;
  };

  out.chi = chi_at(cells);
  out.chi_fine = chi_at(2 * cells);
  if (out.chi != out.chi_fine)
    throw OracleError(OracleError::Reason::unstable, "slice chi differs between resolutions: " +
                                                         std::to_string(out.chi) + " vs " + std::to_string(out.chi_fine));
  return out;
}

namespace {

int sign_changes_on_circle(const ScalarField& h, const Vec& centre, double radius, double level, int samples) {
  int changes = 0;
  int first = 0, prev = 0;
  Vec y(2);
  for (int i = 0; i < samples; ++i) {
    const double t = 2 * M_PI * i / samples;
    y << centre[0] + radius * std::cos(t), centre[1] + radius * std::sin(t);
    const int s = sign_of(h.value(y) - level);
    if (s == 0) continue;
    if (first == 0) first = s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  // Closing step; samples exactly on the level are skipped, so compare against the first sign.
  if (prev != 0 && first != prev) ++changes;
  return changes;
}

}  // namespace

SliceChi slice_chi(const ScalarField& f, const Vec& unit_normal, double offset, double level, double epsilon,
                   int samples, double eta_slice, int grid) {
  if (f.dim() != 3) throw Error("slice chi needs three variables");
  SliceChi out;
  const double r2 = epsilon * epsilon - offset * offset;
  if (r2 <= 0) return out;
  const double radius = std::sqrt(r2);
  out.radius = radius;
  const Vec nrm = unit_normal.normalized();
  const AffineSlice h(f, offset * nrm, orthonormal_complement(nrm));
  const Vec origin = Vec::Zero(2);

  // Critical points of the slice near the level.
  std::vector<Vec> hits;
  const NewtonSystem sys = gradient_system(h, Vec::Zero(2));
  for (const auto& seed : cube_lattice(2, radius, grid)) {
    if (seed.norm() > radius) continue;
    NewtonResult res = damped_newton(sys, seed, 1e-14, 200, 2 * radius);
    if (res.converged && res.x.norm() < radius && std::abs(h.value(res.x) - level) < eta_slice) hits.push_back(res.x);
  }
  const std::vector<Vec> singular = dedupe(std::move(hits), radius * 1e-4);

  auto count = [&](int m, std::vector<std::pair<Vec, int>>* keep) -> long {
    const int b = sign_changes_on_circle(h, origin, radius, level, m);
    if (b % 2 != 0) throw OracleError(OracleError::Reason::unstable, "odd number of boundary crossings");
    long twice = b;
    for (const auto& p : singular) {
      double rho = (radius - p.norm()) / 4;
      for (const auto& q : singular)
        if (&q != &p) rho = std::min(rho, (q - p).norm() / 4);
      rho = std::min(rho, radius / 16);
      const int r0 = sign_changes_on_circle(h, p, rho, level, m);
      const int r1 = sign_changes_on_circle(h, p, rho / 2, level, m);
      if (r0 != r1 || r0 % 2 != 0)
        throw OracleError(OracleError::Reason::unstable, "half-branch count at a singular point of the slice is unstable: " +
                                                             std::to_string(r0) + " vs " + std::to_string(r1));
      twice += 2 - r0;
      if (keep) keep->emplace_back(p, r0);
    }
    if (keep) out.boundary_crossings = b;
    return twice / 2;
  };
  out.chi = count(samples, &out.singular);
  out.chi_fine = count(2 * samples, nullptr);
  if (out.chi != out.chi_fine)
    throw OracleError(OracleError::Reason::unstable, "slice chi differs between samplings: " + std::to_string(out.chi) +
                                                         " vs " + std::to_string(out.chi_fine));
  return out;
}

}  // namespace milnor
