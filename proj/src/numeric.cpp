#include "milnor/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace milnor {

PolynomialField::Compiled PolynomialField::compile(const Polynomial& p) {
  Compiled c;
  for (const auto& [m, q] : p.terms()) c.push_back({to_double(q), m.exps});
  return c;
}

PolynomialField::PolynomialField(const Polynomial& p) : n_(p.nvars()) {
  value_ = compile(p);
  for (std::size_t i = 0; i < n_; ++i) {
    const Polynomial pi = partial(p, i);
    grad_.push_back(compile(pi));
    for (std::size_t j = i; j < n_; ++j) hess_.push_back(compile(partial(pi, j)));
  }
  for (const auto& [m, q] : p.terms())
    for (int e : m.exps) max_exp_ = std::max(max_exp_, e);
}

const std::vector<double>& PolynomialField::powers(const Vec& x) const {
  thread_local std::vector<double> pw;
  const int stride = max_exp_ + 1;
  pw.assign(n_ * stride, 1.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (int e = 1; e <= max_exp_; ++e) pw[i * stride + e] = pw[i * stride + e - 1] * x[i];
  return pw;
}

double PolynomialField::eval(const Compiled& c, const std::vector<double>& pw) const {
  const int stride = max_exp_ + 1;
  double s = 0;
  for (const auto& t : c) {
    double v = t.coef;
    for (std::size_t i = 0; i < n_; ++i)
      if (t.exps[i]) v *= pw[i * stride + t.exps[i]];
    s += v;
  }
  return s;
}

double PolynomialField::value(const Vec& x) const { return eval(value_, powers(x)); }

Vec PolynomialField::gradient(const Vec& x) const {
  const auto& pw = powers(x);
  Vec g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = eval(grad_[i], pw);
  return g;
}

Mat PolynomialField::hessian(const Vec& x) const {
  const auto& pw = powers(x);
  Mat h(n_, n_);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) h(i, j) = h(j, i) = eval(hess_[k++], pw);
  return h;
}

AffineSlice::AffineSlice(const ScalarField& base, Vec origin, Mat frame)
    : base_(base), origin_(std::move(origin)), frame_(std::move(frame)) {
  if (static_cast<std::size_t>(origin_.size()) != base.dim() || static_cast<std::size_t>(frame_.rows()) != base.dim())
    throw Error("affine slice has the wrong shape");
}

double AffineSlice::value(const Vec& y) const { return base_.value(origin_ + frame_ * y); }

Vec AffineSlice::gradient(const Vec& y) const { return frame_.transpose() * base_.gradient(origin_ + frame_ * y); }

Mat AffineSlice::hessian(const Vec& y) const {
  return frame_.transpose() * base_.hessian(origin_ + frame_ * y) * frame_;
}

Mat orthonormal_complement(const Vec& v) {
  const auto n = v.size();
  if (v.norm() == 0) throw Error("complement of the zero vector");
  Mat q = Eigen::HouseholderQR<Mat>(v.normalized()).householderQ() * Mat::Identity(n, n);
  Mat out = q.rightCols(n - 1);
  // Fix orientation so [v, out] is positively oriented.
  Mat full(n, n);
  full << v.normalized(), out;
  if (full.determinant() < 0) out.col(0) = -out.col(0);
  return out;
}

std::vector<Vec> sphere_samples(std::size_t n, double r, int per_axis) {
  std::vector<Vec> out;
  if (n == 1) return {Vec::Constant(1, -r), Vec::Constant(1, r)};
  const int m = std::max(per_axis, 2);
  std::vector<int> idx(n, 0);
  for (;;) {
    bool boundary = false;
    for (int k : idx) boundary = boundary || k == 0 || k == m - 1;
    if (boundary) {
      Vec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = -1.0 + 2.0 * idx[i] / (m - 1);
      out.push_back(x.normalized() * r);
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == m) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

std::vector<Vec> cube_lattice(std::size_t n, double s, int per_axis) {
  std::vector<Vec> out;
  const int m = std::max(per_axis, 1);
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = s * (-1.0 + (2.0 * idx[i] + 1.0) / m);
    out.push_back(x);
    std::size_t k = 0;
    while (k < n && ++idx[k] == m) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

NewtonResult damped_newton(const NewtonSystem& system, Vec x0, double tol, int max_iter, double escape_radius) {
  NewtonResult r;
  r.x = std::move(x0);
  const auto n = r.x.size();
  Vec f(n), f_try(n);
  Mat j(n, n), j_try(n, n);
  system(r.x, f, j);
  double norm = f.norm();
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    if (norm < tol) break;
    Vec step;
    if (j.rows() == j.cols()) {
      Eigen::FullPivLU<Mat> lu(j);
      if (lu.isInvertible()) step = -lu.solve(f);
    }
    if (step.size() == 0) step = -j.completeOrthogonalDecomposition().solve(f);
    if (!step.allFinite()) break;
    double t = 1.0;
    bool moved = false;
    while (t > 1e-6) {
      Vec x_try = r.x + t * step;
      system(x_try, f_try, j_try);
      const double n_try = f_try.norm();
      if (std::isfinite(n_try) && n_try < (1.0 - 1e-4 * t) * norm) {
        r.x = std::move(x_try);
        f = f_try;
        j = j_try;
        norm = n_try;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    if (r.x.norm() > escape_radius) break;
  }
  r.residual = norm;
  r.converged = norm < tol && r.x.norm() <= escape_radius;
  return r;
}

bool lexicographic_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

std::vector<Vec> dedupe(std::vector<Vec> points, double radius) {
  std::sort(points.begin(), points.end(), lexicographic_less);
  std::vector<Vec> out;
  for (auto& p : points) {
    bool dup = false;
    for (const auto& q : out)
      if ((p - q).norm() < radius) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

int sign_of(double v) { return (v > 0) - (v < 0); }

}  // namespace milnor
