#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "milnor/polynomial.hpp"

namespace milnor {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Smooth function R^n -> R with derivatives up to order two.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual Vec gradient(const Vec& x) const = 0;
  virtual Mat hessian(const Vec& x) const = 0;
};

/// Floating point image of an exact polynomial, with precompiled partials.
class PolynomialField : public ScalarField {
 public:
  explicit PolynomialField(const Polynomial& p);

  std::size_t dim() const override { return n_; }
  double value(const Vec& x) const override;
  Vec gradient(const Vec& x) const override;
  Mat hessian(const Vec& x) const override;

 private:
  struct Term {
    double coef;
    std::vector<int> exps;
  };
  using Compiled = std::vector<Term>;
  static Compiled compile(const Polynomial& p);
  const std::vector<double>& powers(const Vec& x) const;
  double eval(const Compiled& c, const std::vector<double>& pw) const;

  std::size_t n_;
  Compiled value_;
  std::vector<Compiled> grad_;
  std::vector<Compiled> hess_;  // upper triangle, row major
  int max_exp_ = 0;
};

/// y -> base(origin + frame * y), frame an n x m matrix.
class AffineSlice : public ScalarField {
 public:
  AffineSlice(const ScalarField& base, Vec origin, Mat frame);

  std::size_t dim() const override { return static_cast<std::size_t>(frame_.cols()); }
  double value(const Vec& y) const override;
  Vec gradient(const Vec& y) const override;
  Mat hessian(const Vec& y) const override;

 private:
  const ScalarField& base_;
  Vec origin_;
  Mat frame_;
};

/// Orthonormal basis of the complement of a nonzero vector, as columns.
Mat orthonormal_complement(const Vec& v);

/// Deterministic points on the sphere of radius r: the boundary lattice of
/// the cube [-1,1]^n with `per_axis` points per edge, projected radially.
std::vector<Vec> sphere_samples(std::size_t n, double r, int per_axis);

/// Lattice of per_axis^n points filling the cube [-s, s]^n, cell centred.
std::vector<Vec> cube_lattice(std::size_t n, double s, int per_axis);

struct NewtonResult {
  Vec x;
  double residual = 0;
  bool converged = false;
  int iterations = 0;
};

/// system(x, F, J) fills the residual and its Jacobian.
using NewtonSystem = std::function<void(const Vec&, Vec&, Mat&)>;

/// Newton's method with backtracking on |F|. Stops when |F| < tol, when no
/// descent is possible, or when |x| exceeds `escape_radius`.
NewtonResult damped_newton(const NewtonSystem& system, Vec x0, double tol, int max_iter, double escape_radius);

/// Sort lexicographically and drop points within `radius` of an earlier one.
std::vector<Vec> dedupe(std::vector<Vec> points, double radius);

bool lexicographic_less(const Vec& a, const Vec& b);

int sign_of(double v);

}  // namespace milnor
