#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace fracdiff::frac {

using Fn = std::function<double(double)>;

// c * x^{beta - 1}; `exponent` holds beta.
struct PowerLaw {
  double coefficient = 1.0;
  double exponent = 1.0;
  double operator()(double x) const;
};

// Clamped cubic spline through (nodes, values), end slopes from four-point
// Lagrange derivatives; beyond the last node the function
// is continued as f(X) (x/X)^decay, decay = -inf meaning zero. Below the first
// node the first spline piece is extended down to 0.
class GridFunction {
 public:
  static constexpr double zero_tail = -std::numeric_limits<double>::infinity();

  GridFunction(std::vector<double> nodes, std::vector<double> values, double extrapolation_decay = zero_tail);
  static GridFunction sample(const Fn& f, std::vector<double> nodes, double extrapolation_decay = zero_tail);

  double operator()(double x) const;
  double derivative(double x) const;
  double at_zero() const { return (*this)(0.0); }

  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }
  double extrapolation_decay() const { return decay_; }
  double x_max() const { return x_.back(); }
  double min_gap() const { return min_gap_; }

  // int_0^y (y-s)^{-a} f(s) ds and int_y^inf (s-y)^{-a} f(s) ds, a in [0,1).
  // With `use_derivative` the integrand uses f' instead of f (left only).
  double left_kernel_integral(double y, double a, bool use_derivative = false) const;
  double right_kernel_integral(double y, double a) const;
  // int_0^X s^k f(s) ds over the spline part.
  double moment(int k) const;

 private:
  std::vector<double> x_, y_, b_, c_, d_;
  double decay_;
  double min_gap_;

  int segment(double s) const;
  double tail(double s) const;
  // Integral of |y - s|^{-a} p_i(s) over [lo, hi] inside piece i (piece -1 = extension below x_0).
  double piece_kernel(int i, double lo, double hi, double y, double a, bool left, bool deriv) const;
};

enum class Side { left, right };

double rl_left(double alpha, const PowerLaw& f, double x);
double rl_left(double alpha, const GridFunction& f, double x);
double rl_left(double alpha, const Fn& f, double x);

double rl_right(double alpha, const PowerLaw& f, double x);
double rl_right(double alpha, const GridFunction& f, double x);
double rl_right(double alpha, const Fn& f, double x);

double caputo(double alpha, const PowerLaw& f, double t);
double caputo(double alpha, const GridFunction& f, double t);
// Callable form through the Marchaud representation; rel_tol drives the quadrature.
double caputo(double alpha, const Fn& f, double t, double rel_tol = 1e-13);

// Order-(1 - alpha) fractional integrals; alpha = 1 is the identity.
double frac_integral(Side side, double alpha, const PowerLaw& f, double x);
double frac_integral(Side side, double alpha, const GridFunction& f, double x);
double frac_integral(Side side, double alpha, const Fn& f, double x);

// Endpoint values of x^{eta-1} (I^{1-alpha} f)(x) near 0 and near infinity.
struct BoundaryTerm {
  double at_zero;
  double at_infinity;
  bool vanishes;
};
BoundaryTerm boundary_term(Side side, double alpha, const Fn& f, double eta, double tol = 1e-6);

}  // namespace fracdiff::frac
