#pragma once

#include <functional>

namespace fracdiff::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

using Fn = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (10/21) on [a, b].
Result adaptive(const Fn& f, double a, double b, const Options& opt = {});

// Throwing wrappers: QuadratureError when the estimate is far off target.
double integrate(const Fn& f, double a, double b, const Options& opt = {});
// [a, inf) through x = a + u/(1-u).
double integrate_inf(const Fn& f, double a, const Options& opt = {});
// (0, inf) through x = scale*exp(s), s mapped to a finite range; good for
// densities spread over many decades.
double integrate_positive(const Fn& f, double scale = 1.0, const Options& opt = {});

}  // namespace fracdiff::quad
