#pragma once

#include <complex>
#include <vector>

namespace fracdiff::specfun {

struct SeriesControl {
  double abs_tol = 1e-14;
  int max_terms = 2000;
};

struct MLParams {
  double alpha;
  double beta = 1.0;
};

double gamma_fn(double x);
// 1/Gamma(x), zero at the poles.
double rgamma(double x);
double beta_fn(double a, double b);

// Principal log-Gamma for complex arguments (Lanczos, reflection for Re z < 1/2).
std::complex<double> lgamma_complex(std::complex<double> z);

double mittag_leffler(MLParams p, double z, const SeriesControl& ctl = {});
double wright_w(double alpha, double beta, double z, const SeriesControl& ctl = {});

double bessel_j(double order, double x);
double bessel_i(double order, double x);
double bessel_k(double order, double x);
std::vector<double> bessel_j_zeros(double order, int count);

}  // namespace fracdiff::specfun
