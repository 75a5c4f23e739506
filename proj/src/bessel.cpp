#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::specfun {

namespace {

constexpr double pi = std::numbers::pi;

// sum_k s^k (x/2)^{2k+v} / (k! Gamma(k+v+1)), s = -1 for J, +1 for I.
double bessel_series(double v, double x, double s) {
  if (x == 0.0) return v == 0.0 ? 1.0 : (v > 0.0 ? 0.0 : std::nan(""));
  const double h = 0.5 * x;
  const double lh = std::log(h);
  double sum = 0.0;
  for (int k = 0; k < 500; ++k) {
    double arg = k + v + 1.0;
    double r = rgamma(arg);
    if (r == 0.0) continue;
    double mag = std::exp((2.0 * k + v) * lh - std::lgamma(k + 1.0));
    double term = mag * r * ((s < 0 && (k % 2)) ? -1.0 : 1.0);
    sum += term;
    if (k > 2 && std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
  }
  return sum;
}

// K_v(x) = pi/2 (I_{-v} - I_v)/sin(v pi), v not an integer.
double k_from_i(double v, double x) {
  return 0.5 * pi * (bessel_series(-v, x, 1.0) - bessel_series(v, x, 1.0)) / std::sin(v * pi);
}

// K_v(x) = int_0^inf exp(-x cosh u) cosh(v u) du, trapezoid rule (spectrally accurate
// for this analytic, doubly-exponentially decaying integrand).
double k_integral(double v, double x) {
  double umax = 1.0;
  while (std::exp(-x * std::cosh(umax) + std::abs(v) * umax) > 1e-18 * std::exp(-x)) umax += 0.5;
  auto f = [&](double u) { return std::exp(-x * std::cosh(u)) * std::cosh(v * u); };
  double h = 0.25;
  double prev = 0.0;
  for (int it = 0; it < 12; ++it) {
    double s = 0.5 * f(0.0);
    int n = static_cast<int>(std::ceil(umax / h));
    for (int i = 1; i <= n; ++i) s += f(i * h);
    s *= h;
    if (it > 0 && std::abs(s - prev) <= 1e-15 * std::abs(s)) return s;
    prev = s;
    h *= 0.5;
  }
  return prev;
}

}  // namespace

double bessel_j(double order, double x) {
  if (x < 0.0) throw DomainError("bessel_j: x must be non-negative");
  if (!(order > -1.0)) throw DomainError("bessel_j: order must exceed -1");
  if (x <= 6.0) return bessel_series(order, x, -1.0);
  return std::cyl_bessel_j(order, x);
}

double bessel_i(double order, double x) {
  if (x < 0.0) throw DomainError("bessel_i: x must be non-negative");
  return bessel_series(order, x, 1.0);
}

double bessel_k(double order, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
  const double v = std::abs(order);
  if (x > 1.0) return k_integral(v, x);
  // At and near integer order the I-difference cancels; the integral form
  // is exact to rounding there (perturbing the order only reached ~1e-11).
  if (std::abs(v - std::round(v)) > 1e-2) return k_from_i(v, x);
  return k_integral(v, x);
}

std::vector<double> bessel_j_zeros(double order, int count) {
  if (count < 1) throw DomainError("bessel_j_zeros: count must be positive");
  if (!(order > -1.0)) throw DomainError("bessel_j_zeros: order must exceed -1");
  std::vector<double> zeros;
  zeros.reserve(count);
  const double step = 0.05;
  double a = 1e-6;
  double fa = bessel_j(order, a);
  while (static_cast<int>(zeros.size()) < count) {
    double b = a + step;
    double fb = bessel_j(order, b);
    if (a > 1e5) throw ConvergenceError("bessel_j_zeros: bracketing failed");
    if (fa == 0.0) {
      zeros.push_back(a);
    } else if (fa * fb < 0.0) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = bessel_j(order, mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if ((fm < 0) == (flo < 0)) { lo = mid; flo = fm; } else { hi = mid; }
      }
      double z = 0.5 * (lo + hi);
      if (std::abs(bessel_j(order, z)) > 1e-10) {
        std::ostringstream os;
        os << "bessel_j_zeros: refined root " << z << " fails residual check";
        throw ConvergenceError(os.str());
      }
      zeros.push_back(z);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

}  // namespace fracdiff::specfun
