#include "fracdiff/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff::specfun {

namespace {

constexpr double pi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Sum of a series whose k-th term is term(k). Stops once two consecutive
// terms fall below tol; tracks the largest term to detect cancellation.
template <class Term>
double sum_series(Term term, const SeriesControl& ctl, const char* what, double* max_abs = nullptr) {
  double s = 0.0, c = 0.0, big = 0.0;
  int small = 0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    double a = term(k);
    if (!std::isfinite(a)) break;
    big = std::max(big, std::abs(a));
    double y = a - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
    if (std::abs(a) <= ctl.abs_tol * std::max(1.0, std::abs(s))) {
      if (++small >= 2) {
        if (max_abs) *max_abs = big;
        return s;
      }
    } else {
      small = 0;
    }
  }
  std::ostringstream os;
  os << what << ": series did not converge within " << ctl.max_terms << " terms";
  throw ConvergenceError(os.str());
}

double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  return (static_cast<long long>(std::ceil(-x)) % 2) ? -1.0 : 1.0;
}

// z^k / Gamma(a k + b) in log space.
double ml_term(double a, double b, double z, int k) {
  double arg = a * k + b;
  if (is_nonpositive_integer(arg)) return 0.0;
  double mag = std::exp(k * std::log(std::abs(z)) - std::lgamma(arg));
  double sz = (z < 0 && (k % 2)) ? -1.0 : 1.0;
  return sz * gamma_sign(arg) * mag;
}

// z^k / (k! Gamma(a k + b)).
double wright_term(double alpha, double beta, double z, int k) {
  double arg = alpha * k + beta;
  if (is_nonpositive_integer(arg)) return 0.0;
  if (z == 0.0) return k == 0 ? rgamma(arg) : 0.0;
  double mag = std::exp(k * std::log(std::abs(z)) - std::lgamma(k + 1.0) - std::lgamma(arg));
  double sz = (z < 0 && (k % 2)) ? -1.0 : 1.0;
  return sz * gamma_sign(arg) * mag;
}

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma_fn: pole at " << x;
    throw PoleError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

double beta_fn(double a, double b) {
  if (a + b < 170.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

std::complex<double> lgamma_complex(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
    throw PoleError("lgamma_complex: pole");
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi) - log sin(pi z) - log Gamma(1 - z)
    C s = std::sin(pi * z);
    return std::log(pi) - std::log(s) - lgamma_complex(1.0 - z);
  }
  // Lanczos g=7, n=9
  static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  C x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  C t = z + 7.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double mittag_leffler(MLParams p, double z, const SeriesControl& ctl) {
  const double a = p.alpha, b = p.beta;
  if (!(a > 0.0)) throw DomainError("mittag_leffler: alpha must be positive");
  if (z == 0.0) return rgamma(b);
  if (a == 1.0 && b == 1.0) return std::exp(z);

  const double scale = std::pow(std::abs(z), 1.0 / a);
  // Positive arguments and small negative ones: the power series is fine.
  if (z > 0.0 || scale <= 3.0) {
    double big = 0.0;
    double s = sum_series([&](int k) { return ml_term(a, b, z, k); }, ctl, "mittag_leffler", &big);
    if (big > 1e6 * std::max(std::abs(s), 1e-300))
      throw ConvergenceError("mittag_leffler: series cancellation too severe");
    return s;
  }

  // Negative argument, 0 < alpha < 1, 0 < beta < 1 + alpha: real integral
  // along the branch cut of s^{alpha-beta}/(s^alpha + x).
  if (a < 1.0 && b > 0.0 && b < 1.0 + a) {
    const double x = -z;
    const double sb = std::sin(pi * b), sab = std::sin(pi * (a - b)), ca = std::cos(pi * a);
    auto f = [&](double r) {
      if (r <= 0.0) return 0.0;
      double ra = std::pow(r, a);
      double den = ra * ra + 2.0 * x * ra * ca + x * x;
      return std::exp(-r) * std::pow(r, a - b) * (ra * sb - x * sab) / den;
    };
    // The integrand peaks near r ~ x^{1/alpha}; split there.
    double r0 = std::min(scale, 50.0);
    quad::Options o;
    o.abs_tol = 1e-16;
    o.rel_tol = 1e-13;
    double v = quad::integrate(f, 0.0, r0, o) + quad::integrate_inf(f, r0, o);
    return v / pi;
  }

  double big = 0.0;
  double s = sum_series([&](int k) { return ml_term(a, b, z, k); }, ctl, "mittag_leffler", &big);
  if (big > 1e6 * std::max(std::abs(s), 1e-300))
    throw ConvergenceError("mittag_leffler: no stable method for this (alpha, beta, z)");
  return s;
}

namespace {

// Hankel loop collapsed onto the negative axis, for -1 < alpha < 0 and beta < 1:
// W = 1/pi int_0^inf exp(-p - r p^nu cos(pi nu)) p^{-beta} sin(pi (1 - beta) - r p^nu sin(pi nu)) dp,
// with nu = -alpha, r = -z; p = u^{1/(1-beta)} removes the endpoint singularity.
double wright_hankel(double alpha, double beta, double z) {
  const double nu = -alpha, r = -z, q = 1.0 - beta;
  const double cn = std::cos(pi * nu), sn = std::sin(pi * nu);
  auto f = [&](double u) {
    const double p = std::pow(u, 1.0 / q);
    const double pn = std::pow(p, nu);
    return std::exp(-p - r * pn * cn) * std::sin(pi * q - r * pn * sn);
  };
  quad::Options o{1e-15, 1e-12, 8000};
  const double u1 = std::pow(60.0, q);
  return (quad::integrate(f, 0.0, u1, o) + quad::integrate_inf(f, u1, o)) / (pi * q);
}

}  // namespace

double wright_w(double alpha, double beta, double z, const SeriesControl& ctl) {
  if (!(alpha > -1.0)) throw DomainError("wright_w: alpha must exceed -1");
  double big = 0.0;
  double s = sum_series([&](int k) { return wright_term(alpha, beta, z, k); }, ctl, "wright_w", &big);
  if (big > 1e6 * std::max(std::abs(s), 1e-300)) {
    // Past -1/2 the collapsed integrand grows like exp(r p^nu |cos pi nu|) and cancels.
    if (alpha < 0.0 && alpha >= -0.5 && beta < 1.0) return wright_hankel(alpha, beta, z);
    throw ConvergenceError("wright_w: argument outside the stable series range");
  }
  return s;
}

}  // namespace fracdiff::specfun
