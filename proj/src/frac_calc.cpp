#include "fracdiff/frac_calc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::frac {

using specfun::gamma_fn;
using specfun::rgamma;

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("fractional order must lie in (0, 1]");
}

// Derivative at x[0] of the cubic through the first four points (x0 first).
double lagrange_slope(const double* x, const double* y) {
  double s = 0.0;
  for (int j = 0; j < 4; ++j) {
    if (j == 0) {
      double l = 0.0;
      for (int k = 1; k < 4; ++k) l += 1.0 / (x[0] - x[k]);
      s += y[0] * l;
    } else {
      double num = 1.0, den = 1.0;
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        den *= x[j] - x[k];
        if (k != 0) num *= x[0] - x[k];
      }
      s += y[j] * num / den;
    }
  }
  return s;
}

const quad::Options& tight() {
  static const quad::Options o{1e-15, 1e-13, 4000};
  return o;
}

// int_lo^hi |y - s|^{-a} g(s) ds where the kernel singularity sits at s = y,
// which must coincide with hi (left) or lo (right). Uses u = r^{1-a}.
double singular_segment(const Fn& g, double lo, double hi, double y, double a, bool left) {
  if (hi <= lo) return 0.0;
  const double p = 1.0 - a;
  const double rmax = left ? y - lo : hi - y;
  const double rmin = left ? y - hi : lo - y;
  auto h = [&](double u) {
    double r = std::pow(u, 1.0 / p);
    double s = left ? y - r : y + r;
    return g(s) / p;
  };
  return quad::integrate(h, std::pow(std::max(rmin, 0.0), p), std::pow(rmax, p), tight());
}

// Richardson-extrapolated centered difference.
template <class F>
double centered(F&& I, double x, double h) {
  double d1 = (I(x + h) - I(x - h)) / (2.0 * h);
  double d2 = (I(x + 2.0 * h) - I(x - 2.0 * h)) / (4.0 * h);
  return (4.0 * d1 - d2) / 3.0;
}

// Gauss-Legendre 8 on [0,1].
struct GL8 {
  double x[8], w[8];
  GL8() {
    using G = boost::math::quadrature::gauss<double, 8>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    for (int i = 0; i < 4; ++i) {
      x[2 * i] = 0.5 - 0.5 * a[i];
      x[2 * i + 1] = 0.5 + 0.5 * a[i];
      w[2 * i] = w[2 * i + 1] = 0.5 * wt[i];
    }
  }
};
const GL8& gl8() {
  static const GL8 g;
  return g;
}

}  // namespace

double PowerLaw::operator()(double x) const { return coefficient * std::pow(x, exponent - 1.0); }

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values, double extrapolation_decay)
    : x_(std::move(nodes)), y_(std::move(values)), decay_(extrapolation_decay) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("GridFunction: need >= 2 nodes and matching values");
  if (x_[0] < 0.0) throw DomainError("GridFunction: nodes must be non-negative");
  min_gap_ = INFINITY;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) throw DomainError("GridFunction: nodes must be strictly increasing");
    min_gap_ = std::min(min_gap_, x_[i + 1] - x_[i]);
  }
  for (double v : y_)
    if (!std::isfinite(v)) throw DomainError("GridFunction: non-finite value");

  const std::size_t m = n - 1;
  b_.assign(m, 0.0);
  c_.assign(m, 0.0);
  d_.assign(m, 0.0);
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = x_[i + 1] - x_[i];
  if (n < 4) {
    for (std::size_t i = 0; i < m; ++i) b_[i] = (y_[i + 1] - y_[i]) / h[i];
    return;
  }
  // Clamped spline; end slopes from four-point Lagrange derivatives.
  double s0 = lagrange_slope(&x_[0], &y_[0]);
  double xr[4] = {x_[n - 1], x_[n - 2], x_[n - 3], x_[n - 4]};
  double yr[4] = {y_[n - 1], y_[n - 2], y_[n - 3], y_[n - 4]};
  double sn = lagrange_slope(xr, yr);
  std::vector<double> A(n), B(n), C(n), R(n), M(n);
  A[0] = 0.0;
  B[0] = 2.0 * h[0];
  C[0] = h[0];
  R[0] = 6.0 * ((y_[1] - y_[0]) / h[0] - s0);
  for (std::size_t i = 1; i < m; ++i) {
    A[i] = h[i - 1];
    B[i] = 2.0 * (h[i - 1] + h[i]);
    C[i] = h[i];
    R[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  A[m] = h[m - 1];
  B[m] = 2.0 * h[m - 1];
  C[m] = 0.0;
  R[m] = 6.0 * (sn - (y_[m] - y_[m - 1]) / h[m - 1]);
  // Thomas algorithm.
  for (std::size_t i = 1; i < n; ++i) {
    double w = A[i] / B[i - 1];
    B[i] -= w * C[i - 1];
    R[i] -= w * R[i - 1];
  }
  M[m] = R[m] / B[m];
  for (std::size_t i = m; i-- > 0;) M[i] = (R[i] - C[i] * M[i + 1]) / B[i];
  for (std::size_t i = 0; i < m; ++i) {
    b_[i] = (y_[i + 1] - y_[i]) / h[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
    c_[i] = 0.5 * M[i];
    d_[i] = (M[i + 1] - M[i]) / (6.0 * h[i]);
  }
}

GridFunction GridFunction::sample(const Fn& f, std::vector<double> nodes, double extrapolation_decay) {
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
  return GridFunction(std::move(nodes), std::move(v), extrapolation_decay);
}

int GridFunction::segment(double s) const {
  if (s < x_[0]) return 0;
  auto it = std::upper_bound(x_.begin(), x_.end(), s);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::min(i, static_cast<int>(x_.size()) - 2);
}

double GridFunction::tail(double s) const {
  if (decay_ == zero_tail) return 0.0;
  return y_.back() * std::pow(s / x_.back(), decay_);
}

double GridFunction::operator()(double s) const {
  if (s > x_.back()) return tail(s);
  int i = segment(s);
  double w = s - x_[i];
  return y_[i] + w * (b_[i] + w * (c_[i] + w * d_[i]));
}

double GridFunction::derivative(double s) const {
  if (s > x_.back()) {
    if (decay_ == zero_tail) return 0.0;
    return tail(s) * decay_ / s;
  }
  int i = segment(s);
  double w = s - x_[i];
  return b_[i] + w * (2.0 * c_[i] + w * 3.0 * d_[i]);
}

double GridFunction::piece_kernel(int i, double lo, double hi, double y, double a, bool left, bool deriv) const {
  if (hi <= lo) return 0.0;
  const int k = std::max(i, 0);
  const double base = x_[k];
  double c[4];
  if (deriv) {
    c[0] = b_[k]; c[1] = 2.0 * c_[k]; c[2] = 3.0 * d_[k]; c[3] = 0.0;
  } else {
    c[0] = y_[k]; c[1] = b_[k]; c[2] = c_[k]; c[3] = d_[k];
  }
  const double width = hi - lo;
  const double dist = left ? y - hi : lo - y;
  if (dist >= 3.0 * width) {
    const auto& g = gl8();
    double s = 0.0;
    for (int j = 0; j < 8; ++j) {
      double sj = lo + width * g.x[j];
      double w = sj - base;
      double p = c[0] + w * (c[1] + w * (c[2] + w * c[3]));
      s += g.w[j] * p * std::pow(std::abs(y - sj), -a);
    }
    return s * width;
  }
  // Exact: w = sigma r + D with r = |y - s|, D = y - base.
  const double sigma = left ? -1.0 : 1.0;
  const double D = y - base;
  static const double binom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  double q[4];
  for (int j = 0; j < 4; ++j) {
    double acc = 0.0;
    for (int kk = j; kk < 4; ++kk) acc += c[kk] * binom[kk][j] * std::pow(D, kk - j);
    q[j] = acc * ((j % 2) ? sigma : 1.0);
  }
  const double r1 = left ? y - hi : lo - y;
  const double r2 = left ? y - lo : hi - y;
  double s = 0.0;
  for (int j = 0; j < 4; ++j) {
    double e = j + 1.0 - a;
    double v2 = std::pow(r2, e);
    double v1 = r1 > 0.0 ? std::pow(r1, e) : 0.0;
    s += q[j] * (v2 - v1) / e;
  }
  return s;
}

double GridFunction::left_kernel_integral(double y, double a, bool deriv) const {
  if (y <= 0.0) return 0.0;
  double s = 0.0;
  if (x_[0] > 0.0) s += piece_kernel(-1, 0.0, std::min(y, x_[0]), y, a, true, deriv);
  const int m = static_cast<int>(x_.size()) - 1;
  for (int i = 0; i < m && x_[i] < y; ++i) s += piece_kernel(i, x_[i], std::min(y, x_[i + 1]), y, a, true, deriv);
  if (y > x_.back() && decay_ != zero_tail) {
    Fn g = deriv ? Fn([this](double t) { return derivative(t); }) : Fn([this](double t) { return tail(t); });
    s += singular_segment(g, x_.back(), y, y, a, true);
  }
  return s;
}

double GridFunction::right_kernel_integral(double y, double a) const {
  const double X = x_.back();
  double s = 0.0;
  if (decay_ != zero_tail) {
    if (!(decay_ < a - 1.0)) {
      std::ostringstream os;
      os << "right-sided operator: tail exponent " << decay_ << " gives a divergent integral (need < " << a - 1.0
         << ")";
      throw DomainError(os.str());
    }
    // int_z^inf (s-z)^{-a} s^d ds = z^{d+1-a} Gamma(1-a) Gamma(a-d-1) / Gamma(-d)
    const double d = decay_;
    const double z = std::max(y, X);
    double full = y_.back() * std::pow(X, -d) * std::pow(z, d + 1.0 - a) * std::tgamma(1.0 - a) *
                  std::tgamma(a - d - 1.0) * rgamma(-d);
    if (y < X) full -= singular_segment([this](double t) { return tail(t); }, y, X, y, a, false);
    s += full;
  }
  if (y >= X) return s;
  const int m = static_cast<int>(x_.size()) - 1;
  if (y < x_[0]) s += piece_kernel(-1, y, x_[0], y, a, false, false);
  for (int i = std::max(segment(y), 0); i < m; ++i) {
    double lo = std::max(y, x_[i]);
    s += piece_kernel(i, lo, x_[i + 1], y, a, false, false);
  }
  return s;
}

double GridFunction::moment(int k) const {
  // Gauss-Legendre 8 is exact for degree <= 15 polynomials.
  const auto& g = gl8();
  double s = 0.0;
  auto piece = [&](int i, double lo, double hi) {
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) {
      double t = lo + (hi - lo) * g.x[j];
      double w = t - x_[i];
      acc += g.w[j] * std::pow(t, k) * (y_[i] + w * (b_[i] + w * (c_[i] + w * d_[i])));
    }
    return acc * (hi - lo);
  };
  if (x_[0] > 0.0) s += piece(0, 0.0, x_[0]);
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) s += piece(static_cast<int>(i), x_[i], x_[i + 1]);
  return s;
}

// ---- Riemann-Liouville, left ----

double rl_left(double alpha, const PowerLaw& f, double x) {
  check_alpha(alpha);
  const double beta = f.exponent;
  return f.coefficient * gamma_fn(beta) * rgamma(beta - alpha) * std::pow(x, beta - alpha - 1.0);
}

double rl_left(double alpha, const GridFunction& f, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw DomainError("rl_left: x must be positive");
  if (alpha == 1.0) return f.derivative(x);
  const double h = std::min(f.min_gap(), 0.25 * x);
  auto I = [&](double y) { return f.left_kernel_integral(y, alpha); };
  return centered(I, x, h) / gamma_fn(1.0 - alpha);
}

namespace {

double left_integral_fn(const Fn& f, double y, double a) {
  if (y <= 0.0) return 0.0;
  // Regular half, cut dyadically towards 0 so that mass of f near the origin is
  // resolved when y is large, plus substituted half around the kernel singularity.
  auto k = [&](double s) { return std::pow(y - s, -a) * f(s); };
  const int cuts = std::clamp(int(std::ceil(std::log2(std::max(y, 1.0)))) + 2, 1, 60);
  double hi = 0.5 * y, s1 = 0.0;
  for (int i = 0; i < cuts; ++i, hi *= 0.5) s1 += quad::integrate(k, 0.5 * hi, hi, tight());
  s1 += quad::integrate(k, 0.0, hi, tight());
  return s1 + singular_segment(f, 0.5 * y, y, y, a, true);
}

double right_integral_fn(const Fn& f, double y, double a) {
  const double L = std::max(y, 1.0);
  double s1 = singular_segment(f, y, y + L, y, a, false);
  double s2 = quad::integrate_inf([&](double s) { return std::pow(s - y, -a) * f(s); }, y + L, tight());
  return s1 + s2;
}

}  // namespace

double rl_left(double alpha, const Fn& f, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw DomainError("rl_left: x must be positive");
  const double h = 1e-3 * x;
  if (alpha == 1.0) return centered(f, x, h);
  auto I = [&](double y) { return left_integral_fn(f, y, alpha); };
  return centered(I, x, h) / gamma_fn(1.0 - alpha);
}

// ---- Riemann-Liouville, right ----

double rl_right(double alpha, const PowerLaw& f, double x) {
  check_alpha(alpha);
  const double beta = f.exponent;
  if (alpha == 1.0) return -f.coefficient * (beta - 1.0) * std::pow(x, beta - 2.0);
  if (!(beta < alpha)) throw DomainError("rl_right: power law tail not integrable (need exponent < alpha)");
  return f.coefficient * gamma_fn(1.0 + alpha - beta) * rgamma(1.0 - beta) * std::pow(x, beta - alpha - 1.0);
}

double rl_right(double alpha, const GridFunction& f, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw DomainError("rl_right: x must be positive");
  if (alpha == 1.0) return -f.derivative(x);
  const double h = std::min(f.min_gap(), 0.25 * x);
  auto I = [&](double y) { return f.right_kernel_integral(y, alpha); };
  return -centered(I, x, h) / gamma_fn(1.0 - alpha);
}

double rl_right(double alpha, const Fn& f, double x) {
  check_alpha(alpha);
  if (!(x > 0.0)) throw DomainError("rl_right: x must be positive");
  const double h = 1e-3 * x;
  if (alpha == 1.0) return -centered(f, x, h);
  auto I = [&](double y) { return right_integral_fn(f, y, alpha); };
  return -centered(I, x, h) / gamma_fn(1.0 - alpha);
}

// ---- Caputo ----

double caputo(double alpha, const PowerLaw& f, double t) {
  check_alpha(alpha);
  if (f.exponent == 1.0) return 0.0;
  if (f.exponent < 1.0) throw DomainError("caputo: power law not differentiable at 0");
  return rl_left(alpha, f, t);
}

double caputo(double alpha, const GridFunction& f, double t) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("caputo: t must be positive");
  if (alpha == 1.0) return f.derivative(t);
  return f.left_kernel_integral(t, alpha, true) / gamma_fn(1.0 - alpha);
}

double caputo(double alpha, const Fn& f, double t, double rel_tol) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw DomainError("caputo: t must be positive");
  if (alpha == 1.0) return centered(f, t, 1e-3 * t);
  // Marchaud form, uses only values of f. s = (t/2) w^2 on the near-origin half
  // absorbs the s^{1/2}-type start of typical fractional solutions.
  const quad::Options o{1e-15, rel_tol, 4000};
  const double ft = f(t), f0 = f(0.0);
  double a1 = quad::integrate(
      [&](double w) {
        double s = 0.5 * t * w * w;
        return (ft - f(s)) * std::pow(t - s, -alpha - 1.0) * t * w;
      },
      0.0, 1.0, o);
  const double p = 1.0 - alpha;
  // Below r0 the difference quotient is rounding noise; continue it linearly
  // from its values at r0 and 2 r0.
  const double r0 = 1e-6 * t;
  const double q0 = (ft - f(t - r0)) / r0, q1 = (ft - f(t - 2.0 * r0)) / (2.0 * r0);
  auto g = [&](double u) {
    double r = std::pow(u, 1.0 / p);
    if (r < r0) return (q0 + (q0 - q1) * (r0 - r) / r0) / p;
    return (ft - f(t - r)) / r / p;
  };
  double a2 = quad::integrate(g, 0.0, std::pow(0.5 * t, p), o);
  return ((ft - f0) * std::pow(t, -alpha) + alpha * (a1 + a2)) / gamma_fn(1.0 - alpha);
}

// ---- fractional integrals ----

double frac_integral(Side side, double alpha, const PowerLaw& f, double x) {
  check_alpha(alpha);
  if (alpha == 1.0) return f(x);
  const double beta = f.exponent;
  if (side == Side::left)
    return f.coefficient * std::pow(x, beta - alpha) * gamma_fn(beta) * rgamma(beta + 1.0 - alpha);
  if (!(beta < alpha)) throw DomainError("frac_integral: power law tail not integrable");
  return f.coefficient * std::pow(x, beta - alpha) * gamma_fn(alpha - beta) * rgamma(1.0 - beta);
}

double frac_integral(Side side, double alpha, const GridFunction& f, double x) {
  check_alpha(alpha);
  if (alpha == 1.0) return f(x);
  double v = side == Side::left ? f.left_kernel_integral(x, alpha) : f.right_kernel_integral(x, alpha);
  return v / gamma_fn(1.0 - alpha);
}

double frac_integral(Side side, double alpha, const Fn& f, double x) {
  check_alpha(alpha);
  if (alpha == 1.0) return f(x);
  double v = side == Side::left ? left_integral_fn(f, x, alpha) : right_integral_fn(f, x, alpha);
  return v / gamma_fn(1.0 - alpha);
}

BoundaryTerm boundary_term(Side side, double alpha, const Fn& f, double eta, double tol) {
  auto g = [&](double x) { return std::pow(x, eta - 1.0) * frac_integral(side, alpha, f, x); };
  BoundaryTerm b;
  b.at_zero = g(1e-6);
  b.at_infinity = g(1e3);
  b.vanishes = std::abs(b.at_zero) <= tol && std::abs(b.at_infinity) <= tol;
  return b;
}

}  // namespace fracdiff::frac
