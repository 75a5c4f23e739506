#include "fracdiff/solvers.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>

#include "fracdiff/errors.hpp"
#include "fracdiff/laws.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solvers {

using specfun::gamma_fn;

double subordinated_solution(double gamma, double mu, double nu, double x, double t) {
  laws::GGLaw law{gamma, mu};
  law.validate();
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("subordinated_solution: nu must lie in (0, 1]");
  if (!(x > 0.0) || !(t > 0.0)) throw DomainError("subordinated_solution: x and t must be positive");
  if (nu == 1.0) return laws::gg_density(law, x, t, true);
  // s = t^nu u keeps the bulk of l_nu(., t) at u = O(1) for every t.
  const double tn = std::pow(t, nu);
  auto f = [&](double u) {
    double s = tn * u;
    double l = laws::l_density(nu, s, t);
    if (l == 0.0) return 0.0;
    return laws::gg_density(law, x, s, true) * l;
  };
  quad::Options o{1e-15, 1e-10, 4000};
  return tn * quad::integrate_positive(f, 1.0, o);
}

double subordinated_laplace_closed(double mu, double nu, double x, double lambda) {
  const double w = std::pow(x, mu - 1.0);
  return 2.0 * w * std::pow(lambda, nu * (mu + 1.0) / 2.0 - 1.0) * std::pow(x, (1.0 - mu) / 2.0) *
         specfun::bessel_k(1.0 - mu, 2.0 * std::sqrt(x) * std::pow(lambda, nu / 2.0)) / gamma_fn(mu);
}

// ---- eigen system ----

double weight(double gamma, double mu, double x) { return std::pow(x, gamma * mu - 1.0); }

double EigenSystem::eigenfunction(std::size_t n, double x) const {
  const double u = zeros.at(n) * std::pow(x, 0.5 * gamma);
  return std::pow(x, 0.5 * gamma * (1.0 - mu)) * specfun::bessel_j(mu - 1.0, u);
}

namespace {

std::shared_ptr<const EigenSystem> build_eigen(double gamma, double mu, int N) {
  auto e = std::make_shared<EigenSystem>();
  e->gamma = gamma;
  e->mu = mu;
  e->zeros = specfun::bessel_j_zeros(mu - 1.0, N);
  const double v = mu - 1.0, h = 1e-6;
  for (double k : e->zeros) {
    double jp = (specfun::bessel_j(v, k + h) - specfun::bessel_j(v, k - h)) / (2.0 * h);
    double ji = -specfun::bessel_j(v + 1.0, k);
    e->norms.push_back(ji * ji / gamma);
    e->norms_fd.push_back(jp * jp / gamma);
  }
  return e;
}

}  // namespace

std::shared_ptr<const EigenSystem> eigen_system(double gamma, double mu, int N) {
  if (!(gamma > 0.0))
    throw DomainError("eigen_system: gamma must be positive (the weighted norm diverges for gamma < 0)");
  if (!(mu > 0.0)) throw DomainError("eigen_system: mu must be positive");
  if (N < 1) throw DomainError("eigen_system: N must be >= 1");
  using Key = std::tuple<double, double, int>;
  static std::map<Key, std::shared_ptr<const EigenSystem>> cache;
  static std::shared_mutex mtx;
  const Key key{gamma, mu, N};
  {
    std::shared_lock lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto built = build_eigen(gamma, mu, N);
  std::unique_lock lock(mtx);
  auto [it, inserted] = cache.emplace(key, built);
  return it->second;
}

// ---- Sturm-Liouville series ----

void BVPSpec::validate() const {
  if (!(gamma > 0.0)) throw DomainError("BVPSpec: gamma must be positive");
  if (!(mu > 0.0)) throw DomainError("BVPSpec: mu must be positive");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("BVPSpec: nu must lie in (0, 1]");
  if (!initial_datum) throw DomainError("BVPSpec: missing initial datum");
  if (n_terms < 1) throw DomainError("BVPSpec: n_terms must be >= 1");
  for (double x : {1e-6, 0.25, 0.5, 0.75, 1.0 - 1e-6})
    if (!std::isfinite(initial_datum(x))) throw DomainError("BVPSpec: initial datum not finite on (0, 1)");
}

namespace {

// Integral over (0, 1) split at eigenfunction-scale pieces so that the
// oscillations of high modes are resolved.
double integrate_unit(const Fn& f, int pieces) {
  quad::Options o{1e-15, 1e-12, 8000};
  double s = 0.0;
  for (int i = 0; i < pieces; ++i) {
    double a = double(i) / pieces, b = double(i + 1) / pieces;
    s += quad::integrate(f, a, b, o);
  }
  return s;
}

}  // namespace

SturmLiouvilleSolution::SturmLiouvilleSolution(const BVPSpec& spec) : spec_(spec) {
  spec_.validate();
  eig_ = eigen_system(spec_.gamma, spec_.mu, spec_.n_terms);
  c_.resize(spec_.n_terms);
  const int pieces = std::max(4, spec_.n_terms / 4);
  for (int n = 0; n < spec_.n_terms; ++n) {
    c_[n] = integrate_unit([&](double x) { return spec_.initial_datum(x) * eig_->eigenfunction(n, x); }, pieces);
  }
}

double SturmLiouvilleSolution::value(double x, double t) const {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("sturm_liouville_solve: x must lie in (0, 1)");
  if (t < 0.0) throw DomainError("sturm_liouville_solve: t must be non-negative");
  const double tn = std::pow(t, spec_.nu);
  double s = 0.0;
  for (int n = 0; n < spec_.n_terms; ++n) {
    double lam = eig_->eigenvalue(n);
    double e = t == 0.0 ? 1.0 : specfun::mittag_leffler({spec_.nu, 1.0}, -lam * tn);
    s += c_[n] * e * eig_->eigenfunction(n, x) / eig_->norms[n];
  }
  return weight(spec_.gamma, spec_.mu, x) * s;
}

double SturmLiouvilleSolution::initial_l2_error() const {
  auto f = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    double w = weight(spec_.gamma, spec_.mu, x);
    double partial = 0.0;
    for (int n = 0; n < spec_.n_terms; ++n) partial += c_[n] * eig_->eigenfunction(n, x) / eig_->norms[n];
    double d = spec_.initial_datum(x) / w - partial;
    return d * d * w;
  };
  return std::sqrt(integrate_unit(f, std::max(4, spec_.n_terms / 4)));
}

double SturmLiouvilleSolution::tail_estimate() const {
  const int N = spec_.n_terms - 1;
  return std::abs(c_[N]) / eig_->norms[N];
}

double sturm_liouville_solve(const BVPSpec& spec, double x, double t) {
  return SturmLiouvilleSolution(spec).value(x, t);
}

double adjoint_generator_fd(double gamma, double mu, const Fn& f, double x, double h) {
  auto u = [&](double y) { return f(y) / weight(gamma, mu, y); };
  auto p = [&](double y) { return std::pow(y, gamma * mu - gamma + 1.0); };
  const double up = u(x + h), u0 = u(x), um = u(x - h);
  return (p(x + 0.5 * h) * (up - u0) - p(x - 0.5 * h) * (u0 - um)) / (h * h * gamma * gamma);
}

// ---- mixed law ----

Route route_from_string(const std::string& s) {
  if (s == "double_integral") return Route::double_integral;
  if (s == "foxh") return Route::foxh;
  if (s == "mellin_inversion") return Route::mellin_inversion;
  throw UnsupportedMethod("unknown route '" + s + "'");
}

const char* to_string(Route r) {
  switch (r) {
    case Route::double_integral: return "double_integral";
    case Route::foxh: return "foxh";
    case Route::mellin_inversion: return "mellin_inversion";
  }
  return "?";
}

namespace {

void check_indices(double mu, double nu, double beta) {
  if (!(mu > 0.0)) throw DomainError("mixed law: mu must be positive");
  if (!(nu > 0.0 && nu <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw DomainError("mixed law: nu and beta must lie in (0, 1]");
}

using C = std::complex<double>;

// Mellin transform at unit time, complex argument; cancelling Gamma pairs are dropped.
C g_kernel(double mu, double nu, double beta, C eta) {
  C s = specfun::lgamma_complex(eta + mu - 1.0) - std::lgamma(mu);
  if (nu < 1.0) s += specfun::lgamma_complex((1.0 - eta) / nu) - std::log(nu) - specfun::lgamma_complex(1.0 - eta);
  if (beta < 1.0)
    s += specfun::lgamma_complex((eta - 1.0) / nu + 1.0) - specfun::lgamma_complex((eta - 1.0) * beta / nu + 1.0);
  return std::exp(s);
}

}  // namespace

mellin::MellinStrip g_nu_beta_strip(double mu, double nu, double beta) {
  check_indices(mu, nu, beta);
  double a = 1.0 - mu;
  if (beta < 1.0) a = std::max(a, 1.0 - nu);
  // E h^{eta-1} = G(1 - (eta-1)/nu) / G(2 - eta): finite up to eta = 1 + nu.
  double b = nu < 1.0 ? 1.0 + nu : INFINITY;
  return {a, b};
}

double g_nu_beta_mellin(double mu, double nu, double beta, double t, double eta) {
  auto st = g_nu_beta_strip(mu, nu, beta);
  if (!st.contains(eta)) {
    std::ostringstream os;
    os << "g_nu_beta_mellin: eta=" << eta << " outside strip (" << st.a << ", " << st.b << ")";
    throw DomainError(os.str());
  }
  return g_kernel(mu, nu, beta, C(eta, 0.0)).real() * std::pow(t, (eta - 1.0) * beta / nu);
}

mellin::FoxH g_nu_beta_fox(double mu, double nu, double beta) {
  check_indices(mu, nu, beta);
  mellin::FoxH h;
  auto st = g_nu_beta_strip(mu, nu, beta);
  // G(-z/nu) / G(-z) has a removable pole at z = 0 that the parameter form
  // still sees, so the contour stays left of it.
  h.strip = {st.a - 1.0, std::min(st.b, 1.0) - 1.0};
  if (nu < 1.0 && beta < 1.0) {
    h.m = 2; h.n = 1; h.p = 3; h.q = 3;
    h.upper = {{1.0, 1.0 / nu}, {1.0, beta / nu}, {mu, 0.0}};
    h.lower = {{mu, 1.0}, {1.0, 1.0 / nu}, {1.0, 1.0}};
    h.coefficient = 1.0 / nu;
  } else if (nu < 1.0) {
    h.m = 1; h.n = 1; h.p = 2; h.q = 2;
    h.upper = {{1.0, 1.0 / nu}, {mu, 0.0}};
    h.lower = {{mu, 1.0}, {1.0, 1.0}};
    h.coefficient = 1.0 / nu;
  } else if (beta < 1.0) {
    h.m = 2; h.n = 0; h.p = 2; h.q = 2;
    h.upper = {{1.0, beta}, {mu, 0.0}};
    h.lower = {{mu, 1.0}, {1.0, 1.0}};
  } else {
    h.m = 1; h.n = 0; h.p = 1; h.q = 1;
    h.upper = {{mu, 0.0}};
    h.lower = {{mu, 1.0}};
  }
  h.validate();
  return h;
}

double g_nu_beta_density(double mu, double nu, double beta, double x, double t, Route route) {
  check_indices(mu, nu, beta);
  if (!(x > 0.0) || !(t > 0.0)) throw DomainError("g_nu_beta_density: x and t must be positive");
  const double sc = std::pow(t, beta / nu);
  switch (route) {
    case Route::double_integral: {
      if (nu == 1.0 && beta == 1.0) return laws::gg_density({1.0, mu}, x, t);
      auto f = [&](double s) {
        double a = laws::gg_density({1.0, mu}, x, s);
        if (a == 0.0) return 0.0;
        return a * laws::f_nu_beta(nu, beta, s, t);
      };
      quad::Options o{1e-15, 1e-9, 4000};
      return quad::integrate_positive(f, sc, o);
    }
    case Route::foxh: {
      const double y = x / sc;
      return mellin::fox_h_eval(g_nu_beta_fox(mu, nu, beta), y) / y / sc;
    }
    case Route::mellin_inversion: {
      auto st = g_nu_beta_strip(mu, nu, beta);
      double c = mellin::MellinStrip{st.a, std::min(st.b, 1.0)}.midpoint();
      double rate = 1.0 + 2.0 / nu;
      return mellin::mellin_invert([&](C eta) { return g_kernel(mu, nu, beta, eta); }, x / sc, c, {}, rate) / sc;
    }
  }
  throw UnsupportedMethod("g_nu_beta_density: unknown route");
}

double time_mellin_residual(double mu, double nu, double eta, double t) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("time_mellin_residual: nu must lie in (0, 1]");
  if (!(eta > 1.0 - mu) || !(eta - nu > 1.0 - mu) || !(eta > 0.0))
    throw DomainError("time_mellin_residual: eta and eta - nu must lie in the strip");
  // Left: RL time derivative of t^{eta-1} G(eta+mu-1)/G(mu) by the power rule.
  const double lhs = frac::rl_left(nu, frac::PowerLaw{std::exp(std::lgamma(eta + mu - 1.0) - std::lgamma(mu)), eta}, t);
  const double rhs = gamma_fn(eta) * specfun::rgamma(eta - nu) * gamma_fn(eta + mu - 1.0) *
                     specfun::rgamma(eta + mu - 1.0 - nu) * laws::gg_mellin({1.0, mu}, t, eta - nu);
  return std::abs(lhs - rhs);
}

double double_laplace_residual(double nu, double beta, double xi, double lambda) {
  if (!(nu > 0.0 && nu <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw DomainError("double_laplace_residual: indices must lie in (0, 1]");
  if (!(xi > 0.0) || !(lambda > 0.0)) throw DomainError("double_laplace_residual: transform variables must be positive");
  quad::Options o{1e-13, 1e-8, 4000};
  // Fubini: the (x, t) transform of int h(x, s) l(s, t) ds factorises under the s-integral.
  auto space = [&](double s) {
    if (nu == 1.0) return std::exp(-xi * s);
    return quad::integrate_positive([&](double x) { return std::exp(-xi * x) * laws::h_density(nu, x, s); },
                                    std::min(std::pow(s, 1.0 / nu), nu * s * std::pow(xi, nu - 1.0)), o);
  };
  auto time = [&](double s) {
    if (beta == 1.0) return std::exp(-lambda * s);
    return quad::integrate_positive([&](double t) { return std::exp(-lambda * t) * laws::l_density(beta, s, t); },
                                    std::pow(s, 1.0 / beta), o);
  };
  double psi;
  if (nu == 1.0 && beta == 1.0) {
    psi = 1.0 / (lambda + xi);
  } else if (beta == 1.0) {
    psi = quad::integrate_positive([&](double s) { return space(s) * std::exp(-lambda * s); }, 1.0, o);
  } else {
    psi = quad::integrate_positive([&](double s) { return space(s) * time(s); }, 1.0, o);
  }
  const double closed = std::pow(lambda, beta - 1.0) / (std::pow(lambda, beta) + std::pow(xi, nu));
  return std::abs(psi - closed);
}

}  // namespace fracdiff::solvers
