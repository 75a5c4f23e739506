#include "fracdiff/laws.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::laws {

using specfun::gamma_fn;

namespace {

constexpr double pi = std::numbers::pi;

void check_xt(double x, double t, const char* who) {
  if (!(x > 0.0) || !(t > 0.0)) {
    std::ostringstream os;
    os << who << ": x and t must be positive (got x=" << x << ", t=" << t << ")";
    throw DomainError(os.str());
  }
}

void check_nu(double nu, const char* who) {
  if (!(nu > 0.0 && nu < 1.0)) {
    std::ostringstream os;
    os << who << ": nu must lie in (0, 1), got " << nu;
    throw DomainError(os.str());
  }
}

// nu = 1/(n+1) -> n, otherwise 0.
int unit_fraction_order(double nu) {
  double r = 1.0 / nu;
  double k = std::round(r);
  if (k >= 2.0 && std::abs(r - k) < 1e-9) return static_cast<int>(k) - 1;
  return 0;
}

}  // namespace

void GGLaw::validate() const {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw DomainError("GGLaw: gamma must be non-zero");
  if (!(mu > 0.0)) throw DomainError("GGLaw: mu must be positive");
}

void SubordinatorSpec::validate() const {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("SubordinatorSpec: nu must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("SubordinatorSpec: beta must lie in (0, 1]");
}

std::vector<double> MuVector::values() const {
  std::vector<double> v;
  for (std::size_t j = 0; j < size(); ++j) v.push_back(entry(j));
  return v;
}

long long MuVector::product() const {
  long long p = 1;
  for (int u : upsilon) p *= u;
  return p;
}

long long MuVector::sum() const {
  long long s = 0;
  for (int u : upsilon) s += u;
  return s;
}

std::string MuVector::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < size(); ++j) os << (j ? "," : "") << upsilon[j] << "/" << kappa;
  return os.str();
}

MuVector MuVector::parse(const std::string& s) {
  MuVector m;
  m.kappa = 0;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto slash = item.find('/');
    int u = 0, k = 1;
    try {
      if (slash == std::string::npos) {
        u = std::stoi(item);
      } else {
        u = std::stoi(item.substr(0, slash));
        k = std::stoi(item.substr(slash + 1));
      }
    } catch (const std::exception&) {
      throw DomainError("MuVector: cannot parse entry '" + item + "'");
    }
    if (m.kappa == 0) m.kappa = k;
    if (k != m.kappa) throw DomainError("MuVector: all entries must share one denominator");
    m.upsilon.push_back(u);
  }
  m.validate();
  return m;
}

void MuVector::validate() const {
  if (kappa < 1) throw DomainError("MuVector: kappa must be >= 1");
  if (upsilon.empty()) throw DomainError("MuVector: empty vector");
  for (int u : upsilon)
    if (u < 1) throw DomainError("MuVector: entries must be positive");
}

double TimeStretch::psi(double s) const { return m * std::pow(s, 1.0 / m); }
double TimeStretch::phi(double t) const { return std::pow(t / m, m); }

std::string to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::closed: return "closed";
    case Method::conv: return "conv";
    case Method::foxh: return "foxh";
    case Method::wright: return "wright";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "auto") return Method::automatic;
  if (s == "closed") return Method::closed;
  if (s == "conv") return Method::conv;
  if (s == "foxh") return Method::foxh;
  if (s == "wright") return Method::wright;
  throw UnsupportedMethod("unknown method '" + s + "'");
}

double gg_density(const GGLaw& law, double x, double t, bool tilde) {
  law.validate();
  check_xt(x, t, "gg_density");
  const double g = law.gamma, mu = law.mu;
  const double scale = tilde ? std::pow(t, 1.0 / g) : t;
  const double z = x / scale;
  const double lz = std::log(z);
  if (!std::isfinite(lz) || !std::isfinite(scale) || scale == 0.0) return 0.0;
  const double lv = std::log(std::abs(g)) - std::log(scale) + (g * mu - 1.0) * lz - std::exp(g * lz) - std::lgamma(mu);
  return std::exp(lv);
}

mellin::MellinStrip gg_strip(const GGLaw& law) {
  law.validate();
  double edge = 1.0 - law.gamma * law.mu;
  if (law.gamma > 0) return {edge, INFINITY};
  return {-INFINITY, edge};
}

double gg_mellin(const GGLaw& law, double t, double eta, bool tilde) {
  auto st = gg_strip(law);
  if (!st.contains(eta)) throw DomainError("gg_mellin: eta outside the strip");
  const double e = (eta - 1.0) / law.gamma;
  const double tp = tilde ? std::pow(t, e) : std::pow(t, eta - 1.0);
  return std::exp(std::lgamma(e + law.mu) - std::lgamma(law.mu)) * tp;
}

double star_equal_gamma(double gamma, double mu1, double mu2, double x, double t) {
  GGLaw{gamma, mu1}.validate();
  GGLaw{gamma, mu2}.validate();
  check_xt(x, t, "star_equal_gamma");
  const double z = x / t;
  const double lw = std::log(2.0) + 0.5 * gamma * std::log(z);
  const double v = std::abs(mu2 - mu1);
  double lk;
  if (lw < -30.0) {
    // small-argument limit of K_v
    lk = v > 0.0 ? std::lgamma(v) - std::log(2.0) + v * (std::log(2.0) - lw) : std::log(std::log(2.0) - lw - 0.5772156649015329);
  } else {
    const double k = specfun::bessel_k(v, std::exp(lw));
    if (k == 0.0) return 0.0;
    lk = std::log(k);
  }
  const double lv = std::log(2.0 * std::abs(gamma)) + 0.5 * gamma * (mu1 + mu2) * std::log(z) - std::log(x) -
                    std::lgamma(mu1) - std::lgamma(mu2) + lk;
  return std::exp(lv);
}

double star_opposite_gamma(double gamma, double mu1, double mu2, double x, double t) {
  GGLaw{gamma, mu1}.validate();
  GGLaw{-gamma, mu2}.validate();
  check_xt(x, t, "star_opposite_gamma");
  // |g|/B * x^{g mu1 - 1} t^{g mu2} / (t^g + x^g)^{mu1+mu2}, written via z = x/t
  const double z = x / t;
  const double lz = std::log(z);
  const double g = gamma;
  const double log1p_term = g * lz > 0 ? g * lz + std::log1p(std::exp(-g * lz)) : std::log1p(std::exp(g * lz));
  const double lv = std::log(std::abs(g)) - std::log(specfun::beta_fn(mu1, mu2)) + (g * mu1 - 1.0) * lz -
                    std::log(t) - (mu1 + mu2) * log1p_term;
  return std::exp(lv);
}

// ---- subordinator and inverse ----

mellin::FoxH h_fox(double nu) {
  check_nu(nu, "h_fox");
  mellin::FoxH h;
  h.m = 0;
  h.n = 1;
  h.p = 1;
  h.q = 1;
  h.upper = {{1.0 - 1.0 / nu, 1.0 / nu}};
  h.lower = {{0.0, 1.0}};
  h.strip = {-INFINITY, 1.0};
  h.coefficient = 1.0 / nu;
  return h;
}

mellin::FoxH l_fox(double nu) {
  check_nu(nu, "l_fox");
  mellin::FoxH h;
  h.m = 1;
  h.n = 0;
  h.p = 1;
  h.q = 1;
  h.upper = {{1.0 - nu, nu}};
  h.lower = {{0.0, 1.0}};
  h.strip = {0.0, INFINITY};
  return h;
}

double h_mellin(double nu, double t, double eta) {
  return mellin::fox_h_mellin(h_fox(nu), eta) * std::pow(t, (eta - 1.0) / nu);
}

double l_mellin(double nu, double t, double eta) {
  return mellin::fox_h_mellin(l_fox(nu), eta) * std::pow(t, nu * (eta - 1.0));
}

Method resolve_h_method(double nu, Method m) {
  if (m != Method::automatic) return m;
  if (nu == 0.5) return Method::closed;
  int n = unit_fraction_order(nu);
  if (n >= 1 && n <= 3) return Method::conv;
  return Method::foxh;
}

Method resolve_l_method(double nu, Method m) {
  if (m != Method::automatic) return m;
  if (nu == 0.5) return Method::closed;
  int n = unit_fraction_order(nu);
  if (n >= 1 && n <= 3) return Method::conv;
  return Method::foxh;
}

namespace {

// Far right tail, x >> t^{1/nu}: the convergent series in x^{-nu}.
double h_far_tail(double nu, double lr, double lt) {
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    const double sn = std::sin(pi * nu * k);
    const double lterm = std::lgamma(nu * k + 1.0) - std::lgamma(k + 1.0) - (nu * k + 1.0) * lr - lt / nu;
    const double term = ((k % 2) ? 1.0 : -1.0) * sn * std::exp(lterm);
    sum += term;
    if (k > 2 && std::exp(lterm) < 1e-17 * std::abs(sum)) break;
  }
  return sum / pi;
}

// Far left tail of h_nu(y, 1): Laplace's method at the saddle lambda0 = (nu/y)^{1/(1-nu)}
// with its first correction; used once xi = (1-nu) lambda0^nu > 25, where the
// contour evaluation is down at its absolute noise floor. Returns false otherwise.
bool h_near_zero(double nu, double y, double& value) {
  const double ll0 = (std::log(nu) - std::log(y)) / (1.0 - nu);
  const double xi = (1.0 - nu) * std::exp(nu * ll0);
  if (!(xi > 25.0)) return false;
  if (xi > 745.0) {
    value = 0.0;
    return true;
  }
  const double lf2 = std::log(nu * (1.0 - nu)) + (nu - 2.0) * ll0;
  const double corr = 1.0 + (2.0 - nu) * (2.0 * nu - 1.0) / (24.0 * nu * xi);
  value = std::exp(-xi - 0.5 * (std::log(2.0 * pi) + lf2)) * corr;
  return true;
}

}  // namespace

double h_density(double nu, double x, double t, Method method) {
  check_nu(nu, "h_density");
  check_xt(x, t, "h_density");
  const Method m = resolve_h_method(nu, method);
  const double lr = std::log(x) - std::log(t) / nu;
  if (m != Method::closed && nu * lr > 2.0) return h_far_tail(nu, lr, std::log(t));
  if (double v; m != Method::closed && h_near_zero(nu, std::exp(lr), v)) return v * std::pow(t, -1.0 / nu);
  switch (m) {
    case Method::closed:
      if (nu != 0.5) throw UnsupportedMethod("h_density: closed form only for nu = 1/2");
      return std::exp(std::log(t / (2.0 * std::sqrt(pi))) - 1.5 * std::log(x) - t * t / (4.0 * x));
    case Method::conv: {
      int n = unit_fraction_order(nu);
      if (n < 1 || n > 4) throw UnsupportedMethod("h_density: conv route needs nu = 1/(n+1), n <= 4");
      std::vector<double> mu;
      for (int j = 1; j <= n; ++j) mu.push_back(j * nu);
      return compose_density(-1.0, mu, x, TimeStretch{n + 1}.phi(t));
    }
    case Method::foxh: {
      const double s = std::pow(t, -1.0 / nu);
      return s * mellin::fox_h_eval(h_fox(nu), x * s);
    }
    default:
      throw UnsupportedMethod("h_density: method " + to_string(method) + " not available");
  }
}

double l_density(double nu, double x, double t, Method method) {
  check_nu(nu, "l_density");
  check_xt(x, t, "l_density");
  const Method m = resolve_l_method(nu, method);
  // l(x, t) = (t / nu) x^{-1-1/nu} h(t x^{-1/nu}, 1); far right tail through the h asymptotics.
  if (double v; m != Method::closed && h_near_zero(nu, t * std::pow(x, -1.0 / nu), v))
    return t / nu * std::pow(x, -1.0 - 1.0 / nu) * v;
  // Near the origin the Wright series converges in a handful of terms.
  if (const double s = std::pow(t, -nu); m != Method::closed && x * s < 1e-6)
    return s * specfun::wright_w(-nu, 1.0 - nu, -x * s);
  switch (m) {
    case Method::closed:
      if (nu != 0.5) throw UnsupportedMethod("l_density: closed form only for nu = 1/2");
      return std::exp(-x * x / (4.0 * t)) / std::sqrt(pi * t);
    case Method::conv: {
      int n = unit_fraction_order(nu);
      if (n < 1 || n > 4) throw UnsupportedMethod("l_density: conv route needs nu = 1/(n+1), n <= 4");
      std::vector<double> mu;
      for (int j = 1; j <= n; ++j) mu.push_back(j * nu);
      return compose_density(double(n + 1), mu, x, TimeStretch{n + 1}.psi(t));
    }
    case Method::foxh: {
      const double s = std::pow(t, -nu);
      return s * mellin::fox_h_eval(l_fox(nu), x * s);
    }
    case Method::wright: {
      const double s = std::pow(t, -nu);
      return s * specfun::wright_w(-nu, 1.0 - nu, -x * s);
    }
    default:
      throw UnsupportedMethod("l_density: method not available");
  }
}

double ratio_density(double nu, double x) {
  check_nu(nu, "ratio_density");
  if (x < 0.0) throw DomainError("ratio_density: x must be non-negative");
  if (x == 0.0) return nu < 1.0 ? INFINITY : 0.0;
  const double xn = std::pow(x, nu);
  return std::pow(x, nu - 1.0) * std::sin(pi * nu) / (pi * (1.0 + 2.0 * xn * std::cos(pi * nu) + xn * xn));
}

double ratio_law_density(double nu, double x, double t) {
  check_xt(x, t, "ratio_law_density");
  return ratio_density(nu, x / t) / t;
}

double f_nu_beta(double nu, double beta, double x, double t) {
  if (!(nu > 0.0 && nu <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw DomainError("f_nu_beta: indices must lie in (0, 1]");
  check_xt(x, t, "f_nu_beta");
  if (nu == 1.0 && beta == 1.0) throw DomainError("f_nu_beta: degenerate (point mass) for nu = beta = 1");
  if (beta == 1.0) return h_density(nu, x, t);
  if (nu == 1.0) return l_density(beta, x, t);
  auto g = [&](double s) { return h_density(nu, x, s) * l_density(beta, s, t); };
  quad::Options o{1e-300, 1e-10, 4000};
  // h(x, .) lives on s <~ x^nu, l(., t) on s ~ t^beta; centre on the smaller.
  return quad::integrate_positive(g, std::min(std::pow(t, beta), std::pow(x, nu)), o);
}

std::vector<MuVector> index_set(IndexKind kind, int n, int kappa, long long target) {
  if (n < 1 || kappa < 1 || target < 1) throw DomainError("index_set: n, kappa, target must be >= 1");
  std::vector<MuVector> out;
  std::vector<int> cur;
  std::function<void(long long)> rec = [&](long long rest) {
    if (static_cast<int>(cur.size()) == n) {
      if ((kind == IndexKind::P && rest == 1) || (kind == IndexKind::S && rest == 0))
        out.push_back(MuVector{kappa, cur});
      return;
    }
    for (long long u = 1; u <= target; ++u) {
      if (kind == IndexKind::P) {
        if (rest % u) continue;
        cur.push_back(static_cast<int>(u));
        rec(rest / u);
      } else {
        if (u > rest) break;
        cur.push_back(static_cast<int>(u));
        rec(rest - u);
      }
      cur.pop_back();
    }
  };
  rec(target);
  return out;
}

}  // namespace fracdiff::laws
