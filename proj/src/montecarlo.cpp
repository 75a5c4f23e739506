#include "fracdiff/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/quadrature.hpp"

namespace fracdiff::mc {

namespace {

constexpr double pi = std::numbers::pi;

void check_positive(double v, const char* who, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << who << ": " << what << " must be positive, got " << v;
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

long long factorial(int n) {
  long long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(RngSpec spec, std::uint64_t block)
    : eng_(splitmix64(splitmix64(splitmix64(spec.seed) ^ spec.stream_id) ^ block)) {}

double Rng::uniform() {
  double u;
  do {
    u = std::generate_canonical<double, 53>(eng_);
  } while (u <= 0.0 || u >= 1.0);
  return u;
}

double Rng::exponential() { return -std::log(uniform()); }

double Rng::gamma(double shape) { return std::gamma_distribution<double>(shape, 1.0)(eng_); }

double sample_G(double mu, double t, Rng& rng) {
  check_positive(mu, "sample_G", "mu");
  check_positive(t, "sample_G", "t");
  return t * rng.gamma(mu);
}

double sample_E(double mu, double t, Rng& rng) {
  check_positive(mu, "sample_E", "mu");
  check_positive(t, "sample_E", "t");
  return t / rng.gamma(mu);
}

double sample_subordinator(double nu, double t, Rng& rng) {
  check_nu(nu, "sample_subordinator");
  check_positive(t, "sample_subordinator", "t");
  const double phi = pi * rng.uniform();
  const double e = rng.exponential();
  const double a = std::pow(std::sin(nu * phi), nu / (1.0 - nu)) * std::sin((1.0 - nu) * phi) /
                   std::pow(std::sin(phi), 1.0 / (1.0 - nu));
  return std::pow(t, 1.0 / nu) * std::pow(a / e, (1.0 - nu) / nu);
}

double sample_inverse(double nu, double t, Rng& rng) {
  check_positive(t, "sample_inverse", "t");
  return std::pow(t / sample_subordinator(nu, 1.0, rng), nu);
}

double sample_f_nu_beta(double nu, double beta, double t, Rng& rng) {
  if (!(nu > 0.0 && nu <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw DomainError("sample_f_nu_beta: indices must lie in (0, 1]");
  const double s = beta == 1.0 ? t : sample_inverse(beta, t, rng);
  return nu == 1.0 ? s : sample_subordinator(nu, s, rng);
}

void CompositionChain::validate() const {
  mu.validate();
  check_positive(t, "CompositionChain", "t");
  const int n = static_cast<int>(mu.size());
  if (mu.kappa != n + 1 || mu.product() != factorial(n)) {
    std::ostringstream os;
    os << "CompositionChain: " << mu.to_string() << " is not in P^" << n << "_" << n + 1 << "(" << factorial(n)
       << ")";
    throw MembershipError(os.str());
  }
}

double sample_chain(const CompositionChain& c, Rng& rng) {
  c.validate();
  const double nu = c.nu();
  const auto mu = c.mu.values();
  double v;
  if (c.kind == ChainKind::subordinator) {
    v = std::pow(nu * c.t, 1.0 / nu);
    for (std::size_t j = mu.size(); j-- > 0;) v = sample_E(mu[j], v, rng);
    return v;
  }
  v = std::pow(nu, -1.0 / nu) * c.t;
  for (std::size_t j = mu.size(); j-- > 0;) v = sample_G(mu[j], v, rng);
  return std::pow(v, nu);
}

namespace {

void fill_block(const Sampler& s, std::vector<double>& out, std::size_t b, RngSpec spec) {
  Rng rng(spec, b);
  const std::size_t hi = std::min(out.size(), (b + 1) * block_size);
  for (std::size_t i = b * block_size; i < hi; ++i) out[i] = s(rng);
}

}  // namespace

std::vector<double> draw_serial(const Sampler& s, std::size_t n, RngSpec spec) {
  std::vector<double> out(n);
  const std::size_t blocks = (n + block_size - 1) / block_size;
  for (std::size_t b = 0; b < blocks; ++b) fill_block(s, out, b, spec);
  return out;
}

std::vector<double> draw_parallel(const Sampler& s, std::size_t n, RngSpec spec) {
  std::vector<double> out(n);
  const int blocks = static_cast<int>((n + block_size - 1) / block_size);
  parallel_for(blocks, [&](int b) { fill_block(s, out, b, spec); });
  return out;
}

double ks_distance(std::vector<double> x, const Cdf& cdf) {
  if (x.empty()) throw DomainError("ks_distance: empty sample");
  std::sort(x.begin(), x.end());
  const double n = double(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double right = cdf(x[i]);
    const double left = cdf(std::nextafter(x[i], -INFINITY));
    d = std::max({d, std::abs(double(j) / n - right), std::abs(double(i) / n - left)});
    i = j;
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  return d;
}

double ks_quantile99(std::size_t n) { return 1.63 / std::sqrt(double(n)); }

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& f, double xmin, double xmax, int points) {
  if (!(xmin > 0.0) || !(xmax > xmin) || points < 2) throw DomainError("TabulatedCdf: invalid grid");
  const double la = std::log(xmin), lb = std::log(xmax);
  lx_.resize(points);
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) {
    lx_[i] = la + (lb - la) * i / (points - 1);
    x[i] = i == 0 ? xmin : i == points - 1 ? xmax : std::exp(lx_[i]);
  }
  quad::Options o{1e-300, 1e-10, 2000};
  std::vector<double> piece(points, 0.0);
  slope_.assign(points, 0.0);
  parallel_for(points, [&](int i) {
    piece[i] = i == 0 ? quad::integrate(f, 0.0, x[0], o) : quad::integrate(f, x[i - 1], x[i], o);
    slope_[i] = x[i] * f(x[i]);
  });
  cum_.resize(points);
  double acc = 0.0;
  for (int i = 0; i < points; ++i) cum_[i] = acc += piece[i];
  total_ = acc + quad::integrate_inf(f, xmax, o);
}

double TabulatedCdf::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double l = std::log(x);
  const std::size_t n = lx_.size();
  if (l <= lx_.front()) {
    // F ~ F0 (x/x0)^p with p = x0 f(x0) / F0.
    if (cum_.front() <= 0.0) return 0.0;
    return cum_.front() * std::exp(slope_.front() / cum_.front() * (l - lx_.front()));
  }
  if (l >= lx_.back()) {
    const double tail = total_ - cum_.back();
    if (tail <= 0.0) return total_;
    return total_ - tail * std::exp(-slope_.back() / tail * (l - lx_.back()));
  }
  const std::size_t k = std::min<std::size_t>(n - 1, std::upper_bound(lx_.begin(), lx_.end(), l) - lx_.begin());
  const double h = lx_[k] - lx_[k - 1], s = (l - lx_[k - 1]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * cum_[k - 1] + h10 * h * slope_[k - 1] + h01 * cum_[k] + h11 * h * slope_[k];
}

MomentFit moment_scaling_check(double mu, double nu, double beta, double r, const std::vector<double>& t_grid,
                               std::size_t n, RngSpec spec) {
  check_positive(mu, "moment_scaling_check", "mu");
  check_positive(r, "moment_scaling_check", "r");
  if (t_grid.size() < 2) throw DomainError("moment_scaling_check: need at least two times");
  if (n < 400) throw DomainError("moment_scaling_check: need at least 400 draws");
  MomentFit fit;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    check_positive(t, "moment_scaling_check", "t");
    RngSpec sk{spec.seed, spec.stream_id + k};
    auto xs = draw_parallel([&](Rng& g) { return sample_G(mu, sample_f_nu_beta(nu, beta, t, g), g); }, n, sk);
    // Partial means over the first quarter, half and all draws.
    double sum = 0.0, biggest = 0.0, m4 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::pow(xs[i], r);
      sum += v;
      biggest = std::max(biggest, v);
      if (i + 1 == n / 4) m4 = sum / double(i + 1);
      if (i + 1 == n / 2) m2 = sum / double(i + 1);
    }
    const double m = sum / double(n);
    const double drift = std::max(std::abs(m4 - m), std::abs(m2 - m)) / m;
    if (!std::isfinite(m) || (biggest / sum > 0.05 && drift > 0.1)) {
      std::ostringstream os;
      os << "moment_scaling_check: moment of order " << r << " looks infinite at t=" << t
         << " (largest draw carries " << biggest / sum << " of the sum)";
      throw DomainError(os.str());
    }
    fit.log_t.push_back(std::log(t));
    fit.log_moment.push_back(std::log(m));
  }
  const double k = double(fit.log_t.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < fit.log_t.size(); ++i) {
    sx += fit.log_t[i];
    sy += fit.log_moment[i];
    sxx += fit.log_t[i] * fit.log_t[i];
    sxy += fit.log_t[i] * fit.log_moment[i];
  }
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return fit;
}

nlohmann::json VerificationRecord::to_json() const {
  return {{"test", test}, {"n", n}, {"statistic", statistic}, {"threshold", threshold}, {"pass", pass}};
}

VerificationRecord make_record(std::string test, std::size_t n, double statistic, double threshold) {
  return {std::move(test), n, statistic, threshold, std::isfinite(statistic) && statistic <= threshold};
}

}  // namespace fracdiff::mc
