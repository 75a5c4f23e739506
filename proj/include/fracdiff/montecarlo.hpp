#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdiff/laws.hpp"

namespace fracdiff::mc {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// Draws are generated in fixed blocks, each with its own engine, so the serial
// and parallel drivers produce the same sequence.
inline constexpr std::size_t block_size = 4096;

class Rng {
 public:
  explicit Rng(RngSpec spec, std::uint64_t block = 0);
  double uniform();  // open interval (0, 1)
  double exponential();
  double gamma(double shape);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Gamma law, shape mu and scale t.
double sample_G(double mu, double t, Rng& rng);
// Inverse gamma: t / G_mu(1), the density g^{-1}_mu(., t).
double sample_E(double mu, double t, Rng& rng);
// Positive nu-stable with E exp(-lambda X) = exp(-t lambda^nu); Kanter's representation.
double sample_subordinator(double nu, double t, Rng& rng);
// (t / S_1)^nu, the inverse subordinator at time t.
double sample_inverse(double nu, double t, Rng& rng);
// h^nu evaluated at the independent inverse time L^beta_t; nu = 1 or beta = 1 collapse to one clock.
double sample_f_nu_beta(double nu, double beta, double t, Rng& rng);

enum class ChainKind { subordinator, inverse };

struct CompositionChain {
  ChainKind kind;
  laws::MuVector mu;
  double t;
  double nu() const { return 1.0 / double(mu.size() + 1); }
  // mu must lie in P^n_{n+1}(n!).
  void validate() const;
};

// Nested E_{mu1}(E_{mu2}(...(nu t)^{1/nu})) or [G_{mu1}(G_{mu2}(... nu^{-1/nu} t))]^nu.
double sample_chain(const CompositionChain& chain, Rng& rng);

using Sampler = std::function<double(Rng&)>;
std::vector<double> draw_serial(const Sampler& s, std::size_t n, RngSpec spec);
std::vector<double> draw_parallel(const Sampler& s, std::size_t n, RngSpec spec);

using Cdf = std::function<double(double)>;
// sup |F_emp - F| with left limits taken at each jump.
double ks_distance(std::vector<double> samples, const Cdf& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
// Asymptotic 99% Kolmogorov quantile 1.63/sqrt(n).
double ks_quantile99(std::size_t n);

// CDF of a density by cumulative quadrature on a log grid. In between, cubic
// Hermite in log x with slopes x f(x); outside, power laws matching the end slopes.
class TabulatedCdf {
 public:
  TabulatedCdf(const std::function<double(double)>& density, double xmin, double xmax, int points = 400);
  double operator()(double x) const;
  double total_mass() const { return total_; }

 private:
  std::vector<double> lx_, cum_, slope_;
  double total_ = 0.0;
};

struct MomentFit {
  double slope = 0.0;
  std::vector<double> log_t, log_moment;
};

// Least-squares slope of log E[G_mu(F^{nu,beta}_t)^r] against log t.
// Throws DomainError when the empirical moment does not settle under sample doubling.
MomentFit moment_scaling_check(double mu, double nu, double beta, double r, const std::vector<double>& t_grid,
                               std::size_t n, RngSpec spec);

struct VerificationRecord {
  std::string test;
  std::size_t n = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

VerificationRecord make_record(std::string test, std::size_t n, double statistic, double threshold);

}  // namespace fracdiff::mc
