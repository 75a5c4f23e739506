#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fracdiff/frac_calc.hpp"
#include "fracdiff/mellin.hpp"

namespace fracdiff::solvers {

using Fn = std::function<double(double)>;

// Subordinated density: int_0^inf g~^gamma_mu(x, s) l_nu(s, t) ds; nu = 1 gives g~ itself.
double subordinated_solution(double gamma, double mu, double nu, double x, double t);
// Time-Laplace transform of the gamma = 1 subordinated density, closed form.
double subordinated_laplace_closed(double mu, double nu, double x, double lambda);

// ---- fractional Sturm-Liouville problem on (0, 1) ----

double weight(double gamma, double mu, double x);

struct EigenSystem {
  double gamma = 1.0;
  double mu = 1.0;
  std::vector<double> zeros;           // kappa_n, zeros of J_{mu-1}
  std::vector<double> norms;     // J'_{mu-1}(kappa_n)^2 / gamma with J' = -J_{mu}(kappa_n) at the zeros
  std::vector<double> norms_fd;  // same, J' by centered difference (step 1e-6); cross-check only

  double order() const { return mu - 1.0; }
  double eigenfunction(std::size_t n, double x) const;
  double eigenvalue(std::size_t n) const { return 0.25 * zeros[n] * zeros[n]; }
};

// Cached; safe for concurrent readers.
std::shared_ptr<const EigenSystem> eigen_system(double gamma, double mu, int N);

struct BVPSpec {
  double gamma = 1.0;
  double mu = 1.0;
  double nu = 1.0;
  Fn initial_datum;
  int n_terms = 50;
  void validate() const;
};

class SturmLiouvilleSolution {
 public:
  explicit SturmLiouvilleSolution(const BVPSpec& spec);

  double value(double x, double t) const;
  const std::vector<double>& coefficients() const { return c_; }
  const EigenSystem& eigen() const { return *eig_; }
  const BVPSpec& spec() const { return spec_; }
  // || m0/w - partial sum ||_w on (0,1) at t = 0, by quadrature.
  double initial_l2_error() const;
  // |c_N| / ||psi_N||^2, a crude size of the first neglected term.
  double tail_estimate() const;

 private:
  BVPSpec spec_;
  std::shared_ptr<const EigenSystem> eig_;
  std::vector<double> c_;
};

double sturm_liouville_solve(const BVPSpec& spec, double x, double t);

// Adjoint generator (1/gamma^2) d/dx ( x^{gamma mu - gamma + 1} d/dx (f / w) ) by finite differences.
double adjoint_generator_fd(double gamma, double mu, const Fn& f, double x, double h = 1e-3);

// ---- fractional power operator ----

// A f = -D^nu_x ( x^{mu-1+nu} D^nu_{-x} ( x^{1-mu} f ) ), f given on a grid.
class OperatorA {
 public:
  OperatorA(double mu, double nu, const frac::GridFunction& f);
  double operator()(double x) const;
  // Mellin transform of A f; the part beyond 2 X_max comes from a moment expansion.
  double mellin_transform(double eta) const;
  const frac::GridFunction& inner() const { return g_; }

 private:
  double mu_, nu_;
  frac::GridFunction g_;
};

double operator_A_apply(double mu, double nu, const frac::GridFunction& f, double x);
double operator_A_mellin_closed(double mu, double nu, double eta, double mellin_f_shifted);

// Right-right space operator D^nu_{-x}( x^{mu-1+nu} D^nu_{-x}( x^{1-mu} f ) ).
class RightRightOperator {
 public:
  RightRightOperator(double mu, double nu, const frac::GridFunction& f);
  double operator()(double x) const;

 private:
  double mu_, nu_;
  frac::GridFunction g_;
};

// ---- the mixed law of G_mu run by the mixed clock ----

enum class Route { double_integral, foxh, mellin_inversion };
Route route_from_string(const std::string& s);
const char* to_string(Route r);

mellin::MellinStrip g_nu_beta_strip(double mu, double nu, double beta);
double g_nu_beta_mellin(double mu, double nu, double beta, double t, double eta);
// Fox H parameter set whose value at x equals x G(x) (G the t = 1 density).
mellin::FoxH g_nu_beta_fox(double mu, double nu, double beta);
double g_nu_beta_density(double mu, double nu, double beta, double x, double t, Route route);

// |d^nu/dt^nu M[g^1_mu(., t)](eta) - Gamma-ratio right side|, both in closed form.
double time_mellin_residual(double mu, double nu, double eta, double t);
// |double Laplace transform of f_{nu,beta} by quadrature - lambda^{beta-1}/(lambda^beta + xi^nu)|.
double double_laplace_residual(double nu, double beta, double xi, double lambda);

}  // namespace fracdiff::solvers
