#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fracdiff/mellin.hpp"

namespace fracdiff::laws {

struct GGLaw {
  double gamma;
  double mu;
  void validate() const;
};

struct SubordinatorSpec {
  double nu;
  double beta = 1.0;
  void validate() const;
};

// Entries upsilon_j / kappa.
struct MuVector {
  int kappa = 1;
  std::vector<int> upsilon;

  std::size_t size() const { return upsilon.size(); }
  double entry(std::size_t j) const { return double(upsilon[j]) / kappa; }
  std::vector<double> values() const;
  long long product() const;
  long long sum() const;
  bool in_P(long long rho) const { return product() == rho; }
  bool in_S(long long sigma) const { return sum() == sigma; }
  std::string to_string() const;
  // "u1/k,...,un/k"; all denominators must agree.
  static MuVector parse(const std::string& s);
  void validate() const;
};

// psi_m(s) = m s^{1/m}, phi_m = psi_m^{-1}.
struct TimeStretch {
  int m;
  double psi(double s) const;
  double phi(double t) const;
};

enum class Method { automatic, closed, conv, foxh, wright };
std::string to_string(Method m);
Method method_from_string(const std::string& s);

double gg_density(const GGLaw& law, double x, double t, bool tilde = false);
// Mellin transform in x. Plain: t^{eta-1} G((eta-1)/gamma + mu)/G(mu); tilde: t^{(eta-1)/gamma} ...
double gg_mellin(const GGLaw& law, double t, double eta, bool tilde = false);
mellin::MellinStrip gg_strip(const GGLaw& law);

// Law of t * (G1 G2)^{1/gamma} with independent gamma variables G1, G2.
double star_equal_gamma(double gamma, double mu1, double mu2, double x, double t);
// Law of t * (G1 / G2)^{1/gamma}.
double star_opposite_gamma(double gamma, double mu1, double mu2, double x, double t);

double h_density(double nu, double x, double t, Method method = Method::automatic);
double l_density(double nu, double x, double t, Method method = Method::automatic);
// Parameter sets at t = 1.
mellin::FoxH h_fox(double nu);
mellin::FoxH l_fox(double nu);
double h_mellin(double nu, double t, double eta);
double l_mellin(double nu, double t, double eta);
// Method actually used by automatic selection.
Method resolve_h_method(double nu, Method m);
Method resolve_l_method(double nu, Method m);

double ratio_density(double nu, double x);
// Law of t * h1 / h2 (two independent copies), i.e. (1/t) ratio_density(nu, x/t).
double ratio_law_density(double nu, double x, double t);
double f_nu_beta(double nu, double beta, double x, double t);

enum class IndexKind { P, S };
std::vector<MuVector> index_set(IndexKind kind, int n, int kappa, long long target);

// n-fold product law t * prod G_j^{1/gamma}, n <= 4, by the reduction to one
// outer integral over a lower-order core.
double compose_density(double gamma, const std::vector<double>& mu, double x, double t);
double compose_density(double gamma, const MuVector& mu, double x, double t);
double compose_mellin(double gamma, const std::vector<double>& mu, double t, double eta);
// Independent route: contour inversion of the Gamma-product transform.
double compose_density_mellin(double gamma, const std::vector<double>& mu, double x, double t);

// sup over the grid of |compose(mu1) - compose(mu2)|; both vectors must share n, kappa and product.
double permutation_invariance_gap(double gamma, const MuVector& mu1, const MuVector& mu2,
                                  const std::vector<std::pair<double, double>>& grid);
double permutation_invariance_gap_serial(double gamma, const MuVector& mu1, const MuVector& mu2,
                                         const std::vector<std::pair<double, double>>& grid);

}  // namespace fracdiff::laws
