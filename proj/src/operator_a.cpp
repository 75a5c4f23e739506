#include <cmath>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/solvers.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solvers {

namespace {

// x^{mu-1+nu} D^nu_{-x}(x^{1-mu} f) tabulated on the nodes of f.
frac::GridFunction inner_grid(double mu, double nu, const frac::GridFunction& f) {
  if (!(mu > 0.0)) throw DomainError("operator: mu must be positive");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("operator: nu must lie in (0, 1]");
  const auto& x = f.nodes();
  const auto& v = f.values();
  if (x.front() <= 0.0 && mu != 1.0) throw DomainError("operator: grid must start above 0");
  const double df = f.extrapolation_decay();
  const bool zero_tail = df == frac::GridFunction::zero_tail;
  std::vector<double> kv(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) kv[i] = std::pow(x[i], 1.0 - mu) * v[i];
  frac::GridFunction k(x, kv, zero_tail ? df : df + 1.0 - mu);
  std::vector<double> gv(x.size());
  parallel_for(static_cast<int>(x.size()), [&](int i) {
    gv[i] = std::pow(x[i], mu - 1.0 + nu) * frac::rl_right(nu, k, x[i]);
  });
  return frac::GridFunction(x, gv, df);
}

}  // namespace

OperatorA::OperatorA(double mu, double nu, const frac::GridFunction& f)
    : mu_(mu), nu_(nu), g_(inner_grid(mu, nu, f)) {}

double OperatorA::operator()(double x) const { return -frac::rl_left(nu_, g_, x); }

double OperatorA::mellin_transform(double eta) const {
  if (g_.extrapolation_decay() != frac::GridFunction::zero_tail)
    throw DomainError("OperatorA::mellin_transform: needs a compactly supported inner grid");
  if (!(eta < 1.0 + nu_)) throw DomainError("OperatorA::mellin_transform: eta must be below 1 + nu");
  const double X = g_.x_max();
  const double R = 2.0 * X;
  auto f = [&](double x) { return std::pow(x, eta - 1.0) * (*this)(x); };
  quad::Options o{1e-13, 1e-10, 4000};
  const double x0 = g_.nodes().front();
  double s = 0.0;
  std::vector<double> cuts = {0.0, x0, 1.0, X, R};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) s += quad::integrate(f, cuts[i], cuts[i + 1], o);
  if (nu_ == 1.0) return s;  // beyond X the local operator vanishes
  // Beyond R: A f(x) = nu/G(1-nu) int_0^X (x-s)^{-nu-1} g(s) ds, expanded in s/x.
  double tail = 0.0, poch = 1.0;
  for (int k = 0; k < 80; ++k) {
    double term = poch * g_.moment(k) * std::pow(R, eta - nu_ - 1.0 - k) / (nu_ + 1.0 + k - eta);
    tail += term;
    if (std::abs(term) < 1e-16 * std::abs(tail) && k > 4) break;
    poch *= (nu_ + 1.0 + k) / (k + 1.0);
  }
  return s + nu_ / specfun::gamma_fn(1.0 - nu_) * tail;
}

double operator_A_apply(double mu, double nu, const frac::GridFunction& f, double x) {
  return OperatorA(mu, nu, f)(x);
}

double operator_A_mellin_closed(double mu, double nu, double eta, double mellin_f_shifted) {
  using specfun::gamma_fn;
  using specfun::rgamma;
  return -gamma_fn(1.0 - eta + nu) * rgamma(1.0 - eta) * gamma_fn(eta + mu - 1.0) * rgamma(eta + mu - 1.0 - nu) *
         mellin_f_shifted;
}

RightRightOperator::RightRightOperator(double mu, double nu, const frac::GridFunction& f)
    : mu_(mu), nu_(nu), g_(inner_grid(mu, nu, f)) {}

double RightRightOperator::operator()(double x) const { return frac::rl_right(nu_, g_, x); }

}  // namespace fracdiff::solvers
