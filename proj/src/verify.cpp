#include "fracdiff/verify.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/frac_calc.hpp"
#include "fracdiff/laws.hpp"
#include "fracdiff/mellin.hpp"
#include "fracdiff/montecarlo.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/solvers.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::verify {

namespace {

constexpr double pi = std::numbers::pi;
using laws::Method;

struct Check {
  std::string suite;
  std::string name;
  double threshold;
  std::function<double()> statistic;
};

const std::vector<double> grid5 = {0.25, 0.5, 1.0, 2.0, 4.0};

double levy(double x, double t) { return t / (2.0 * std::sqrt(pi)) * std::pow(x, -1.5) * std::exp(-t * t / (4.0 * x)); }
double half_normal(double x, double t) { return std::exp(-x * x / (4.0 * t)) / std::sqrt(pi * t); }

double sup_over_grid(const std::function<double(double, double)>& a, const std::function<double(double, double)>& b) {
  double d = 0.0;
  for (double x : grid5)
    for (double t : grid5) d = std::max(d, std::abs(a(x, t) - b(x, t)));
  return d;
}

void add_oracles(std::vector<Check>& cs) {
  for (Method m : {Method::conv, Method::foxh})
    cs.push_back({"oracles", "h_half_" + laws::to_string(m), 1e-6, [m] {
                    return sup_over_grid([m](double x, double t) { return laws::h_density(0.5, x, t, m); }, levy);
                  }});
  for (Method m : {Method::conv, Method::foxh, Method::wright})
    cs.push_back({"oracles", "l_half_" + laws::to_string(m), 1e-6, [m] {
                    return sup_over_grid([m](double x, double t) { return laws::l_density(0.5, x, t, m); },
                                         half_normal);
                  }});
}

void add_laplace(std::vector<Check>& cs) {
  const std::vector<double> vals = {0.5, 1.0, 2.0};
  for (double nu : {0.5, 1.0 / 3.0}) {
    const std::string tag = nu == 0.5 ? "1/2" : "1/3";
    cs.push_back({"laplace", "h_" + tag, 1e-6, [nu, vals] {
                    double d = 0.0;
                    for (double lam : vals)
                      for (double t : vals) {
                        double q = quad::integrate_positive(
                            [&](double x) { return std::exp(-lam * x) * laws::h_density(nu, x, t); },
                            std::pow(t, 1.0 / nu));
                        d = std::max(d, std::abs(q - std::exp(-t * std::pow(lam, nu))));
                      }
                    return d;
                  }});
    cs.push_back({"laplace", "l_" + tag, 1e-6, [nu, vals] {
                    double d = 0.0;
                    for (double lam : vals)
                      for (double t : vals) {
                        double q = quad::integrate_positive(
                            [&](double x) { return std::exp(-lam * x) * laws::l_density(nu, x, t); },
                            std::pow(t, nu));
                        d = std::max(d, std::abs(q - specfun::mittag_leffler({nu, 1.0}, -lam * std::pow(t, nu))));
                      }
                    return d;
                  }});
  }
}

void add_samplers(std::vector<Check>& cs, const Options& o) {
  const std::size_t n = o.n_draws;
  const std::uint64_t seed = o.seed;
  const double ks = 0.01;
  cs.push_back({"samplers", "gamma_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_G(2.0, 1.0, r); }, n, {seed, 11});
                  return mc::ks_distance(x, [](double v) { return boost::math::gamma_p(2.0, v); });
                }});
  cs.push_back({"samplers", "inverse_gamma_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_E(0.5, 1.0, r); }, n, {seed, 12});
                  return mc::ks_distance(x, [](double v) { return boost::math::gamma_q(0.5, 1.0 / v); });
                }});
  cs.push_back({"samplers", "inverse_gamma_scaling", ks, [=] {
                  auto a = mc::draw_parallel([](mc::Rng& r) { return mc::sample_E(0.5, 3.0, r); }, n, {seed, 13});
                  auto b = mc::draw_parallel([](mc::Rng& r) { return 3.0 * mc::sample_E(0.5, 1.0, r); }, n, {seed, 14});
                  return mc::ks_two_sample(a, b);
                }});
  cs.push_back({"samplers", "stable_half_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_subordinator(0.5, 1.0, r); }, n,
                                             {seed, 15});
                  return mc::ks_distance(x, [](double v) { return std::erfc(0.5 / std::sqrt(v)); });
                }});
  cs.push_back({"samplers", "stable_half_laplace", 0.003, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_subordinator(0.5, 1.0, r); },
                                             10 * n, {seed, 16});
                  double s = 0.0;
                  for (double v : x) s += std::exp(-v);
                  return std::abs(s / double(x.size()) - std::exp(-1.0));
                }});
  cs.push_back({"samplers", "stable_third_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_subordinator(1.0 / 3.0, 1.0, r); },
                                             n, {seed, 17});
                  mc::TabulatedCdf F([](double v) { return laws::h_density(1.0 / 3.0, v, 1.0); }, 1e-6, 1e8);
                  return mc::ks_distance(x, F);
                }});
  cs.push_back({"samplers", "inverse_half_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_inverse(0.5, 1.0, r); }, n,
                                             {seed, 18});
                  return mc::ks_distance(x, [](double v) { return std::erf(0.5 * v); });
                }});
  cs.push_back({"samplers", "inverse_third_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_inverse(1.0 / 3.0, 1.0, r); }, n,
                                             {seed, 19});
                  mc::TabulatedCdf F([](double v) { return laws::l_density(1.0 / 3.0, v, 1.0); }, 1e-6, 50.0);
                  return mc::ks_distance(x, F);
                }});
  cs.push_back({"samplers", "gamma_inverse_gamma_commute", ks, [=] {
                  auto a = mc::draw_parallel(
                      [](mc::Rng& r) { return mc::sample_E(1.5, mc::sample_G(0.7, 2.0, r), r); }, n, {seed, 20});
                  auto b = mc::draw_parallel(
                      [](mc::Rng& r) { return mc::sample_G(0.7, mc::sample_E(1.5, 2.0, r), r); }, n, {seed, 21});
                  return mc::ks_two_sample(a, b);
                }});
  cs.push_back({"samplers", "ratio_law", ks, [=] {
                  const double nu = 0.5, t = 1.5;
                  auto a = mc::draw_parallel([&](mc::Rng& r) { return mc::sample_f_nu_beta(nu, nu, t, r); }, n,
                                             {seed, 22});
                  auto b = mc::draw_parallel(
                      [&](mc::Rng& r) {
                        double h1 = mc::sample_subordinator(nu, t, r);
                        return t * h1 / mc::sample_subordinator(nu, t, r);
                      },
                      n, {seed, 23});
                  return mc::ks_two_sample(a, b);
                }});
  cs.push_back({"samplers", "ratio_law_density_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_f_nu_beta(0.5, 0.5, 1.5, r); }, n,
                                             {seed, 24});
                  mc::TabulatedCdf F([](double v) { return laws::ratio_law_density(0.5, v, 1.5); }, 1e-8, 1e8);
                  return mc::ks_distance(x, F);
                }});
  cs.push_back({"samplers", "mixed_clock_ks", ks, [=] {
                  auto x = mc::draw_parallel([](mc::Rng& r) { return mc::sample_f_nu_beta(1.0 / 3.0, 0.5, 1.0, r); },
                                             n, {seed, 25});
                  mc::TabulatedCdf F([](double v) { return laws::f_nu_beta(1.0 / 3.0, 0.5, v, 1.0); }, 1e-24, 1e8, 320);
                  return mc::ks_distance(x, F);
                }});
}

void add_chains(std::vector<Check>& cs, const Options& o) {
  const std::size_t n = o.n_draws;
  const std::uint64_t seed = o.seed;
  auto chain_vs = [=](mc::ChainKind kind, std::string mu, std::uint64_t stream) {
    return [=] {
      mc::CompositionChain c{kind, laws::MuVector::parse(mu), 1.0};
      const double nu = c.nu();
      auto a = mc::draw_parallel(
          [&](mc::Rng& r) {
            return kind == mc::ChainKind::subordinator ? mc::sample_subordinator(nu, 1.0, r)
                                                       : mc::sample_inverse(nu, 1.0, r);
          },
          n, {seed, stream});
      auto b = mc::draw_parallel([&](mc::Rng& r) { return mc::sample_chain(c, r); }, n, {seed, stream + 1});
      return mc::ks_two_sample(a, b);
    };
  };
  cs.push_back({"chains", "subordinator_1/2", 0.01, chain_vs(mc::ChainKind::subordinator, "1/2", 31)});
  cs.push_back({"chains", "subordinator_1/3,2/3", 0.01, chain_vs(mc::ChainKind::subordinator, "1/3,2/3", 33)});
  cs.push_back({"chains", "subordinator_2/3,1/3", 0.01, chain_vs(mc::ChainKind::subordinator, "2/3,1/3", 35)});
  cs.push_back({"chains", "inverse_1/2", 0.01, chain_vs(mc::ChainKind::inverse, "1/2", 37)});
  cs.push_back({"chains", "inverse_1/3,2/3", 0.01, chain_vs(mc::ChainKind::inverse, "1/3,2/3", 39)});
  cs.push_back({"chains", "inverse_2/3,1/3", 0.01, chain_vs(mc::ChainKind::inverse, "2/3,1/3", 41)});
}

void add_invariance(std::vector<Check>& cs) {
  cs.push_back({"invariance", "compose_gamma1_P4_5_24", 1e-4, [] {
                  std::vector<std::pair<double, double>> g;
                  for (double x : {0.5, 1.0, 2.0})
                    for (double t : {0.5, 1.0, 2.0}) g.emplace_back(x, t);
                  return laws::permutation_invariance_gap(1.0, laws::MuVector::parse("1/5,2/5,3/5,4/5"),
                                                          laws::MuVector::parse("24/5,1/5,1/5,1/5"), g);
                }});
}

double pde_residual(double nu) {
  solvers::BVPSpec sp;
  sp.gamma = 1.0;
  sp.mu = 1.0;
  sp.nu = nu;
  sp.initial_datum = [](double) { return 1.0; };
  sp.n_terms = 50;
  solvers::SturmLiouvilleSolution sol(sp);
  const double x = 0.5, t = 0.5;
  double peak = 0.0;
  for (int i = 1; i < 20; ++i) peak = std::max(peak, std::abs(sol.value(i / 20.0, t)));
  const double lhs = frac::caputo(nu, [&](double s) { return sol.value(x, s); }, t, 1e-8);
  const double rhs = solvers::adjoint_generator_fd(1.0, 1.0, [&](double y) { return sol.value(y, t); }, x);
  return std::abs(lhs - rhs) / peak;
}

void add_bvp(std::vector<Check>& cs) {
  for (double nu : {0.5, 1.0}) {
    const std::string tag = nu == 0.5 ? "1/2" : "1";
    cs.push_back({"bvp", "single_mode_nu_" + tag, 1e-10, [nu] {
                    auto e = solvers::eigen_system(1.0, 1.0, 50);
                    solvers::BVPSpec sp;
                    sp.nu = nu;
                    sp.initial_datum = [e](double x) { return e->eigenfunction(0, x); };
                    solvers::SturmLiouvilleSolution sol(sp);
                    const double lam = e->eigenvalue(0);
                    double d = 0.0;
                    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
                      for (double t : {0.25, 1.0, 2.0}) {
                        double exact = e->eigenfunction(0, x) * specfun::mittag_leffler({nu, 1.0}, -lam * std::pow(t, nu));
                        d = std::max(d, std::abs(sol.value(x, t) - exact));
                      }
                    return d;
                  }});
    cs.push_back({"bvp", "pde_residual_nu_" + tag, 1e-2, [nu] { return pde_residual(nu); }});
    cs.push_back({"bvp", "boundary_nu_" + tag, 1e-2, [nu] {
                    solvers::BVPSpec sp;
                    sp.nu = nu;
                    sp.initial_datum = [](double) { return 1.0; };
                    solvers::SturmLiouvilleSolution sol(sp);
                    double d = 0.0;
                    for (double t : {0.1, 0.5, 1.0}) {
                      double peak = 0.0;
                      for (int i = 1; i < 20; ++i) peak = std::max(peak, std::abs(sol.value(i / 20.0, t)));
                      d = std::max(d, std::abs(sol.value(0.999, t)) / peak);
                    }
                    return d;
                  }});
  }
}

// g^1_2(x, 1), written out so grids may start at 0.
double gamma2(double x) { return x * std::exp(-x); }

std::vector<double> uniform_nodes(double h, double xmax, int first = 0) {
  std::vector<double> v;
  for (int i = first; i * h <= xmax + 1e-12; ++i) v.push_back(i * h);
  return v;
}

void add_mellin(std::vector<Check>& cs) {
  cs.push_back({"mellin", "time_rule_mu2_nu1/2", 1e-10, [] { return solvers::time_mellin_residual(2.0, 0.5, 2.0, 1.0); }});
  cs.push_back({"mellin", "time_rule_mu1_nu1/3", 1e-10,
                [] { return solvers::time_mellin_residual(1.0, 1.0 / 3.0, 1.5, 2.0); }});
  cs.push_back({"mellin", "right_right_operator", 1e-4, [] {
                  auto f = frac::GridFunction::sample(gamma2, uniform_nodes(0.02, 40.0, 1));
                  solvers::RightRightOperator S(2.0, 0.5, f);
                  const double eta = 2.0, nu = 0.5, mu = 2.0;
                  double lhs = mellin::mellin_numeric([&](double x) { return S(x); }, eta, {0.0, 10.0});
                  double rhs = specfun::gamma_fn(eta) * specfun::rgamma(eta - nu) * specfun::gamma_fn(eta + mu - 1.0) *
                               specfun::rgamma(eta + mu - 1.0 - nu) * laws::gg_mellin({1.0, mu}, 1.0, eta - nu);
                  return std::abs(lhs - rhs);
                }});
  cs.push_back({"mellin", "operator_A", 1e-4, [] {
                  auto f = frac::GridFunction::sample(gamma2, uniform_nodes(0.02, 30.0, 1));
                  solvers::OperatorA A(2.0, 0.5, f);
                  const double eta = 1.25;
                  double closed =
                      solvers::operator_A_mellin_closed(2.0, 0.5, eta, laws::gg_mellin({1.0, 2.0}, 1.0, eta - 0.5));
                  return std::abs(A.mellin_transform(eta) - closed);
                }});
  for (double beta : {1.0, 0.5}) {
    cs.push_back({"mellin", beta == 1.0 ? "mixed_law_routes_beta1" : "mixed_law_routes_beta1/2", 1e-4, [beta] {
                    double d = 0.0;
                    for (double x : {0.5, 1.0, 2.0})
                      for (double t : {0.5, 1.0, 2.0}) {
                        double a = solvers::g_nu_beta_density(1.0, 0.5, beta, x, t, solvers::Route::double_integral);
                        double b = solvers::g_nu_beta_density(1.0, 0.5, beta, x, t, solvers::Route::foxh);
                        double c = solvers::g_nu_beta_density(1.0, 0.5, beta, x, t, solvers::Route::mellin_inversion);
                        d = std::max({d, std::abs(a - b), std::abs(a - c)});
                      }
                    return d;
                  }});
  }
  cs.push_back({"mellin", "double_laplace_1/2_1/2", 1e-4, [] { return solvers::double_laplace_residual(0.5, 0.5, 1.0, 1.0); }});
  cs.push_back({"mellin", "double_laplace_1/3_1/2", 1e-4,
                [] { return solvers::double_laplace_residual(1.0 / 3.0, 0.5, 2.0, 1.0); }});
}

void add_frac(std::vector<Check>& cs) {
  cs.push_back({"frac", "power_law_rule", 1e-3, [] {
                  double d = 0.0;
                  for (double beta : {1.25, 1.5, 2.0, 3.0}) {
                    auto f = frac::GridFunction::sample([beta](double x) { return std::pow(x, beta - 1.0); },
                                                        uniform_nodes(0.01, 3.0));
                    for (double a : {0.25, 0.5, 0.75})
                      for (double x : {0.5, 1.0, 2.0}) {
                        double exact = specfun::gamma_fn(beta) * specfun::rgamma(beta - a) * std::pow(x, beta - a - 1.0);
                        d = std::max(d, std::abs(frac::rl_left(a, f, x) / exact - 1.0));
                      }
                  }
                  return d;
                }});
  cs.push_back({"frac", "caputo_rl_bridge", 1e-5, [] {
                  std::vector<frac::Fn> fs = {[](double s) { return std::exp(-s); },
                                              [](double s) { return 1.0 + s * s; },
                                              [](double s) { return std::cos(s); }};
                  double d = 0.0;
                  for (const auto& f : fs)
                    for (double a : {0.25, 0.5, 0.75})
                      for (double t : {0.5, 1.0, 2.0}) {
                        double bridge = frac::rl_left(a, f, t) - f(0.0) * std::pow(t, -a) * specfun::rgamma(1.0 - a);
                        d = std::max(d, std::abs(frac::caputo(a, f, t) - bridge));
                      }
                  return d;
                }});
  cs.push_back({"frac", "mellin_rule_right", 1e-5, [] {
                  const double a = 0.5, eta = 2.0;
                  frac::Fn f = gamma2;
                  double lhs = mellin::mellin_numeric([&](double x) { return frac::rl_right(a, f, x); }, eta, {0.0, 10.0});
                  double rhs = specfun::gamma_fn(eta) * specfun::rgamma(eta - a) * laws::gg_mellin({1.0, 2.0}, 1.0, eta - a);
                  return std::abs(lhs - rhs);
                }});
  cs.push_back({"frac", "mellin_rule_left", 1e-5, [] {
                  const double a = 0.5, eta = 0.75;
                  frac::Fn f = gamma2;
                  double lhs =
                      mellin::mellin_numeric([&](double x) { return frac::rl_left(a, f, x); }, eta, {a - 1.0, 1.0 + a});
                  double rhs = specfun::gamma_fn(1.0 - eta + a) * specfun::rgamma(1.0 - eta) *
                               laws::gg_mellin({1.0, 2.0}, 1.0, eta - a);
                  return std::abs(lhs - rhs);
                }});
  cs.push_back({"frac", "boundary_term_right", 1e-6, [] {
                  auto b = frac::boundary_term(frac::Side::right, 0.5, gamma2, 2.0);
                  return std::max(std::abs(b.at_zero), std::abs(b.at_infinity));
                }});
}

void add_moments(std::vector<Check>& cs, const Options& o) {
  struct Case {
    double nu, beta, r;
    const char* name;
  };
  for (Case c : {Case{1.0, 1.0, 1.0, "slope_1_1_1"}, Case{0.5, 1.0, 0.25, "slope_1/2_1_1/4"},
                 Case{1.0, 0.5, 1.0, "slope_1_1/2_1"}}) {
    cs.push_back({"moments", c.name, 0.05, [c, o] {
                    auto fit = mc::moment_scaling_check(1.0, c.nu, c.beta, c.r, {1.0, 2.0, 4.0, 8.0, 16.0}, o.n_draws,
                                                        {o.seed, 50});
                    return std::abs(fit.slope - c.beta * c.r / c.nu);
                  }});
  }
}

std::vector<Check> all_checks(const Options& o) {
  std::vector<Check> cs;
  add_oracles(cs);
  add_laplace(cs);
  add_samplers(cs, o);
  add_chains(cs, o);
  add_invariance(cs);
  add_bvp(cs);
  add_mellin(cs);
  add_frac(cs);
  add_moments(cs, o);
  return cs;
}

}  // namespace

const char* version() { return "0.1.0"; }

std::vector<std::string> suite_names() {
  return {"oracles", "laplace", "samplers", "chains", "invariance", "bvp", "mellin", "frac", "moments"};
}

bool Report::pass() const {
  return std::all_of(tests.begin(), tests.end(), [](const TestResult& t) { return t.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["version"] = version();
  j["tests"] = nlohmann::json::array();
  for (const auto& t : tests) {
    nlohmann::json e{{"name", t.name}, {"statistic", t.statistic}, {"threshold", t.threshold}, {"pass", t.pass}};
    if (!t.error.empty()) e["error"] = t.error;
    j["tests"].push_back(e);
  }
  return j;
}

Report run(const Options& opt) {
  if (!(opt.tol_scale >= 0.0)) throw DomainError("verify: tol_scale must be non-negative");
  if (opt.n_draws < 1000) throw DomainError("verify: n_draws must be at least 1000");
  std::set<std::string> wanted;
  const auto known = suite_names();
  std::stringstream ss(opt.filter);
  for (std::string s; std::getline(ss, s, ',');) {
    if (s.empty()) continue;
    if (std::find(known.begin(), known.end(), s) == known.end()) throw DomainError("verify: unknown suite '" + s + "'");
    wanted.insert(s);
  }
  std::vector<Check> cs;
  for (auto& c : all_checks(opt))
    if (wanted.empty() || wanted.count(c.suite)) cs.push_back(std::move(c));

  Report r;
  r.suite = wanted.empty() ? "all" : opt.filter;
  r.seed = opt.seed;
  r.tests.resize(cs.size());
  parallel_for(static_cast<int>(cs.size()), [&](int i) {
    const auto& c = cs[i];
    TestResult& t = r.tests[i];
    t.name = c.suite + "/" + c.name;
    t.threshold = c.threshold * opt.tol_scale;
    try {
      t.statistic = c.statistic();
    } catch (const std::exception& e) {
      t.statistic = NAN;
      t.error = e.what();
    }
    t.pass = std::isfinite(t.statistic) && t.statistic <= t.threshold;
  });
  return r;
}

}  // namespace fracdiff::verify
