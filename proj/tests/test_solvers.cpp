#include <doctest.h>

#include <cmath>
#include <tuple>

#include "fracdiff/errors.hpp"
#include "fracdiff/laws.hpp"
#include "fracdiff/mellin.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/solvers.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;
using namespace fracdiff::solvers;

TEST_CASE("eigen-system") {
  auto e = eigen_system(1.0, 1.0, 50);
  REQUIRE(e->zeros.size() == 50u);
  CHECK(e->zeros[0] == doctest::Approx(2.4048255576957728).epsilon(1e-14));
  CHECK(e->eigenvalue(0) == doctest::Approx(0.25 * 2.4048255576957728 * 2.4048255576957728).epsilon(1e-14));
  for (std::size_t n = 0; n < e->zeros.size(); ++n) {
    CHECK(std::abs(e->eigenfunction(n, 1.0)) < 1e-12);
    CHECK(std::abs(e->norms[n] - e->norms_fd[n]) < 1e-8);
  }
  CHECK(eigen_system(1.0, 1.0, 50) == e);
  // orthogonality in the weight x^{gamma mu - 1}
  auto e2 = eigen_system(1.0, 2.0, 4);
  double ip = quad::integrate([&](double x) { return weight(1.0, 2.0, x) * e2->eigenfunction(0, x) * e2->eigenfunction(2, x); }, 0.0, 1.0);
  CHECK(std::abs(ip) < 1e-12);
}

TEST_CASE("series solution for a constant datum") {
  BVPSpec sp;
  sp.nu = 0.5;
  sp.initial_datum = [](double) { return 1.0; };
  SturmLiouvilleSolution sol(sp);
  CHECK(sol.coefficients()[0] == doctest::Approx(0.43175480701968036).epsilon(1e-10));
  double prev = INFINITY;
  for (int n : {5, 10, 20, 50}) {
    sp.n_terms = n;
    double err = SturmLiouvilleSolution(sp).initial_l2_error();
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("single mode at nu = 1 decays exponentially") {
  auto e = eigen_system(1.0, 1.5, 3);
  BVPSpec sp;
  sp.mu = 1.5;
  // modes are w psi_n
  sp.initial_datum = [e](double x) { return weight(1.0, 1.5, x) * e->eigenfunction(1, x); };
  sp.n_terms = 3;
  for (double t : {0.1, 0.7}) {
    double exact = weight(1.0, 1.5, 0.4) * e->eigenfunction(1, 0.4) * std::exp(-e->eigenvalue(1) * t);
    CHECK(sturm_liouville_solve(sp, 0.4, t) == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("invalid problems") {
  BVPSpec sp;
  sp.initial_datum = [](double) { return 1.0; };
  sp.n_terms = 0;
  CHECK_THROWS_AS(sp.validate(), DomainError);
  sp.n_terms = 5;
  sp.nu = 1.5;
  CHECK_THROWS_AS(sp.validate(), DomainError);
}

TEST_CASE("subordinated density") {
  for (double x : {0.3, 1.0, 2.5})
    CHECK(subordinated_solution(1.0, 2.0, 1.0, x, 1.4) == doctest::Approx(laws::gg_density({1.0, 2.0}, x, 1.4, true)).epsilon(1e-12));
  double mass = quad::integrate_positive([](double x) { return subordinated_solution(1.0, 2.0, 0.5, x, 1.0); });
  CHECK(std::abs(mass - 1.0) < 1e-6);
  double lap = quad::integrate_positive([](double t) { return std::exp(-t) * subordinated_solution(1.0, 2.0, 0.5, 1.0, t); });
  CHECK(lap == doctest::Approx(subordinated_laplace_closed(2.0, 0.5, 1.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("adjoint generator drives the gamma density in time") {
  const double mu = 2.0, x = 1.3, t = 0.8, dt = 1e-4;
  double dudt = (laws::gg_density({1.0, mu}, x, t + dt, true) - laws::gg_density({1.0, mu}, x, t - dt, true)) / (2 * dt);
  Fn u = [&](double y) { return laws::gg_density({1.0, mu}, y, t, true); };
  CHECK(adjoint_generator_fd(1.0, mu, u, x) == doctest::Approx(dudt).epsilon(1e-5));
}

TEST_CASE("operator A at nu = 1 is the adjoint generator") {
  std::vector<double> nodes;
  for (int i = 1; i <= 1500; ++i) nodes.push_back(i * 0.02);
  auto f = frac::GridFunction::sample([](double x) { return x * std::exp(-x); }, nodes);
  Fn ff = [](double x) { return x * std::exp(-x); };
  OperatorA A(2.0, 1.0, f);
  for (double x : {0.5, 1.0, 3.0}) {
    double g = adjoint_generator_fd(1.0, 2.0, ff, x);
    CHECK(std::abs(A(x) - g) <= 1e-3 * std::abs(g));
  }
}

TEST_CASE("mixed law") {
  for (auto r : {Route::double_integral, Route::foxh, Route::mellin_inversion})
    CHECK(g_nu_beta_density(2.0, 1.0, 1.0, 1.1, 1.0, r) == doctest::Approx(laws::gg_density({1.0, 2.0}, 1.1, 1.0)).epsilon(1e-8));
  for (double eta : {0.6, 0.8}) {
    double num = mellin::mellin_numeric([](double x) { return g_nu_beta_density(1.0, 0.5, 0.5, x, 1.0, Route::foxh); }, eta,
                                        g_nu_beta_strip(1.0, 0.5, 0.5));
    CHECK(num == doctest::Approx(g_nu_beta_mellin(1.0, 0.5, 0.5, 1.0, eta)).epsilon(1e-7));
  }
  CHECK(time_mellin_residual(2.0, 0.5, 2.0, 1.0) < 1e-12);
  // moment of order eta - 1 scales like t^{(beta/nu)(eta-1)}; eta = 2 only where the mean exists
  for (auto [nu, beta, eta] : {std::tuple{1.0, 0.5, 2.0}, std::tuple{1.0, 1.0, 2.0}, std::tuple{0.5, 1.0, 1.25},
                               std::tuple{0.5, 0.5, 1.25}}) {
    double lo = std::log(g_nu_beta_mellin(1.0, nu, beta, 0.5, eta)), hi = std::log(g_nu_beta_mellin(1.0, nu, beta, 4.0, eta));
    CHECK((hi - lo) / std::log(8.0) == doctest::Approx(beta / nu * (eta - 1.0)).epsilon(1e-12));
  }
  CHECK(double_laplace_residual(0.5, 0.5, 1.0, 1.0) < 1e-8);
  CHECK_THROWS_AS(route_from_string("nope"), UnsupportedMethod);
}
