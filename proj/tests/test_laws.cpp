#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdiff/errors.hpp"
#include "fracdiff/laws.hpp"
#include "fracdiff/quadrature.hpp"

using namespace fracdiff;
using namespace fracdiff::laws;
using std::numbers::pi;

namespace {
// h_{1/3} through K_{1/3}, the standard library being the oracle
double h_third(double x, double t) {
  return std::pow(t, 1.5) / (3.0 * pi) * std::pow(x, -1.5) *
         std::cyl_bessel_k(1.0 / 3.0, 2.0 * std::pow(t, 1.5) / (std::sqrt(27.0) * std::sqrt(x)));
}
}  // namespace

TEST_CASE("generalized gamma density") {
  CHECK(gg_density({1.0, 1.0}, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(gg_density({1.0, 3.0}, 1.5, 2.0) == doctest::Approx(1.5 * 1.5 * std::exp(-0.75) / 16.0).epsilon(1e-14));
  double z = 0.7 / 1.3;
  CHECK(gg_density({2.0, 1.5}, 0.7, 1.3) == doctest::Approx(2.0 * std::pow(z, 2.0) * std::exp(-z * z) / (std::tgamma(1.5) * 1.3)).epsilon(1e-14));
  // negative gamma: inverse gamma law
  double m = quad::integrate_positive([](double x) { return gg_density({-1.0, 0.5}, x, 2.0); }, 2.0);
  CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
  for (double eta : {0.5, 1.0, 2.5}) {
    GGLaw law{1.0, 2.0};
    double num = quad::integrate_positive([&](double x) { return std::pow(x, eta - 1.0) * gg_density(law, x, 1.7); }, 1.7);
    CHECK(num == doctest::Approx(gg_mellin(law, 1.7, eta)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(gg_density({1.0, -1.0}, 1.0, 1.0), DomainError);
}

TEST_CASE("stable density, every method against the Bessel form") {
  for (Method m : {Method::automatic, Method::conv, Method::foxh})
    for (double x : {0.05, 0.5, 1.0, 4.0})
      for (double t : {0.5, 2.0}) CHECK(std::abs(h_density(1.0 / 3.0, x, t, m) - h_third(x, t)) < 1e-9);
  CHECK(std::abs(h_density(1.0 / 3.0, 1.0, 1.0) - 0.1320798265688342) < 1e-12);
  CHECK(std::abs(h_density(1.0 / 3.0, 0.5, 2.0) - 0.17743144166987051) < 1e-12);
  // far tail x^{-1-nu}
  CHECK(h_density(0.5, 1e8, 1.0) == doctest::Approx(0.5 / std::sqrt(pi) * 1e-12).epsilon(1e-6));
}

TEST_CASE("inverse stable density") {
  // l_nu(x, t) = t / (nu x^{1+1/nu}) h_nu(t x^{-1/nu}, 1)
  for (Method m : {Method::automatic, Method::conv, Method::foxh, Method::wright})
    for (double x : {0.1, 0.8, 2.0}) {
      double viah = 1.0 / ((1.0 / 3.0) * std::pow(x, 4.0)) * h_third(std::pow(x, -3.0), 1.0);
      CHECK(std::abs(l_density(1.0 / 3.0, x, 1.0, m) - viah) < 1e-9);
    }
  CHECK(std::abs(l_density(1.0 / 3.0, 1.0, 1.0) - 0.39623947970650259) < 1e-12);
  CHECK(std::abs(l_density(1.0 / 3.0, 0.5, 2.0) - 0.47039427487004506) < 1e-12);
  double mass = quad::integrate_positive([](double x) { return l_density(0.7, x, 1.5); });
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extreme arguments stay finite") {
  CHECK(l_density(1.0 / 3.0, 1e300, 1.0) == 0.0);
  CHECK(h_density(0.7, 1e-300, 1.0) == 0.0);
  CHECK(l_density(0.7, 1e-300, 1.5) == doctest::Approx(l_density(0.7, 1e-8, 1.5)).epsilon(1e-7));
  // h_{1/2} has the closed form; the asymptotic branch must agree with it far out
  CHECK(h_density(0.5, 0.004, 1.0, Method::foxh) == doctest::Approx(h_density(0.5, 0.004, 1.0)).epsilon(1e-12));
}

TEST_CASE("ratio law and mixed clock") {
  double mass = quad::integrate_positive([](double x) { return ratio_density(1.0 / 3.0, x); });
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ratio_law_density(0.5, 3.0, 1.5) == doctest::Approx(ratio_density(0.5, 2.0) / 1.5).epsilon(1e-15));
  for (double x : {0.3, 1.0, 3.0}) {
    CHECK(f_nu_beta(0.5, 1.0, x, 1.2) == doctest::Approx(h_density(0.5, x, 1.2)).epsilon(1e-9));
    CHECK(f_nu_beta(1.0, 0.5, x, 1.2) == doctest::Approx(l_density(0.5, x, 1.2)).epsilon(1e-9));
  }
  double m2 = quad::integrate_positive([](double x) { return f_nu_beta(0.5, 0.5, x, 1.0); });
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("index vectors") {
  auto mu = MuVector::parse("1/5,2/5,3/5,4/5");
  CHECK(mu.kappa == 5);
  CHECK(mu.product() == 24);
  CHECK(mu.sum() == 10);
  CHECK(mu.entry(2) == doctest::Approx(0.6));
  CHECK_THROWS(MuVector::parse("1/5,2/3"));
  // brute-force count of ordered 4-tuples with product 24
  int count = 0;
  for (int a = 1; a <= 24; ++a)
    for (int b = 1; b <= 24; ++b)
      for (int c = 1; c <= 24; ++c)
        for (int d = 1; d <= 24; ++d) count += a * b * c * d == 24;
  auto set = index_set(IndexKind::P, 4, 5, 24);
  CHECK(int(set.size()) == count);
  for (const auto& v : set) CHECK(v.in_P(24));
  CHECK(index_set(IndexKind::S, 3, 2, 5).size() == 6u);
}

TEST_CASE("products of gamma variables") {
  std::vector<double> one = {1.7};
  CHECK(compose_density(1.0, one, 0.9, 1.3) == doctest::Approx(gg_density({1.0, 1.7}, 0.9, 1.3)).epsilon(1e-12));
  // G1 G2 with shapes a, b: 2 x^{(a+b)/2-1} K_{a-b}(2 sqrt x) / (Gamma(a) Gamma(b))
  double a = 1.5, b = 0.75;
  for (double x : {0.2, 1.0, 3.0}) {
    double exact = 2.0 * std::pow(x, (a + b) / 2.0 - 1.0) * std::cyl_bessel_k(a - b, 2.0 * std::sqrt(x)) /
                   (std::tgamma(a) * std::tgamma(b));
    CHECK(compose_density(1.0, std::vector<double>{a, b}, x, 1.0) == doctest::Approx(exact).epsilon(1e-10));
    CHECK(star_equal_gamma(1.0, a, b, x, 1.0) == doctest::Approx(exact).epsilon(1e-10));
  }
  std::vector<double> three = {0.5, 1.0, 1.5};
  for (double x : {0.5, 2.0})
    CHECK(compose_density(2.0, three, x, 1.0) == doctest::Approx(compose_density_mellin(2.0, three, x, 1.0)).epsilon(1e-7));
  CHECK(compose_mellin(1.0, three, 1.0, 2.0) == doctest::Approx(std::tgamma(1.5) * std::tgamma(2.0) * std::tgamma(2.5) /
                                                                (std::tgamma(0.5) * std::tgamma(1.0) * std::tgamma(1.5)))
                                                     .epsilon(1e-13));
}

TEST_CASE("permutation gap is symmetric and zero for a reordering") {
  std::vector<std::pair<double, double>> g = {{0.5, 1.0}, {1.0, 1.0}};
  auto a = MuVector::parse("1/3,2/3"), b = MuVector::parse("2/3,1/3");
  CHECK(permutation_invariance_gap(1.0, a, b, g) < 1e-12);
  CHECK(permutation_invariance_gap(1.0, a, b, g) == doctest::Approx(permutation_invariance_gap_serial(1.0, a, b, g)));
}
