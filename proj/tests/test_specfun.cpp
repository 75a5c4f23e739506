#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdiff/errors.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;
using namespace fracdiff::specfun;
using std::numbers::pi;

TEST_CASE("gamma agrees with tgamma and vanishes in reciprocal at poles") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, -0.5, -2.5}) CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  for (double x : {0.0, -1.0, -2.0, -7.0}) CHECK(rgamma(x) == 0.0);
  CHECK(beta_fn(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("complex log-gamma") {
  for (double x : {0.3, 1.5, 6.0}) CHECK(lgamma_complex({x, 0.0}).real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  // |Gamma(iy)|^2 = pi / (y sinh(pi y))
  for (double y : {0.5, 2.0, 10.0}) {
    double lhs = 2.0 * lgamma_complex({0.0, y}).real();
    CHECK(lhs == doctest::Approx(std::log(pi / (y * std::sinh(pi * y)))).epsilon(1e-12));
  }
}

TEST_CASE("Mittag-Leffler closed cases") {
  for (double z : {-3.0, -0.5, 0.0, 1.0, 2.0}) CHECK(mittag_leffler({1.0}, z) == doctest::Approx(std::exp(z)).epsilon(1e-13));
  for (double z : {0.5, 1.0, 3.0}) CHECK(mittag_leffler({2.0}, -z * z) == doctest::Approx(std::cos(z)).epsilon(1e-12));
  // E_{1/2}(-z) = exp(z^2) erfc(z), including large z where the series is useless
  for (double z : {0.5, 1.0, 2.0, 4.0, 10.0}) {
    double exact = std::exp(z * z) * std::erfc(z);
    CHECK(std::abs(mittag_leffler({0.5}, -z) - exact) < 1e-12);
  }
}

TEST_CASE("Mittag-Leffler against high precision values") {
  CHECK(std::abs(mittag_leffler({1.0 / 3.0}, -2.0) - 0.28481393838656553) < 1e-12);
  CHECK(std::abs(mittag_leffler({0.7, 1.2}, -1.5) - 0.36942789070926683) < 1e-12);
}

TEST_CASE("Wright function") {
  // W_{-1/2,1/2}(-z) = exp(-z^2/4)/sqrt(pi), far enough out to need the integral form
  for (double z : {0.25, 1.0, 3.0, 6.0, 8.0}) {
    double exact = std::exp(-z * z / 4.0) / std::sqrt(pi);
    CHECK(std::abs(wright_w(-0.5, 0.5, -z) - exact) < 1e-12);
  }
  CHECK(std::abs(wright_w(-1.0 / 3.0, 2.0 / 3.0, -1.5) - 0.26838912807998114) < 1e-12);
  CHECK(wright_w(0.5, 1.0, 2.0) == doctest::Approx(6.6906279405071441).epsilon(1e-12));
  // W_{1,1}(z) = I_0(2 sqrt z)
  CHECK(wright_w(1.0, 1.0, 2.0) == doctest::Approx(std::cyl_bessel_i(0.0, 2.0 * std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("Bessel functions against the standard library") {
  for (double nu : {0.0, 0.5, 1.0, 2.5})
    for (double x : {0.1, 1.0, 5.0, 12.0, 30.0}) {
      CHECK(std::abs(bessel_j(nu, x) - std::cyl_bessel_j(nu, x)) < 1e-12);
      CHECK(bessel_i(nu, x) == doctest::Approx(std::cyl_bessel_i(nu, x)).epsilon(1e-12));
      CHECK(bessel_k(nu, x) == doctest::Approx(std::cyl_bessel_k(nu, x)).epsilon(1e-12));
    }
  CHECK(bessel_k(1.0 / 3.0, 0.01) == doctest::Approx(std::cyl_bessel_k(1.0 / 3.0, 0.01)).epsilon(1e-12));
}

TEST_CASE("Bessel zeros") {
  auto z = bessel_j_zeros(0.0, 3);
  REQUIRE(z.size() == 3);
  CHECK(z[0] == doctest::Approx(2.4048255576957728).epsilon(1e-14));
  CHECK(z[1] == doctest::Approx(5.5200781102863106).epsilon(1e-14));
  CHECK(z[2] == doctest::Approx(8.6537279129110122).epsilon(1e-14));
  CHECK(bessel_j_zeros(1.5, 1)[0] == doctest::Approx(4.4934094579090642).epsilon(1e-14));
  auto many = bessel_j_zeros(1.0, 60);
  for (std::size_t i = 1; i < many.size(); ++i) {
    CHECK(many[i] > many[i - 1]);
    CHECK(std::abs(std::cyl_bessel_j(1.0, many[i])) < 1e-12);
  }
}
