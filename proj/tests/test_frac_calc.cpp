#include <doctest.h>

#include <cmath>

#include "fracdiff/frac_calc.hpp"

using namespace fracdiff;
using namespace fracdiff::frac;

namespace {
std::vector<double> nodes(double h, double xmax) {
  std::vector<double> v;
  for (int i = 0; i * h <= xmax + 1e-12; ++i) v.push_back(i * h);
  return v;
}
}  // namespace

TEST_CASE("power law rule in closed form") {
  for (double beta : {1.5, 2.0, 3.5})
    for (double a : {0.3, 0.5, 0.9}) {
      PowerLaw f{2.0, beta};
      double exact = 2.0 * std::tgamma(beta) / std::tgamma(beta - a) * std::pow(1.7, beta - a - 1.0);
      CHECK(rl_left(a, f, 1.7) == doctest::Approx(exact).epsilon(1e-12));
      Fn g = [beta](double x) { return 2.0 * std::pow(x, beta - 1.0); };
      CHECK(rl_left(a, g, 1.7) == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("Caputo of simple functions") {
  for (double a : {0.25, 0.5, 0.75}) {
    Fn sq = [](double s) { return s * s; };
    double exact = 2.0 * std::pow(1.3, 2.0 - a) / std::tgamma(3.0 - a);
    CHECK(caputo(a, sq, 1.3) == doctest::Approx(exact).epsilon(1e-9));
    Fn one = [](double) { return 1.0; };
    CHECK(std::abs(caputo(a, one, 1.3)) < 1e-12);
    CHECK(caputo(a, PowerLaw{1.0, 3.0}, 1.3) == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("right Weyl derivative leaves exp(-x) fixed") {
  Fn e = [](double x) { return std::exp(-x); };
  for (double a : {0.25, 0.5, 0.75})
    for (double x : {0.2, 1.0, 4.0}) CHECK(rl_right(a, e, x) == doctest::Approx(std::exp(-x)).epsilon(1e-8));
}

TEST_CASE("fractional integral of a constant") {
  Fn one = [](double) { return 1.0; };
  double a = 0.4, x = 2.0;
  // order 1 - a
  CHECK(frac_integral(Side::left, a, one, x) == doctest::Approx(std::pow(x, 1.0 - a) / std::tgamma(2.0 - a)).epsilon(1e-9));
  CHECK(frac_integral(Side::left, 1.0, one, x) == doctest::Approx(1.0));
}

TEST_CASE("grid function reproduces cubics and matches the callable operators") {
  auto cubic = [](double x) { return 1.0 + x - 0.5 * x * x + 0.1 * x * x * x; };
  auto g = GridFunction::sample(cubic, nodes(0.1, 3.0));
  for (double x : {0.05, 0.77, 1.5, 2.93}) CHECK(g(x) == doctest::Approx(cubic(x)).epsilon(1e-12));
  auto e = GridFunction::sample([](double x) { return x * std::exp(-x); }, nodes(0.01, 40.0));
  Fn ef = [](double x) { return x * std::exp(-x); };
  for (double a : {0.3, 0.7}) {
    CHECK(rl_left(a, e, 1.2) == doctest::Approx(rl_left(a, ef, 1.2)).epsilon(1e-6));
    CHECK(rl_right(a, e, 1.2) == doctest::Approx(rl_right(a, ef, 1.2)).epsilon(1e-6));
  }
}

TEST_CASE("boundary term vanishes inside the strip") {
  auto b = boundary_term(Side::right, 0.5, [](double x) { return x * std::exp(-x); }, 2.0);
  CHECK(b.vanishes);
}
