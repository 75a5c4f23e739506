#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracdiff/laws.hpp"
#include "fracdiff/mellin.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;
using namespace fracdiff::mellin;

namespace {
// H^{1,0}_{0,1}[x | (0,1)] = exp(-x)
FoxH exponential() {
  FoxH h;
  h.m = 1;
  h.q = 1;
  h.lower = {{0.0, 1.0}};
  h.strip = {0.0, INFINITY};
  return h;
}
}  // namespace

TEST_CASE("Fox H reduces to the exponential") {
  auto h = exponential();
  h.validate();
  for (double x : {0.1, 0.5, 1.0, 3.0}) CHECK(fox_h_eval(h, x) == doctest::Approx(std::exp(-x)).epsilon(1e-10));
  CHECK(fox_h_mellin(h, 2.5) == doctest::Approx(std::tgamma(2.5)).epsilon(1e-13));
  // x^2 e^{-x} via the shift rule
  CHECK(fox_h_eval(shift(h, 2.0), 1.5) == doctest::Approx(2.25 * std::exp(-1.5)).epsilon(1e-10));
}

TEST_CASE("JSON round trip keeps the kernel") {
  auto h = laws::h_fox(1.0 / 3.0);
  auto back = foxh_from_json(to_json(h));
  for (double eta : {0.2, 0.5}) CHECK(fox_h_mellin(back, eta) == doctest::Approx(fox_h_mellin(h, eta)).epsilon(1e-15));
}

TEST_CASE("numeric Mellin transform and convolution") {
  Fn e = [](double x) { return std::exp(-x); };
  CHECK(mellin_numeric(e, 2.5, {0.0, INFINITY}) == doctest::Approx(std::tgamma(2.5)).epsilon(1e-10));
  CHECK(mellin_numeric(e, 0.3, {0.0, INFINITY}) == doctest::Approx(std::tgamma(0.3)).epsilon(1e-9));
  // product of two unit exponentials: 2 K_0(2 sqrt x)
  for (double x : {0.1, 1.0, 4.0})
    CHECK(mellin_convolve(e, e, x) == doctest::Approx(2.0 * std::cyl_bessel_k(0.0, 2.0 * std::sqrt(x))).epsilon(1e-9));
}

TEST_CASE("contour inversion of Gamma(eta)") {
  Kernel k = [](std::complex<double> s) { return std::exp(specfun::lgamma_complex(s)); };
  for (double x : {0.2, 1.0, 5.0}) CHECK(mellin_invert(k, x, 1.0) == doctest::Approx(std::exp(-x)).epsilon(1e-9));
}
