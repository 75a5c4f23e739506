#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "fracdiff/errors.hpp"
#include "fracdiff/montecarlo.hpp"

using namespace fracdiff;
using namespace fracdiff::mc;

TEST_CASE("splitmix64 reference output") {
  // first output of the reference generator seeded with 0
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("serial and parallel draws agree bit for bit") {
  Sampler s = [](Rng& r) { return sample_subordinator(0.4, 1.0, r); };
  auto a = draw_serial(s, 3 * block_size + 17, {7, 3});
  auto b = draw_parallel(s, 3 * block_size + 17, {7, 3});
  CHECK(a == b);
  auto c = draw_parallel(s, 100, {8, 3});
  CHECK(c[0] != a[0]);
}

TEST_CASE("Kolmogorov distances") {
  std::vector<double> u;
  for (int i = 0; i < 1000; ++i) u.push_back((i + 0.5) / 1000.0);
  CHECK(ks_distance(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) == doctest::Approx(0.0005));
  CHECK(ks_two_sample(u, u) == 0.0);
  CHECK(ks_quantile99(10000) == doctest::Approx(0.0163));
  CHECK_THROWS_AS(ks_distance({}, [](double) { return 0.0; }), DomainError);
}

TEST_CASE("gamma sampler") {
  auto x = draw_parallel([](Rng& r) { return sample_G(0.7, 2.0, r); }, 50000, {1, 0});
  double m = 0.0;
  for (double v : x) m += v;
  CHECK(m / x.size() == doctest::Approx(1.4).epsilon(0.02));
  CHECK(ks_distance(x, [](double v) { return boost::math::gamma_p(0.7, v / 2.0); }) < 0.01);
}

TEST_CASE("stable sampler at nu = 1/2 is the Levy law") {
  auto x = draw_parallel([](Rng& r) { return sample_subordinator(0.5, 2.0, r); }, 50000, {2, 0});
  CHECK(ks_distance(x, [](double v) { return std::erfc(1.0 / std::sqrt(v)); }) < 0.01);
}

TEST_CASE("chains check membership") {
  CompositionChain bad{ChainKind::subordinator, laws::MuVector::parse("1/3,1/3"), 1.0};
  CHECK_THROWS_AS(bad.validate(), MembershipError);
  CompositionChain ok{ChainKind::inverse, laws::MuVector::parse("2/3,1/3"), 1.0};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.nu() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("tabulated CDF") {
  TabulatedCdf F([](double x) { return std::exp(-x); }, 1e-6, 50.0);
  CHECK(F.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  for (double x : {1e-8, 0.01, 0.5, 3.0, 60.0}) CHECK(std::abs(F(x) - (1.0 - std::exp(-x))) < 2e-8);
  CHECK_THROWS_AS(TabulatedCdf([](double) { return 1.0; }, 2.0, 1.0), DomainError);
}

TEST_CASE("moment scaling") {
  auto fit = moment_scaling_check(1.0, 1.0, 0.5, 1.0, {1.0, 4.0, 16.0}, 20000, {3, 0});
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.1));
  // the stable clock has no mean: E[G_1(h_{1/2}(t))] is infinite
  CHECK_THROWS_AS(moment_scaling_check(1.0, 0.5, 1.0, 1.0, {1.0, 2.0}, 20000, {3, 0}), DomainError);
}

TEST_CASE("verification record") {
  auto r = make_record("x", 10, 0.5, 1.0);
  CHECK(r.pass);
  CHECK(r.to_json()["threshold"] == 1.0);
  CHECK_FALSE(make_record("y", 10, NAN, 1.0).pass);
}
