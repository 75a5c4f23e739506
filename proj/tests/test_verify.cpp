#include <doctest.h>

#include "fracdiff/errors.hpp"
#include "fracdiff/verify.hpp"

using namespace fracdiff;

TEST_CASE("report schema and determinism") {
  verify::Options o;
  o.filter = "laplace,frac";
  auto a = verify::run(o);
  auto b = verify::run(o);
  CHECK(a.pass());
  CHECK(a.to_json().dump() == b.to_json().dump());
  auto j = a.to_json();
  for (const char* k : {"suite", "tests", "seed", "version"}) CHECK(j.contains(k));
  for (const auto& t : j["tests"])
    for (const char* k : {"name", "statistic", "threshold", "pass"}) CHECK(t.contains(k));
  CHECK(j["tests"][0]["name"].get<std::string>().rfind("laplace/", 0) == 0);
}

TEST_CASE("zero tolerance takes the failure path") {
  verify::Options o;
  o.filter = "laplace";
  o.tol_scale = 0.0;
  CHECK_FALSE(verify::run(o).pass());
}

TEST_CASE("filtering") {
  verify::Options o;
  o.filter = "chains";
  o.n_draws = 20000;
  auto r = verify::run(o);
  CHECK(r.tests.size() == 6u);
  for (const auto& t : r.tests) CHECK(t.name.rfind("chains/", 0) == 0);
  o.filter = "nope";
  CHECK_THROWS_AS(verify::run(o), DomainError);
}
