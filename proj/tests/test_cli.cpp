#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef FRACDIFF_CLI
#error "FRACDIFF_CLI must name the command-line binary"
#endif

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(FRACDIFF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::vector<std::string>> csv(const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(s);
  for (std::string line; std::getline(ss, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("tabulate the inverse stable density") {
  auto r = run("--command tabulate --param density=l --param nu=1/2 --param xmin=0.1 --param xmax=3 --param nx=30 --param t=1");
  REQUIRE(r.status == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 31u);
  CHECK(rows[0] == std::vector<std::string>{"x", "t", "value", "method"});
  bool seen = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double x = std::stod(rows[i][0]), v = std::stod(rows[i][2]);
    CHECK(v >= 0.0);
    if (std::abs(x - 1.0) < 1e-12) {
      seen = true;
      CHECK(std::abs(v - 0.4393912894677224) < 1e-8);
    }
  }
  CHECK(seen);
}

TEST_CASE("tabulate the gamma density") {
  auto r = run("--command tabulate --param density=gg --param gamma=1 --param mu=1 --param x=1 --param t=1");
  REQUIRE(r.status == 0);
  auto rows = csv(r.out);
  REQUIRE(rows.size() == 2u);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("--command tabulate --param density=l --param nu=0.5 --param nx=0").status == 2);
  CHECK(run("--command tabulate --param density=nope").status == 2);
  CHECK(run("--command tabulate --param density=gg --param colour=red").status == 2);
  CHECK(run("--command frobnicate").status == 2);
  CHECK(run("--command verify --param suite=nope").status == 2);
  CHECK(run("--command solve-bvp --param m0=wiggle --out /tmp/fracdiff_cli_test_bad.csv").status == 2);
}

TEST_CASE("verify exit status follows the report") {
  auto ok = run("--command verify --param suite=laplace");
  CHECK(ok.status == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["suite"] == "laplace");
  CHECK(j["tests"].size() == 4u);
  CHECK(run("--command verify --param suite=laplace --param tol_scale=0").status == 1);
}

TEST_CASE("solve-bvp writes the grid and the eigen-system") {
  const std::string out = "/tmp/fracdiff_cli_test_bvp.csv";
  auto r = run("--command solve-bvp --param m0=one --param nu=1/2 --param t=0,0.5 --out " + out);
  REQUIRE(r.status == 0);
  auto rows = csv(slurp(out));
  CHECK(rows[0] == std::vector<std::string>{"x", "t", "value"});
  CHECK(rows.size() == 1u + 2u * 19u);
  auto e = nlohmann::json::parse(slurp(out + ".eigen.json"));
  for (const char* k : {"order", "zeros", "norms", "coefficients"}) CHECK(e.contains(k));
  CHECK(e["zeros"].size() == 50u);
  // t = 0 column within the reported weighted error of the datum
  double err = e["initial_l2_error"];
  for (std::size_t i = 1; i <= 19; ++i) CHECK(std::abs(std::stod(rows[i][2]) - 1.0) < std::max(0.05, 10 * err));
}

TEST_CASE("sampling is reproducible under a fixed seed") {
  auto a = run("--command sample --param law=h --param nu=0.5 --param n=500 --seed 4");
  auto b = run("--command sample --param law=h --param nu=0.5 --param n=500 --seed 4");
  auto c = run("--command sample --param law=h --param nu=0.5 --param n=500 --seed 5");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(csv(a.out).size() == 501u);
}

TEST_CASE("moment slope") {
  auto r = run("--command moments --param nu=1 --param beta=1/2 --param n=20000 --param t=1,4,16");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["expected"] == doctest::Approx(0.5));
}
