// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all
//   acceptance c3 c5      run a subset
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fracdiff/verify.hpp"

using namespace fracdiff;

namespace {

struct Criterion {
  std::string id;
  std::string what;
  std::string suites;  // verify filter
  double max_seconds;
};

const std::vector<Criterion> criteria = {
    {"c1", "closed-form oracles for h_1/2 and l_1/2, all routes", "oracles", 10},
    {"c2", "Laplace identities for h_nu and l_nu", "laplace", 30},
    {"c3", "equivalence in law of the gamma chains", "chains", 60},
    {"c4", "permutation invariance of the composed density", "invariance", 120},
    {"c5", "Sturm-Liouville series: single mode, PDE residual, boundary", "bvp", 60},
    {"c6", "Mellin identities and mixed-law route agreement", "mellin", 60},
    {"c7", "fractional-calculus kernel rules", "frac", 20},
    {"c8", "anomalous-diffusion moment slopes", "moments", 120},
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report_line(const std::string& id, bool pass, const std::string& what, double secs, double bound) {
  std::printf("%s %s %s (%.1f s, bound %.0f s)\n", pass ? "PASS" : "FAIL", id.c_str(), what.c_str(), secs, bound);
  std::fflush(stdout);
  return pass;
}

bool run_criterion(const Criterion& c) {
  verify::Options o;
  o.filter = c.suites;
  auto t0 = std::chrono::steady_clock::now();
  auto rep = verify::run(o);
  double secs = seconds_since(t0);
  for (const auto& t : rep.tests)
    std::printf("    %-40s %s  %.4g <= %.4g%s%s\n", t.name.c_str(), t.pass ? "ok  " : "MISS", t.statistic, t.threshold,
                t.error.empty() ? "" : "  ", t.error.c_str());
  bool fast = secs < c.max_seconds;
  if (!fast) std::printf("    runtime %.1f s over the %.0f s bound\n", secs, c.max_seconds);
  return report_line(c.id, rep.pass() && fast, c.what, secs, c.max_seconds);
}

// Full suite twice under seed 0; reports must match byte for byte.
bool run_determinism() {
  verify::Options o;
  auto t0 = std::chrono::steady_clock::now();
  std::string a = verify::run(o).to_json().dump(1);
  std::string b = verify::run(o).to_json().dump(1);
  double secs = seconds_since(t0);
  std::printf("    report size %zu bytes, identical: %s\n", a.size(), a == b ? "yes" : "no");
  return report_line("c9", a == b, "verify report deterministic under a fixed seed", secs, 1200);
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  bool all = true;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ++ran;
    all = run_criterion(c) && all;
  }
  if (wanted.empty() || wanted.count("c9")) {
    ++ran;
    all = run_determinism() && all;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return all ? 0 : 1;
}
