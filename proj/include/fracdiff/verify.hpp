#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracdiff::verify {

struct Options {
  std::uint64_t seed = 0;
  // Empty runs everything; otherwise a comma-separated list of suite names.
  std::string filter;
  // Multiplies every threshold; 0 forces the failure path.
  double tol_scale = 1.0;
  std::size_t n_draws = 100000;
};

struct TestResult {
  std::string name;
  double statistic;
  double threshold;
  bool pass;
  std::string error;  // set when the check threw
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<TestResult> tests;
  bool pass() const;
  nlohmann::json to_json() const;
};

const char* version();
std::vector<std::string> suite_names();
// Unknown suite names in the filter throw DomainError.
Report run(const Options& opt);

}  // namespace fracdiff::verify
