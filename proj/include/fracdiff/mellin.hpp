#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <json.hpp>
#include <optional>
#include <utility>
#include <vector>

namespace fracdiff::mellin {

using Fn = std::function<double(double)>;
using Kernel = std::function<std::complex<double>(std::complex<double>)>;

struct MellinStrip {
  double a = -std::numeric_limits<double>::infinity();
  double b = std::numeric_limits<double>::infinity();
  bool contains(double eta) const { return eta > a && eta < b; }
  double midpoint() const;
};

// H^{m,n}_{p,q} with Mellin kernel
//   coefficient * prod_{j<=m} G(b_j + eta B_j) prod_{i<=n} G(1 - a_i - eta A_i)
//   / (prod_{j>m} G(1 - b_j - eta B_j) prod_{i>n} G(a_i + eta A_i)).
// `coefficient` defaults to 1 and is a scalar multiplier on the whole function.
struct FoxH {
  int m = 0, n = 0, p = 0, q = 0;
  std::vector<std::pair<double, double>> upper;
  std::vector<std::pair<double, double>> lower;
  MellinStrip strip;
  double coefficient = 1.0;

  // Shape checks plus: no numerator pole strictly inside the strip.
  void validate() const;
};

std::complex<double> fox_h_kernel(const FoxH& h, std::complex<double> eta);
double fox_h_mellin(const FoxH& h, double eta);

struct ContourOptions {
  std::optional<double> abscissa;
  double tol = 1e-12;  // relative to the value
  int max_panels = 40000;
};

// (1/2 pi i) int K(eta) x^{-eta} d eta along Re eta = c, for kernels with K(conj z) = conj K(z).
double mellin_invert(const Kernel& k, double x, double c, const ContourOptions& opt = {}, double phase_rate = 1.0);
double fox_h_eval(const FoxH& h, double x, const ContourOptions& opt = {});

// Parameter set representing x^c H(x).
FoxH shift(const FoxH& h, double c);

nlohmann::json to_json(const FoxH& h);
FoxH foxh_from_json(const nlohmann::json& j);

double mellin_numeric(const Fn& f, double eta, const MellinStrip& strip = {}, double scale = 1.0);
double mellin_convolve(const Fn& f1, const Fn& f2, double x);

}  // namespace fracdiff::mellin
