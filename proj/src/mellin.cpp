#include "fracdiff/mellin.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "fracdiff/errors.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/quadrature.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::mellin {

namespace {

using C = std::complex<double>;

bool nonpos_int(double x) { return x <= 0.0 && x == std::floor(x); }

// Sum of log-Gammas with sign bookkeeping for real-axis constants.
struct LogAcc {
  C log = 0.0;
  bool zero = false;
  void mul(C z) {
    if (z.imag() == 0.0 && nonpos_int(z.real())) throw PoleError("fox_h_kernel: pole of a numerator Gamma");
    log += specfun::lgamma_complex(z);
  }
  void div(C z) {
    if (z.imag() == 0.0 && nonpos_int(z.real())) {
      zero = true;
      return;
    }
    log -= specfun::lgamma_complex(z);
  }
};

// Poles in eta of G(c0 + eta*s), s > 0 (left-going) or G(c0 - eta*s) (right-going).
void check_no_pole(double c0, double s, bool left_going, const MellinStrip& st) {
  if (s == 0.0) {
    if (nonpos_int(c0)) throw PoleError("FoxH: constant Gamma factor sits on a pole");
    return;
  }
  // left-going poles at eta = -(c0 + k)/s, k >= 0; the largest is -c0/s
  // right-going poles at eta = (c0 + k)/s; the smallest is c0/s
  if (left_going) {
    double top = -c0 / s;
    if (top > st.a + 1e-14) throw PoleError("FoxH: numerator pole inside strip");
  } else {
    double bottom = c0 / s;
    if (bottom < st.b - 1e-14) throw PoleError("FoxH: numerator pole inside strip");
  }
}

}  // namespace

double MellinStrip::midpoint() const {
  if (std::isfinite(a) && std::isfinite(b)) return 0.5 * (a + b);
  if (std::isfinite(a)) return a + 0.5;
  if (std::isfinite(b)) return b - 0.5;
  return 0.0;
}

void FoxH::validate() const {
  if (static_cast<int>(upper.size()) != p || static_cast<int>(lower.size()) != q)
    throw DomainError("FoxH: parameter list lengths must equal p and q");
  if (n > p || m > q || n < 0 || m < 0) throw DomainError("FoxH: need 0 <= n <= p and 0 <= m <= q");
  if (!(strip.a < strip.b)) throw DomainError("FoxH: empty strip");
  for (auto [a, al] : upper)
    if (al < 0) throw DomainError("FoxH: alpha_i must be non-negative");
  for (auto [b, be] : lower)
    if (be < 0) throw DomainError("FoxH: beta_j must be non-negative");
  for (int j = 0; j < m; ++j) check_no_pole(lower[j].first, lower[j].second, true, strip);
  for (int i = 0; i < n; ++i) check_no_pole(1.0 - upper[i].first, upper[i].second, false, strip);
}

C fox_h_kernel(const FoxH& h, C eta) {
  LogAcc acc;
  for (int j = 0; j < h.q; ++j) {
    auto [b, be] = h.lower[j];
    if (j < h.m)
      acc.mul(b + eta * be);
    else
      acc.div(1.0 - b - eta * be);
  }
  for (int i = 0; i < h.p; ++i) {
    auto [a, al] = h.upper[i];
    if (i < h.n)
      acc.mul(1.0 - a - eta * al);
    else
      acc.div(a + eta * al);
  }
  if (acc.zero) return 0.0;
  return h.coefficient * std::exp(acc.log);
}

double fox_h_mellin(const FoxH& h, double eta) {
  if (!h.strip.contains(eta)) {
    std::ostringstream os;
    os << "fox_h_mellin: eta=" << eta << " outside strip (" << h.strip.a << ", " << h.strip.b << ")";
    throw DomainError(os.str());
  }
  double v = h.coefficient;
  for (int j = 0; j < h.q; ++j) {
    auto [b, be] = h.lower[j];
    v *= j < h.m ? specfun::gamma_fn(b + eta * be) : specfun::rgamma(1.0 - b - eta * be);
  }
  for (int i = 0; i < h.p; ++i) {
    auto [a, al] = h.upper[i];
    v *= i < h.n ? specfun::gamma_fn(1.0 - a - eta * al) : specfun::rgamma(a + eta * al);
  }
  return v;
}

double mellin_invert(const Kernel& k, double x, double c, const ContourOptions& opt, double phase_rate) {
  if (!(x > 0.0)) throw DomainError("mellin_invert: x must be positive");
  using G = boost::math::quadrature::gauss<double, 20>;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  const double lx = std::log(x);
  const double pref = std::exp(-c * lx) / std::numbers::pi;
  auto integrand = [&](double y) {
    C v = k(C(c, y));
    return pref * (v * std::exp(C(0.0, -y * lx))).real();
  };
  auto magnitude = [&](double y) { return pref * std::abs(k(C(c, y))); };
  // Panel width keeps the phase change per panel to about one radian.
  auto width = [&](double y) { return std::min(0.5, 1.0 / (std::abs(lx) + phase_rate * std::log(2.0 + y) + 1e-3)); };

  double total = 0.0, peak = 0.0;
  double y = 0.0;
  int quiet = 0;
  const int batch = 32;
  std::vector<double> starts(batch), widths(batch), part(batch), mag(batch);
  for (int done = 0; done < opt.max_panels; done += batch) {
    for (int i = 0; i < batch; ++i) {
      starts[i] = y;
      widths[i] = width(y);
      y += widths[i];
    }
    parallel_for(batch, [&](int i) {
      const double lo = starts[i], w = widths[i], mid = lo + 0.5 * w;
      double s = 0.0;
      for (std::size_t j = 0; j < ab.size(); ++j) {
        double off = 0.5 * w * ab[j];
        if (ab[j] == 0.0)
          s += wt[j] * integrand(mid);
        else
          s += wt[j] * (integrand(mid - off) + integrand(mid + off));
      }
      part[i] = 0.5 * w * s;
      mag[i] = magnitude(lo + w);
    });
    for (int i = 0; i < batch; ++i) {
      total += part[i];
      peak = std::max(peak, mag[i]);
      // Relative to the running value, but no finer than rounding on the largest panel.
      if (mag[i] < std::max(opt.tol * std::abs(total), 1e-15 * peak)) {
        if (++quiet >= 3) return total;
      } else {
        quiet = 0;
      }
    }
  }
  throw ConvergenceError("mellin_invert: contour integral did not settle within the panel budget");
}

double fox_h_eval(const FoxH& h, double x, const ContourOptions& opt) {
  h.validate();
  double c = h.strip.midpoint();
  if (opt.abscissa) {
    c = *opt.abscissa;
  } else if (const double lx = std::log(x); std::abs(lx) > 8.0) {
    // Far from x = 1 the factor x^{-c} feeds cancellation; slide the contour
    // to within 4/|log x| of the edge that damps it.
    const double d = 4.0 / std::abs(lx);
    if (lx < 0.0 && std::isfinite(h.strip.a)) c = std::min(c, h.strip.a + d);
    if (lx > 0.0 && std::isfinite(h.strip.b)) c = std::max(c, h.strip.b - d);
  }
  if (!h.strip.contains(c)) throw DomainError("fox_h_eval: contour abscissa outside strip");
  double rate = 0.0;
  for (auto [a, al] : h.upper) rate += al;
  for (auto [b, be] : h.lower) rate += be;
  return mellin_invert([&](C eta) { return fox_h_kernel(h, eta); }, x, c, opt, std::max(rate, 1.0));
}

FoxH shift(const FoxH& h, double c) {
  FoxH s = h;
  for (auto& [a, al] : s.upper) a += c * al;
  for (auto& [b, be] : s.lower) b += c * be;
  s.strip.a -= c;
  s.strip.b -= c;
  return s;
}

nlohmann::json to_json(const FoxH& h) {
  nlohmann::json j;
  j["m"] = h.m;
  j["n"] = h.n;
  j["p"] = h.p;
  j["q"] = h.q;
  j["upper"] = nlohmann::json::array();
  for (auto [a, al] : h.upper) j["upper"].push_back({a, al});
  j["lower"] = nlohmann::json::array();
  for (auto [b, be] : h.lower) j["lower"].push_back({b, be});
  auto enc = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  j["strip"] = {enc(h.strip.a), enc(h.strip.b)};
  if (h.coefficient != 1.0) j["coefficient"] = h.coefficient;
  return j;
}

FoxH foxh_from_json(const nlohmann::json& j) {
  FoxH h;
  h.m = j.at("m").get<int>();
  h.n = j.at("n").get<int>();
  h.p = j.at("p").get<int>();
  h.q = j.at("q").get<int>();
  for (const auto& e : j.at("upper")) h.upper.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  for (const auto& e : j.at("lower")) h.lower.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  auto dec = [](const nlohmann::json& v) -> double {
    if (v.is_string()) return v.get<std::string>() == "-inf" ? -INFINITY : INFINITY;
    return v.get<double>();
  };
  h.strip.a = dec(j.at("strip").at(0));
  h.strip.b = dec(j.at("strip").at(1));
  h.coefficient = j.value("coefficient", 1.0);
  h.validate();
  return h;
}

double mellin_numeric(const Fn& f, double eta, const MellinStrip& strip, double scale) {
  if (!strip.contains(eta)) {
    std::ostringstream os;
    os << "mellin_numeric: eta=" << eta << " outside the convergence strip; the transform diverges";
    throw DomainError(os.str());
  }
  quad::Options o{1e-12, 1e-11, 8000};
  return quad::integrate_positive([&](double x) { return std::pow(x, eta - 1.0) * f(x); }, scale, o);
}

double mellin_convolve(const Fn& f1, const Fn& f2, double x) {
  if (!(x > 0.0)) throw DomainError("mellin_convolve: x must be positive");
  quad::Options o{1e-14, 1e-11, 8000};
  return quad::integrate_positive([&](double s) { return f1(x / s) * f2(s) / s; }, 1.0, o);
}

}  // namespace fracdiff::mellin
