#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdiff/errors.hpp"
#include "fracdiff/laws.hpp"
#include "fracdiff/montecarlo.hpp"
#include "fracdiff/parallel.hpp"
#include "fracdiff/solvers.hpp"
#include "fracdiff/verify.hpp"

using namespace fracdiff;
using json = nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --param key=value store; every key must be read by the command or it is a usage error.
class Params {
 public:
  explicit Params(const std::vector<std::string>& raw) {
    for (const auto& kv : raw) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
      auto key = kv.substr(0, eq);
      if (map_.count(key)) throw UsageError("duplicate parameter '" + key + "'");
      map_[key] = kv.substr(eq + 1);
    }
  }

  bool has(const std::string& k) const { return map_.count(k) > 0; }

  std::string str(const std::string& k, const std::string& def) {
    used_.insert(k);
    auto it = map_.find(k);
    return it == map_.end() ? def : it->second;
  }
  std::string str(const std::string& k) {
    if (!has(k)) throw UsageError("missing required parameter '" + k + "'");
    return str(k, "");
  }
  double num(const std::string& k, double def) { return has(k) ? to_double(k, str(k)) : (used_.insert(k), def); }
  double num(const std::string& k) { return to_double(k, str(k)); }
  long long integer(const std::string& k, long long def) {
    double v = num(k, double(def));
    if (v != std::floor(v)) throw UsageError("parameter '" + k + "' must be an integer");
    return static_cast<long long>(v);
  }
  std::vector<double> list(const std::string& k, const std::string& def) {
    std::vector<double> out;
    std::stringstream ss(str(k, def));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(k, item));
    if (out.empty()) throw UsageError("parameter '" + k + "' is empty");
    return out;
  }

  void reject_unused() const {
    for (const auto& [k, v] : map_)
      if (!used_.count(k)) throw UsageError("unknown parameter '" + k + "' for this command");
  }

 private:
  std::map<std::string, std::string> map_;
  std::set<std::string> used_;

  static double to_double(const std::string& k, const std::string& s) {
    // Accept p/q so that nu=1/3 is exact enough.
    auto slash = s.find('/');
    try {
      std::size_t pos = 0;
      if (slash != std::string::npos) {
        double a = std::stod(s.substr(0, slash), &pos);
        if (pos != slash) throw std::invalid_argument(s);
        double b = std::stod(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
        return a / b;
      }
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("parameter '" + k + "' is not a number: '" + s + "'");
    }
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> linear_grid(double a, double b, long long n) {
  if (n < 1 || !(std::isfinite(a) && std::isfinite(b)) || (n > 1 && !(b > a)) || n > 10000000)
    throw DomainError("invalid grid: need nx >= 1 and xmin < xmax");
  std::vector<double> x(n);
  for (long long i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  if (n > 1) x.back() = b;
  return x;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

struct Config {
  std::string command;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

struct Row {
  double x, t, value;
  std::string method;
};

void write_rows(const Config& c, const std::vector<Row>& rows, bool with_method) {
  Output o(c.out);
  auto& os = o.os();
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j{{"x", r.x}, {"t", r.t}, {"value", r.value}};
      if (with_method) j["method"] = r.method;
      arr.push_back(j);
    }
    os << arr.dump(1) << "\n";
    return;
  }
  os << (with_method ? "x,t,value,method\n" : "x,t,value\n");
  for (const auto& r : rows) {
    os << fmt(r.x) << ',' << fmt(r.t) << ',' << fmt(r.value);
    if (with_method) os << ',' << r.method;
    os << '\n';
  }
}

std::vector<double> x_values(Params& p, double xmin_def, double xmax_def, long long nx_def) {
  if (p.has("x")) return p.list("x", "");
  double a = p.num("xmin", xmin_def), b = p.num("xmax", xmax_def);
  return linear_grid(a, b, p.integer("nx", nx_def));
}

int cmd_tabulate(const Config& c) {
  Params p(c.params);
  const std::string density = p.str("density");
  std::function<double(double, double)> eval;
  std::string method;

  if (density == "gg") {
    laws::GGLaw law{p.num("gamma", 1.0), p.num("mu", 1.0)};
    law.validate();
    bool tilde = p.str("tilde", "0") == "1";
    eval = [law, tilde](double x, double t) { return laws::gg_density(law, x, t, tilde); };
    method = "closed";
  } else if (density == "h" || density == "l") {
    double nu = p.num("nu");
    auto m = laws::method_from_string(p.str("method", "auto"));
    bool is_h = density == "h";
    method = laws::to_string(is_h ? laws::resolve_h_method(nu, m) : laws::resolve_l_method(nu, m));
    eval = [=](double x, double t) { return is_h ? laws::h_density(nu, x, t, m) : laws::l_density(nu, x, t, m); };
  } else if (density == "f_ratio") {
    double nu = p.num("nu");
    eval = [nu](double x, double t) { return laws::ratio_law_density(nu, x, t); };
    method = "closed";
  } else if (density == "f_nu_beta") {
    double nu = p.num("nu"), beta = p.num("beta");
    eval = [=](double x, double t) { return laws::f_nu_beta(nu, beta, x, t); };
    method = "quadrature";
  } else if (density == "g_nu_beta") {
    double mu = p.num("mu"), nu = p.num("nu"), beta = p.num("beta");
    auto route = solvers::route_from_string(p.str("route", "foxh"));
    method = solvers::to_string(route);
    eval = [=](double x, double t) { return solvers::g_nu_beta_density(mu, nu, beta, x, t, route); };
  } else if (density == "u_theorem1") {
    double gamma = p.num("gamma", 1.0), mu = p.num("mu"), nu = p.num("nu");
    eval = [=](double x, double t) { return solvers::subordinated_solution(gamma, mu, nu, x, t); };
    method = "quadrature";
  } else if (density == "compose") {
    double gamma = p.num("gamma", 1.0);
    auto mu = laws::MuVector::parse(p.str("mu_vector"));
    mu.validate();
    eval = [=](double x, double t) { return laws::compose_density(gamma, mu, x, t); };
    method = "reduction";
  } else {
    throw DomainError("unknown density '" + density + "'");
  }

  auto xs = x_values(p, 0.1, 3.0, 30);
  auto ts = p.list("t", "1");
  p.reject_unused();
  for (double t : ts)
    if (!(t > 0.0)) throw DomainError("t must be positive");

  std::vector<Row> rows(xs.size() * ts.size());
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    double t = ts[i / xs.size()], x = xs[i % xs.size()];
    double v = eval(x, t);
    if (!std::isfinite(v)) throw ConvergenceError("non-finite density at x=" + fmt(x) + ", t=" + fmt(t));
    // Quadrature noise around true zeros.
    if (v < 0.0 && v > -1e-14) v = 0.0;
    rows[i] = {x, t, v, method};
  });
  write_rows(c, rows, true);
  return 0;
}

solvers::Fn read_m0_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read m0_csv '" + path + "'");
  std::vector<double> xs, ys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("m0_csv: expected node,value rows");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      ys.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      if (xs.empty()) continue;  // header
      throw DomainError("m0_csv: bad row '" + line + "'");
    }
  }
  if (xs.size() < 4) throw DomainError("m0_csv: need at least four nodes");
  auto g = std::make_shared<frac::GridFunction>(xs, ys);
  return [g](double x) { return (*g)(x); };
}

int cmd_solve_bvp(const Config& c) {
  if (c.out.empty()) throw UsageError("solve-bvp needs --out (the eigen-system goes to <out>.eigen.json)");
  Params p(c.params);
  solvers::BVPSpec spec;
  spec.gamma = p.num("gamma", 1.0);
  spec.mu = p.num("mu", 1.0);
  spec.nu = p.num("nu", 1.0);
  spec.n_terms = static_cast<int>(p.integer("n_terms", 50));
  if (p.has("m0_csv")) {
    spec.initial_datum = read_m0_csv(p.str("m0_csv"));
  } else {
    const std::string m0 = p.str("m0", "one");
    if (m0 == "one") {
      spec.initial_datum = [](double) { return 1.0; };
    } else if (m0 == "first-mode") {
      auto e = solvers::eigen_system(spec.gamma, spec.mu, 1);
      const double g = spec.gamma, mu = spec.mu;
      spec.initial_datum = [e, g, mu](double x) { return solvers::weight(g, mu, x) * e->eigenfunction(0, x); };
    } else if (m0 == "bump") {
      spec.initial_datum = [](double x) { return 16.0 * x * x * (1.0 - x) * (1.0 - x); };
    } else {
      throw DomainError("unsupported m0 preset '" + m0 + "' (one, first-mode, bump)");
    }
  }
  auto xs = x_values(p, 0.05, 0.95, 19);
  auto ts = p.list("t", "0,0.5,1");
  p.reject_unused();
  spec.validate();

  solvers::SturmLiouvilleSolution sol(spec);
  std::vector<Row> rows(xs.size() * ts.size());
  parallel_for(static_cast<int>(rows.size()), [&](int i) {
    double t = ts[i / xs.size()], x = xs[i % xs.size()];
    rows[i] = {x, t, sol.value(x, t), ""};
  });
  write_rows(c, rows, false);

  const auto& e = sol.eigen();
  json side{{"order", e.order()},
            {"zeros", e.zeros},
            {"norms", e.norms},
            {"coefficients", sol.coefficients()},
            {"initial_l2_error", sol.initial_l2_error()},
            {"tail_estimate", sol.tail_estimate()}};
  std::ofstream f(c.out + ".eigen.json");
  if (!f) throw UsageError("cannot write " + c.out + ".eigen.json");
  f << side.dump(1) << "\n";
  return 0;
}

int cmd_sample(const Config& c) {
  Params p(c.params);
  const std::string law = p.str("law");
  const auto n = p.integer("n", 10000);
  if (n < 1) throw DomainError("n must be positive");
  const double t = p.num("t", 1.0);
  mc::RngSpec spec{c.seed, static_cast<std::uint64_t>(p.integer("stream", 0))};
  mc::Sampler s;
  if (law == "G" || law == "E") {
    double mu = p.num("mu");
    bool g = law == "G";
    s = [=](mc::Rng& r) { return g ? mc::sample_G(mu, t, r) : mc::sample_E(mu, t, r); };
  } else if (law == "h" || law == "l") {
    double nu = p.num("nu");
    bool h = law == "h";
    s = [=](mc::Rng& r) { return h ? mc::sample_subordinator(nu, t, r) : mc::sample_inverse(nu, t, r); };
  } else if (law == "f_nu_beta" || law == "g_nu_beta") {
    double nu = p.num("nu"), beta = p.num("beta");
    if (law == "f_nu_beta") {
      s = [=](mc::Rng& r) { return mc::sample_f_nu_beta(nu, beta, t, r); };
    } else {
      double mu = p.num("mu");
      s = [=](mc::Rng& r) { return mc::sample_G(mu, mc::sample_f_nu_beta(nu, beta, t, r), r); };
    }
  } else if (law == "chain" || law == "chain_inverse") {
    mc::CompositionChain ch{law == "chain" ? mc::ChainKind::subordinator : mc::ChainKind::inverse,
                            laws::MuVector::parse(p.str("mu_vector")), t};
    ch.validate();
    s = [ch](mc::Rng& r) { return mc::sample_chain(ch, r); };
  } else {
    throw DomainError("unknown law '" + law + "' (G, E, h, l, f_nu_beta, g_nu_beta, chain, chain_inverse)");
  }
  p.reject_unused();
  auto v = mc::draw_parallel(s, static_cast<std::size_t>(n), spec);
  Output o(c.out);
  if (c.format == "json") {
    o.os() << json{{"law", law}, {"seed", c.seed}, {"stream", spec.stream_id}, {"values", v}}.dump() << "\n";
  } else {
    o.os() << "value\n";
    for (double x : v) o.os() << fmt(x) << '\n';
  }
  return 0;
}

int cmd_verify(const Config& c) {
  Params p(c.params);
  verify::Options opt;
  opt.seed = c.seed;
  opt.filter = p.str("suite", "");
  opt.tol_scale = p.num("tol_scale", 1.0);
  opt.n_draws = static_cast<std::size_t>(p.integer("n_draws", 100000));
  p.reject_unused();
  if (opt.tol_scale < 0.0) throw DomainError("tol_scale must be non-negative");
  if (opt.n_draws < 1000) throw DomainError("n_draws must be at least 1000");
  auto rep = verify::run(opt);
  Output o(c.out);
  if (c.format == "csv") {
    o.os() << "name,statistic,threshold,pass\n";
    for (const auto& t : rep.tests)
      o.os() << t.name << ',' << fmt(t.statistic) << ',' << fmt(t.threshold) << ',' << (t.pass ? "true" : "false")
             << '\n';
  } else {
    o.os() << rep.to_json().dump(1) << "\n";
  }
  for (const auto& t : rep.tests)
    if (!t.pass) std::cerr << "FAIL " << t.name << " statistic " << t.statistic << " threshold " << t.threshold
                           << (t.error.empty() ? "" : " (" + t.error + ")") << "\n";
  return rep.pass() ? 0 : 1;
}

int cmd_moments(const Config& c) {
  Params p(c.params);
  double mu = p.num("mu", 1.0), nu = p.num("nu"), beta = p.num("beta"), r = p.num("r", 1.0);
  double tol = p.num("tol", 0.05);
  auto ts = p.list("t", "1,2,4,8,16");
  auto n = p.integer("n", 100000);
  auto stream = p.integer("stream", 0);
  p.reject_unused();
  if (n < 1) throw DomainError("n must be positive");
  auto fit = mc::moment_scaling_check(mu, nu, beta, r, ts, static_cast<std::size_t>(n),
                                      {c.seed, static_cast<std::uint64_t>(stream)});
  const double expected = beta * r / nu;
  const bool pass = std::abs(fit.slope - expected) <= tol;
  Output o(c.out);
  if (c.format == "json") {
    o.os() << json{{"mu", mu},         {"nu", nu},     {"beta", beta},         {"r", r},
                   {"slope", fit.slope}, {"expected", expected}, {"tol", tol}, {"pass", pass},
                   {"log_t", fit.log_t}, {"log_moment", fit.log_moment}}
                  .dump(1)
           << "\n";
  } else {
    o.os() << "log_t,log_moment\n";
    for (std::size_t i = 0; i < fit.log_t.size(); ++i) o.os() << fmt(fit.log_t[i]) << ',' << fmt(fit.log_moment[i]) << '\n';
    std::cerr << "slope " << fit.slope << " expected " << expected << (pass ? " PASS" : " FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracdiff: laws, operators and solvers for fractional diffusion"};
  Config c;
  bool format_given = false;
  app.add_option("--command", c.command, "tabulate | solve-bvp | sample | verify | moments")
      ->required()
      ->check(CLI::IsMember({"tabulate", "solve-bvp", "sample", "verify", "moments"}));
  app.add_option("--param", c.params, "key=value, repeatable");
  app.add_option("--seed", c.seed, "RNG seed")->default_val(0);
  app.add_option("--out", c.out, "output file (stdout when omitted)");
  app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->each([&](const std::string&) {
    format_given = true;
  });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (c.command == "verify" && !format_given) c.format = "json";
  if (c.command == "moments" && !format_given) c.format = "json";

  try {
    if (c.command == "tabulate") return cmd_tabulate(c);
    if (c.command == "solve-bvp") return cmd_solve_bvp(c);
    if (c.command == "sample") return cmd_sample(c);
    if (c.command == "verify") return cmd_verify(c);
    return cmd_moments(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MembershipError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedMethod& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
}
