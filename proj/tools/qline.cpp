#include "qline/exprparse.hpp"
#include "qline/fields.hpp"
#include "qline/geometry.hpp"
#include "qline/integration.hpp"
#include "qline/oscillator.hpp"
#include "qline/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qline;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

// Oscillator thresholds reported by the oscillator subcommand.
constexpr double kOscIdentityTol = 1e-12;
constexpr double kOscExponentMin = 3.5;
constexpr double kOscCoeffSlack = 15.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

// JSON with every floating-point number printed as %.12e, so output is byte-stable.
void dump(const json& j, std::string& out, int indent, int depth) {
  const std::string pad(indent * (depth + 1), ' '), close(indent * depth, ' ');
  const char* nl = indent ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += std::string("{") + nl;
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + json(it.key()).dump() + (indent ? ": " : ":");
        dump(it.value(), out, indent, depth + 1);
        out += std::string(i + 1 < j.size() ? "," : "") + nl;
      }
      out += close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      out += std::string("[") + nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump(j[i], out, indent, depth + 1);
        out += std::string(i + 1 < j.size() ? "," : "") + nl;
      }
      out += close + "]";
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? num(v) : "null";
      return;
    }
    default: out += j.dump(); return;
  }
}

std::string dump(const json& j) {
  std::string out;
  dump(j, out, 2, 0);
  return out + "\n";
}

struct Config {
  std::string q = "3/2", alpha = "1", alphabar = "1", beta = "1", betabar = "-1";
  std::string window = "-16..16";
  bool cyclic = false;
  long dim = 0;
  std::string units = "planck";
  std::string format = "text";
  std::string out;

  Params params() const {
    Params p;
    try {
      p.q = make_q(BigRat::parse(q));
      p.alpha = CplxRat::parse(alpha);
      p.alphabar = CplxRat::parse(alphabar);
      p.beta = CplxRat::parse(beta);
      p.betabar = CplxRat::parse(betabar);
    } catch (const std::exception& e) {
      throw UsageError(std::string("bad parameter: ") + e.what());
    }
    return p;
  }

  Window make_window(const Params& p) const {
    long lo = 0, hi = 0;
    if (dim > 0) {
      lo = -(dim - 1) / 2;
      hi = lo + dim - 1;
    } else {
      char tail = 0;
      if (std::sscanf(window.c_str(), "%ld..%ld%c", &lo, &hi, &tail) != 2)
        throw UsageError("--window expects lo..hi, got '" + window + "'");
    }
    try {
      return Window::make(lo, hi, cyclic ? Boundary::Cyclic : Boundary::Open, p.q,
                          units == "laboratory" ? Units::Laboratory : Units::Planck);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

void add_common(CLI::App* app, Config& c, bool with_window) {
  app->add_option("--q", c.q, "deformation parameter q > 1, exact rational")->capture_default_str();
  app->add_option("--alpha", c.alpha, "representation constant alpha")->capture_default_str();
  app->add_option("--alphabar", c.alphabar, "representation constant alphabar")->capture_default_str();
  app->add_option("--beta", c.beta, "derivation constant beta")->capture_default_str();
  app->add_option("--betabar", c.betabar, "derivation constant betabar")->capture_default_str();
  app->add_option("--out", c.out, "write the main output to this path");
  if (!with_window) return;
  app->add_option("--window", c.window, "lattice window lo..hi")->capture_default_str();
  app->add_flag("--cyclic", c.cyclic, "cyclic window instead of open");
  app->add_option("--dim", c.dim, "window of N sites centred on 0 (overrides --window)");
  app->add_option("--units", c.units, "planck or laboratory")
      ->check(CLI::IsMember({"planck", "laboratory"}))
      ->capture_default_str();
}

void emit(const Config& c, const std::string& payload) {
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << payload;
}

const char* kind_of(const expr::Value& v) {
  if (std::holds_alternative<AlgebraElement>(v)) return "algebra";
  if (std::holds_alternative<DoubledElement>(v)) return "doubled";
  return "form";
}

int cmd_eval(const Config& c, const std::string& text, bool eliminate) {
  Algebra alg(c.params());
  expr::Value v = expr::evaluate(expr::parse(text), alg, {eliminate});
  if (c.format == "json")
    emit(c, dump(json{{"expr", text}, {"kind", kind_of(v)}, {"value", expr::to_string(v)}}));
  else
    emit(c, expr::to_string(v) + "\n");
  return kExitPass;
}

int cmd_verify(const Config& c, const std::string& suite) {
  if (!is_suite(suite)) {
    std::string names;
    for (const auto& n : suite_names()) names += " " + n;
    throw UsageError("unknown suite '" + suite + "'; known: all" + names);
  }
  Params p = c.params();
  auto rs = run_suite(suite, p, c.make_window(p));
  std::size_t passed = 0;
  json arr = json::array();
  std::string text;
  for (const auto& r : rs) {
    passed += r.pass;
    arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"residual", r.residual}});
    text += std::string(r.pass ? "PASS " : "FAIL ") + r.name;
    if (!r.detail.empty()) text += "  [" + r.detail + "]";
    if (!r.pass) text += "  residual: " + r.residual;
    text += "\n";
  }
  text += std::to_string(passed) + "/" + std::to_string(rs.size()) + " checks passed\n";
  if (c.format == "json")
    emit(c, dump(json{{"suite", suite}, {"q", p.q.str()}, {"passed", passed}, {"total", rs.size()}, {"checks", arr}}));
  else
    emit(c, text);
  return passed == rs.size() ? kExitPass : kExitFail;
}

int cmd_dispersion(const Config& c, double m, double kmax, int samples) {
  DispersionCurve curve;
  DispersionSample peak{};
  try {
    curve = dispersion_scan(m, kmax, samples);
    peak = dispersion_peak(m, kmax);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(c, c.format == "json" ? curve.to_json() + "\n" : curve.to_csv());
  char buf[160];
  std::snprintf(buf, sizeof buf, "max E = %.6f at k = %.6f\n", peak.E, peak.k);
  (c.out.empty() ? std::cerr : std::cout) << buf;
  return kExitPass;
}

struct OscVerdict {
  bool identities = true, laplacian = true, scaling = true, coefficients = true;
  bool all() const { return identities && laplacian && scaling && coefficients; }
};

OscVerdict oscillator_verdict(const OscillatorReport& rep, bool include_cr) {
  OscVerdict v;
  const double t[3] = {1.0 / 6, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(6.0)};
  std::vector<double> prev;
  for (const auto& pt : rep.points) {
    const auto& id = pt.identities;
    if (std::max({id.cr, id.a_astar, id.a_h}) > kOscIdentityTol) v.identities = false;
    if (!include_cr && pt.laplacian > kOscIdentityTol) v.laplacian = false;
    const double z2 = pt.z * pt.z;
    std::vector<double> err{std::abs(pt.coefficients[0] - cplx(0.5))};
    for (int n = 1; n <= 3; ++n) err.push_back(std::abs(pt.coefficients[n] / z2 - t[n - 1]));
    if (!(err[0] <= kOscCoeffSlack * z2 * z2)) v.coefficients = false;
    for (int n = 1; n <= 3; ++n)
      if (!(err[n] <= kOscCoeffSlack * z2)) v.coefficients = false;
    for (std::size_t n = 0; n < prev.size(); ++n)
      if (!(err[n] < prev[n])) v.coefficients = false;
    prev = err;
  }
  if (rep.points.size() >= 2)
    v.scaling = rep.dressing_exponent >= kOscExponentMin && rep.number_exponent >= kOscExponentMin;
  return v;
}

int cmd_oscillator(const Config& c, std::vector<double> zs, long halfwidth, bool include_cr, const std::string& dress) {
  if (zs.empty()) zs = {0.2, 0.1, 0.05};
  for (double z : zs)
    if (!(z > 0 && z <= 0.25)) throw UsageError("each --z must lie in (0, 0.25]");
  Dressing d = dress == "full" ? Dressing::Full
               : dress == "nocubic" ? Dressing::NoCubic
               : dress == "bare" ? Dressing::Bare
                                 : Dressing::Undressed;
  OscillatorReport rep = oscillator_sweep(zs, halfwidth, include_cr, d);
  OscVerdict v = oscillator_verdict(rep, include_cr);
  json j = json::parse(rep.to_json());
  j["include_cr"] = include_cr;
  j["dressing"] = dress;
  j["verdict"] = {{"identities", v.identities}, {"laplacian", v.laplacian}, {"scaling", v.scaling},
                  {"coefficients", v.coefficients}, {"pass", v.all()}};
  emit(c, dump(j));

  std::ostream& log = c.out.empty() ? std::cerr : std::cout;
  char buf[256];
  log << "z           [b,b*]-1            [N,h]               c0                  c1/z^2              "
         "c2/z^2              c3/z^2\n";
  for (const auto& pt : rep.points) {
    const double z2 = pt.z * pt.z;
    std::snprintf(buf, sizeof buf, "%-11.4g %-19s %-19s %-19s %-19s %-19s %s\n", pt.z, num(pt.dressing).c_str(),
                  num(pt.number_commutator).c_str(), num(pt.coefficients[0].real()).c_str(),
                  num(pt.coefficients[1].real() / z2).c_str(), num(pt.coefficients[2].real() / z2).c_str(),
                  num(pt.coefficients[3].real() / z2).c_str());
    log << buf;
  }
  std::snprintf(buf, sizeof buf, "exponents: dressing %.3f, [N,h] %.3f; %.1f s\n", rep.dressing_exponent,
                rep.number_exponent, rep.total_seconds);
  log << buf << (v.all() ? "PASS" : "FAIL") << "\n";
  return v.all() ? kExitPass : kExitFail;
}

int cmd_distance(const Config& c, const std::string& metric) {
  Params p = c.params();
  Algebra alg(p);
  Window w = c.make_window(p);
  MetricSpec g = metric == "local" ? MetricSpec::local_real()
                 : metric == "hermitian" ? MetricSpec::hermitian()
                 : metric == "formal" ? MetricSpec::formal_non_real()
                                      : MetricSpec::non_local();
  const long lo = w.kmin + 3, hi = w.kmax - 3;
  if (lo > hi) throw UsageError("window too small for distances");
  json rows = json::array();
  std::string csv = "k,ds\n";
  for (long k = lo; k <= hi; ++k) {
    double ds = distance(alg, g, k, w);
    rows.push_back({{"k", k}, {"ds", ds}});
    csv += std::to_string(k) + "," + num(ds) + "\n";
  }
  if (c.format == "csv")
    emit(c, csv);
  else
    emit(c, dump(json{{"metric", metric_name(g.kind)}, {"q", p.q.str()}, {"units", c.units}, {"rows", rows}}));
  return kExitPass;
}

int cmd_rep(const Config& c, const std::string& text) {
  Params p = c.params();
  Algebra alg(p);
  Window w = c.make_window(p);
  expr::Value v = expr::evaluate(expr::parse(text), alg);
  if (auto* f = std::get_if<AlgebraElement>(&v)) {
    TruncatedRep r = rep_of(*f, w, p);
    emit(c, c.format == "csv" ? to_csv(r) : to_json(r) + "\n");
  } else if (auto* d = std::get_if<DoubledElement>(&v)) {
    DoubledRep r = rep_of(*d, w, p);
    if (c.format == "csv")
      emit(c, "# first\n" + to_csv(r.first) + "# second\n" + to_csv(r.second));
    else
      emit(c, "{\"first\": " + to_json(r.first) + ", \"second\": " + to_json(r.second) + "}\n");
  } else {
    throw UsageError("rep needs an algebra element, not a form");
  }
  return kExitPass;
}

int cmd_integrate(const Config& c, const std::string& text) {
  Params p = c.params();
  Algebra alg(p);
  Calculus calc(alg);
  expr::Value v = expr::evaluate(expr::parse(text), alg);
  auto* w = std::get_if<FormElement>(&v);
  if (!w) throw UsageError("integrate needs a 1-form, for example \"x*d(x)\"");
  FormElement f = w->degree() == 1 ? calc.to_frame_basis(*w) : *w;
  TraceResult r = integrate(calc, f, c.make_window(p));
  emit(c, dump(json::parse(r.to_json())));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qline: algebra, calculus and numerics on the q-deformed real line"};
  app.require_subcommand(1);
  Config cfg;

  std::string expr_text, suite = "all", metric;
  bool eliminate = false, include_cr = false;
  double m = 0, kmax = M_PI;
  int samples = 101;
  std::vector<double> zs;
  long halfwidth = 0;
  std::string dress = "full";

  auto* eval = app.add_subcommand("eval", "normal-order an expression and print its canonical form");
  eval->add_option("expr", expr_text, "expression")->required();
  eval->add_flag("--eliminate", eliminate, "rewrite d1 and db1 through the defect relations");
  add_common(eval, cfg, false);
  eval->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("suite", suite, "suite name or all")->capture_default_str();
  add_common(verify, cfg, true);
  verify->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* disp = app.add_subcommand("dispersion", "lattice dispersion curve E(k) with the phonon overlay");
  disp->add_option("--m", m, "mass")->capture_default_str();
  disp->add_option("--kmax", kmax, "upper end of the k range, at most pi")->capture_default_str();
  disp->add_option("--samples", samples, "number of samples")->capture_default_str();
  disp->add_option("--out", cfg.out, "write the curve to this path");
  disp->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* osc = app.add_subcommand("oscillator", "dressed oscillator sweep over z");
  osc->add_option("--z", zs, "small parameter, repeatable (default 0.2 0.1 0.05)");
  osc->add_option("--halfwidth", halfwidth, "window half-width in sites (default ceil(8/z))");
  osc->add_flag("--include-cr", include_cr, "use the Laplacian with c_R on the Laplacian-side check");
  osc->add_option("--dressing", dress, "full, nocubic, bare or undressed")
      ->check(CLI::IsMember({"full", "nocubic", "bare", "undressed"}))
      ->capture_default_str();
  osc->add_option("--out", cfg.out, "write the JSON report to this path");

  auto* dist = app.add_subcommand("distance", "metric distance ds(k) per lattice site");
  dist->add_option("metric", metric, "local, hermitian, formal or nonlocal")
      ->required()
      ->check(CLI::IsMember({"local", "hermitian", "formal", "nonlocal"}));
  add_common(dist, cfg, true);
  dist->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* rep = app.add_subcommand("rep", "matrix of an element on the truncated lattice");
  rep->add_option("expr", expr_text, "expression")->required();
  add_common(rep, cfg, true);
  rep->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* integ = app.add_subcommand("integrate", "trace of a 1-form over the window");
  integ->add_option("form", expr_text, "1-form expression")->required();
  add_common(integ, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cfg.format == "text" && (disp->parsed() || dist->parsed() || rep->parsed()))
    cfg.format = disp->parsed() ? "csv" : "json";

  try {
    if (eval->parsed()) return cmd_eval(cfg, expr_text, eliminate);
    if (verify->parsed()) return cmd_verify(cfg, suite);
    if (disp->parsed()) return cmd_dispersion(cfg, m, kmax, samples);
    if (osc->parsed()) return cmd_oscillator(cfg, zs, halfwidth, include_cr, dress);
    if (dist->parsed()) return cmd_distance(cfg, metric);
    if (rep->parsed()) return cmd_rep(cfg, expr_text);
    if (integ->parsed()) return cmd_integrate(cfg, expr_text);
  } catch (const expr::ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
