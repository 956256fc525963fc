#include "qline/suite.hpp"

#include "qline/calculus.hpp"
#include "qline/fields.hpp"
#include "qline/geometry.hpp"
#include "qline/integration.hpp"
#include "qline/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace qline {

namespace {

using AE = AlgebraElement;
using Runner = std::function<std::vector<CheckReport>(const Algebra&, const Window&)>;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

CheckReport numeric(const std::string& name, double value, double tol) {
  CheckReport r{name, value <= tol, "residual " + fmt("%.12e", value), "0"};
  if (!r.pass) r.residual = fmt("%.12e", value);
  return r;
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<AE> samples(const Algebra& alg) {
  return {AE::x(), AE::lambda(), AE::x(-1), AE::lambda(-1), AE::x(2),
          alg.mul(AE::lambda(), AE::x()), AE::monomial(CplxRat(BigRat(1), BigRat(2)), -1, 3)};
}

std::vector<CheckReport> calculus_suite(const Algebra& alg, const Window&) {
  Calculus calc(alg);
  std::vector<CheckReport> out = calc.module_relations();
  const auto s = samples(alg);
  for (Flavor f : {Flavor::Plain, Flavor::Bar, Flavor::Real}) {
    CheckReport c = calc.check_centrality(calc.frame(f), s);
    out.push_back(c);
    for (const AE& g : s) out.push_back(calc.dirac_identity_check(g, f));
    for (std::size_t i = 0; i + 1 < s.size(); ++i) out.push_back(calc.leibniz_check(s[i], s[i + 1], f));
  }
  for (const AE& g : s) out.push_back(calc.check_reality(g));
  return out;
}

std::vector<CheckReport> exactness_suite(const Algebra& alg, const Window& w) {
  std::vector<CheckReport> out = exactness_witnesses(alg, w);
  for (const AE& f : samples(alg)) {
    auto r = exactness_trace_check(alg, f, w, w.kmin + 4, w.kmax - 4);
    out.push_back({"Tr[lambda1, " + f.str() + "] = 0", r.pass, "value " + r.value.str(), r.pass ? "0" : r.value.str()});
  }
  return out;
}

std::vector<CheckReport> connections_suite(const Algebra& alg, const Window&) {
  Calculus calc(alg);
  std::vector<CheckReport> out;
  append(out, connection_check(calc, ConnectionSpec::flat(alg), MetricSpec::formal_non_real()));
  append(out, connection_check(calc, ConnectionSpec::non_local(alg), MetricSpec::non_local()));
  append(out, connection_check(calc, ConnectionSpec::non_local_bar(alg), MetricSpec::non_local(Flavor::Bar)));
  append(out, connection_check(calc, ConnectionSpec::non_local_real(alg), MetricSpec::non_local(Flavor::Real)));
  for (const auto& c : {ConnectionSpec::flat(alg), ConnectionSpec::non_local(alg)}) {
    bool zero = curvature(calc, c).degree() == 2;
    out.push_back({"curvature " + c.name + " vanishes", zero, "", zero ? "0" : "nonzero"});
  }
  return out;
}

std::vector<CheckReport> geometry_suite(const Algebra& alg, const Window&) {
  Calculus calc(alg);
  std::vector<CheckReport> out = geometry_invariants(calc);
  auto nb = nonbilinearity_witness(calc, MetricSpec::non_local());
  const BigRat want = alg.q() * alg.q();
  out.push_back({"non-bilinearity factor q^2", nb.factor == want, nb.str(),
                 nb.factor == want ? "0" : (nb.factor - want).str()});
  return out;
}

std::vector<CheckReport> continuity_suite(const Algebra& alg, const Window&) {
  std::vector<CheckReport> out;
  for (const AE& psi : sample_polynomials(20, 17)) {
    out.push_back(verify_continuity(alg, psi, BigRat(1)));
  }
  return out;
}

std::vector<CheckReport> nonlocal_continuity_suite(const Algebra& alg, const Window&) {
  std::vector<CheckReport> out;
  for (const AE& psi : sample_polynomials(20, 17)) {
    out.push_back(nonlocal_continuity(alg, psi, BigRat(1)));
  }
  return out;
}

std::vector<CheckReport> plane_wave_suite(const Algebra& alg, const Window& w) {
  std::vector<CheckReport> out;
  for (double k : {0.3, M_PI / 2, 2 * M_PI}) {
    auto r = plane_wave_identity(alg, k, w);
    std::string at = " at k = " + fmt("%.6f", k);
    out.push_back(numeric("e1 plane wave" + at, r.e1_residual, 1e-12));
    out.push_back(numeric("eb1 plane wave" + at, r.e1bar_residual, 1e-12));
  }
  auto curve = dispersion_scan(0.0, M_PI, 101);
  auto top = std::max_element(curve.samples.begin(), curve.samples.end(),
                              [](const auto& a, const auto& b) { return a.E < b.E; });
  out.push_back(numeric("dispersion maximum E = 1", std::abs(top->E - 1.0), 1e-12));
  out.push_back(numeric("dispersion maximum at k = pi/2", std::abs(top->k - M_PI / 2), 1e-12));
  return out;
}

std::vector<CheckReport> integration_suite(const Algebra& alg, const Window& w) {
  Calculus calc(alg);
  std::vector<CheckReport> out;
  auto dx = integrate(calc, calc.differential(AE::x(), Flavor::Plain), w);
  bool ok = !dx.divergent && dx.value.is_zero();
  out.push_back({"integral of dx", ok, "value " + dx.value.str(), ok ? "0" : dx.value.str()});
  // L^-1 dx = q x theta: partial traces are exactly the geometric sums of q^{k+1}
  FormElement g = calc.to_frame_basis(FormElement::one_form(AE::lambda(-1), Basis::Dx));
  auto f = integrate(calc, g, w);
  bool geo = f.divergent;
  std::string detail = f.divergent ? "divergent;" : "not flagged divergent;";
  for (long R : kTraceRadii) {
    BigRat want;
    for (long k = -R; k <= R; ++k) want += qpow(alg.q(), k + 1);
    CplxRat got = exact_trace(alg, g.plain(), -R, R);
    if (got != CplxRat(want)) geo = false;
    detail += " S_" + std::to_string(R) + " = " + fmt("%.12e", got.re().to_double());
  }
  out.push_back({"integral of L^-1 dx diverges geometrically", geo, detail, geo ? "0" : detail});
  return out;
}

const std::map<std::string, Runner>& grouped() {
  static const std::map<std::string, Runner> m = {
      {"calculus", calculus_suite},       {"exactness", exactness_suite},
      {"connections", connections_suite}, {"geometry", geometry_suite},
      {"continuity", continuity_suite},   {"nonlocal_continuity", nonlocal_continuity_suite},
      {"plane_waves", plane_wave_suite},  {"integration", integration_suite},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = relation_names();
    for (const char* g : {"calculus", "exactness", "connections", "geometry", "continuity", "nonlocal_continuity",
                          "plane_waves", "integration"})
      n.push_back(g);
    return n;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<CheckReport> run_suite(const std::string& name, const Params& p, const Window& w) {
  if (!is_suite(name)) throw std::invalid_argument("unknown suite '" + name + "'");
  Algebra alg(p);
  if (name == "all") {
    std::vector<CheckReport> out;
    for (const auto& n : suite_names()) {
      auto part = run_suite(n, p, w);
      for (auto& r : part) r.name = n + ": " + r.name;
      append(out, std::move(part));
    }
    return out;
  }
  auto it = grouped().find(name);
  if (it != grouped().end()) return it->second(alg, w);
  return {verify_relation(alg, name)};
}

std::vector<AlgebraElement> sample_polynomials(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6), deg(0, 3), nterms(1, 3);
  std::vector<AE> out;
  while (static_cast<int>(out.size()) < count) {
    AE f;
    for (long t = nterms(rng); t > 0; --t) {
      long n = num(rng);
      f += AE::monomial(CplxRat(BigRat(n == 0 ? 1 : n, den(rng))), 0, deg(rng));
    }
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

}  // namespace qline
