// One PASS/FAIL line per acceptance criterion. Arguments select criteria by id (1..9, 6a, 6b, 6c);
// "6" selects all three oscillator parts and no argument runs everything.

#include "qline/fields.hpp"
#include "qline/geometry.hpp"
#include "qline/integration.hpp"
#include "qline/oscillator.hpp"
#include "qline/suite.hpp"

#include "gauge_fixture.hpp"
#include "random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace qline;
using namespace qline::testing;
using AE = AlgebraElement;

namespace {

// Pinned tolerances.
constexpr double kRepTol = 1e-12;          // relative, interior rows
constexpr double kDistanceTol = 1e-12;
constexpr double kStencilTol = 1e-12;
constexpr double kPlaneWaveTol = 1e-12;
constexpr double kIdentityTol = 1e-12;     // oscillator canonical identities
constexpr double kExponentMin = 3.5;
constexpr double kCoeffSlack = 15.0;       // |c0 - 1/2| <= 15 z^4, |cn/z^2 - tn| <= 15 z^2
constexpr double kSweepSeconds = 180.0;
constexpr double kGaugeTol = 1e-10;        // relative
constexpr double kRatioTol = 1e-9;         // partial-sum ratio against q at radius 32
constexpr int kRandomWords = 100;
constexpr int kGaugeTrials = 10;

const std::vector<double> kZs = {0.2, 0.1, 0.05};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string e(double v) { return fmt("%.3e", v); }

const OscillatorReport& sweep(Dressing d) {
  static std::map<Dressing, OscillatorReport> cache;
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, oscillator_sweep(kZs, 0, false, d)).first;
  return it->second;
}

Outcome exact_identities() {
  Outcome o{true, ""};
  for (const BigRat& q : {BigRat(3, 2), BigRat(2), BigRat(10, 9)}) {
    Params p;
    p.q = q;
    auto rs = run_suite("all", p, Window::make(-16, 16, Boundary::Open, q));
    std::map<std::string, int> failed;
    std::size_t passed = 0;
    for (const auto& r : rs) {
      if (r.pass) ++passed;
      else ++failed[r.name.substr(0, r.name.find(':'))];
    }
    o.detail += "q=" + q.str() + ": " + std::to_string(passed) + "/" + std::to_string(rs.size());
    for (const auto& [suite, n] : failed) o.detail += " [" + suite + " fails " + std::to_string(n) + "]";
    o.detail += "; ";
    if (!failed.empty()) o.pass = false;
  }
  return o;
}

Outcome representation_crosscheck() {
  Params p;
  p.q = BigRat(3, 2);
  Algebra alg(p);
  Window w = Window::make(-16, 16, Boundary::Open, p.q);
  std::mt19937 rng(2024);
  double worst = 0;
  int empty = 0;
  for (int i = 0; i < kRandomWords; ++i) {
    Word word = rand_word(rng, WordKind::Mixed, 6);
    // words mixing d1 and db1 have no exchange rule; those are normal-ordered through the defect relations
    bool mixed = std::any_of(word.begin(), word.end(), [](const Factor& f) { return f.gen == Gen::D1; }) &&
                 std::any_of(word.begin(), word.end(), [](const Factor& f) { return f.gen == Gen::Db1; });
    TruncatedRep sym = rep_of(alg.normal_order(word, mixed ? OrderMode::Eliminate : OrderMode::Strict), w, p);
    TruncatedRep mat = rep_of_word(word, w, p);
    if (std::max(sym.margin, mat.margin) * 2 >= w.dim()) ++empty;
    worst = std::max(worst, row_restricted_residual(sym, mat, true));
  }
  return {worst <= kRepTol && empty == 0,
          std::to_string(kRandomWords) + " words, worst relative residual " + e(worst) +
              (empty ? ", " + std::to_string(empty) + " without interior rows" : "")};
}

Outcome distances() {
  Params p;
  Algebra alg(p);
  const double q = p.q.to_double(), z = alg.z().to_double();
  Window planck = Window::make(-16, 16, Boundary::Open, p.q, Units::Planck);
  Window lab = Window::make(-16, 16, Boundary::Open, p.q, Units::Laboratory);
  double local_p = 0, local_l = 0, herm = 0, herm_value = 0;
  for (long k = -4; k <= 4; ++k) {
    local_p = std::max(local_p, std::abs(distance(alg, MetricSpec::local_real(), k, planck) - 1.0));
    local_l = std::max(local_l, std::abs(distance(alg, MetricSpec::local_real(), k, lab) - z));
    herm_value = distance(alg, MetricSpec::hermitian(), k, planck);
    herm = std::max(herm, std::abs(herm_value - q));
  }
  bool pass = local_p <= kDistanceTol && local_l <= kDistanceTol && herm <= kDistanceTol;
  return {pass, "local planck err " + e(local_p) + ", local laboratory err " + e(local_l) + ", hermitian ds = " +
                    fmt("%.12f", herm_value) + " vs q = " + fmt("%.12f", q)};
}

Outcome raising_map() {
  Params p;
  p.q = BigRat(2);
  Algebra alg(p);
  Window w = Window::make(-16, 16, Boundary::Open, p.q);
  double worst = 0;
  int ok = 0;
  std::string sample;
  for (long k = -4; k <= 4; ++k) {
    auto r = raising_map_defect(alg, k, w);
    worst = std::max(worst, r.relative_error);
    if (r.relative_error <= kStencilTol) ++ok;
    if (k == 0)
      sample = "k=0: |k+1> computed " + fmt("%.6g", r.computed_k1.real()) + " reference " +
               fmt("%.6g", r.reference_k1.real());
  }
  return {ok == 9, std::to_string(ok) + "/9 k match, worst relative error " + e(worst) + "; " + sample};
}

Outcome plane_waves() {
  Params p;
  Algebra alg(p);
  Window w = Window::make(-16, 16, Boundary::Open, p.q);
  double worst = 0;
  for (double k : {0.3, M_PI / 2, 2 * M_PI}) {
    auto r = plane_wave_identity(alg, k, w);
    worst = std::max({worst, r.e1_residual, r.e1bar_residual});
  }
  auto curve = dispersion_scan(0.0, M_PI, 101);
  auto top = *std::max_element(curve.samples.begin(), curve.samples.end(),
                               [](const auto& a, const auto& b) { return a.E < b.E; });
  double e0 = 0;
  for (double m : {0.0, 0.5, 1.3}) e0 = std::max(e0, std::abs(dispersion_scan(m, 1.0, 3).samples[0].E - m));
  bool pass = worst <= kPlaneWaveTol && std::abs(top.E - 1) <= kPlaneWaveTol &&
              std::abs(top.k - M_PI / 2) <= kPlaneWaveTol && e0 <= kPlaneWaveTol;
  return {pass, "identity residual " + e(worst) + ", max E " + fmt("%.12f", top.E) + " at k " +
                    fmt("%.12f", top.k) + ", |E(0) - m| " + e(e0)};
}

Outcome oscillator_identities() {
  const auto& rep = sweep(Dressing::Full);
  double worst = 0;
  for (const auto& pt : rep.points)
    worst = std::max({worst, pt.identities.cr, pt.identities.a_astar, pt.identities.a_h});
  bool pass = worst <= kIdentityTol && rep.total_seconds <= kSweepSeconds;
  return {pass, "worst cr/a-a*/a-h residual " + e(worst) + ", sweep " + fmt("%.1f", rep.total_seconds) + " s"};
}

Outcome oscillator_scaling() {
  const auto& rep = sweep(Dressing::Full);
  std::string res;
  for (const auto& pt : rep.points) res += " " + e(pt.dressing);
  bool pass = rep.dressing_exponent >= kExponentMin && rep.number_exponent >= kExponentMin;
  return {pass, "dressing exponent " + fmt("%.3f", rep.dressing_exponent) + ", [N,h] exponent " +
                    fmt("%.3f", rep.number_exponent) + ", [b,b*]-1 residuals" + res};
}

Outcome oscillator_coefficients() {
  const auto& rep = sweep(Dressing::Full);
  const double t[3] = {1.0 / 6, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(6.0)};
  bool pass = true;
  std::string d;
  std::vector<double> prev;
  for (const auto& pt : rep.points) {
    const double z = pt.z, z2 = z * z;
    std::vector<double> err;
    err.push_back(std::abs(pt.coefficients[0] - cplx(0.5)));
    for (int n = 1; n <= 3; ++n) err.push_back(std::abs(pt.coefficients[n] / z2 - t[n - 1]));
    if (!(err[0] <= kCoeffSlack * z2 * z2)) pass = false;
    for (int n = 1; n <= 3; ++n)
      if (!(err[n] <= kCoeffSlack * z2)) pass = false;
    if (!prev.empty())
      for (int n = 0; n < 4; ++n)
        if (!(err[n] < prev[n])) pass = false;
    prev = err;
    d += "z=" + fmt("%.2f", z) + " c0=" + fmt("%.4g", pt.coefficients[0].real()) + " |c0-1/2|=" + e(err[0]) + "; ";
  }
  return {pass, d};
}

Outcome yang_mills_criterion() {
  Algebra alg(BigRat(3, 2));
  double act = 0, cov = 0;
  for (int rank : {1, 2, 3}) {
    GaugeConfig c = random_gauge_config(alg, rank, 300 + rank, true);
    auto r = gauge_invariance(alg, c, kGaugeTrials, 77 + rank);
    act = std::max(act, r.max_action_residual);
    cov = std::max(cov, r.max_covariance_residual);
  }
  Params p;
  auto v = vacuum_vectors(Window::make(-8, 8, Boundary::Cyclic, p.q), p);
  bool pass = act <= kGaugeTol && cov <= kGaugeTol && v.residual == 0.0 && v.residual_bar == 0.0;
  return {pass, "S_YM relative change " + e(act) + ", covariance " + e(cov) + ", vacuum residual " + e(v.residual) +
                    "/" + e(v.residual_bar)};
}

Outcome integration_criterion() {
  bool pass = true;
  std::string d;
  for (const BigRat& q : {BigRat(3, 2), BigRat(2)}) {
    Algebra alg(q);
    Calculus calc(alg);
    Window w = Window::make(-16, 16, Boundary::Open, q);
    for (Flavor f : {Flavor::Plain, Flavor::Bar, Flavor::Real}) {
      auto r = integrate(calc, calc.differential(AE::x(), f), w);
      if (r.divergent || !r.value.is_zero()) pass = false;
    }
    FormElement g = calc.to_frame_basis(FormElement::one_form(AE::lambda(-1), Basis::Dx));
    auto r = integrate(calc, g, w);
    const AE& coeff = g.plain();
    double ratio = (exact_trace(alg, coeff, -32, 32) / exact_trace(alg, coeff, -31, 31)).re().to_double();
    double err = std::abs(ratio / q.to_double() - 1);
    if (!r.divergent || err > kRatioTol) pass = false;
    d += "q=" + q.str() + ": S_32/S_31 = " + fmt("%.12f", ratio) + "; ";
  }
  return {pass, "integral of dx is 0 in every calculus; " + d};
}

Outcome falsification() {
  Algebra alg(BigRat(3, 2));
  Calculus calc(alg);
  std::string d;
  bool pass = true;
  auto control = [&](const std::string& name, bool baseline, bool perturbed) {
    bool flips = baseline && !perturbed;
    if (!flips) pass = false;
    d += name + (flips ? " flips" : (baseline ? " stays green" : " baseline already red")) + "; ";
  };

  bool base = all_pass(connection_check(calc, ConnectionSpec::non_local(alg), MetricSpec::non_local()));
  ConnectionSpec shifted = ConnectionSpec::non_local(alg);
  shifted.omega = DoubledElement::embed(AE::lambda() + AE(1));
  control("omega -> L+1", base, all_pass(connection_check(calc, shifted, MetricSpec::non_local())));

  ConnectionSpec flip = ConnectionSpec::non_local(alg);
  flip.S = CplxRat(BigRat(1, 2));
  control("S -> 1/2", base, all_pass(connection_check(calc, flip, MetricSpec::non_local())));

  // symbolic canonical forms at q checked against matrices built at a perturbed q
  Params p, off;
  off.q = BigRat(8, 5);
  Window w = Window::make(-16, 16, Boundary::Open, p.q), w_off = Window::make(-16, 16, Boundary::Open, off.q);
  Word word = {{Gen::X, 1}, {Gen::Lambda, 1}};
  AE xl = alg.normal_order(word);
  bool rep_base = row_restricted_residual(rep_of(xl, w, p), rep_of_word(word, w, p), true) <= kRepTol;
  bool rep_off = row_restricted_residual(rep_of(xl, w_off, off), rep_of_word(word, w_off, off), true) <= kRepTol;
  control("q in x*L -> 8/5", rep_base, rep_off);

  auto scaling_pass = [](const OscillatorReport& r) {
    return r.dressing_exponent >= kExponentMin && r.number_exponent >= kExponentMin;
  };
  control("drop cubic term of b", scaling_pass(sweep(Dressing::Full)), scaling_pass(sweep(Dressing::NoCubic)));
  return {pass, d};
}

struct Criterion {
  std::string id, title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"1", "exact identity suites", exact_identities},
      {"2", "symbolic vs matrix representation", representation_crosscheck},
      {"3", "metric distances", distances},
      {"4", "raising-map defect stencil", raising_map},
      {"5", "plane waves and dispersion", plane_waves},
      {"6a", "oscillator identities and runtime", oscillator_identities},
      {"6b", "oscillator dressing scaling", oscillator_scaling},
      {"6c", "oscillator H|0> coefficients", oscillator_coefficients},
      {"7", "Yang-Mills gauge invariance and vacuum", yang_mills_criterion},
      {"8", "integration", integration_criterion},
      {"9", "falsification controls", falsification},
  };
  return list;
}

bool selected(const std::string& id, const std::vector<std::string>& want) {
  if (want.empty()) return true;
  for (const auto& w : want)
    if (w == id || (w.size() == 1 && id.size() == 2 && id[0] == w[0])) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> want(argv + 1, argv + argc);
  for (const auto& w : want) {
    bool known = false;
    for (const auto& c : criteria()) known = known || selected(c.id, {w});
    if (!known) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : criteria()) {
    if (!selected(c.id, want)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    all = all && o.pass;
    std::printf("%s %-3s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
