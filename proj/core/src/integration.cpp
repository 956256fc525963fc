#include "qline/integration.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace qline {

namespace {

void require_derivative_free(const AlgebraElement& f) {
  if (!f.derivative_free()) throw std::domain_error("trace needs a derivative-free element; eliminate first");
}

// Matrix entry <row| f |col> of a derivative-free element: L^a x^b |k> = q^{bk} |k + a>.
CplxRat entry(const Algebra& alg, const AlgebraElement& f, long row, long col) {
  CplxRat s;
  for (const auto& [e, c] : f.terms())
    if (e.a == row - col) s += c * CplxRat(qpow(alg.q(), e.b * col));
  return s;
}

}  // namespace

CplxRat exact_trace(const Algebra& alg, const AlgebraElement& f, long kmin, long kmax) {
  require_derivative_free(f);
  CplxRat s;
  for (const auto& [e, c] : f.terms()) {
    if (e.a != 0) continue;
    for (long k = kmin; k <= kmax; ++k) s += c * CplxRat(qpow(alg.q(), e.b * k));
  }
  return s;
}

TraceResult trace(const Algebra& alg, const AlgebraElement& f, const Window& w) {
  require_derivative_free(f);
  TraceResult r;
  r.window = w;
  long margin = f.reach();
  r.value = exact_trace(alg, f, w.kmin + margin, w.kmax - margin);
  for (long R : kTraceRadii) r.partials.push_back({R, exact_trace(alg, f, -R, R).to_complex()});
  bool growing = true;
  for (std::size_t i = 1; i < r.partials.size(); ++i) {
    double prev = std::abs(r.partials[i - 1].second), cur = std::abs(r.partials[i].second);
    growing = growing && cur > 0 && (prev == 0 || cur > kDivergenceRatio * prev);
  }
  r.divergent = growing;
  return r;
}

TraceResult integrate(const Calculus& calc, const FormElement& form, const Window& w) {
  if (form.degree() == 2) {
    TraceResult r;
    r.window = w;
    for (long R : kTraceRadii) r.partials.push_back({R, 0.0});
    return r;
  }
  if (form.degree() != 1) throw std::invalid_argument("integrate needs a 1-form");
  if (!is_frame(form.basis())) throw std::invalid_argument("integrate needs a frame basis; convert dx forms first");
  if (form.doubled()) return trace(calc.algebra(), form.pair().first + form.pair().second, w);
  return trace(calc.algebra(), form.plain(), w);
}

TraceResult inner_product(const Algebra& alg, const AlgebraElement& f, const AlgebraElement& g, const Window& w) {
  return trace(alg, alg.mul(alg.star(f), g), w);
}

ExactnessTrace exactness_trace_check(const Algebra& alg, const AlgebraElement& f, const Window& w, long s_lo,
                                     long s_hi) {
  require_derivative_free(f);
  if (s_lo > s_hi || !w.contains(s_lo) || !w.contains(s_hi))
    throw std::out_of_range("support must be a nonempty range inside the window");
  const AlgebraElement lam = alg.lambda1();
  auto in_s = [&](long k) { return k >= s_lo && k <= s_hi; };
  auto fs = [&](long row, long col) { return in_s(col) ? entry(alg, f, row, col) : CplxRat(); };
  ExactnessTrace r{s_lo, s_hi, CplxRat(), false};
  for (long k = w.kmin; k <= w.kmax; ++k) {
    for (const auto& [e, c] : lam.terms()) {
      // (lambda f_S)_kk through |k - a>, (f_S lambda)_kk through |k + a>
      r.value += entry(alg, lam, k, k - e.a) * fs(k - e.a, k);
      r.value -= fs(k, k + e.a) * entry(alg, lam, k + e.a, k);
    }
  }
  r.pass = r.value.is_zero();
  return r;
}

std::string TraceResult::to_json() const {
  nlohmann::json j;
  if (divergent) {
    j["value"] = "divergent";
  } else {
    cplx v = value.to_complex();
    j["value"] = {{"re", v.real()}, {"im", v.imag()}, {"exact", value.str()}};
  }
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& [R, v] : partials) ps.push_back({{"radius", R}, {"re", v.real()}, {"im", v.imag()}});
  j["partials"] = ps;
  j["window"] = {window.kmin, window.kmax};
  return j.dump();
}

}  // namespace qline
