#pragma once

#include "qline/calculus.hpp"

#include <string>
#include <vector>

namespace qline {

struct TraceResult {
  bool divergent = false;
  CplxRat value;  // trace over the window; meaningful only when convergent
  // (radius, partial sum over [-radius, radius])
  std::vector<std::pair<long, cplx>> partials;
  Window window;

  std::string to_json() const;
};

// Radii of the partial-sum schedule and the growth ratio that flags divergence.
inline constexpr long kTraceRadii[] = {8, 16, 32};
inline constexpr double kDivergenceRatio = 1.5;

// Exact trace of a derivative-free element over the rows kmin..kmax.
CplxRat exact_trace(const Algebra& alg, const AlgebraElement& f, long kmin, long kmax);
TraceResult trace(const Algebra& alg, const AlgebraElement& f, const Window& w);

// Integral of a frame-basis 1-form: the trace of its coefficient, both components for the real calculus.
TraceResult integrate(const Calculus& calc, const FormElement& form, const Window& w);
// <f|g> = Tr(f* g)
TraceResult inner_product(const Algebra& alg, const AlgebraElement& f, const AlgebraElement& g, const Window& w);

// Tr([lambda_1, f_S]) over the window rows, with f_S the columns of f in [s_lo, s_hi] and lambda_1
// acting on the full lattice. Zero when the support stays clear of the window edge; otherwise
// the telescoping sum leaves a boundary term.
struct ExactnessTrace {
  long s_lo = 0, s_hi = 0;
  CplxRat value;
  bool pass = false;
};
ExactnessTrace exactness_trace_check(const Algebra& alg, const AlgebraElement& f, const Window& w, long s_lo,
                                     long s_hi);

}  // namespace qline
