#pragma once

#include "qline/calculus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qline {

enum class MetricKind { LocalReal, Hermitian, FormalNonReal, NonLocal };

const char* metric_name(MetricKind k);

// A metric fixed by its value on one declared basis pair. Arguments are converted to
// that pair; the first argument's coefficient is read on the left, the second's on the right.
struct MetricSpec {
  MetricKind kind = MetricKind::LocalReal;
  Flavor flavor = Flavor::Real;
  Basis first = Basis::ThetaR, second = Basis::ThetaR;
  FormElement::Coeff component = DoubledElement::embed(AlgebraElement(1));

  static MetricSpec local_real();
  // g(thetabar ⊗ theta) = 1
  static MetricSpec hermitian();
  // g(theta ⊗ theta) = 1
  static MetricSpec formal_non_real();
  // g(dx ⊗ dx) = 1 in the chosen flavor
  static MetricSpec non_local(Flavor f = Flavor::Plain);
};

FormElement::Coeff metric_eval(const Calculus& calc, const MetricSpec& g, const FormElement& w,
                               const FormElement& eta);

// g^{11} on the frame pair of the metric's flavor.
FormElement::Coeff frame_component(const Calculus& calc, const MetricSpec& g);

// ds(k) evaluated with matrices. Laboratory units scale by the lattice spacing z.
double distance(const Algebra& alg, const MetricSpec& g, long k, const Window& w);
std::string distance_json(const Algebra& alg, const MetricSpec& g, long k, const Window& w);

struct ConnectionSpec {
  std::string name;
  Flavor flavor = Flavor::Plain;
  // omega^1_11 and flip coefficient S; the Real flavor uses both components.
  DoubledElement omega;
  CplxRat S = 1, S_second = 1;
  // Expected theta⊗theta coefficient of D(dx); omitted means not checked.
  std::optional<DoubledElement> expected_Ddx;

  static ConnectionSpec flat(const Algebra& alg);
  static ConnectionSpec non_local(const Algebra& alg);
  static ConnectionSpec non_local_bar(const Algebra& alg);
  static ConnectionSpec non_local_real(const Algebra& alg);
};

std::vector<CheckReport> connection_check(const Calculus& calc, const ConnectionSpec& c, const MetricSpec& g);
// Theta⊗theta coefficient of D(dx) (componentwise for the real flavor).
DoubledElement connection_Ddx(const Calculus& calc, const ConnectionSpec& c);
// Omega^2 vanishes, so every curvature is the degree-2 zero.
FormElement curvature(const Calculus& calc, const ConnectionSpec& c);
// omega_R* = (q, q^-1) omega_R, sqrt(g'^11) = e_R1 x is star-invariant, central local component.
std::vector<CheckReport> geometry_invariants(const Calculus& calc);

// x·g(dx⊗dx) evaluated with the coefficient read on the left against the value after moving
// it through both tensor factors to the right.
struct NonBilinearityReport {
  MetricKind metric;
  AlgebraElement left, right;
  BigRat factor;  // right = factor * left
  std::string str() const;
};
NonBilinearityReport nonbilinearity_witness(const Calculus& calc, const MetricSpec& g);

// (dx - g'^11 d1)|k> with g'^11 = (e_1 x)^2, compared with the closed-form two-term stencil.
struct RaisingDefect {
  long k = 0;
  std::vector<std::pair<long, cplx>> components;  // nonzero entries (k', value)
  cplx computed_k1, computed_k2, reference_k1, reference_k2;
  double relative_error = 0;
  bool pass = false;
};
RaisingDefect raising_map_defect(const Algebra& alg, long k, const Window& w);

}  // namespace qline
