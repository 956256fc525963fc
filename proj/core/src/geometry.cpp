#include "qline/geometry.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qline {

const char* metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::LocalReal: return "localReal";
    case MetricKind::Hermitian: return "hermitian";
    case MetricKind::FormalNonReal: return "formalNonReal";
    case MetricKind::NonLocal: return "nonLocal";
  }
  return "?";
}

MetricSpec MetricSpec::local_real() { return {}; }

MetricSpec MetricSpec::hermitian() {
  return {MetricKind::Hermitian, Flavor::Plain, Basis::ThetaBar, Basis::Theta, AlgebraElement(1)};
}

MetricSpec MetricSpec::formal_non_real() {
  return {MetricKind::FormalNonReal, Flavor::Plain, Basis::Theta, Basis::Theta, AlgebraElement(1)};
}

MetricSpec MetricSpec::non_local(Flavor f) {
  Basis b = dx_basis(f);
  FormElement::Coeff one = f == Flavor::Real ? FormElement::Coeff(DoubledElement::embed(AlgebraElement(1)))
                                             : FormElement::Coeff(AlgebraElement(1));
  return {MetricKind::NonLocal, f, b, b, one};
}

namespace {

FormElement convert(const Calculus& calc, const FormElement& f, Basis target) {
  if (f.degree() != 1) throw std::invalid_argument("metric arguments must be 1-forms");
  FormElement r = is_frame(target) ? calc.to_frame_basis(f) : calc.to_dx_basis(f);
  if (r.basis() != target)
    throw std::invalid_argument(std::string("metric declared on ") + basis_name(target) + ", argument is in " +
                                basis_name(f.basis()));
  return r;
}

// c·b = b·sigma^-1(c): the coefficient as it appears on the right of the basis element.
AlgebraElement to_right(const Calculus& calc, const AlgebraElement& c, Basis b) { return calc.sigma_inv(c, b); }

DoubledElement to_right(const Calculus& calc, const DoubledElement& c, Basis b) {
  if (is_frame(b)) return c;
  return {calc.sigma_inv(c.first, Basis::Dx), calc.sigma_inv(c.second, Basis::DxBar)};
}

}  // namespace

FormElement::Coeff metric_eval(const Calculus& calc, const MetricSpec& g, const FormElement& w,
                               const FormElement& eta) {
  const Algebra& alg = calc.algebra();
  FormElement a = convert(calc, w, g.first), b = convert(calc, eta, g.second);
  if (a.doubled()) {
    const auto& comp = std::get<DoubledElement>(g.component);
    return alg.mul(alg.mul(a.pair(), comp), to_right(calc, b.pair(), g.second));
  }
  const auto& comp = std::get<AlgebraElement>(g.component);
  return alg.mul({a.plain(), comp, to_right(calc, b.plain(), g.second)});
}

FormElement::Coeff frame_component(const Calculus& calc, const MetricSpec& g) {
  return metric_eval(calc, g, calc.frame(flavor_of(g.first)), calc.frame(flavor_of(g.second)));
}

namespace {

void require_interior(long k, const Window& w, long margin) {
  if (k - margin < w.kmin || k + margin > w.kmax) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "k = %ld is within %ld of the window boundary", k, margin);
    throw std::out_of_range(buf);
  }
}

Vec basis_vector(const Window& w, long k) {
  Vec v = Vec::Zero(w.dim());
  v(w.index(k)) = 1.0;
  return v;
}

}  // namespace

double distance(const Algebra& alg, const MetricSpec& g, long k, const Window& w) {
  require_interior(k, w, 2);
  const Params& p = alg.params();
  const Vec v = basis_vector(w, k);
  auto Dx = rep_generator(RepGen::Dx, w, p), Dxb = rep_generator(RepGen::Dxbar, w, p);
  double value = 0;
  switch (g.kind) {
    case MetricKind::LocalReal: {
      // sqrt(g'^11) = e_R1 x
      DoubledElement root = alg.eR1(DoubledElement::embed(AlgebraElement::x()));
      Vec u1 = (rep_of(alg.inverse(root.first), w, p) * Dx).m * v;
      Vec u2 = (rep_of(alg.inverse(root.second), w, p) * Dxb).m * v;
      // |k> and its copy in the second summand, normalized so the copy pair has unit norm
      value = std::sqrt(0.5 * (u1.squaredNorm() + u2.squaredNorm()));
      break;
    }
    case MetricKind::Hermitian: {
      // g'^11 = q^2 x^2 has positive root q x
      AlgebraElement root = AlgebraElement::monomial(CplxRat(alg.q()), 0, 1);
      value = ((rep_of(alg.inverse(root), w, p) * Dx).m * v).norm();
      break;
    }
    case MetricKind::FormalNonReal: {
      AlgebraElement root = alg.e1(AlgebraElement::x());
      value = ((rep_of(alg.inverse(root), w, p) * Dx).m * v).norm();
      break;
    }
    case MetricKind::NonLocal:
      value = (Dx.m * v).norm();
      break;
  }
  return value * w.spacing();
}

std::string distance_json(const Algebra& alg, const MetricSpec& g, long k, const Window& w) {
  nlohmann::json j{{"metric", metric_name(g.kind)},
                   {"q", alg.q().str()},
                   {"k", k},
                   {"units", w.units == Units::Planck ? "planck" : "laboratory"},
                   {"value", distance(alg, g, k, w)}};
  return j.dump();
}

// ---------------------------------------------------------------------------

ConnectionSpec ConnectionSpec::flat(const Algebra& alg) {
  ConnectionSpec c;
  c.name = "flat";
  c.flavor = Flavor::Plain;
  AlgebraElement d = AlgebraElement::monomial(CplxRat(alg.q() * alg.q()), 2, 1);
  c.expected_Ddx = DoubledElement(d, d);
  return c;
}

ConnectionSpec ConnectionSpec::non_local(const Algebra& alg) {
  ConnectionSpec c;
  c.name = "nonLocal";
  c.flavor = Flavor::Plain;
  c.omega = DoubledElement::embed(AlgebraElement::lambda());
  c.S = CplxRat(alg.q().inverse());
  c.expected_Ddx = DoubledElement();
  return c;
}

ConnectionSpec ConnectionSpec::non_local_bar(const Algebra& alg) {
  ConnectionSpec c;
  c.name = "nonLocalBar";
  c.flavor = Flavor::Bar;
  c.omega = DoubledElement::embed(AlgebraElement::monomial(CplxRat(alg.q()), -1, 0));
  c.S = CplxRat(alg.q());
  c.expected_Ddx = DoubledElement();
  return c;
}

ConnectionSpec ConnectionSpec::non_local_real(const Algebra& alg) {
  ConnectionSpec c;
  c.name = "nonLocalReal";
  c.flavor = Flavor::Real;
  c.omega = {AlgebraElement::lambda(), AlgebraElement::monomial(CplxRat(alg.q()), -1, 0)};
  c.S = CplxRat(alg.q().inverse());
  c.S_second = CplxRat(alg.q());
  c.expected_Ddx = DoubledElement();
  return c;
}

namespace {

// One plain-or-bar component of a connection.
struct Slot {
  bool bar;
  const AlgebraElement& omega;
  const CplxRat& S;
};

AlgebraElement deriv(const Algebra& alg, bool bar, const AlgebraElement& f) { return bar ? alg.e1bar(f) : alg.e1(f); }

std::vector<Slot> slots(const ConnectionSpec& c) {
  switch (c.flavor) {
    case Flavor::Plain: return {{false, c.omega.first, c.S}};
    case Flavor::Bar: return {{true, c.omega.first, c.S}};
    case Flavor::Real: return {{false, c.omega.first, c.S}, {true, c.omega.second, c.S_second}};
  }
  return {};
}

CheckReport exact(std::string name, const AlgebraElement& lhs, const AlgebraElement& rhs) {
  CheckReport r;
  r.name = std::move(name);
  AlgebraElement d = lhs - rhs;
  r.pass = d.is_zero();
  r.detail = "lhs = " + lhs.str();
  r.residual = d.str();
  return r;
}

const char* slot_tag(bool bar) { return bar ? " (bar)" : ""; }

}  // namespace

DoubledElement connection_Ddx(const Calculus& calc, const ConnectionSpec& c) {
  const Algebra& alg = calc.algebra();
  DoubledElement out;
  int i = 0;
  for (const Slot& s : slots(c)) {
    // D(f theta) = (e f - f omega) theta⊗theta, with dx = (e x) theta
    AlgebraElement E = deriv(alg, s.bar, AlgebraElement::x());
    AlgebraElement v = deriv(alg, s.bar, E) - alg.mul(E, s.omega);
    (i++ == 0 ? out.first : out.second) = v;
  }
  if (c.flavor != Flavor::Real) out.second = out.first;
  return out;
}

std::vector<CheckReport> connection_check(const Calculus& calc, const ConnectionSpec& c, const MetricSpec& g) {
  const Algebra& alg = calc.algebra();
  if (flavor_of(g.first) != c.flavor || flavor_of(g.second) != c.flavor)
    throw std::invalid_argument("metric and connection flavors differ");
  auto gc = frame_component(calc, g);
  std::vector<AlgebraElement> g11;
  if (c.flavor == Flavor::Real) {
    const auto& d = std::get<DoubledElement>(gc);
    g11 = {d.first, d.second};
  } else {
    g11 = {std::get<AlgebraElement>(gc)};
  }

  std::vector<CheckReport> out;
  auto ss = slots(c);
  DoubledElement Ddx = connection_Ddx(calc, c);
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const Slot& s = ss[i];
    // dg^11 = -(1 + S) omega g^11 theta
    out.push_back(exact(c.name + ": metric compatibility" + slot_tag(s.bar), deriv(alg, s.bar, g11[i]),
                        -(CplxRat(1) + s.S) * alg.mul(s.omega, g11[i])));
    if (c.expected_Ddx) {
      const AlgebraElement& want = i == 0 ? c.expected_Ddx->first : c.expected_Ddx->second;
      out.push_back(exact(c.name + ": D(dx)" + slot_tag(s.bar), i == 0 ? Ddx.first : Ddx.second, want));
    }
    // D(f theta) = D(theta f) forces (1 - S) e f = f omega - omega f
    for (const AlgebraElement& f : {AlgebraElement::lambda(), AlgebraElement::x()}) {
      out.push_back(exact(c.name + ": Leibniz on " + f.str() + slot_tag(s.bar),
                          (CplxRat(1) - s.S) * deriv(alg, s.bar, f),
                          alg.mul(f, s.omega) - alg.mul(s.omega, f)));
    }
  }
  return out;
}

FormElement curvature(const Calculus&, const ConnectionSpec&) { return FormElement::top_zero(); }

std::vector<CheckReport> geometry_invariants(const Calculus& calc) {
  const Algebra& alg = calc.algebra();
  std::vector<CheckReport> out;
  auto omega = ConnectionSpec::non_local_real(alg).omega;
  DoubledElement star = alg.star(omega);
  DoubledElement want{CplxRat(alg.q()) * omega.first, CplxRat(alg.q().inverse()) * omega.second};
  out.push_back(exact("omega_R* = (q, q^-1) omega_R, first", star.first, want.first));
  out.push_back(exact("omega_R* = (q, q^-1) omega_R, second", star.second, want.second));

  DoubledElement root = alg.eR1(DoubledElement::embed(AlgebraElement::x()));
  DoubledElement rs = alg.star(root);
  out.push_back(exact("sqrt(g'11)* = sqrt(g'11), first", rs.first, root.first));
  out.push_back(exact("sqrt(g'11)* = sqrt(g'11), second", rs.second, root.second));
  DoubledElement g2 = alg.mul(root, root);
  auto direct = std::get<DoubledElement>(metric_eval(calc, MetricSpec::local_real(),
                                                     FormElement::one_form(DoubledElement::embed(1), Basis::DRx),
                                                     FormElement::one_form(DoubledElement::embed(1), Basis::DRx)));
  out.push_back(exact("g(dRx⊗dRx) = (e_R1 x)^2, first", direct.first, g2.first));
  out.push_back(exact("g(dRx⊗dRx) = (e_R1 x)^2, second", direct.second, g2.second));

  auto comp = std::get<DoubledElement>(frame_component(calc, MetricSpec::local_real()));
  for (const AlgebraElement& f : {AlgebraElement::lambda(), AlgebraElement::lambda(-1), AlgebraElement::x(),
                                  AlgebraElement::x(-1)}) {
    DoubledElement F = DoubledElement::embed(f);
    DoubledElement c = alg.commutator(comp, F);
    out.push_back(exact("local component central vs " + f.str(), c.first + c.second, AlgebraElement()));
  }
  CheckReport flat;
  flat.name = "curvature is the degree-2 zero";
  FormElement R = curvature(calc, ConnectionSpec::flat(alg));
  flat.pass = R.degree() == 2 && R.is_zero();
  flat.residual = flat.pass ? "0" : R.str();
  out.push_back(flat);
  return out;
}

// ---------------------------------------------------------------------------

std::string NonBilinearityReport::str() const {
  return std::string(metric_name(metric)) + ": left " + left.str() + ", right " + right.str() + ", factor " +
         factor.str();
}

NonBilinearityReport nonbilinearity_witness(const Calculus& calc, const MetricSpec& g) {
  if (flavor_of(g.first) != flavor_of(g.second)) throw std::invalid_argument("witness needs a single-flavor metric");
  const Algebra& alg = calc.algebra();
  const AlgebraElement x = AlgebraElement::x();
  NonBilinearityReport r{g.kind, {}, {}, BigRat(1)};
  if (flavor_of(g.first) == Flavor::Real) {
    DoubledElement X = DoubledElement::embed(x);
    const auto& comp = std::get<DoubledElement>(g.component);
    DoubledElement left = alg.mul(X, comp);
    // x b1 ⊗ b2 = b1 ⊗ sigma1^-1(x) b2 = b1 ⊗ b2 sigma2^-1(sigma1^-1(x))
    DoubledElement right = alg.mul(comp, to_right(calc, to_right(calc, X, g.first), g.second));
    r.left = left.first;
    r.right = right.first;
  } else {
    const auto& comp = std::get<AlgebraElement>(g.component);
    r.left = alg.mul(x, comp);
    r.right = alg.mul(comp, to_right(calc, to_right(calc, x, g.first), g.second));
  }
  if (r.left.size() != 1) throw std::logic_error("witness expects a monomial value");
  const auto& [e, c] = *r.left.terms().begin();
  CplxRat ratio = r.right.coeff(e) * c.inverse();
  if (!(r.right == ratio * r.left) || !ratio.is_real()) throw std::logic_error("values are not proportional");
  r.factor = ratio.re();
  return r;
}

// ---------------------------------------------------------------------------

RaisingDefect raising_map_defect(const Algebra& alg, long k, const Window& w) {
  require_interior(k, w, 3);
  const Params& p = alg.params();
  AlgebraElement E = alg.e1(AlgebraElement::x());
  AlgebraElement gup = alg.mul(E, E);
  TruncatedRep op = rep_generator(RepGen::Dx, w, p) - rep_of(gup, w, p) * rep_generator(RepGen::D1, w, p);
  Vec out = op.m * basis_vector(w, k);

  RaisingDefect r;
  r.k = k;
  double scale = out.cwiseAbs().maxCoeff();
  for (long i = 0; i < w.dim(); ++i)
    if (std::abs(out(i)) > 1e-14 * std::max(scale, 1.0)) r.components.push_back({w.k_at(i), out(i)});
  r.computed_k1 = out(w.index(k + 1));
  r.computed_k2 = out(w.index(k + 2));

  const double q = alg.q().to_double(), zi = alg.zinv().to_double();
  const cplx alpha = p.alpha.to_complex(), beta = p.beta.to_complex();
  r.reference_k2 = q * q * zi * std::pow(q, 2.0 * k);
  r.reference_k1 = (alpha - beta * q * zi) * std::pow(q, double(k));

  double err = std::max(std::abs(r.computed_k1 - r.reference_k1), std::abs(r.computed_k2 - r.reference_k2));
  for (const auto& [kk, v] : r.components)
    if (kk != k + 1 && kk != k + 2) err = std::max(err, std::abs(v));
  double ref = std::max(std::abs(r.reference_k1), std::abs(r.reference_k2));
  r.relative_error = err / (ref > 0 ? ref : 1.0);
  r.pass = r.relative_error <= 1e-12;
  return r;
}

}  // namespace qline
