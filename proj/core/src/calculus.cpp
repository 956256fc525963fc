#include "qline/calculus.hpp"

#include <cstdio>
#include <stdexcept>

namespace qline {

const char* basis_name(Basis b) {
  switch (b) {
    case Basis::None: return "1";
    case Basis::Theta: return "theta";
    case Basis::ThetaBar: return "thetabar";
    case Basis::ThetaR: return "thetaR";
    case Basis::Dx: return "dx";
    case Basis::DxBar: return "dxbar";
    case Basis::DRx: return "dRx";
  }
  return "?";
}

Flavor flavor_of(Basis b) {
  switch (b) {
    case Basis::Theta: case Basis::Dx: return Flavor::Plain;
    case Basis::ThetaBar: case Basis::DxBar: return Flavor::Bar;
    case Basis::ThetaR: case Basis::DRx: return Flavor::Real;
    case Basis::None: break;
  }
  throw std::invalid_argument("degree-0 forms have no flavor");
}

bool is_frame(Basis b) { return b == Basis::Theta || b == Basis::ThetaBar || b == Basis::ThetaR; }

Basis frame_basis(Flavor f) {
  return f == Flavor::Plain ? Basis::Theta : (f == Flavor::Bar ? Basis::ThetaBar : Basis::ThetaR);
}

Basis dx_basis(Flavor f) {
  return f == Flavor::Plain ? Basis::Dx : (f == Flavor::Bar ? Basis::DxBar : Basis::DRx);
}

FormElement FormElement::function(const AlgebraElement& f) {
  FormElement w;
  w.coeff_ = f;
  return w;
}

FormElement FormElement::function(const DoubledElement& f) {
  FormElement w;
  w.coeff_ = f;
  return w;
}

FormElement FormElement::one_form(const AlgebraElement& c, Basis b) {
  if (b == Basis::None || flavor_of(b) == Flavor::Real)
    throw std::invalid_argument(std::string("basis ") + basis_name(b) + " needs a doubled coefficient");
  FormElement w;
  w.degree_ = 1;
  w.basis_ = b;
  w.coeff_ = c;
  return w;
}

FormElement FormElement::one_form(const DoubledElement& c, Basis b) {
  if (b == Basis::None || flavor_of(b) != Flavor::Real)
    throw std::invalid_argument(std::string("basis ") + basis_name(b) + " needs a single coefficient");
  FormElement w;
  w.degree_ = 1;
  w.basis_ = b;
  w.coeff_ = c;
  return w;
}

FormElement FormElement::top_zero() {
  FormElement w;
  w.degree_ = 2;
  return w;
}

const AlgebraElement& FormElement::plain() const {
  if (doubled()) throw std::logic_error("form has a doubled coefficient");
  return std::get<AlgebraElement>(coeff_);
}

const DoubledElement& FormElement::pair() const {
  if (!doubled()) throw std::logic_error("form has a single coefficient");
  return std::get<DoubledElement>(coeff_);
}

bool FormElement::is_zero() const {
  if (degree_ == 2) return true;
  return doubled() ? pair().is_zero() : plain().is_zero();
}

FormElement& FormElement::operator+=(const FormElement& o) {
  if (o.degree_ == 2 && degree_ == 2) return *this;
  if (o.is_zero() && o.degree_ == degree_) return *this;
  if (is_zero() && o.degree_ == degree_) return *this = o;
  if (degree_ != o.degree_ || basis_ != o.basis_ || doubled() != o.doubled())
    throw std::invalid_argument("adding forms of different degree or basis");
  if (doubled()) std::get<DoubledElement>(coeff_) += o.pair();
  else std::get<AlgebraElement>(coeff_) += o.plain();
  return *this;
}

FormElement FormElement::operator-() const {
  FormElement w = *this;
  if (degree_ == 2) return w;
  if (doubled()) w.coeff_ = -pair();
  else w.coeff_ = -plain();
  return w;
}

bool operator==(const FormElement& a, const FormElement& b) {
  if (a.is_zero() && b.is_zero()) return a.degree_ == b.degree_;
  return a.degree_ == b.degree_ && a.basis_ == b.basis_ && a.coeff_ == b.coeff_;
}

std::string FormElement::str() const {
  if (degree_ == 2) return "0 (degree 2)";
  std::string c = doubled() ? pair().str() : plain().str();
  if (degree_ == 0) return c;
  if (is_zero()) return "0";
  return c + " ⊗ " + basis_name(basis_);
}

// ---------------------------------------------------------------------------

namespace {

struct FrameFactors {
  AlgebraElement to_frame;  // dx = to_frame * theta
  AlgebraElement to_dx;     // theta = to_dx * dx
};

FrameFactors factors(const Algebra& alg, Flavor f) {
  if (f == Flavor::Plain) {
    AlgebraElement e = alg.e1(AlgebraElement::x());
    return {e, alg.inverse(e)};
  }
  AlgebraElement e = alg.e1bar(AlgebraElement::x());
  return {e, alg.inverse(e)};
}

}  // namespace

FormElement Calculus::differential(const AlgebraElement& f, Flavor which) const {
  switch (which) {
    case Flavor::Plain: return FormElement::one_form(alg_.e1(f), Basis::Theta);
    case Flavor::Bar: return FormElement::one_form(alg_.e1bar(f), Basis::ThetaBar);
    case Flavor::Real: return differential(DoubledElement::embed(f));
  }
  return {};
}

FormElement Calculus::differential(const DoubledElement& f) const {
  return FormElement::one_form(alg_.eR1(f), Basis::ThetaR);
}

FormElement Calculus::differential(const FormElement& f, Flavor which) const {
  if (f.degree() >= 1) return FormElement::top_zero();
  if (f.doubled()) {
    if (which != Flavor::Real) throw std::invalid_argument("d and db act on single elements");
    return differential(f.pair());
  }
  return differential(f.plain(), which);
}

FormElement Calculus::to_frame_basis(const FormElement& w) const {
  if (w.degree() != 1) throw std::invalid_argument("basis change needs a 1-form");
  if (is_frame(w.basis())) return w;
  Flavor fl = flavor_of(w.basis());
  if (fl == Flavor::Real) {
    const auto& c = w.pair();
    auto p = factors(alg_, Flavor::Plain), b = factors(alg_, Flavor::Bar);
    return FormElement::one_form(
        DoubledElement(alg_.mul(c.first, p.to_frame), alg_.mul(c.second, b.to_frame)), Basis::ThetaR);
  }
  return FormElement::one_form(alg_.mul(w.plain(), factors(alg_, fl).to_frame), frame_basis(fl));
}

FormElement Calculus::to_dx_basis(const FormElement& w) const {
  if (w.degree() != 1) throw std::invalid_argument("basis change needs a 1-form");
  if (!is_frame(w.basis())) return w;
  Flavor fl = flavor_of(w.basis());
  if (fl == Flavor::Real) {
    const auto& c = w.pair();
    auto p = factors(alg_, Flavor::Plain), b = factors(alg_, Flavor::Bar);
    return FormElement::one_form(DoubledElement(alg_.mul(c.first, p.to_dx), alg_.mul(c.second, b.to_dx)),
                                 Basis::DRx);
  }
  return FormElement::one_form(alg_.mul(w.plain(), factors(alg_, fl).to_dx), dx_basis(fl));
}

AlgebraElement Calculus::scale_monomials(const AlgebraElement& f, Basis b, bool inverse) const {
  if (!f.derivative_free()) throw std::domain_error("form coefficients must be derivative-free");
  AlgebraElement r;
  for (const auto& [e, c] : f.terms()) {
    long n = b == Basis::Dx ? e.a - e.b : e.a + e.b;
    r.add_term(e, c * CplxRat(qpow(alg_.q(), inverse ? -n : n)));
  }
  return r;
}

AlgebraElement Calculus::sigma(const AlgebraElement& f, Basis b) const {
  if (is_frame(b)) return f;
  if (b != Basis::Dx && b != Basis::DxBar) throw std::invalid_argument("sigma: single dx-type basis expected");
  return scale_monomials(f, b, false);
}

AlgebraElement Calculus::sigma_inv(const AlgebraElement& f, Basis b) const {
  if (is_frame(b)) return f;
  if (b != Basis::Dx && b != Basis::DxBar) throw std::invalid_argument("sigma: single dx-type basis expected");
  return scale_monomials(f, b, true);
}

FormElement Calculus::left_mul(const AlgebraElement& f, const FormElement& w) const {
  if (w.degree() == 2) return w;
  if (w.doubled()) return left_mul(DoubledElement::embed(f), w);
  if (w.degree() == 0) return FormElement::function(alg_.mul(f, w.plain()));
  return FormElement::one_form(alg_.mul(f, w.plain()), w.basis());
}

FormElement Calculus::left_mul(const DoubledElement& f, const FormElement& w) const {
  if (w.degree() == 2) return w;
  DoubledElement c = w.doubled() ? w.pair() : DoubledElement::embed(w.plain());
  if (w.degree() == 0) return FormElement::function(alg_.mul(f, c));
  if (!w.doubled()) throw std::invalid_argument("doubled element times a single-calculus form");
  return FormElement::one_form(alg_.mul(f, c), w.basis());
}

FormElement Calculus::right_mul(const FormElement& w, const AlgebraElement& f) const {
  if (w.degree() == 2) return w;
  if (w.doubled()) return right_mul(w, DoubledElement::embed(f));
  if (w.degree() == 0) return FormElement::function(alg_.mul(w.plain(), f));
  return FormElement::one_form(alg_.mul(w.plain(), sigma(f, w.basis())), w.basis());
}

FormElement Calculus::right_mul(const FormElement& w, const DoubledElement& f) const {
  if (w.degree() == 2) return w;
  DoubledElement c = w.doubled() ? w.pair() : DoubledElement::embed(w.plain());
  if (w.degree() == 0) return FormElement::function(alg_.mul(c, f));
  if (!w.doubled()) throw std::invalid_argument("single-calculus form times a doubled element");
  if (w.basis() == Basis::ThetaR) return FormElement::one_form(alg_.mul(c, f), w.basis());
  DoubledElement s(sigma(f.first, Basis::Dx), sigma(f.second, Basis::DxBar));
  return FormElement::one_form(alg_.mul(c, s), w.basis());
}

FormElement Calculus::wedge(const FormElement& a, const FormElement& b) const {
  if (a.degree() == 0) return b.doubled() || a.doubled()
                                  ? left_mul(a.doubled() ? a.pair() : DoubledElement::embed(a.plain()), b)
                                  : left_mul(a.plain(), b);
  if (b.degree() == 0) return a.doubled() || b.doubled()
                                  ? right_mul(a, b.doubled() ? b.pair() : DoubledElement::embed(b.plain()))
                                  : right_mul(a, b.plain());
  return FormElement::top_zero();
}

FormElement Calculus::star(const FormElement& w) const {
  if (w.degree() == 2) return w;
  if (w.degree() == 0)
    return w.doubled() ? FormElement::function(alg_.star(w.pair())) : FormElement::function(alg_.star(w.plain()));
  FormElement d = to_dx_basis(w);
  switch (d.basis()) {
    case Basis::Dx:  // (c dx)* = dxbar c* = sigmabar(c*) dxbar
      return to_frame_basis(FormElement::one_form(sigma(alg_.star(d.plain()), Basis::DxBar), Basis::DxBar));
    case Basis::DxBar:
      return to_frame_basis(FormElement::one_form(sigma(alg_.star(d.plain()), Basis::Dx), Basis::Dx));
    case Basis::DRx: {
      DoubledElement s = alg_.star(d.pair());
      return to_frame_basis(FormElement::one_form(
          DoubledElement(sigma(s.first, Basis::Dx), sigma(s.second, Basis::DxBar)), Basis::DRx));
    }
    default: break;
  }
  throw std::logic_error("star: unexpected basis");
}

FormElement Calculus::frame(Flavor f) const {
  if (f == Flavor::Real) return FormElement::one_form(DoubledElement::embed(AlgebraElement(1)), Basis::ThetaR);
  return FormElement::one_form(AlgebraElement(1), frame_basis(f));
}

FormElement Calculus::dirac_form(Flavor f) const {
  switch (f) {
    case Flavor::Plain: return FormElement::one_form(-alg_.lambda1(), Basis::Theta);
    case Flavor::Bar: return FormElement::one_form(-alg_.lambda1bar(), Basis::ThetaBar);
    case Flavor::Real: return FormElement::one_form(-alg_.lambdaR(), Basis::ThetaR);
  }
  return {};
}

namespace {

CheckReport compare(std::string name, const FormElement& lhs, const FormElement& rhs) {
  CheckReport r;
  r.name = std::move(name);
  FormElement diff = lhs - rhs;
  r.pass = diff.is_zero();
  r.residual = r.pass ? "0" : diff.str();
  r.detail = "lhs = " + lhs.str();
  return r;
}

void merge(CheckReport& into, const CheckReport& part) {
  into.pass = into.pass && part.pass;
  if (!part.pass) into.residual = (into.residual == "0" || into.residual.empty() ? "" : into.residual + "; ") +
                                  part.name + ": " + part.residual;
}

}  // namespace

CheckReport Calculus::check_centrality(const FormElement& w, const std::vector<AlgebraElement>& sample) const {
  CheckReport r;
  r.name = std::string("centrality of ") + basis_name(w.basis());
  r.pass = true;
  r.residual = "0";
  FormElement d = to_dx_basis(w);
  for (const auto& f : sample) {
    FormElement lhs = left_mul(f, d), rhs = right_mul(d, f);
    auto c = compare(f.str(), lhs, rhs);
    if (!c.pass) c.residual = to_dx_basis(lhs - rhs).str();
    merge(r, c);
  }
  return r;
}

CheckReport Calculus::check_reality(const AlgebraElement& f) const {
  CheckReport r = compare("(df)* = db(f*)", star(differential(f, Flavor::Plain)),
                          differential(alg_.star(f), Flavor::Bar));
  r.name = "reality of " + f.str();
  merge(r, compare("(dR f)* = dR(f*)", star(differential(f, Flavor::Real)),
                   differential(alg_.star(f), Flavor::Real)));
  return r;
}

CheckReport Calculus::dirac_identity_check(const AlgebraElement& f, Flavor which) const {
  FormElement theta = to_dx_basis(dirac_form(which));
  FormElement rhs = left_mul(f, theta) - right_mul(theta, f);  // -[theta, f]
  FormElement lhs = to_dx_basis(differential(f, which));
  return compare("dirac " + std::string(basis_name(frame_basis(which))) + " on " + f.str(), lhs, rhs);
}

CheckReport Calculus::leibniz_check(const AlgebraElement& f, const AlgebraElement& g, Flavor which) const {
  FormElement lhs = to_dx_basis(differential(alg_.mul(f, g), which));
  FormElement rhs = right_mul(to_dx_basis(differential(f, which)), g) + left_mul(f, to_dx_basis(differential(g, which)));
  return compare("leibniz " + std::string(basis_name(frame_basis(which))), lhs, rhs);
}

std::vector<CheckReport> Calculus::module_relations() const {
  std::vector<CheckReport> out;
  const CplxRat q(alg_.q()), qi(alg_.q().inverse());
  AlgebraElement x = AlgebraElement::x(), L = AlgebraElement::lambda();
  // dx-type forms expressed in the central frame, so the twist is derived, not assumed
  FormElement dx = differential(x, Flavor::Plain);
  FormElement dxb = differential(x, Flavor::Bar);
  FormElement dRx = differential(x, Flavor::Real);
  auto scaled = [](const CplxRat& s, const FormElement& w) {
    if (w.doubled()) return FormElement::one_form(s * w.pair(), w.basis());
    return FormElement::one_form(s * w.plain(), w.basis());
  };
  out.push_back(compare("x dx = q dx x", left_mul(x, dx), scaled(q, right_mul(dx, x))));
  out.push_back(compare("dx L = q L dx", right_mul(dx, L), scaled(q, left_mul(L, dx))));
  out.push_back(compare("x dxbar = q^-1 dxbar x", left_mul(x, dxb), scaled(qi, right_mul(dxb, x))));
  out.push_back(compare("dxbar L = q L dxbar", right_mul(dxb, L), scaled(q, left_mul(L, dxb))));
  DoubledElement qpair{AlgebraElement(q), AlgebraElement(qi)};
  out.push_back(compare("x dRx = (q, q^-1) dRx x", left_mul(x, dRx), left_mul(qpair, right_mul(dRx, x))));
  out.push_back(compare("dRx L = q L dRx", right_mul(dRx, L), scaled(q, left_mul(L, dRx))));
  CheckReport nil;
  nil.name = "(dRx)^2 = 0";
  nil.pass = wedge(dRx, dRx).is_zero() && wedge(dRx, dRx).degree() == 2 &&
             differential(frame(Flavor::Real), Flavor::Real).is_zero();
  nil.residual = nil.pass ? "0" : "nonzero degree-2 form";
  out.push_back(nil);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckReport> exactness_witnesses(const Algebra& alg, const Window& win, double tol) {
  const Params& p = alg.params();
  Window w = Window::make(win.kmin, win.kmax, win.mode, alg.q(), Units::Planck);
  const double z = alg.z().to_double();
  auto I = TruncatedRep::identity(w);
  auto y = rep_generator(RepGen::Y, w, p);
  auto L = rep_generator(RepGen::Lambda, w, p), Li = rep_generator(RepGen::LambdaInv, w, p);
  auto lam = rep_of(alg.lambda1(), w, p), lamb = rep_of(alg.lambda1bar(), w, p);
  const cplx alpha = p.alpha.to_complex(), alphabar = p.alphabar.to_complex();
  AlgebraElement T = alg.inverse(alg.e1(AlgebraElement::x()));
  AlgebraElement Tb = alg.inverse(alg.e1bar(AlgebraElement::x()));

  std::vector<CheckReport> out;
  auto add = [&](const std::string& name, const TruncatedRep& a, const TruncatedRep& b) {
    CheckReport r;
    r.name = name;
    double res = row_restricted_residual(a, b);
    r.pass = res <= tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", res);
    r.residual = buf;
    out.push_back(r);
  };

  TruncatedRep A = z * Li * y;
  add("theta = d(z L^-1 y)", commutator(lam, A), I);
  add("theta = alpha", rep_of(T, w, p) * rep_generator(RepGen::Dx, w, p), alpha * I);
  TruncatedRep Ab = z * L * y;
  add("thetabar = db(z L y)", commutator(lamb, Ab), I);
  add("thetabar = alphabar", rep_of(Tb, w, p) * rep_generator(RepGen::Dxbar, w, p), alphabar * I);

  DoubledElement K{AlgebraElement::monomial(CplxRat(alg.z()), -1, 0), AlgebraElement::monomial(CplxRat(alg.z()), 1, 0)};
  DoubledRep Ky = rep_of(K, w, p) * DoubledRep::embed(y);
  DoubledRep dKy = commutator(rep_of(alg.lambdaR(), w, p), Ky);
  add("thetaR = dR(K y), first", dKy.first, I);
  add("thetaR = dR(K y), second", dKy.second, I);
  add("thetaR = 1, first", rep_of(T, w, p) * rep_generator(RepGen::Dx, w, p), I);
  add("thetaR = 1, second", rep_of(Tb, w, p) * rep_generator(RepGen::Dxbar, w, p), I);
  DoubledRep eRx = rep_of(alg.eR1(DoubledElement::embed(AlgebraElement::x())), w, p);
  add("dRx = eR1(x) thetaR, first", alpha * eRx.first, rep_generator(RepGen::Dx, w, p));
  add("dRx = eR1(x) thetaR, second", alphabar * eRx.second, rep_generator(RepGen::Dxbar, w, p));

  CheckReport ks;
  ks.name = "K* = K";
  ks.pass = alg.star(K) == K;
  ks.residual = ks.pass ? "0" : (alg.star(K) - K).str();
  out.push_back(ks);
  return out;
}

}  // namespace qline
