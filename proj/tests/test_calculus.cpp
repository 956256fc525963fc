#include <doctest.h>

#include "qline/calculus.hpp"
#include "random_gen.hpp"

using namespace qline;
using namespace qline::testing;
using AE = AlgebraElement;
using DE = DoubledElement;

namespace {

const BigRat qs[] = {BigRat(3, 2), BigRat(2), BigRat(10, 9)};

std::string failures(const std::vector<CheckReport>& rs) {
  std::string s;
  for (const auto& r : rs)
    if (!r.pass) s += r.name + " [" + r.residual + "] ";
  return s;
}

}  // namespace

TEST_CASE("differentials of x in the frame bases") {
  for (const auto& q : qs) {
    Algebra alg(q);
    Calculus calc(alg);
    const CplxRat cq(q), cqi(q.inverse());
    FormElement dx = calc.differential(AE::x(), Flavor::Plain);
    CHECK(dx == FormElement::one_form(AE::monomial(cq, 1, 1), Basis::Theta));
    FormElement dbx = calc.differential(AE::x(), Flavor::Bar);
    CHECK(dbx == FormElement::one_form(AE::monomial(1, -1, 1), Basis::ThetaBar));
    FormElement drx = calc.differential(AE::x(), Flavor::Real);
    CHECK(drx == FormElement::one_form(DE(AE::monomial(cq, 1, 1), AE::monomial(1, -1, 1)), Basis::ThetaR));
    // d of a constant and d of a one-form
    CHECK(calc.differential(AE(5), Flavor::Plain).is_zero());
    CHECK(calc.differential(dx, Flavor::Plain).degree() == 2);
    (void)cqi;
  }
}

TEST_CASE("basis changes between frames and dx") {
  Algebra alg(BigRat(3, 2));
  Calculus calc(alg);
  const CplxRat q(alg.q()), qi(alg.q().inverse());
  FormElement dx = FormElement::one_form(AE(1), Basis::Dx);
  CHECK(calc.to_frame_basis(dx) == FormElement::one_form(AE::monomial(q, 1, 1), Basis::Theta));
  FormElement th = calc.frame(Flavor::Plain);
  CHECK(calc.to_dx_basis(th) == FormElement::one_form(AE::monomial(1, -1, -1), Basis::Dx));
  FormElement thb = calc.frame(Flavor::Bar);
  CHECK(calc.to_dx_basis(thb) == FormElement::one_form(AE::monomial(qi, 1, -1), Basis::DxBar));
  FormElement dxb = FormElement::one_form(AE(1), Basis::DxBar);
  CHECK(calc.to_frame_basis(dxb) == FormElement::one_form(AE::monomial(1, -1, 1), Basis::ThetaBar));
  FormElement thr = calc.frame(Flavor::Real);
  CHECK(calc.to_dx_basis(thr) ==
        FormElement::one_form(DE(AE::monomial(1, -1, -1), AE::monomial(qi, 1, -1)), Basis::DRx));

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    AE f = rand_element(rng);
    for (Basis b : {Basis::Theta, Basis::ThetaBar, Basis::Dx, Basis::DxBar}) {
      FormElement w = FormElement::one_form(f, b);
      CHECK(calc.to_frame_basis(calc.to_dx_basis(w)) == calc.to_frame_basis(w));
      CHECK(calc.to_dx_basis(calc.to_frame_basis(w)) == calc.to_dx_basis(w));
    }
  }
}

TEST_CASE("frames are central, dx is not") {
  for (const auto& q : qs) {
    Algebra alg(q);
    Calculus calc(alg);
    std::vector<AE> sample{AE::x(), AE::lambda(), AE::monomial(1, -1, 2)};
    for (Flavor f : {Flavor::Plain, Flavor::Bar, Flavor::Real})
      CHECK(calc.check_centrality(calc.frame(f), sample).pass);
    auto r = calc.check_centrality(FormElement::one_form(AE(1), Basis::Dx), {AE::x()});
    CHECK_FALSE(r.pass);
    // x dx - dx x = (1 - q^-1) x dx
    FormElement dx = FormElement::one_form(AE(1), Basis::Dx);
    FormElement diff = calc.left_mul(AE::x(), dx) - calc.right_mul(dx, AE::x());
    CHECK(diff == FormElement::one_form(AE::monomial(CplxRat(BigRat(1) - q.inverse()), 0, 1), Basis::Dx));
  }
}

TEST_CASE("module relations from central frames") {
  for (const auto& q : qs) {
    Algebra alg(q);
    Calculus calc(alg);
    auto rs = calc.module_relations();
    INFO(failures(rs));
    CHECK(all_pass(rs));
  }
}

TEST_CASE("reality of differentials") {
  for (const auto& q : qs) {
    Algebra alg(q);
    Calculus calc(alg);
    for (const AE& f : {AE::x(), alg.mul(AE::lambda(), AE::x()), AE(1), AE::x(2)}) {
      auto r = calc.check_reality(f);
      INFO(r.residual);
      CHECK(r.pass);
    }
  }
  Algebra alg(BigRat(2));
  Calculus calc(alg);
  std::mt19937 rng(11);
  for (int i = 0; i < 60; ++i) {
    AE f = rand_element(rng);
    auto r = calc.check_reality(f);
    INFO(f.str(), " ", r.residual);
    CHECK(r.pass);
  }
}

TEST_CASE("star of forms is an involution") {
  Algebra alg(BigRat(3, 2));
  Calculus calc(alg);
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    AE f = rand_element(rng), g = rand_element(rng);
    for (Basis b : {Basis::Theta, Basis::ThetaBar}) {
      FormElement w = FormElement::one_form(f, b);
      CHECK(calc.star(calc.star(w)) == w);
    }
    FormElement wr = FormElement::one_form(DE(f, g), Basis::ThetaR);
    CHECK(calc.star(calc.star(wr)) == wr);
    // frames: theta* = thetabar up to the relative twist; thetaR* = thetaR
  }
  CHECK(calc.star(calc.frame(Flavor::Real)) == calc.frame(Flavor::Real));
}

TEST_CASE("Dirac identities") {
  for (const auto& q : qs) {
    Algebra alg(q);
    Calculus calc(alg);
    for (const AE& f : {AE::x(), AE::lambda(), AE::x(2), AE::monomial(CplxRat(BigRat(1), BigRat(2)), -1, 3)}) {
      for (Flavor fl : {Flavor::Plain, Flavor::Bar, Flavor::Real}) {
        auto r = calc.dirac_identity_check(f, fl);
        INFO(r.name, " ", r.residual);
        CHECK(r.pass);
      }
    }
  }
}

TEST_CASE("twisted Leibniz rule in the dx basis") {
  Algebra alg(BigRat(3, 2));
  Calculus calc(alg);
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    AE f = rand_element(rng), g = rand_element(rng);
    for (Flavor fl : {Flavor::Plain, Flavor::Bar, Flavor::Real}) {
      auto r = calc.leibniz_check(f, g, fl);
      INFO(r.residual);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("module actions") {
  Algebra alg(BigRat(2));
  Calculus calc(alg);
  FormElement dx = FormElement::one_form(AE(1), Basis::Dx);
  // dx L = q L dx, dx x = q^-1 x dx
  CHECK(calc.right_mul(dx, AE::lambda()) == FormElement::one_form(AE::monomial(2, 1, 0), Basis::Dx));
  CHECK(calc.right_mul(dx, AE::x()) == FormElement::one_form(AE::monomial(CplxRat(BigRat(1, 2)), 0, 1), Basis::Dx));
  CHECK(calc.sigma_inv(calc.sigma(AE::monomial(1, 2, -3), Basis::DxBar), Basis::DxBar) == AE::monomial(1, 2, -3));
  CHECK(calc.wedge(dx, dx).degree() == 2);
  CHECK(calc.wedge(FormElement::function(AE::x()), dx) == calc.left_mul(AE::x(), dx));
  CHECK_THROWS(FormElement::one_form(AE(1), Basis::DRx));
  CHECK_THROWS(FormElement::one_form(AE(1), Basis::Dx) + FormElement::one_form(AE(1), Basis::DxBar));
}

TEST_CASE("exactness witnesses at matrix level") {
  for (const auto& q : {BigRat(3, 2), BigRat(2)}) {
    Algebra alg(q);
    Window w = Window::make(-12, 12, Boundary::Open, q);
    auto rs = exactness_witnesses(alg, w);
    INFO(failures(rs));
    CHECK(all_pass(rs));
    CHECK(rs.size() >= 11);
  }
}
