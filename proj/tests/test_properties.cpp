#include <doctest.h>

#include "qline/geometry.hpp"
#include "qline/integration.hpp"
#include "qline/oscillator.hpp"
#include "qline/suite.hpp"
#include "random_gen.hpp"

#include <cmath>

using namespace qline;
using namespace qline::testing;
using AE = AlgebraElement;
using DE = DoubledElement;

namespace {

BigRat rand_q(std::mt19937& rng) {
  std::uniform_int_distribution<long> den(1, 7), extra(1, 9);
  long d = den(rng);
  return BigRat(d + extra(rng), d);
}

Params rand_params(std::mt19937& rng) {
  std::uniform_int_distribution<long> n(1, 5), d(1, 4), sign(0, 1);
  auto nonzero = [&] { return BigRat(n(rng) * (sign(rng) ? 1 : -1), d(rng)); };
  Params p;
  p.q = rand_q(rng);
  // alpha = alphabar = 1 is the normalization under which theta_R acts as the identity;
  // real beta keeps the stated defect relation valid
  p.beta = CplxRat(nonzero());
  p.betabar = CplxRat(nonzero());
  return p;
}

}  // namespace

TEST_CASE("exact suites hold for random parameters") {
  std::mt19937 rng(31);
  for (int t = 0; t < 6; ++t) {
    Params p = rand_params(rng);
    Window w = Window::make(-12, 12, Boundary::Open, p.q);
    for (const auto& name : suite_names()) {
      if (name == "nonlocal_continuity" || name == "plane_waves") continue;
      auto rs = run_suite(name, p, w);
      for (const auto& r : rs) {
        INFO("q=", p.q.str(), " beta=", p.beta.str(), " betabar=", p.betabar.str(), " ", r.name, " ", r.residual);
        CHECK(r.pass);
      }
    }
  }
}

TEST_CASE("local distances do not depend on the site") {
  std::mt19937 rng(8);
  for (int t = 0; t < 8; ++t) {
    Params p;
    p.q = rand_q(rng);
    Algebra alg(p);
    Window w = Window::make(-10, 10, Boundary::Open, p.q, Units::Laboratory);
    const double z = alg.z().to_double();
    for (long k = -6; k <= 6; k += 3) {
      CHECK(distance(alg, MetricSpec::local_real(), k, w) == doctest::Approx(z).epsilon(1e-12));
      CHECK(distance(alg, MetricSpec::hermitian(), k, w) == doctest::Approx(z / p.q.to_double()).epsilon(1e-12));
    }
  }
}

TEST_CASE("traces of derivatives vanish away from the window edge") {
  std::mt19937 rng(12);
  for (int t = 0; t < 10; ++t) {
    BigRat q = rand_q(rng);
    Algebra alg(q);
    Window w = Window::make(-10, 10, Boundary::Open, q);
    AE f = rand_element(rng, 3, 2, 2);
    INFO("q=", q.str(), " f=", f.str());
    CHECK(exactness_trace_check(alg, f, w, -7, 7).pass);
    // the derivative-free part of e1 f has zero diagonal trace on any window
    CHECK(exact_trace(alg, alg.e1(AE::monomial(1, 0, 2)), -5, 5).is_zero());
  }
}

TEST_CASE("doubled involution is the twisted adjoint for random elements") {
  std::mt19937 rng(44);
  for (int t = 0; t < 20; ++t) {
    Params p;
    p.q = rand_q(rng);
    Algebra alg(p);
    Window w = Window::make(-10, 10, Boundary::Open, p.q);
    DE f(rand_element(rng, 2, 2, 2), rand_element(rng, 2, 2, 2));
    DoubledRep lhs = rep_of(alg.star(f), w, p), rhs = rep_of(f, w, p).twisted_adjoint();
    CHECK(row_restricted_residual(lhs.first, rhs.first, true) <= 1e-12);
    CHECK(row_restricted_residual(lhs.second, rhs.second, true) <= 1e-12);
  }
}

TEST_CASE("oscillator operators respect the twisted adjoint") {
  for (Dressing d : {Dressing::Full, Dressing::NoCubic, Dressing::Bare, Dressing::Undressed}) {
    auto o = build_phase_space(0.25, 32, false, +1, d);
    DoubledRep bb = o.b_star.twisted_adjoint();
    CHECK((bb.first.m - o.b.first.m).norm() <= 1e-12 * o.b.first.m.norm());
    DoubledRep H = o.H.twisted_adjoint();
    CHECK((H.first.m - o.H.first.m).norm() <= 1e-12 * o.H.first.m.norm());
    auto r = identity_residuals(o);
    CHECK(std::max({r.cr, r.a_astar, r.a_h, r.H_def}) <= 1e-12);
  }
}
