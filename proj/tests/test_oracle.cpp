#include <doctest.h>

#include "qline/exprparse.hpp"
#include "qline/fields.hpp"
#include "qline/geometry.hpp"
#include "qline/relations.hpp"

#include <json.hpp>

#include <fstream>

using namespace qline;
using AE = AlgebraElement;

namespace {

nlohmann::json golden() {
  std::ifstream in(QLINE_ORACLE_GOLDEN);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

CplxRat cplx_of(const nlohmann::json& pair) {
  return CplxRat(BigRat::parse(pair[0].get<std::string>()), BigRat::parse(pair[1].get<std::string>()));
}

Params params_of(const nlohmann::json& c) {
  Params p;
  p.q = BigRat::parse(c["q"].get<std::string>());
  p.beta = cplx_of(c["beta"]);
  p.betabar = cplx_of(c["betabar"]);
  return p;
}

AE terms_of(const nlohmann::json& terms) {
  AE f;
  for (const auto& t : terms)
    f += AE::monomial(CplxRat(BigRat::parse(t[2].get<std::string>()), BigRat::parse(t[3].get<std::string>())),
                      t[0].get<long>(), t[1].get<long>());
  return f;
}

Word word_of(const nlohmann::json& w) {
  Word out;
  for (const auto& f : w) {
    const std::string g = f[0].get<std::string>();
    Gen gen = g == "L" ? Gen::Lambda : g == "x" ? Gen::X : g == "d1" ? Gen::D1 : Gen::Db1;
    out.push_back({gen, f[1].get<long>()});
  }
  return out;
}

}  // namespace

TEST_CASE("canonical forms agree with the lattice-operator oracle") {
  auto g = golden();
  int words = 0, exprs = 0;
  for (const auto& c : g["cases"]) {
    Algebra alg(params_of(c));
    AE want = terms_of(c["terms"]);
    if (c["kind"] == "word") {
      Word w = word_of(c["word"]);
      INFO("q=", c["q"].get<std::string>(), " ", word_str(w));
      CHECK(alg.normal_order(w, OrderMode::Eliminate) == want);
      ++words;
    } else {
      const std::string text = c["expr"].get<std::string>();
      INFO("q=", c["q"].get<std::string>(), " ", text);
      auto v = expr::evaluate(expr::parse(text), alg);
      REQUIRE(std::holds_alternative<AE>(v));
      CHECK(std::get<AE>(v) == want);
      ++exprs;
    }
  }
  CHECK(words >= 90);
  CHECK(exprs >= 250);
}

TEST_CASE("closed-form values") {
  Algebra alg(BigRat(3, 2));
  Calculus calc(alg);
  auto eval = [&](const char* s, const Algebra& a) { return expr::to_string(expr::evaluate(expr::parse(s), a)); };
  CHECK(eval("x*L", alg) == "3/2*L^1*x^1");
  CHECK(eval("e1(L)", alg) == "0");
  CHECK(eval("eb1(L)", alg) == "0");
  CHECK(eval("star(L)", alg) == "L^-1");
  Algebra two(BigRat(2));
  CHECK(eval("e1(x^3)", two) == "14*L^1*x^3");

  // c1 = z^-1(conj(beta) + q^-1 betabar)
  Params p;
  p.beta = CplxRat(BigRat(1, 2), BigRat(1));
  p.betabar = CplxRat(BigRat(2, 3), BigRat(-1, 3));
  Algebra cplx_alg(p);
  CplxRat c1 = CplxRat(cplx_alg.zinv()) * (p.beta.conj() + CplxRat(p.q.inverse()) * p.betabar);
  auto sb = verify_relation(cplx_alg, "starbar");
  CHECK(sb.pass);
  CHECK(sb.detail.find("c1 = " + c1.str()) != std::string::npos);

  // D(dx) = q^2 L^2 x theta⊗theta for the flat connection
  CHECK(connection_Ddx(calc, ConnectionSpec::flat(alg)).first == AE::monomial(CplxRat(BigRat(9, 4)), 2, 1));
  CHECK(connection_Ddx(calc, ConnectionSpec::non_local(alg)).first.is_zero());
  CHECK(nonbilinearity_witness(calc, MetricSpec::non_local()).factor == BigRat(9, 4));

  // dispersion: maximum 1 at k = pi/2, phonon overlay |sin(k/2)|, E(0) = m
  auto curve = dispersion_scan(0.0, M_PI, 101);
  CHECK(curve.samples[50].E == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& s : curve.samples) CHECK(s.E_phonon == doctest::Approx(std::abs(std::sin(s.k / 2))));
  CHECK(dispersion_scan(0.5, 0.0, 3).samples[0].E == doctest::Approx(0.5));

  // local metric: ds = 1 in Planck units and z in laboratory units
  Window planck = Window::make(-16, 16, Boundary::Open, alg.q());
  Window lab = Window::make(-16, 16, Boundary::Open, alg.q(), Units::Laboratory);
  for (long k = -4; k <= 4; ++k) {
    CHECK(distance(alg, MetricSpec::local_real(), k, planck) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(distance(alg, MetricSpec::local_real(), k, lab) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  }
}
