#include "qline/relations.hpp"

#include <functional>
#include <map>

namespace qline {

namespace {

using AE = AlgebraElement;
using DE = DoubledElement;

// Accumulates several exact comparisons into one report.
struct Collector {
  CheckReport rep;
  explicit Collector(std::string name) { rep.name = std::move(name); rep.pass = true; }

  void eq(const std::string& what, const AE& lhs, const AE& rhs) {
    AE diff = lhs - rhs;
    if (!diff.is_zero()) {
      rep.pass = false;
      if (!rep.residual.empty()) rep.residual += "; ";
      rep.residual += what + ": " + diff.str();
    }
  }
  void eq(const std::string& what, const DE& lhs, const DE& rhs) {
    DE diff = lhs - rhs;
    if (!diff.is_zero()) {
      rep.pass = false;
      if (!rep.residual.empty()) rep.residual += "; ";
      rep.residual += what + ": " + diff.str();
    }
  }
  void note(const std::string& s) {
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += s;
  }
  CheckReport done() {
    if (rep.pass) rep.residual = "0";
    return rep;
  }
};

AE mono(const CplxRat& c, long a, long b) { return AE::monomial(c, a, b); }

CheckReport lambdax(const Algebra& alg) {
  Collector c("lambdax");
  const BigRat& q = alg.q();
  Word w{{Gen::X, 1}, {Gen::Lambda, 1}};
  AE expect = mono(CplxRat(q), 1, 1);
  c.eq("x*L kernel", alg.normal_order(w), expect);
  c.eq("x*L leftmost", alg.normal_order(w, OrderMode::Strict, Strategy::Leftmost), expect);
  c.eq("x*L rightmost", alg.normal_order(w, OrderMode::Strict, Strategy::Rightmost), expect);
  for (long n = -4; n <= 4; ++n)
    for (long m = -2; m <= 2; ++m) {
      Word wn{{Gen::X, n}, {Gen::Lambda, m}};
      c.eq("x^" + std::to_string(n) + "*L^" + std::to_string(m),
           rewrite_word(alg, wn, Strategy::Leftmost), mono(CplxRat(qpow(q, n * m)), m, n));
    }
  return c.done();
}

CheckReport comrel(const Algebra& alg, bool bar) {
  Collector c(bar ? "barcomrel" : "comrel");
  const BigRat& q = alg.q();
  Gen g = bar ? Gen::Db1 : Gen::D1;
  AE dsym = alg.generator(g, 1);
  BigRat qx = bar ? q.inverse() : q;
  AE rhs_x = AE(1) + CplxRat(qx) * alg.mul(AE::x(), dsym);
  AE rhs_l = CplxRat(q.inverse()) * alg.mul(AE::lambda(), dsym);
  for (Strategy s : {Strategy::Kernel, Strategy::Leftmost, Strategy::Rightmost}) {
    c.eq("d*x", alg.normal_order({{g, 1}, {Gen::X, 1}}, OrderMode::Strict, s), rhs_x);
    c.eq("d*L", alg.normal_order({{g, 1}, {Gen::Lambda, 1}}, OrderMode::Strict, s), rhs_l);
  }
  return c.done();
}

CheckReport e_closed(const Algebra& alg) {
  Collector c("e_closed");
  const BigRat& q = alg.q();
  BigRat zi = alg.zinv();
  for (long n = -4; n <= 4; ++n) {
    AE xn = AE::x(n);
    c.eq("e1 x^" + std::to_string(n), alg.e1(xn),
         mono(CplxRat(zi * (qpow(q, n) - BigRat(1))), 1, n));
    c.eq("eb1 x^" + std::to_string(n), alg.e1bar(xn),
         mono(CplxRat(zi * (BigRat(1) - qpow(q, -n))), -1, n));
  }
  c.eq("e1 L", alg.e1(AE::lambda()), AE());
  c.eq("eb1 L", alg.e1bar(AE::lambda()), AE());
  c.eq("e1 x", alg.e1(AE::x()), mono(CplxRat(q), 1, 1));
  return c.done();
}

CheckReport e_comrel(const Algebra& alg) {
  Collector c("e_comrel");
  AE e = alg.e1_operator(), eb = alg.e1bar_operator();
  AE x = AE::x(), L = AE::lambda();
  c.eq("e1 x", alg.mul(e, x), mono(CplxRat(alg.q()), 1, 1) + alg.mul(x, e));
  c.eq("e1 L", alg.mul(e, L), alg.mul(L, e));
  c.eq("eb1 x", alg.mul(eb, x), mono(1, -1, 1) + alg.mul(x, eb));
  c.eq("eb1 L", alg.mul(eb, L), alg.mul(L, eb));
  return c.done();
}

CheckReport starbar(const Algebra& alg) {
  Collector c("starbar");
  const auto& p = alg.params();
  BigRat zi = alg.zinv();
  AE lhs = CplxRat(alg.q()) * alg.star(alg.d1_eliminated(p.beta)) + alg.db1_eliminated(p.betabar);
  CplxRat c1 = CplxRat(zi) * (p.beta.conj() + CplxRat(alg.q().inverse()) * p.betabar);
  c.eq("q d1* + db1", lhs, alg.mul(c1 * AE::lambda(), AE::x(-1)));
  c.note("c1 = " + c1.str());
  return c.done();
}

CheckReport c2(const Algebra& alg) {
  Collector c("c2");
  const auto& p = alg.params();
  CplxRat c2v = CplxRat(alg.zinv()) * (p.beta.conj() + p.betabar);
  c.eq("e1* + eb1", alg.star(alg.e1_operator()) + alg.e1bar_operator(), AE(c2v));
  c.note("c2 = " + c2v.str());
  return c.done();
}

CheckReport transfor(const Algebra& alg) {
  Collector c("transfor");
  const auto& p = alg.params();
  AE li = AE::lambda(-1), xi = AE::x(-1);
  c.eq("d1", alg.d1_eliminated(p.beta), alg.mul({li, xi, alg.e1_operator()}));
  c.eq("db1", alg.db1_eliminated(p.betabar),
       CplxRat(alg.q().inverse()) * alg.mul({AE::lambda(), xi, alg.e1bar_operator()}));
  return c.done();
}

// The eliminated derivatives must satisfy the exchange relations they replace.
CheckReport lambda_rel(const Algebra& alg) {
  Collector c("lambda");
  const auto& p = alg.params();
  const BigRat& q = alg.q();
  AE d = alg.d1_eliminated(p.beta), db = alg.db1_eliminated(p.betabar);
  AE x = AE::x(), L = AE::lambda();
  c.eq("beta L^-1 = 1 + q z x d1", AE(1) + CplxRat(q * alg.z()) * alg.mul(x, d),
       p.beta * AE::lambda(-1));
  c.eq("betabar L = -1 + z x db1", AE(-1) + CplxRat(alg.z()) * alg.mul(x, db), p.betabar * L);
  c.eq("d1 x", alg.mul(d, x), AE(1) + CplxRat(q) * alg.mul(x, d));
  c.eq("d1 L", alg.mul(d, L), CplxRat(q.inverse()) * alg.mul(L, d));
  c.eq("db1 x", alg.mul(db, x), AE(1) + CplxRat(q.inverse()) * alg.mul(x, db));
  c.eq("db1 L", alg.mul(db, L), CplxRat(q.inverse()) * alg.mul(L, db));
  return c.done();
}

CheckReport defect(const Algebra& alg) {
  Collector c("defect");
  const auto& p = alg.params();
  AE lhs = alg.mul(AE::x(), alg.star(alg.d1_eliminated(p.beta)) + alg.db1_eliminated(p.betabar));
  AE expected = AE(1) + (CplxRat(alg.zinv()) * (p.beta + p.betabar)) * AE::lambda();
  AE general = AE(1) + (CplxRat(alg.zinv()) * (p.beta.conj() + p.betabar)) * AE::lambda();
  c.eq("x(d1* + db1)", lhs, expected);
  c.note("lhs = " + lhs.str());
  c.note(lhs == general ? "matches 1 + z^-1(conj(beta) + betabar) L" : "general form mismatch");
  return c.done();
}

CheckReport dR1(const Algebra& alg) {
  Collector c("dR1");
  const auto& p = alg.params();
  const BigRat& q = alg.q();
  AE d = alg.d1_eliminated(p.beta);
  AE dR = CplxRat(BigRat(1, 2)) * (d - alg.star(d));
  AE x = AE::x(), L = AE::lambda(), Li = AE::lambda(-1);
  c.eq("q dR x = (q+1)/2 beta L^-1 + x dR", CplxRat(q) * alg.mul(dR, x),
       (CplxRat((q + BigRat(1)) / BigRat(2)) * p.beta) * Li + alg.mul(x, dR));
  c.eq("L dR = q dR L", alg.mul(L, dR), CplxRat(q) * alg.mul(dR, L));
  if (p.beta.is_real()) {
    CplxRat h = CplxRat(alg.zinv() / BigRat(2)) * p.beta;
    c.eq("x dR", alg.mul(x, dR), h * (CplxRat(q.inverse()) * Li - L));
    c.eq("dR x", alg.mul(dR, x), h * (Li - CplxRat(q.inverse()) * L));
  }
  return c.done();
}

CheckReport eR(const Algebra& alg) {
  Collector c("eR");
  const auto& p = alg.params();
  DE e = alg.eR1_operator();
  DE x = DE::embed(AE::x()), L = DE::embed(AE::lambda());
  c.eq("[eR1, x]", alg.commutator(e, x), DE(mono(CplxRat(alg.q()), 1, 1), mono(1, -1, 1)));
  c.eq("[eR1, L]", alg.commutator(e, L), DE());
  c.eq("eR1 = lambdaR + cR", e, alg.lambdaR() + alg.cR());
  int sign = 0;
  if (p.beta == CplxRat(1) && p.betabar == CplxRat(-1)) sign = 1;
  if (p.beta == CplxRat(-1) && p.betabar == CplxRat(1)) sign = -1;
  if (sign != 0) {
    CplxRat s(sign);
    CplxRat zi(alg.zinv());
    c.eq("cR = +-z^-1(1,-1)", alg.cR(), DE(AE(s * zi), AE(-s * zi)));
    c.eq("eR1 = +-(x db1, q x d1)", e,
         DE(s * alg.mul(AE::x(), alg.db1_eliminated(p.betabar)),
            s * CplxRat(alg.q()) * alg.mul(AE::x(), alg.d1_eliminated(p.beta))));
    c.eq("eR1 antihermitian", alg.star(e), -e);
  } else {
    c.note("beta != +-1 branch: c_R = z^-1(beta, betabar)");
  }
  return c.done();
}

CheckReport eRx(const Algebra& alg) {
  Collector c("eRx");
  DE x = DE::embed(AE::x());
  DE expect(mono(CplxRat(alg.q()), 1, 1), mono(1, -1, 1));
  c.eq("eR1 x", alg.eR1(x), expect);
  c.eq("eR1 x = (qL, L^-1) x", expect, alg.mul(DE(mono(CplxRat(alg.q()), 1, 0), mono(1, -1, 0)), x));
  c.eq("eR1 1", alg.eR1(DE::embed(AE(1))), DE());
  c.eq("eR1 L", alg.eR1(DE::embed(AE::lambda())), DE());
  return c.done();
}

const std::map<std::string, std::function<CheckReport(const Algebra&)>>& catalog() {
  static const std::map<std::string, std::function<CheckReport(const Algebra&)>> m = {
      {"lambdax", lambdax},
      {"comrel", [](const Algebra& a) { return comrel(a, false); }},
      {"barcomrel", [](const Algebra& a) { return comrel(a, true); }},
      {"e_closed", e_closed},
      {"e_comrel", e_comrel},
      {"starbar", starbar},
      {"c2", c2},
      {"transfor", transfor},
      {"lambda", lambda_rel},
      {"defect", defect},
      {"dR1", dR1},
      {"eR", eR},
      {"eRx", eRx},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& relation_names() {
  static const std::vector<std::string> names = {"lambdax", "comrel", "barcomrel", "e_closed",
                                                 "e_comrel", "starbar", "c2", "transfor",
                                                 "lambda", "defect", "dR1", "eR", "eRx"};
  return names;
}

CheckReport verify_relation(const Algebra& alg, const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw std::invalid_argument("unknown relation '" + name + "'");
  return it->second(alg);
}

}  // namespace qline
