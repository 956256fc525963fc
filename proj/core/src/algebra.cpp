#include "qline/algebra.hpp"

#include <cstdlib>
#include <tuple>

namespace qline {

AlgebraElement::AlgebraElement(const CplxRat& scalar) {
  if (!scalar.is_zero()) terms_.emplace(Exps{}, scalar);
}

AlgebraElement AlgebraElement::monomial(const CplxRat& coeff, long a, long b, long c, long d) {
  if (c < 0 || d < 0) throw std::invalid_argument("derivative powers must be nonnegative");
  AlgebraElement e;
  e.add_term(Exps{a, b, c, d}, coeff);
  return e;
}

bool AlgebraElement::derivative_free() const {
  for (const auto& [e, c] : terms_)
    if (!e.derivative_free()) return false;
  return true;
}

bool AlgebraElement::has_d1() const {
  for (const auto& [e, c] : terms_)
    if (e.c > 0) return true;
  return false;
}

bool AlgebraElement::has_db1() const {
  for (const auto& [e, c] : terms_)
    if (e.d > 0) return true;
  return false;
}

CplxRat AlgebraElement::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? CplxRat() : it->second;
}

long AlgebraElement::reach() const {
  long r = 0;
  for (const auto& [e, c] : terms_) r = std::max(r, std::labs(e.a) + e.c + e.d);
  return r;
}

void AlgebraElement::add_term(const Exps& e, const CplxRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const CplxRat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

namespace {

void append_factor(std::string& out, const char* sym, long p) {
  if (p == 0) return;
  if (!out.empty()) out += "*";
  out += sym;
  out += "^" + std::to_string(p);
}

// Returns the printed coefficient and whether the term should be subtracted.
std::pair<std::string, bool> coeff_text(const CplxRat& c) {
  bool neg = (c.is_real() && c.re().sign() < 0) || (c.re().is_zero() && c.im().sign() < 0);
  CplxRat m = neg ? -c : c;
  std::string s = m.str();
  if (!m.re().is_zero() && !m.im().is_zero()) s = "(" + s + ")";
  return {s, neg};
}

}  // namespace

std::string AlgebraElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    auto [ctext, neg] = coeff_text(c);
    std::string gens;
    append_factor(gens, "L", e.a);
    append_factor(gens, "x", e.b);
    append_factor(gens, "d1", e.c);
    append_factor(gens, "db1", e.d);
    std::string term;
    if (gens.empty()) term = ctext;
    else if (ctext == "1") term = gens;
    else term = ctext + "*" + gens;
    if (first) out += neg ? "-" + term : term;
    else out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& f : w) {
    if (!out.empty()) out += "*";
    switch (f.gen) {
      case Gen::Lambda: out += "L"; break;
      case Gen::X: out += "x"; break;
      case Gen::D1: out += "d1"; break;
      case Gen::Db1: out += "db1"; break;
    }
    if (f.power != 1) out += "^" + std::to_string(f.power);
  }
  return out;
}

Algebra::Algebra(Params p) : p_(std::move(p)) {
  if (p_.q.sign() <= 0) throw std::invalid_argument("q must be positive");
  qinv_ = p_.q.inverse();
}

BigRat Algebra::z() const { return z_of(p_.q); }

BigRat Algebra::qint(const BigRat& base, long n) {
  BigRat s;
  if (n > 0)
    for (long i = 0; i < n; ++i) s += qpow(base, i);
  else
    for (long i = 1; i <= -n; ++i) s -= qpow(base, -i);
  return s;
}

AlgebraElement Algebra::mul_monomial(const Exps& m1, const Exps& m2) const {
  if (m1.d > 0 && m2.c > 0) throw NoExchangeRule();
  const BigRat& q = p_.q;
  BigRat pre = qpow(q, m2.a * m1.b) * qpow(q, -m2.a * (m1.c + m1.d));

  // db1^d1 x^b2 = sum x^m db1^e
  std::map<std::pair<long, long>, BigRat> bar{{{m2.b, 0}, BigRat(1)}};
  for (long i = 0; i < m1.d; ++i) {
    std::map<std::pair<long, long>, BigRat> next;
    for (const auto& [key, co] : bar) {
      auto [m, e] = key;
      if (m != 0) next[{m - 1, e}] += co * qint(qinv_, m);
      next[{m, e + 1}] += co * qpow(q, -m);
    }
    bar.swap(next);
  }
  // d1^c1 (x^m db1^e) = sum x^m' d1^f db1^e
  std::map<std::tuple<long, long, long>, BigRat> full;
  for (const auto& [key, co] : bar) full[{key.first, 0, key.second}] += co;
  for (long i = 0; i < m1.c; ++i) {
    std::map<std::tuple<long, long, long>, BigRat> next;
    for (const auto& [key, co] : full) {
      auto [m, f, e] = key;
      if (m != 0) next[{m - 1, f, e}] += co * qint(q, m);
      next[{m, f + 1, e}] += co * qpow(q, m);
    }
    full.swap(next);
  }

  AlgebraElement r;
  for (const auto& [key, co] : full) {
    if (co.is_zero()) continue;
    auto [m, f, e] = key;
    r.add_term(Exps{m1.a + m2.a, m1.b + m, f + m2.c, e + m2.d}, CplxRat(pre * co));
  }
  return r;
}

AlgebraElement Algebra::mul(const AlgebraElement& f, const AlgebraElement& g) const {
  AlgebraElement r;
  for (const auto& [e1, c1] : f.terms())
    for (const auto& [e2, c2] : g.terms()) {
      CplxRat c = c1 * c2;
      AlgebraElement m = mul_monomial(e1, e2);
      for (const auto& [e, c3] : m.terms()) r.add_term(e, c * c3);
    }
  return r;
}

AlgebraElement Algebra::mul(std::initializer_list<AlgebraElement> fs) const {
  AlgebraElement r(1);
  for (const auto& f : fs) r = mul(r, f);
  return r;
}

AlgebraElement Algebra::pow(const AlgebraElement& f, long n) const {
  if (n < 0) return pow(inverse(f), -n);
  AlgebraElement r(1);
  for (long i = 0; i < n; ++i) r = mul(r, f);
  return r;
}

AlgebraElement Algebra::commutator(const AlgebraElement& f, const AlgebraElement& g) const {
  return mul(f, g) - mul(g, f);
}

AlgebraElement Algebra::inverse(const AlgebraElement& f) const {
  if (f.size() != 1 || !f.derivative_free())
    throw std::domain_error("only single derivative-free monomials are invertible: " + f.str());
  const auto& [e, c] = *f.terms().begin();
  // (c L^a x^b)^-1 = c^-1 x^-b L^-a = c^-1 q^{ab} L^-a x^-b
  return AlgebraElement::monomial(c.inverse() * CplxRat(qpow(p_.q, e.a * e.b)), -e.a, -e.b);
}

AlgebraElement Algebra::generator(Gen g, long power) const {
  switch (g) {
    case Gen::Lambda: return AlgebraElement::lambda(power);
    case Gen::X: return AlgebraElement::x(power);
    case Gen::D1:
      if (power < 0) throw std::invalid_argument("d1 has no inverse");
      return AlgebraElement::monomial(1, 0, 0, power, 0);
    case Gen::Db1:
      if (power < 0) throw std::invalid_argument("db1 has no inverse");
      return AlgebraElement::monomial(1, 0, 0, 0, power);
  }
  return {};
}

AlgebraElement Algebra::normal_order(const Word& w, OrderMode mode, Strategy s) const {
  if (s != Strategy::Kernel) {
    if (mode == OrderMode::Strict) return rewrite_word(*this, w, s);
    // substitute eliminated derivatives letter by letter, then rewrite each word
    std::vector<std::pair<CplxRat, Word>> acc{{CplxRat(1), {}}};
    const BigRat zi = zinv(), qzi = (p_.q - BigRat(1)).inverse();
    for (const auto& f : w) {
      std::vector<std::pair<CplxRat, Word>> opts;
      if (f.gen == Gen::D1) {
        opts = {{p_.beta * CplxRat(qzi), {{Gen::X, -1}, {Gen::Lambda, -1}}},
                {CplxRat(-qzi), {{Gen::X, -1}}}};
      } else if (f.gen == Gen::Db1) {
        opts = {{p_.betabar * CplxRat(zi), {{Gen::X, -1}, {Gen::Lambda, 1}}},
                {CplxRat(zi), {{Gen::X, -1}}}};
      } else {
        opts = {{CplxRat(1), {f}}};
      }
      long reps = (f.gen == Gen::D1 || f.gen == Gen::Db1) ? f.power : 1;
      if (reps < 0) throw std::invalid_argument("derivatives have no inverse");
      for (long r = 0; r < reps; ++r) {
        std::vector<std::pair<CplxRat, Word>> next;
        for (const auto& [c, word] : acc)
          for (const auto& [c2, piece] : opts) {
            Word nw = word;
            nw.insert(nw.end(), piece.begin(), piece.end());
            next.emplace_back(c * c2, std::move(nw));
          }
        acc.swap(next);
      }
    }
    AlgebraElement r;
    for (const auto& [c, word] : acc) r += c * rewrite_word(*this, word, s);
    return r;
  }

  AlgebraElement r(1);
  for (const auto& f : w) {
    AlgebraElement g = generator(f.gen, f.power);
    if (mode == OrderMode::Eliminate) g = eliminate(g);
    r = mul(r, g);
  }
  return r;
}

AlgebraElement Algebra::d1_eliminated(const CplxRat& beta) const {
  if (beta.is_zero()) throw std::invalid_argument("beta must be nonzero for elimination");
  AlgebraElement xi = AlgebraElement::x(-1);
  AlgebraElement t = beta * mul(xi, AlgebraElement::lambda(-1)) - xi;
  return CplxRat((p_.q - BigRat(1)).inverse()) * t;
}

AlgebraElement Algebra::db1_eliminated(const CplxRat& betabar) const {
  if (betabar.is_zero()) throw std::invalid_argument("betabar must be nonzero for elimination");
  AlgebraElement xi = AlgebraElement::x(-1);
  AlgebraElement t = betabar * mul(xi, AlgebraElement::lambda(1)) + xi;
  return CplxRat(zinv()) * t;
}

AlgebraElement Algebra::eliminate(const AlgebraElement& f, const CplxRat& beta,
                                  const CplxRat& betabar) const {
  if (f.derivative_free()) return f;
  AlgebraElement ed = f.has_d1() ? d1_eliminated(beta) : AlgebraElement();
  AlgebraElement edb = f.has_db1() ? db1_eliminated(betabar) : AlgebraElement();
  AlgebraElement r;
  for (const auto& [e, c] : f.terms()) {
    AlgebraElement t = AlgebraElement::monomial(c, e.a, e.b);
    for (long i = 0; i < e.c; ++i) t = mul(t, ed);
    for (long i = 0; i < e.d; ++i) t = mul(t, edb);
    r += t;
  }
  return r;
}

namespace {

AlgebraElement action_part(const AlgebraElement& f) {
  AlgebraElement r;
  for (const auto& [e, c] : f.terms())
    if (e.derivative_free()) r.add_term(e, c);
  return r;
}

}  // namespace

AlgebraElement Algebra::d1_action(const AlgebraElement& f) const {
  if (!f.derivative_free()) throw std::domain_error("d1 acts on derivative-free elements");
  return action_part(mul(AlgebraElement::d1(), f));
}

AlgebraElement Algebra::db1_action(const AlgebraElement& f) const {
  if (!f.derivative_free()) throw std::domain_error("db1 acts on derivative-free elements");
  return action_part(mul(AlgebraElement::db1(), f));
}

AlgebraElement Algebra::star(const AlgebraElement& f) const {
  if (!f.derivative_free())
    throw std::domain_error("involution is undefined on derivative symbols; eliminate first");
  AlgebraElement r;
  for (const auto& [e, c] : f.terms())
    r.add_term(Exps{-e.a, e.b, 0, 0}, c.conj() * CplxRat(qpow(p_.q, -e.a * e.b)));
  return r;
}

AlgebraElement Algebra::lambda1() const { return AlgebraElement::monomial(CplxRat(-zinv()), 1, 0); }
AlgebraElement Algebra::lambda1bar() const { return AlgebraElement::monomial(CplxRat(zinv()), -1, 0); }

AlgebraElement Algebra::e1(const AlgebraElement& f) const {
  if (!f.derivative_free()) throw std::domain_error("e1 acts on derivative-free elements");
  return commutator(lambda1(), f);
}

AlgebraElement Algebra::e1bar(const AlgebraElement& f) const {
  if (!f.derivative_free()) throw std::domain_error("eb1 acts on derivative-free elements");
  return commutator(lambda1bar(), f);
}

AlgebraElement Algebra::e1_operator() const {
  return CplxRat(zinv()) * (AlgebraElement(p_.beta) - AlgebraElement::lambda(1));
}

AlgebraElement Algebra::e1bar_operator() const {
  return CplxRat(zinv()) * (AlgebraElement(p_.betabar) + AlgebraElement::lambda(-1));
}

DoubledElement Algebra::mul(const DoubledElement& f, const DoubledElement& g) const {
  return {mul(f.first, g.first), mul(f.second, g.second)};
}

DoubledElement Algebra::commutator(const DoubledElement& f, const DoubledElement& g) const {
  return mul(f, g) - mul(g, f);
}

DoubledElement Algebra::star(const DoubledElement& f) const { return {star(f.second), star(f.first)}; }

DoubledElement Algebra::lambdaR() const { return {lambda1(), lambda1bar()}; }

DoubledElement Algebra::eR1(const DoubledElement& f) const { return {e1(f.first), e1bar(f.second)}; }

DoubledElement Algebra::cR() const {
  CplxRat zi(zinv());
  return {AlgebraElement(zi * p_.beta), AlgebraElement(zi * p_.betabar)};
}

DoubledElement Algebra::eR1_operator() const { return {e1_operator(), e1bar_operator()}; }

}  // namespace qline
