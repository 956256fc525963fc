#pragma once

#include "qline/exactnum.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qline {

// Exponents of the canonical monomial L^a x^b d1^c db1^d.
struct Exps {
  long a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const Exps&) const = default;
  bool derivative_free() const { return c == 0 && d == 0; }
};

class AlgebraElement {
public:
  using Terms = std::map<Exps, CplxRat>;

  AlgebraElement() = default;
  AlgebraElement(const CplxRat& scalar);
  AlgebraElement(long scalar) : AlgebraElement(CplxRat(scalar)) {}

  static AlgebraElement monomial(const CplxRat& coeff, long a, long b, long c = 0, long d = 0);
  static AlgebraElement lambda(long a = 1) { return monomial(1, a, 0); }
  static AlgebraElement x(long b = 1) { return monomial(1, 0, b); }
  static AlgebraElement d1() { return monomial(1, 0, 0, 1, 0); }
  static AlgebraElement db1() { return monomial(1, 0, 0, 0, 1); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool derivative_free() const;
  bool has_d1() const;
  bool has_db1() const;
  CplxRat coeff(const Exps& e) const;
  // Largest sum of shift reaches |a| + c + d over the monomials.
  long reach() const;

  void add_term(const Exps& e, const CplxRat& c);

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const CplxRat& s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const CplxRat& s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, const CplxRat& s) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  // "coeff*L^a*x^b*d1^c*db1^d" terms joined by " + " / " - ", "0" for zero.
  std::string str() const;

private:
  Terms terms_;
};

struct DoubledElement {
  AlgebraElement first, second;

  DoubledElement() = default;
  DoubledElement(AlgebraElement f, AlgebraElement g) : first(std::move(f)), second(std::move(g)) {}
  static DoubledElement embed(const AlgebraElement& f) { return {f, f}; }

  bool is_zero() const { return first.is_zero() && second.is_zero(); }
  DoubledElement operator-() const { return {-first, -second}; }
  DoubledElement& operator+=(const DoubledElement& o) { first += o.first; second += o.second; return *this; }
  DoubledElement& operator-=(const DoubledElement& o) { first -= o.first; second -= o.second; return *this; }
  friend DoubledElement operator+(DoubledElement a, const DoubledElement& b) { return a += b; }
  friend DoubledElement operator-(DoubledElement a, const DoubledElement& b) { return a -= b; }
  friend DoubledElement operator*(const CplxRat& s, const DoubledElement& a) { return {s * a.first, s * a.second}; }
  friend bool operator==(const DoubledElement&, const DoubledElement&) = default;

  std::string str() const { return "(" + first.str() + ", " + second.str() + ")"; }
};

// Raised when a product would need db1 to pass d1; no such relation exists.
struct NoExchangeRule : std::domain_error {
  NoExchangeRule()
      : std::domain_error("no exchange rule between db1 and d1; use eliminate mode") {}
};

struct Params {
  BigRat q = BigRat(3, 2);
  CplxRat alpha = 1, alphabar = 1;
  CplxRat beta = 1, betabar = -1;
};

enum class Gen { Lambda, X, D1, Db1 };

struct Factor {
  Gen gen;
  long power;
};
using Word = std::vector<Factor>;

std::string word_str(const Word& w);

enum class OrderMode { Strict, Eliminate };
enum class Strategy { Kernel, Leftmost, Rightmost };

class Algebra {
public:
  // q > 0; q = 1 is accepted for kernel-only use, but z() then throws.
  explicit Algebra(Params p);
  explicit Algebra(const BigRat& q) : Algebra(Params{q}) {}

  const Params& params() const { return p_; }
  const BigRat& q() const { return p_.q; }
  BigRat z() const;
  BigRat zinv() const { return z().inverse(); }
  // [n]_base = (base^n - 1)/(base - 1), valid for every integer n.
  static BigRat qint(const BigRat& base, long n);

  AlgebraElement mul(const AlgebraElement& f, const AlgebraElement& g) const;
  AlgebraElement mul(std::initializer_list<AlgebraElement> fs) const;
  AlgebraElement pow(const AlgebraElement& f, long n) const;
  AlgebraElement commutator(const AlgebraElement& f, const AlgebraElement& g) const;
  // Inverse of a single derivative-free monomial.
  AlgebraElement inverse(const AlgebraElement& f) const;

  AlgebraElement generator(Gen g, long power) const;
  AlgebraElement normal_order(const Word& w, OrderMode mode = OrderMode::Strict,
                              Strategy s = Strategy::Kernel) const;

  AlgebraElement eliminate(const AlgebraElement& f) const { return eliminate(f, p_.beta, p_.betabar); }
  AlgebraElement eliminate(const AlgebraElement& f, const CplxRat& beta, const CplxRat& betabar) const;
  // d1 and db1 expressed inside the algebra.
  AlgebraElement d1_eliminated(const CplxRat& beta) const;
  AlgebraElement db1_eliminated(const CplxRat& betabar) const;

  // Part of d1*f (resp. db1*f) with no derivative left over: the action on f.
  AlgebraElement d1_action(const AlgebraElement& f) const;
  AlgebraElement db1_action(const AlgebraElement& f) const;

  AlgebraElement star(const AlgebraElement& f) const;
  AlgebraElement lambda1() const;
  AlgebraElement lambda1bar() const;
  AlgebraElement e1(const AlgebraElement& f) const;
  AlgebraElement e1bar(const AlgebraElement& f) const;
  // Operator forms z^-1(beta - L) and z^-1(betabar + L^-1).
  AlgebraElement e1_operator() const;
  AlgebraElement e1bar_operator() const;

  DoubledElement mul(const DoubledElement& f, const DoubledElement& g) const;
  DoubledElement commutator(const DoubledElement& f, const DoubledElement& g) const;
  DoubledElement star(const DoubledElement& f) const;
  DoubledElement lambdaR() const;
  DoubledElement eR1(const DoubledElement& f) const;
  DoubledElement cR() const;
  DoubledElement eR1_operator() const;

private:
  AlgebraElement mul_monomial(const Exps& m1, const Exps& m2) const;

  Params p_;
  BigRat qinv_;
};

// Term-rewriting normal form over single letters, independent of the closed-form product.
AlgebraElement rewrite_word(const Algebra& alg, const Word& w, Strategy s);

}  // namespace qline
