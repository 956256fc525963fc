#pragma once

#include "qline/algebra.hpp"

#include <random>

namespace qline::testing {

inline CplxRat rand_coeff(std::mt19937& rng, bool complex = true) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  long n = num(rng);
  if (n == 0) n = 1;
  BigRat re(n, den(rng));
  BigRat im = complex ? BigRat(num(rng), den(rng)) : BigRat(0);
  return CplxRat(re, im);
}

// Random derivative-free element with up to `terms` monomials.
inline AlgebraElement rand_element(std::mt19937& rng, int terms = 3, long amax = 2, long bmax = 3,
                                   bool complex = true) {
  std::uniform_int_distribution<long> a(-amax, amax), b(-bmax, bmax);
  std::uniform_int_distribution<int> nt(1, terms);
  AlgebraElement f;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) f += AlgebraElement::monomial(rand_coeff(rng, complex), a(rng), b(rng));
  return f;
}

// Polynomial in x with real coefficients, no Lambda.
inline AlgebraElement rand_poly(std::mt19937& rng, long degmax = 3) {
  std::uniform_int_distribution<long> deg(0, degmax);
  std::uniform_int_distribution<int> nt(1, 3);
  AlgebraElement f;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) f += AlgebraElement::monomial(rand_coeff(rng, false), 0, deg(rng));
  return f;
}

enum class WordKind { NoDerivative, D1Only, Db1Only, Mixed };

inline Word rand_word(std::mt19937& rng, WordKind kind, int maxlen = 10) {
  std::uniform_int_distribution<int> len(0, maxlen), pick(0, 5), pw(-2, 2);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int g = pick(rng);
    if (g >= 4) {
      if (kind == WordKind::NoDerivative) g = g - 4;
      else if (kind == WordKind::D1Only) { w.push_back({Gen::D1, 1}); continue; }
      else if (kind == WordKind::Db1Only) { w.push_back({Gen::Db1, 1}); continue; }
      else { w.push_back({g == 4 ? Gen::D1 : Gen::Db1, 1}); continue; }
    }
    long p = pw(rng);
    if (p == 0) p = 1;
    w.push_back({g % 2 == 0 ? Gen::Lambda : Gen::X, p});
  }
  return w;
}

}  // namespace qline::testing
