// Letter-level rewriting system for the defining relations. Each rule rewrites
// one adjacent out-of-order pair; the closed-form product in algebra.cpp never
// calls into this file, so the two can check each other.
#include "qline/algebra.hpp"

#include <cstdint>

namespace qline {

namespace {

enum Letter : std::uint8_t { L, Li, X, Xi, D, Db };

int rank(Letter u) {
  switch (u) {
    case L: case Li: return 0;
    case X: case Xi: return 1;
    case D: return 2;
    case Db: return 3;
  }
  return 0;
}

bool inverse_pair(Letter u, Letter v) {
  return (u == L && v == Li) || (u == Li && v == L) || (u == X && v == Xi) || (u == Xi && v == X);
}

bool is_redex(Letter u, Letter v) { return rank(u) > rank(v) || inverse_pair(u, v); }

using Letters = std::vector<Letter>;
using Rhs = std::vector<std::pair<BigRat, Letters>>;

Rhs apply_rule(Letter u, Letter v, const BigRat& q, const BigRat& qi) {
  if (inverse_pair(u, v)) return {{BigRat(1), {}}};
  if (u == Db && v == D) throw NoExchangeRule();
  switch (u) {
    case X:
      return v == L ? Rhs{{q, {L, X}}} : Rhs{{qi, {Li, X}}};
    case Xi:
      return v == L ? Rhs{{qi, {L, Xi}}} : Rhs{{q, {Li, Xi}}};
    case D:
      switch (v) {
        case L: return {{qi, {L, D}}};
        case Li: return {{q, {Li, D}}};
        case X: return {{BigRat(1), {}}, {q, {X, D}}};
        case Xi: return {{-qi, {Xi, Xi}}, {qi, {Xi, D}}};
        default: break;
      }
      break;
    case Db:
      switch (v) {
        case L: return {{qi, {L, Db}}};
        case Li: return {{q, {Li, Db}}};
        case X: return {{BigRat(1), {}}, {qi, {X, Db}}};
        case Xi: return {{-q, {Xi, Xi}}, {q, {Xi, Db}}};
        default: break;
      }
      break;
    default:
      break;
  }
  throw std::logic_error("rewrite: no rule for a non-redex pair");
}

Letters expand(const Word& w) {
  Letters out;
  for (const auto& f : w) {
    Letter pos{}, neg{};
    switch (f.gen) {
      case Gen::Lambda: pos = L; neg = Li; break;
      case Gen::X: pos = X; neg = Xi; break;
      case Gen::D1:
        if (f.power < 0) throw std::invalid_argument("d1 has no inverse");
        pos = D;
        break;
      case Gen::Db1:
        if (f.power < 0) throw std::invalid_argument("db1 has no inverse");
        pos = Db;
        break;
    }
    for (long i = 0; i < std::labs(f.power); ++i) out.push_back(f.power > 0 ? pos : neg);
  }
  return out;
}

Exps exps_of(const Letters& w) {
  Exps e;
  for (Letter u : w) {
    switch (u) {
      case L: ++e.a; break;
      case Li: --e.a; break;
      case X: ++e.b; break;
      case Xi: --e.b; break;
      case D: ++e.c; break;
      case Db: ++e.d; break;
    }
  }
  return e;
}

}  // namespace

AlgebraElement rewrite_word(const Algebra& alg, const Word& w, Strategy s) {
  const BigRat q = alg.q(), qi = q.inverse();
  std::map<Letters, CplxRat> pending{{expand(w), CplxRat(1)}};
  AlgebraElement done;
  while (!pending.empty()) {
    std::map<Letters, CplxRat> next;
    for (const auto& [word, c] : pending) {
      if (c.is_zero()) continue;
      std::ptrdiff_t at = -1;
      if (s == Strategy::Rightmost) {
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(word.size()) - 2; i >= 0; --i)
          if (is_redex(word[i], word[i + 1])) { at = i; break; }
      } else {
        for (std::size_t i = 0; i + 1 < word.size(); ++i)
          if (is_redex(word[i], word[i + 1])) { at = static_cast<std::ptrdiff_t>(i); break; }
      }
      if (at < 0) {
        done.add_term(exps_of(word), c);
        continue;
      }
      for (const auto& [co, piece] : apply_rule(word[at], word[at + 1], q, qi)) {
        Letters nw(word.begin(), word.begin() + at);
        nw.insert(nw.end(), piece.begin(), piece.end());
        nw.insert(nw.end(), word.begin() + at + 2, word.end());
        auto& slot = next[nw];
        slot += c * CplxRat(co);
      }
    }
    pending.swap(next);
  }
  return done;
}

}  // namespace qline
