#include <doctest.h>

#include "qline/exprparse.hpp"

#include <random>

using namespace qline;
using namespace qline::expr;
using AE = AlgebraElement;

namespace {

Node rand_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 5 : 11);
  std::uniform_int_distribution<int> width(2, 3), small(1, 5), expo(-3, 3), fn(0, 6);
  Node n;
  int k = pick(rng);
  if (k <= 5) {
    n.kind = NodeKind::Atom;
    n.atom = static_cast<AtomKind>(k);
    if (n.atom == AtomKind::Rational) n.value = BigRat(small(rng), small(rng));
    return n;
  }
  switch (k) {
    case 6: case 7: n.kind = NodeKind::Sum; break;
    case 8: case 9: n.kind = NodeKind::Product; break;
    case 10: n.kind = NodeKind::Power; n.exponent = expo(rng); break;
    default: n.kind = rng() % 2 ? NodeKind::Neg : NodeKind::Apply; n.func = static_cast<Func>(fn(rng)); break;
  }
  int kids = (n.kind == NodeKind::Sum || n.kind == NodeKind::Product) ? width(rng) : 1;
  for (int i = 0; i < kids; ++i) {
    Node c = rand_tree(rng, depth - 1);
    // the parser flattens nested sums and products and never yields a power of a power
    if (c.kind == n.kind && (c.kind == NodeKind::Sum || c.kind == NodeKind::Product)) c = rand_tree(rng, 0);
    if (n.kind == NodeKind::Power && c.kind == NodeKind::Power) c = c.kids[0];
    n.kids.push_back(std::move(c));
  }
  if (n.kind != NodeKind::Apply) n.func = Func::Star;
  return n;
}

}  // namespace

TEST_CASE("parse shapes") {
  Node p = parse("x*L");
  CHECK(p.kind == NodeKind::Product);
  CHECK(p.kids.size() == 2);
  CHECK(p.kids[0].atom == AtomKind::X);
  CHECK(p.kids[1].atom == AtomKind::L);

  Node e = parse("e1(x^3)");
  CHECK(e.kind == NodeKind::Apply);
  CHECK(e.func == Func::E1);
  CHECK(e.kids[0].kind == NodeKind::Power);
  CHECK(e.kids[0].exponent == 3);

  Node r = parse("1/2*i*L^-1");
  REQUIRE(r.kind == NodeKind::Product);
  REQUIRE(r.kids.size() == 3);
  CHECK(r.kids[0].value == BigRat(1, 2));
  CHECK(r.kids[1].atom == AtomKind::I);
  CHECK(r.kids[2].exponent == -1);

  CHECK(parse(" x  +\n L ") == parse("x+L"));
  CHECK(parse("x - L").kids[1].kind == NodeKind::Neg);
  CHECK(parse("2/4") == parse("1/2"));
  CHECK(parse("((x))") == parse("x"));
}

TEST_CASE("syntax errors carry line and column") {
  auto at = [](const char* s) {
    try {
      parse(s);
    } catch (const ParseError& e) {
      return std::make_pair(e.line, e.col);
    }
    return std::make_pair(0, 0);
  };
  CHECK(at("x +") == std::make_pair(1, 4));
  CHECK(at("x\n  * y") == std::make_pair(2, 5));
  CHECK(at("foo(x)") == std::make_pair(1, 1));
  CHECK(at("x^1/2") == std::make_pair(1, 3));
  CHECK(at("x^L") == std::make_pair(1, 3));
  CHECK(at("x L") == std::make_pair(1, 3));
  CHECK(at("(x") == std::make_pair(1, 3));
  CHECK(at("1/0") == std::make_pair(1, 3));
  CHECK(at("x^2^3") == std::make_pair(1, 4));
  CHECK(at("0.5*x") == std::make_pair(1, 2));
  try {
    parse("e2(x)");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()) == "1:1: unknown function 'e2'");
  }
}

TEST_CASE("print and reparse is a fixpoint") {
  for (const char* s : {"x*L", "e1(x^3)", "1/2*i*L^-1", "-(x*L)", "x - (L + x)", "-x^2", "(-x)^2", "x*-L",
                        "star(d(x)) - dR(x*L)", "(x + L)^-2*(x - 1)"}) {
    Node n = parse(s);
    CHECK(parse(print(n)) == n);
  }
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    Node n = rand_tree(rng, 4);
    std::string s = print(n);
    INFO(s);
    Node back = parse(s);
    CHECK(back == n);
    CHECK(print(back) == s);
  }
}

TEST_CASE("evaluation") {
  Algebra alg2(BigRat(2));
  // e1 x^n = z^-1 (q^n - 1) L x^n: at q = 2 this is 14 L x^3
  auto v = evaluate(parse("e1(x^3)"), alg2);
  CHECK(std::get<AE>(v) == AE::monomial(14, 1, 3));

  Algebra alg(BigRat(3, 2));
  CHECK(std::get<AE>(evaluate(parse("star(L)"), alg)) == AE::lambda(-1));
  auto d1 = evaluate(parse("d(1)"), alg);
  REQUIRE(std::holds_alternative<FormElement>(d1));
  CHECK(std::get<FormElement>(d1).degree() == 1);
  CHECK(std::get<FormElement>(d1).is_zero());

  CHECK(std::get<AE>(evaluate(parse("x*L - 3/2*L*x"), alg)) == AE()) ;
}

TEST_CASE("evaluation is multiplicative and typed") {
  Algebra alg(BigRat(3, 2));
  std::mt19937 rng(9);
  const char* words[] = {"x", "L", "L^-1", "x^-2", "i", "2/3", "(x + L)", "e1(x)", "star(x*L)", "d1", "db1"};
  std::uniform_int_distribution<int> pick(0, 10);
  for (int i = 0; i < 200; ++i) {
    std::string s = words[pick(rng)], t = words[pick(rng)];
    auto st = std::get<AE>(evaluate(parse(s + "*" + t), alg));
    auto a = std::get<AE>(evaluate(parse(s), alg)), b = std::get<AE>(evaluate(parse(t), alg));
    INFO(s, " * ", t);
    CHECK(st == alg.mul(a, b));
  }
  // doubled values
  auto r = evaluate(parse("eR1(x)"), alg);
  REQUIRE(std::holds_alternative<DoubledElement>(r));
  CHECK(std::get<DoubledElement>(r) == alg.eR1(DoubledElement::embed(AE::x())));
  // module actions and sums of forms in different bases of one calculus
  auto w = std::get<FormElement>(evaluate(parse("x*d(x) + d(x)*L"), alg));
  CHECK(w.degree() == 1);
  CHECK_THROWS_AS(evaluate(parse("d(x)*d(x)"), alg), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(parse("e1(d(x))"), alg), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(parse("d(x) + db(x)"), alg), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(parse("d(x)^2"), alg), std::invalid_argument);
  CHECK(std::get<FormElement>(evaluate(parse("d(d(x))"), alg)).degree() == 2);
  // elimination rewrites d1 through the defect relation
  auto el = std::get<AE>(evaluate(parse("d1"), alg, {true}));
  CHECK(el.derivative_free());
  CHECK(el == alg.eliminate(AE::d1()));
}
