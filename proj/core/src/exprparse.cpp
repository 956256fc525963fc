#include "qline/exprparse.hpp"

#include <cctype>

namespace qline::expr {

const char* func_name(Func f) {
  switch (f) {
    case Func::E1: return "e1";
    case Func::Eb1: return "eb1";
    case Func::ER1: return "eR1";
    case Func::D: return "d";
    case Func::Db: return "db";
    case Func::DR: return "dR";
    case Func::Star: return "star";
  }
  return "?";
}

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c), message(msg) {}

namespace {

Node make(NodeKind k, std::vector<Node> kids = {}) {
  Node n;
  n.kind = k;
  n.kids = std::move(kids);
  return n;
}

Node atom(AtomKind a) {
  Node n;
  n.atom = a;
  return n;
}

class Parser {
public:
  explicit Parser(std::string_view t) : text_(t) {}

  Node run() {
    Node n = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return n;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, msg);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Node expr() {
    std::vector<Node> terms{term()};
    for (;;) {
      if (accept('+')) terms.push_back(term());
      else if (accept('-')) terms.push_back(make(NodeKind::Neg, {term()}));
      else break;
    }
    return terms.size() == 1 ? terms[0] : make(NodeKind::Sum, std::move(terms));
  }

  Node term() {
    std::vector<Node> fs{factor()};
    while (accept('*')) fs.push_back(factor());
    return fs.size() == 1 ? fs[0] : make(NodeKind::Product, std::move(fs));
  }

  Node factor() {
    if (accept('-')) return make(NodeKind::Neg, {factor()});
    Node base = primary();
    if (!accept('^')) return base;
    skip();
    std::size_t at = pos_;
    bool neg = accept('-');
    skip();
    std::string d = digits();
    if (d.empty()) fail_at(at, "exponent must be an integer");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) fail_at(at, "non-integer exponent");
    skip();
    if (pos_ < text_.size() && text_[pos_] == '^') fail("chained powers need parentheses");
    Node p = make(NodeKind::Power, {std::move(base)});
    try {
      p.exponent = std::stol(d) * (neg ? -1 : 1);
    } catch (const std::out_of_range&) {
      fail_at(at, "exponent out of range");
    }
    return p;
  }

  Node primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (c == '(') {
      ++pos_;
      Node n = expr();
      expect(')');
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    if (id == "x") return atom(AtomKind::X);
    if (id == "L") return atom(AtomKind::L);
    if (id == "d1") return atom(AtomKind::D1);
    if (id == "db1") return atom(AtomKind::Db1);
    if (id == "i") return atom(AtomKind::I);
    static const std::pair<const char*, Func> fns[] = {{"e1", Func::E1}, {"eb1", Func::Eb1}, {"eR1", Func::ER1},
                                                       {"d", Func::D},   {"db", Func::Db},   {"dR", Func::DR},
                                                       {"star", Func::Star}};
    for (const auto& [name, f] : fns) {
      if (id != name) continue;
      expect('(');
      Node n = make(NodeKind::Apply, {expr()});
      n.func = f;
      expect(')');
      return n;
    }
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') fail_at(at, "unknown function '" + id + "'");
    fail_at(at, "unknown symbol '" + id + "'");
  }

  Node rational() {
    std::string num = digits();
    std::size_t save = pos_;
    skip();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      std::string den = digits();
      if (den.empty()) fail_at(at, "expected a denominator");
      if (den.find_first_not_of('0') == std::string::npos) fail_at(at, "zero denominator");
      num += "/" + den;
    } else {
      pos_ = save;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not exact; write a fraction");
    Node n = atom(AtomKind::Rational);
    n.value = BigRat::parse(num);
    return n;
  }
};

std::string atom_str(const Node& n) {
  switch (n.atom) {
    case AtomKind::X: return "x";
    case AtomKind::L: return "L";
    case AtomKind::D1: return "d1";
    case AtomKind::Db1: return "db1";
    case AtomKind::I: return "i";
    case AtomKind::Rational: return n.value.str();
  }
  return "?";
}

std::string wrap(const Node& n) { return "(" + print(n) + ")"; }

}  // namespace

Node parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Node& n) {
  switch (n.kind) {
    case NodeKind::Atom: return atom_str(n);
    case NodeKind::Apply: return std::string(func_name(n.func)) + "(" + print(n.kids[0]) + ")";
    case NodeKind::Power: {
      const Node& b = n.kids[0];
      bool bare = b.kind == NodeKind::Atom || b.kind == NodeKind::Apply;
      return (bare ? print(b) : wrap(b)) + "^" + std::to_string(n.exponent);
    }
    case NodeKind::Neg: {
      const Node& c = n.kids[0];
      bool bare = c.kind != NodeKind::Sum && c.kind != NodeKind::Product;
      return "-" + (bare ? print(c) : wrap(c));
    }
    case NodeKind::Product: {
      std::string s;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        const Node& k = n.kids[i];
        if (i) s += "*";
        s += (k.kind == NodeKind::Sum || k.kind == NodeKind::Product) ? wrap(k) : print(k);
      }
      return s;
    }
    case NodeKind::Sum: {
      std::string s;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        const Node& k = n.kids[i];
        if (i && k.kind == NodeKind::Neg) {
          const Node& c = k.kids[0];
          s += " - " + (c.kind == NodeKind::Sum ? wrap(c) : print(c));
          continue;
        }
        if (i) s += " + ";
        s += k.kind == NodeKind::Sum ? wrap(k) : print(k);
      }
      return s;
    }
  }
  return "?";
}

namespace {

struct Evaluator {
  const Algebra& alg;
  Calculus calc;
  EvalOptions opt;

  static DoubledElement as_pair(const Value& v) {
    if (auto* a = std::get_if<AlgebraElement>(&v)) return DoubledElement::embed(*a);
    return std::get<DoubledElement>(v);
  }

  static FormElement as_form(const Value& v) {
    if (auto* a = std::get_if<AlgebraElement>(&v)) return FormElement::function(*a);
    if (auto* d = std::get_if<DoubledElement>(&v)) return FormElement::function(*d);
    return std::get<FormElement>(v);
  }

  static Value simplify(FormElement w) {
    if (w.degree() != 0) return w;
    if (w.doubled()) return w.pair();
    return w.plain();
  }

  Value add(const Value& a, const Value& b) const {
    if (std::holds_alternative<FormElement>(a) || std::holds_alternative<FormElement>(b)) {
      FormElement x = as_form(a), y = as_form(b);
      if (x.degree() == 1 && y.degree() == 1 && x.basis() != y.basis() && !x.is_zero() && !y.is_zero()) {
        if (flavor_of(x.basis()) != flavor_of(y.basis()))
          throw std::invalid_argument("cannot add 1-forms of different calculi");
        x = calc.to_frame_basis(x);
        y = calc.to_frame_basis(y);
      }
      return simplify(x + y);
    }
    if (std::holds_alternative<DoubledElement>(a) || std::holds_alternative<DoubledElement>(b))
      return as_pair(a) + as_pair(b);
    return std::get<AlgebraElement>(a) + std::get<AlgebraElement>(b);
  }

  Value mul(const Value& a, const Value& b) const {
    const auto* fa = std::get_if<FormElement>(&a);
    const auto* fb = std::get_if<FormElement>(&b);
    if (fa && fb) {
      if (fa->degree() + fb->degree() > 1) throw std::invalid_argument("product of 1-forms has degree above 1");
      return simplify(calc.wedge(*fa, *fb));
    }
    if (fb) {
      if (auto* d = std::get_if<DoubledElement>(&a)) return simplify(calc.left_mul(*d, *fb));
      return simplify(calc.left_mul(std::get<AlgebraElement>(a), *fb));
    }
    if (fa) {
      if (auto* d = std::get_if<DoubledElement>(&b)) return simplify(calc.right_mul(*fa, *d));
      return simplify(calc.right_mul(*fa, std::get<AlgebraElement>(b)));
    }
    if (std::holds_alternative<DoubledElement>(a) || std::holds_alternative<DoubledElement>(b))
      return alg.mul(as_pair(a), as_pair(b));
    return alg.mul(std::get<AlgebraElement>(a), std::get<AlgebraElement>(b));
  }

  Value power(const Value& v, long e) const {
    if (auto* f = std::get_if<FormElement>(&v)) {
      if (f->degree() > 0 && e != 1) throw std::invalid_argument("powers of 1-forms are not defined");
      return v;
    }
    if (auto* d = std::get_if<DoubledElement>(&v)) return DoubledElement{alg.pow(d->first, e), alg.pow(d->second, e)};
    return alg.pow(std::get<AlgebraElement>(v), e);
  }

  Value negate(const Value& v) const {
    return std::visit([](const auto& x) -> Value { return -x; }, v);
  }

  const AlgebraElement& plain_arg(const Value& v, Func f) const {
    if (auto* a = std::get_if<AlgebraElement>(&v)) return *a;
    throw std::invalid_argument(std::string(func_name(f)) + " expects a plain algebra element");
  }

  Value apply(Func f, const Value& v) const {
    const bool form = std::holds_alternative<FormElement>(v);
    switch (f) {
      case Func::E1: return alg.e1(plain_arg(v, f));
      case Func::Eb1: return alg.e1bar(plain_arg(v, f));
      case Func::ER1:
        if (form) throw std::invalid_argument("eR1 expects an algebra element");
        return alg.eR1(as_pair(v));
      case Func::D:
      case Func::Db: {
        Flavor fl = f == Func::D ? Flavor::Plain : Flavor::Bar;
        if (auto* w = std::get_if<FormElement>(&v)) return calc.differential(*w, fl);
        return calc.differential(plain_arg(v, f), fl);
      }
      case Func::DR:
        if (auto* w = std::get_if<FormElement>(&v)) return calc.differential(*w, Flavor::Real);
        return calc.differential(as_pair(v));
      case Func::Star:
        if (auto* w = std::get_if<FormElement>(&v)) return calc.star(*w);
        if (auto* d = std::get_if<DoubledElement>(&v)) return alg.star(*d);
        return alg.star(std::get<AlgebraElement>(v));
    }
    throw std::logic_error("unhandled function");
  }

  Value eval(const Node& n) const {
    switch (n.kind) {
      case NodeKind::Atom:
        switch (n.atom) {
          case AtomKind::X: return AlgebraElement::x();
          case AtomKind::L: return AlgebraElement::lambda();
          case AtomKind::D1: return AlgebraElement::d1();
          case AtomKind::Db1: return AlgebraElement::db1();
          case AtomKind::I: return AlgebraElement(CplxRat::i());
          case AtomKind::Rational: return AlgebraElement(CplxRat(n.value));
        }
        break;
      case NodeKind::Sum: {
        Value acc = eval(n.kids[0]);
        for (std::size_t i = 1; i < n.kids.size(); ++i) acc = add(acc, eval(n.kids[i]));
        return acc;
      }
      case NodeKind::Product: {
        Value acc = eval(n.kids[0]);
        for (std::size_t i = 1; i < n.kids.size(); ++i) acc = mul(acc, eval(n.kids[i]));
        return acc;
      }
      case NodeKind::Power: return power(eval(n.kids[0]), n.exponent);
      case NodeKind::Neg: return negate(eval(n.kids[0]));
      case NodeKind::Apply: return apply(n.func, eval(n.kids[0]));
    }
    throw std::logic_error("unhandled node");
  }
};

}  // namespace

Value evaluate(const Node& n, const Algebra& alg, const EvalOptions& opt) {
  Evaluator ev{alg, Calculus(alg), opt};
  Value v = ev.eval(n);
  if (!opt.eliminate) return v;
  if (auto* a = std::get_if<AlgebraElement>(&v)) return alg.eliminate(*a);
  if (auto* d = std::get_if<DoubledElement>(&v)) return DoubledElement{alg.eliminate(d->first), alg.eliminate(d->second)};
  return v;
}

std::string to_string(const Value& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

}  // namespace qline::expr
