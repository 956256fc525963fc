#pragma once

#include "qline/algebra.hpp"
#include "qline/calculus.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qline::expr {

enum class NodeKind { Sum, Product, Power, Neg, Atom, Apply };
enum class AtomKind { X, L, D1, Db1, I, Rational };
enum class Func { E1, Eb1, ER1, D, Db, DR, Star };

const char* func_name(Func f);

struct Node {
  NodeKind kind = NodeKind::Atom;
  AtomKind atom = AtomKind::Rational;
  BigRat value;        // Rational atoms
  Func func = Func::Star;
  long exponent = 1;   // Power nodes
  std::vector<Node> kids;

  friend bool operator==(const Node&, const Node&) = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string& msg);
  int line, col;
  std::string message;
};

Node parse(std::string_view text);
// Minimal parenthesization; parse(print(n)) == n for every tree parse can produce.
std::string print(const Node& n);

using Value = std::variant<AlgebraElement, DoubledElement, FormElement>;

struct EvalOptions {
  bool eliminate = false;  // rewrite d1, db1 through the defect relations
};

// Type errors (for example e1 applied to a form, or a product of two 1-forms) throw std::invalid_argument.
Value evaluate(const Node& n, const Algebra& alg, const EvalOptions& opt = {});
std::string to_string(const Value& v);

}  // namespace qline::expr
