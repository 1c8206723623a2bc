#pragma once

#include <memory>
#include <string>
#include <vector>

#include "zonoreach/interval.hpp"
#include "zonoreach/numeric.hpp"
#include "zonoreach/zonotope.hpp"

namespace zonoreach {

enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sqrt };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op = Op::Const;
  double value = 0.0;  // Const
  int index = 0;       // Var (0-based), Pow exponent
  Expr lhs;
  Expr rhs;
};

// Variables are written x1..xn. Grammar, loosest first: + -, * /, unary -, ^ (integer exponent).
// Throws ParseError with the offending character position.
[[nodiscard]] Expr parse_expr(const std::string& text, int n);

[[nodiscard]] std::string to_string(const Expr& e);
[[nodiscard]] bool structurally_equal(const Expr& a, const Expr& b);

[[nodiscard]] Expr constant(double v);
[[nodiscard]] Expr variable(int index);
// Builders fold constants and the trivial identities (x+0, x*1, x*0, -(-x)).
[[nodiscard]] Expr make_neg(Expr a);
[[nodiscard]] Expr make_add(Expr a, Expr b);
[[nodiscard]] Expr make_sub(Expr a, Expr b);
[[nodiscard]] Expr make_mul(Expr a, Expr b);
[[nodiscard]] Expr make_div(Expr a, Expr b);
[[nodiscard]] Expr make_pow(Expr a, int k);
[[nodiscard]] Expr make_sqrt(Expr a);

[[nodiscard]] double eval(const Expr& e, const Vec& x);

// Natural interval extension. Throws DomainError on division by an interval containing zero
// or sqrt of an interval reaching below zero.
[[nodiscard]] Interval interval_eval(const Expr& e, const Box& box);
[[nodiscard]] Interval interval_eval(const Expr& e, const std::vector<Interval>& x);

[[nodiscard]] Expr differentiate(const Expr& e, int i);

[[nodiscard]] bool is_constant(const Expr& e, double v);

// Flattened postfix form of an expression, used on the hot paths.
class Program {
 public:
  Program() = default;
  explicit Program(const Expr& e);

  [[nodiscard]] double operator()(const double* x) const;
  [[nodiscard]] Interval operator()(const Interval* x) const;
  [[nodiscard]] bool is_zero() const { return code_.size() == 1 && code_[0].op == Op::Const && code_[0].value == 0.0; }

 private:
  struct Instr {
    Op op;
    double value;
    int index;
  };
  template <typename T>
  T run(const T* x) const;

  std::vector<Instr> code_;
  int depth_ = 0;
};

}  // namespace zonoreach
