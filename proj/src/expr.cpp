#include "zonoreach/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "zonoreach/errors.hpp"

namespace zonoreach {

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by a range containing zero");
  const double q1 = a.lower / b.lower;
  const double q2 = a.lower / b.upper;
  const double q3 = a.upper / b.lower;
  const double q4 = a.upper / b.upper;
  return widen(std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4}));
}

Interval pow(const Interval& a, int k) {
  if (k == 0) return Interval(1.0);
  if (k < 0) return Interval(1.0) / pow(a, -k);
  if (k == 1) return a;
  const double lo = std::pow(a.lower, k);
  const double hi = std::pow(a.upper, k);
  if (k % 2 == 1) return widen(lo, hi);
  if (a.contains_zero()) return widen(0.0, std::max(lo, hi));
  return widen(std::min(lo, hi), std::max(lo, hi));
}

Interval sqrt(const Interval& a) {
  if (a.lower < 0.0) throw DomainError("interval sqrt of a range reaching below zero");
  const Interval r = widen(std::sqrt(a.lower), std::sqrt(a.upper));
  return {std::max(r.lower, 0.0), r.upper};
}

namespace {

Expr node(Op op, Expr lhs = nullptr, Expr rhs = nullptr, double value = 0.0, int index = 0) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->value = value;
  n->index = index;
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, int n) : s_(text), n_(n) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (accept('+')) {
        e = node(Op::Add, e, product());
      } else if (accept('-')) {
        e = node(Op::Sub, e, product());
      } else {
        return e;
      }
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      if (accept('*')) {
        e = node(Op::Mul, e, unary());
      } else if (accept('/')) {
        e = node(Op::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return node(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr e = primary();
    while (accept('^')) {
      skip();
      const std::size_t start = pos_;
      bool negative = false;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
        negative = s_[pos_] == '-';
        ++pos_;
      }
      const std::size_t digits = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == digits) {
        pos_ = start;
        fail("expected an integer exponent");
      }
      const int k = std::atoi(s_.substr(digits, pos_ - digits).c_str());
      e = node(Op::Pow, e, nullptr, 0.0, negative ? -k : k);
    }
    return e;
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expr number() {
    const char* begin = s_.data() + pos_;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return node(Op::Const, nullptr, nullptr, v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "sqrt") {
      if (!accept('(')) fail("expected '(' after sqrt");
      Expr arg = sum();
      if (!accept(')')) fail("expected ')'");
      return node(Op::Sqrt, arg);
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos && name[1] != '0') {
      const int i = std::atoi(name.c_str() + 1);
      if (i < 1 || i > n_) {
        pos_ = start;
        fail("variable " + name + " out of range for dimension " + std::to_string(n_));
      }
      return node(Op::Var, nullptr, nullptr, 0.0, i - 1);
    }
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e->op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Const:
      return e->value < 0.0 ? 0 : 5;
    default:
      return 5;
  }
}

std::string number_text(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e->op) {
    case Op::Const:
      out += number_text(e->value);
      return;
    case Op::Var:
      out += 'x' + std::to_string(e->index + 1);
      return;
    case Op::Neg:
      out += '-';
      print_child(e->lhs, 3, out);
      return;
    case Op::Add:
    case Op::Sub: {
      print_child(e->lhs, 1, out);
      out += e->op == Op::Add ? " + " : " - ";
      print_child(e->rhs, 2, out);
      return;
    }
    case Op::Mul:
    case Op::Div:
      print_child(e->lhs, 2, out);
      out += e->op == Op::Mul ? "*" : "/";
      print_child(e->rhs, 3, out);
      return;
    case Op::Pow:
      print_child(e->lhs, 5, out);
      out += '^' + std::to_string(e->index);
      return;
    case Op::Sqrt:
      out += "sqrt(";
      print(e->lhs, out);
      out += ')';
      return;
  }
}

template <typename T>
T apply_unary(Op op, const T& a, int k) {
  using std::sqrt;
  switch (op) {
    case Op::Neg:
      return -a;
    case Op::Pow:
      if constexpr (std::is_same_v<T, double>) {
        return std::pow(a, k);
      } else {
        return pow(a, k);
      }
    case Op::Sqrt:
      if constexpr (std::is_same_v<T, double>) {
        return std::sqrt(a);
      } else {
        return sqrt(a);
      }
    default:
      throw Error("apply_unary: not a unary operator");
  }
}

template <typename T>
T apply_binary(Op op, const T& a, const T& b) {
  switch (op) {
    case Op::Add:
      return a + b;
    case Op::Sub:
      return a - b;
    case Op::Mul:
      return a * b;
    case Op::Div:
      return a / b;
    default:
      throw Error("apply_binary: not a binary operator");
  }
}

template <typename T, typename Leaf>
T evaluate(const Expr& e, const Leaf& leaf) {
  switch (e->op) {
    case Op::Const:
      return T(e->value);
    case Op::Var:
      return leaf(e->index);
    case Op::Neg:
    case Op::Pow:
    case Op::Sqrt:
      return apply_unary<T>(e->op, evaluate<T>(e->lhs, leaf), e->index);
    default:
      return apply_binary<T>(e->op, evaluate<T>(e->lhs, leaf), evaluate<T>(e->rhs, leaf));
  }
}

}  // namespace

Expr parse_expr(const std::string& text, int n) { return Parser(text, n).parse(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a || !b) return a == b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Const:
      return a->value == b->value;
    case Op::Var:
      return a->index == b->index;
    case Op::Pow:
      return a->index == b->index && structurally_equal(a->lhs, b->lhs);
    default:
      return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
  }
}

bool is_constant(const Expr& e, double v) { return e->op == Op::Const && e->value == v; }

Expr constant(double v) { return node(Op::Const, nullptr, nullptr, v); }
Expr variable(int index) { return node(Op::Var, nullptr, nullptr, 0.0, index); }

Expr make_neg(Expr a) {
  if (a->op == Op::Const) return constant(-a->value);
  if (a->op == Op::Neg) return a->lhs;
  return node(Op::Neg, std::move(a));
}

Expr make_add(Expr a, Expr b) {
  if (a->op == Op::Const && b->op == Op::Const) return constant(a->value + b->value);
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  return node(Op::Add, std::move(a), std::move(b));
}

Expr make_sub(Expr a, Expr b) {
  if (a->op == Op::Const && b->op == Op::Const) return constant(a->value - b->value);
  if (is_constant(b, 0.0)) return a;
  if (is_constant(a, 0.0)) return make_neg(std::move(b));
  return node(Op::Sub, std::move(a), std::move(b));
}

Expr make_mul(Expr a, Expr b) {
  if (a->op == Op::Const && b->op == Op::Const) return constant(a->value * b->value);
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  if (is_constant(a, -1.0)) return make_neg(std::move(b));
  if (is_constant(b, -1.0)) return make_neg(std::move(a));
  return node(Op::Mul, std::move(a), std::move(b));
}

Expr make_div(Expr a, Expr b) {
  if (is_constant(a, 0.0)) return constant(0.0);
  if (is_constant(b, 1.0)) return a;
  return node(Op::Div, std::move(a), std::move(b));
}

Expr make_pow(Expr a, int k) {
  if (k == 0) return constant(1.0);
  if (k == 1) return a;
  if (a->op == Op::Const) return constant(std::pow(a->value, k));
  return node(Op::Pow, std::move(a), nullptr, 0.0, k);
}

Expr make_sqrt(Expr a) { return node(Op::Sqrt, std::move(a)); }

double eval(const Expr& e, const Vec& x) {
  return evaluate<double>(e, [&](int i) {
    if (i >= x.size()) throw DimensionMismatch("eval: point too short for x" + std::to_string(i + 1));
    return x(i);
  });
}

Interval interval_eval(const Expr& e, const std::vector<Interval>& x) {
  return evaluate<Interval>(e, [&](int i) {
    if (i >= static_cast<int>(x.size())) throw DimensionMismatch("interval_eval: box too short");
    return x[static_cast<std::size_t>(i)];
  });
}

Interval interval_eval(const Expr& e, const Box& box) {
  std::vector<Interval> x(static_cast<std::size_t>(box.dim()));
  for (Eigen::Index i = 0; i < box.dim(); ++i) x[static_cast<std::size_t>(i)] = Interval(box.lower(i), box.upper(i));
  return interval_eval(e, x);
}

Expr differentiate(const Expr& e, int i) {
  switch (e->op) {
    case Op::Const:
      return constant(0.0);
    case Op::Var:
      return constant(e->index == i ? 1.0 : 0.0);
    case Op::Neg:
      return make_neg(differentiate(e->lhs, i));
    case Op::Add:
      return make_add(differentiate(e->lhs, i), differentiate(e->rhs, i));
    case Op::Sub:
      return make_sub(differentiate(e->lhs, i), differentiate(e->rhs, i));
    case Op::Mul:
      return make_add(make_mul(differentiate(e->lhs, i), e->rhs), make_mul(e->lhs, differentiate(e->rhs, i)));
    case Op::Div: {
      // (u/v)' = u'/v - u v' / v^2
      const Expr du = differentiate(e->lhs, i);
      const Expr dv = differentiate(e->rhs, i);
      return make_sub(make_div(du, e->rhs), make_div(make_mul(e->lhs, dv), make_pow(e->rhs, 2)));
    }
    case Op::Pow: {
      const int k = e->index;
      return make_mul(make_mul(constant(k), make_pow(e->lhs, k - 1)), differentiate(e->lhs, i));
    }
    case Op::Sqrt:
      return make_div(differentiate(e->lhs, i), make_mul(constant(2.0), e));
  }
  throw Error("differentiate: unknown node");
}

Program::Program(const Expr& e) {
  int depth = 0;
  auto emit = [&](auto&& self, const Expr& x) -> void {
    switch (x->op) {
      case Op::Const:
      case Op::Var:
        code_.push_back({x->op, x->value, x->index});
        ++depth;
        break;
      case Op::Neg:
      case Op::Pow:
      case Op::Sqrt:
        self(self, x->lhs);
        code_.push_back({x->op, 0.0, x->index});
        break;
      default:
        self(self, x->lhs);
        self(self, x->rhs);
        code_.push_back({x->op, 0.0, 0});
        --depth;
        break;
    }
    depth_ = std::max(depth_, depth);
  };
  emit(emit, e);
}

template <typename T>
T Program::run(const T* x) const {
  constexpr int kSmall = 32;
  std::array<T, kSmall> small{};
  std::vector<T> large;
  T* stack = small.data();
  if (depth_ > kSmall) {
    large.resize(static_cast<std::size_t>(depth_));
    stack = large.data();
  }
  int top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Const:
        stack[top++] = T(in.value);
        break;
      case Op::Var:
        stack[top++] = x[in.index];
        break;
      case Op::Neg:
      case Op::Pow:
      case Op::Sqrt:
        stack[top - 1] = apply_unary<T>(in.op, stack[top - 1], in.index);
        break;
      default:
        stack[top - 2] = apply_binary<T>(in.op, stack[top - 2], stack[top - 1]);
        --top;
        break;
    }
  }
  return stack[0];
}

double Program::operator()(const double* x) const { return run(x); }
Interval Program::operator()(const Interval* x) const { return run(x); }

}  // namespace zonoreach
