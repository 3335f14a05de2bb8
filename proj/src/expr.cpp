#include "protoalg/expr.hpp"

#include "protoalg/error.hpp"

namespace protoalg {

struct Expr::Node {
  Op op = Op::Literal;
  std::int64_t literal = 0;
  std::size_t index = 0;
  std::vector<Expr> args;
};

namespace {

std::shared_ptr<Expr::Node> make_node(Expr::Op op) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  return n;
}

template <class F>
std::int64_t checked(F op) {
  std::int64_t r = 0;
  if (op(r)) throw Error(ErrorCode::Overflow, "integer overflow in expression");
  return r;
}

std::int64_t scalar(const Value& v) {
  if (v.arity() != 1) throw Error(ErrorCode::ArityMismatch, "scalar operand expected");
  return v[0];
}

}  // namespace

Expr Expr::literal(std::int64_t v) {
  auto n = make_node(Op::Literal);
  n->literal = v;
  return Expr(std::move(n));
}

Expr Expr::param() { return Expr(make_node(Op::Param)); }

Expr Expr::project(Expr of, std::size_t index) {
  auto n = make_node(Op::Project);
  n->index = index;
  n->args = {std::move(of)};
  return Expr(std::move(n));
}

Expr Expr::negate(Expr e) {
  auto n = make_node(Op::Neg);
  n->args = {std::move(e)};
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  auto n = make_node(op);
  n->args = {std::move(lhs), std::move(rhs)};
  return Expr(std::move(n));
}

Expr Expr::if_then_else(Expr cond, Expr then_branch, Expr else_branch) {
  auto n = make_node(Op::If);
  n->args = {std::move(cond), std::move(then_branch), std::move(else_branch)};
  return Expr(std::move(n));
}

Expr Expr::vector(std::vector<Expr> items) {
  auto n = make_node(Op::Vector);
  n->args = std::move(items);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const noexcept { return node_->op; }
std::int64_t Expr::literal_value() const noexcept { return node_->literal; }
std::size_t Expr::index() const noexcept { return node_->index; }
const std::vector<Expr>& Expr::args() const noexcept { return node_->args; }

Value Expr::eval(const Value& x) const {
  const auto& a = node_->args;
  switch (node_->op) {
    case Op::Literal: return Value{node_->literal};
    case Op::Param: return x;
    case Op::Project: {
      Value v = a[0].eval(x);
      if (node_->index >= v.arity())
        throw Error(ErrorCode::ArityMismatch, "projection index out of range");
      return Value{v[node_->index]};
    }
    case Op::Neg: {
      std::int64_t v = scalar(a[0].eval(x));
      return Value{
          checked([&](std::int64_t& o) { return __builtin_sub_overflow(std::int64_t{0}, v, &o); })};
    }
    case Op::If: return scalar(a[0].eval(x)) != 0 ? a[1].eval(x) : a[2].eval(x);
    case Op::Vector: {
      std::vector<std::int64_t> items;
      for (const auto& e : a) {
        Value v = e.eval(x);
        items.insert(items.end(), v.items().begin(), v.items().end());
      }
      return Value(std::move(items));
    }
    default: break;
  }
  std::int64_t l = scalar(a[0].eval(x)), r = scalar(a[1].eval(x));
  switch (node_->op) {
    case Op::Add:
      return Value{checked([&](std::int64_t& o) { return __builtin_add_overflow(l, r, &o); })};
    case Op::Sub:
      return Value{checked([&](std::int64_t& o) { return __builtin_sub_overflow(l, r, &o); })};
    case Op::Mul:
      return Value{checked([&](std::int64_t& o) { return __builtin_mul_overflow(l, r, &o); })};
    case Op::Div:
      if (r == 0) return Value{0};
      if (r == -1)
        return Value{checked(
            [&](std::int64_t& o) { return __builtin_sub_overflow(std::int64_t{0}, l, &o); })};
      return Value{l / r};
    case Op::Mod:
      if (r == 0 || r == -1) return Value{0};
      return Value{l % r};
    case Op::Eq: return Value{l == r ? 1 : 0};
    case Op::Lt: return Value{l < r ? 1 : 0};
    case Op::Le: return Value{l <= r ? 1 : 0};
    default: break;
  }
  throw Error(ErrorCode::ArityMismatch, "malformed expression node");
}

std::optional<std::size_t> Expr::result_arity(std::size_t param_arity, std::string* why) const {
  auto fail = [&](const std::string& msg) -> std::optional<std::size_t> {
    if (why && why->empty()) *why = msg;
    return std::nullopt;
  };
  const auto& a = node_->args;
  switch (node_->op) {
    case Op::Literal: return 1;
    case Op::Param: return param_arity;
    case Op::Project: {
      auto inner = a[0].result_arity(param_arity, why);
      if (!inner) return std::nullopt;
      if (node_->index >= *inner)
        return fail("projection [" + std::to_string(node_->index) + "] on a " +
                    std::to_string(*inner) + "-tuple");
      return 1;
    }
    case Op::If: {
      auto c = a[0].result_arity(param_arity, why);
      auto t = a[1].result_arity(param_arity, why);
      auto e = a[2].result_arity(param_arity, why);
      if (!c || !t || !e) return std::nullopt;
      if (*c != 1) return fail("condition of if must be a scalar");
      if (*t != *e) return fail("branches of if have different arities");
      return *t;
    }
    case Op::Vector: {
      std::size_t total = 0;
      for (const auto& e : a) {
        auto n = e.result_arity(param_arity, why);
        if (!n) return std::nullopt;
        total += *n;
      }
      if (total == 0) return fail("empty tuple");
      return total;
    }
    default: break;
  }
  for (const auto& e : a) {
    auto n = e.result_arity(param_arity, why);
    if (!n) return std::nullopt;
    if (*n != 1) return fail("arithmetic and comparison operands must be scalars");
  }
  return 1;
}

Expr Expr::substitute(const Expr& replacement) const {
  if (node_->op == Op::Param) return replacement;
  if (node_->args.empty()) return *this;
  auto n = std::make_shared<Node>(*node_);
  for (auto& e : n->args) e = e.substitute(replacement);
  return Expr(std::move(n));
}

namespace {

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::If: return 0;
    case Expr::Op::Eq:
    case Expr::Op::Lt:
    case Expr::Op::Le: return 1;
    case Expr::Op::Add:
    case Expr::Op::Sub: return 2;
    case Expr::Op::Mul:
    case Expr::Op::Div:
    case Expr::Op::Mod: return 3;
    case Expr::Op::Neg: return 4;
    default: return 5;
  }
}

const char* symbol_of(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Div: return "/";
    case Expr::Op::Mod: return "%";
    case Expr::Op::Eq: return "=";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    default: return "?";
  }
}

std::string render(const Expr& e, const std::string& p, int min_prec) {
  std::string s;
  int prec = precedence(e.op());
  const auto& a = e.args();
  switch (e.op()) {
    case Expr::Op::Literal:
      // Negative literals re-parse as negation, so parenthesise them in tight spots.
      s = std::to_string(e.literal_value());
      if (e.literal_value() < 0 && min_prec > 4) s = "(" + s + ")";
      return s;
    case Expr::Op::Param: return p;
    case Expr::Op::Project: return render(a[0], p, 5) + "[" + std::to_string(e.index()) + "]";
    case Expr::Op::Neg:
      // `-5` parses as a literal, so negation of a literal keeps its parentheses.
      s = a[0].op() == Expr::Op::Literal ? "-(" + render(a[0], p, 0) + ")"
                                         : "-" + render(a[0], p, 5);
      break;
    case Expr::Op::If:
      s = "if " + render(a[0], p, 0) + " then " + render(a[1], p, 0) + " else " +
          render(a[2], p, 0);
      break;
    case Expr::Op::Vector: {
      s = "<";
      for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + render(a[i], p, 1);
      return s + ">";
    }
    case Expr::Op::Eq:
    case Expr::Op::Lt:
    case Expr::Op::Le:
      s = render(a[0], p, prec + 1) + " " + symbol_of(e.op()) + " " + render(a[1], p, prec + 1);
      break;
    default:
      s = render(a[0], p, prec) + " " + symbol_of(e.op()) + " " + render(a[1], p, prec + 1);
      break;
  }
  return prec < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string Expr::to_string(const std::string& param_name) const {
  return render(*this, param_name, 0);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.op == y.op && x.literal == y.literal && x.index == y.index && x.args == y.args;
}

}  // namespace protoalg
