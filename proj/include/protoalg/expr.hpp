#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/value.hpp"

namespace protoalg {

/// Total expression over a single tuple-valued parameter.
///
/// Every node denotes a tuple. Arithmetic and comparison operate on
/// 1-tuples; `/` and `%` by zero yield 0; comparisons yield 0 or 1; the
/// vector constructor concatenates its operands. Integer overflow is the
/// only runtime failure (Error(Overflow)).
class Expr {
 public:
  enum class Op : std::uint8_t {
    Literal,
    Param,
    Project,  // args[0][index]
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Lt,
    Le,
    If,
    Vector,
  };

  static Expr literal(std::int64_t v);
  static Expr param();
  static Expr project(Expr of, std::size_t index);
  static Expr negate(Expr e);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr if_then_else(Expr cond, Expr then_branch, Expr else_branch);
  static Expr vector(std::vector<Expr> items);

  Op op() const noexcept;
  std::int64_t literal_value() const noexcept;
  std::size_t index() const noexcept;
  const std::vector<Expr>& args() const noexcept;

  Value eval(const Value& x) const;

  /// Static arity of the result when the parameter has `param_arity`
  /// components; nullopt with a reason when the expression is ill-typed.
  std::optional<std::size_t> result_arity(std::size_t param_arity,
                                          std::string* why = nullptr) const;

  /// Replaces every parameter occurrence by `replacement`.
  Expr substitute(const Expr& replacement) const;

  std::string to_string(const std::string& param_name = "x") const;

  friend bool operator==(const Expr& a, const Expr& b);

  // Opaque node type, defined in the implementation.
  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace protoalg
