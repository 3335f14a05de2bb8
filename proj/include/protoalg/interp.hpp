#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "protoalg/expr.hpp"
#include "protoalg/graph.hpp"
#include "protoalg/report.hpp"
#include "protoalg/value.hpp"

namespace protoalg {

inline constexpr std::size_t kDefaultExtentCap = 1'000'000;

struct FiniteExtent {
  std::vector<Value> values;
  friend bool operator==(const FiniteExtent&, const FiniteExtent&) = default;
};

/// Per-component inclusive ranges.
struct BoxedExtent {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  friend bool operator==(const BoxedExtent&, const BoxedExtent&) = default;
};

struct DomainDecl {
  std::string name;  // main, input or output
  std::size_t arity = 1;
  std::variant<FiniteExtent, BoxedExtent> extent;

  static DomainDecl boxed(std::string name,
                          std::vector<std::pair<std::int64_t, std::int64_t>> ranges);
  static DomainDecl finite(std::string name, std::size_t arity, std::vector<Value> values);

  bool contains(const Value& v) const;
  /// Number of elements, saturating at UINT64_MAX.
  std::uint64_t size() const;
  Report check() const;

  friend bool operator==(const DomainDecl&, const DomainDecl&) = default;
};

/// Lexicographic, duplicate-free enumeration. Throws Error(ExtentTooLarge)
/// when the extent exceeds `cap`.
std::vector<Value> enumerate(const DomainDecl& domain, std::size_t cap = kDefaultExtentCap);

struct FunctionDef {
  std::string param = "x";
  Expr body;
  friend bool operator==(const FunctionDef&, const FunctionDef&) = default;
};

/// Carriers plus one expression per symbol. `functions` holds ini, fin and
/// the operations; `predicates` holds the predicate symbols.
struct Interpretation {
  DomainDecl main{"main", 1, BoxedExtent{}};
  DomainDecl input{"input", 1, BoxedExtent{}};
  DomainDecl output{"output", 1, BoxedExtent{}};
  std::map<Symbol, FunctionDef> functions;
  std::map<Symbol, FunctionDef> predicates;

  const FunctionDef* find(const Symbol& s) const;
  bool is_predicate(const Symbol& s) const { return predicates.count(s) != 0; }

  friend bool operator==(const Interpretation&, const Interpretation&) = default;
};

/// Checked application: argument arity and result codomain are verified.
/// Errors: UnknownSymbol, ArityMismatch, DomainViolation (with witness).
Value eval_fun(const Interpretation& interp, const Symbol& symbol, const Value& v);

/// Applies the symbol's expression without codomain checks (the data-algebra
/// extension used when evaluating process terms).
Value apply_symbol(const Interpretation& interp, const Symbol& symbol, const Value& v);

/// Forward closure of ini's image under every operation, in sorted order.
std::vector<Value> reachable_closure(const Alphabet& alphabet, const Interpretation& interp,
                                     std::size_t cap = kDefaultExtentCap);

/// Symbol coverage, arities, codomain closure and minimality.
/// Throws Error(ExtentTooLarge) when a carrier exceeds `cap`.
Report check_interpretation(const Alphabet& alphabet, const Interpretation& interp,
                            std::size_t cap = kDefaultExtentCap);

}  // namespace protoalg
