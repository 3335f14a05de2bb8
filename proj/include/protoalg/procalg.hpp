#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protoalg/interp.hpp"
#include "protoalg/value.hpp"

namespace protoalg {

inline constexpr const char* kMem = "MEM";

// ---------------------------------------------------------------------------
// Terms

/// Data term: flexible variable, data constant, or unary application f(e).
class DataTerm {
 public:
  enum class Kind : std::uint8_t { Var, Const, Apply };

  static DataTerm var(std::string name);
  static DataTerm constant(Value v);
  static DataTerm apply(std::string symbol, DataTerm arg);

  Kind kind() const noexcept;
  const std::string& name() const noexcept;  // variable or symbol name
  const Value& value() const noexcept;
  const DataTerm& arg() const;

  bool is_closed() const;
  std::string to_string() const;

  friend std::strong_ordering compare(const DataTerm& a, const DataTerm& b);
  friend bool operator==(const DataTerm& a, const DataTerm& b) { return compare(a, b) == 0; }

  // Opaque node type, defined in the implementation.
  struct Node;

 private:
  explicit DataTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Bit term: constant 0/1 or predicate application p(e).
class BitTerm {
 public:
  enum class Kind : std::uint8_t { Const, Apply };

  static BitTerm constant(int bit);
  static BitTerm apply(std::string predicate, DataTerm arg);

  Kind kind() const noexcept { return kind_; }
  int bit() const noexcept { return bit_; }
  const std::string& predicate() const noexcept { return predicate_; }
  const DataTerm& arg() const { return *arg_; }

  std::string to_string() const;
  friend std::strong_ordering compare(const BitTerm& a, const BitTerm& b);
  friend bool operator==(const BitTerm& a, const BitTerm& b) { return compare(a, b) == 0; }

 private:
  Kind kind_ = Kind::Const;
  int bit_ = 0;
  std::string predicate_;
  std::shared_ptr<const DataTerm> arg_;
};

class CondTerm {
 public:
  enum class Kind : std::uint8_t { True, False, DataEq, BitEq, Not, And, Or, Implies };

  static CondTerm truth();
  static CondTerm falsity();
  static CondTerm data_eq(DataTerm lhs, DataTerm rhs);
  static CondTerm bit_eq(BitTerm lhs, BitTerm rhs);
  static CondTerm negation(CondTerm c);
  static CondTerm connective(Kind k, CondTerm lhs, CondTerm rhs);

  Kind kind() const noexcept;
  const DataTerm& data_lhs() const;
  const DataTerm& data_rhs() const;
  const BitTerm& bit_lhs() const;
  const BitTerm& bit_rhs() const;
  const std::vector<CondTerm>& operands() const;

  std::string to_string() const;
  friend std::strong_ordering compare(const CondTerm& a, const CondTerm& b);
  friend bool operator==(const CondTerm& a, const CondTerm& b) { return compare(a, b) == 0; }

  // Opaque node type, defined in the implementation.
  struct Node;

 private:
  explicit CondTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Total map from flexible variables to data values, realised as a finite
/// map plus an optional default.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::map<std::string, Value> values,
                     std::optional<Value> fallback = std::nullopt)
      : values_(std::move(values)), fallback_(std::move(fallback)) {}

  static Valuation of_mem(Value v) { return Valuation({{kMem, std::move(v)}}); }

  std::optional<Value> lookup(const std::string& var) const;
  /// rho<value/var>
  Valuation updated(const std::string& var, Value value) const;

  const std::map<std::string, Value>& values() const noexcept { return values_; }
  const std::optional<Value>& fallback() const noexcept { return fallback_; }
  std::string to_string() const;

  friend auto operator<=>(const Valuation&, const Valuation&) = default;
  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, Value> values_;
  std::optional<Value> fallback_;
};

struct LinearSpec;

/// Process term. Alternative composition is n-ary and compared as a
/// multiset of summands, which realises commutativity and associativity.
class ProcTerm {
 public:
  enum class Kind : std::uint8_t {
    Action,   // basic action a
    Delta,    // inaction
    Epsilon,  // empty process
    Alt,      // t1 + ... + tn, n >= 2
    Seq,      // t . t'
    Assign,   // v := e
    Guard,    // phi :-> t
    Eval,     // eval_rho(t)
    Var,      // recursion variable X
    Rec,      // <X|S>
  };

  static ProcTerm action(std::string name);
  static ProcTerm delta();
  static ProcTerm epsilon();
  /// Flattens nested sums; a single summand is returned as is.
  static ProcTerm alt(std::vector<ProcTerm> summands);
  static ProcTerm seq(ProcTerm lhs, ProcTerm rhs);
  static ProcTerm assign(std::string var, DataTerm e);
  static ProcTerm guard(CondTerm cond, ProcTerm body);
  static ProcTerm eval(Valuation rho, ProcTerm body);
  static ProcTerm var(std::string name);
  static ProcTerm rec(std::string var, std::shared_ptr<const LinearSpec> spec);

  Kind kind() const noexcept;
  const std::string& name() const noexcept;               // action, assigned or recursion variable
  const DataTerm& data() const;                           // Assign
  const CondTerm& cond() const;                           // Guard
  const Valuation& valuation() const;                     // Eval
  const std::shared_ptr<const LinearSpec>& spec() const;  // Rec
  const std::vector<ProcTerm>& children() const noexcept;

  std::string to_string() const;

  friend std::strong_ordering compare(const ProcTerm& a, const ProcTerm& b);
  friend bool operator==(const ProcTerm& a, const ProcTerm& b) { return compare(a, b) == 0; }

  // Opaque node type, defined in the implementation.
  struct Node;

 private:
  explicit ProcTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite set of recursion equations X = t_X.
struct LinearSpec {
  std::map<std::string, ProcTerm> equations;

  const ProcTerm* find(const std::string& var) const;
};

bool operator==(const LinearSpec& a, const LinearSpec& b);

/// Membership in the linear-term grammar.
bool is_linear(const ProcTerm& t);

/// Every right-hand side is linear and only mentions variables with an equation.
bool is_linear_spec(const LinearSpec& s, std::string* why = nullptr);

// ---------------------------------------------------------------------------
// Data algebra

/// Errors: OpenCondition when a flexible variable escapes rho.
Value eval_data(const Interpretation& interp, const Valuation& rho, const DataTerm& e);
int eval_bit(const Interpretation& interp, const Valuation& rho, const BitTerm& b);
bool eval_cond(const Interpretation& interp, const Valuation& rho, const CondTerm& phi);

/// Homomorphic extension of rho: replaces flexible variables by constants.
DataTerm substitute(const Valuation& rho, const DataTerm& e);
CondTerm substitute(const Valuation& rho, const CondTerm& phi);

// ---------------------------------------------------------------------------
// Axioms

enum class Axiom : std::uint8_t {
  A1,
  A2,
  A3,
  A4,
  A5,
  A6,
  A7,
  A8,
  A9,
  GC1,
  GC2,
  GC3,
  GC4,
  GC5,
  GC6,
  GC7,
  RDP,
  V1,
  V2,
  V3,
  V4,
  V5,
  IMP1,
  IMP2,
};

std::string_view axiom_name(Axiom a);
std::optional<Axiom> axiom_from_name(std::string_view name);

/// Path of child indices from the root of a process term.
using Position = std::vector<std::uint32_t>;

struct ProofStep {
  Axiom axiom;
  Position position;
  friend bool operator==(const ProofStep&, const ProofStep&) = default;
};

using ProofLog = std::vector<ProofStep>;

/// Rewrites the subterm at `pos` left-to-right by one instance of `axiom`.
/// IMP1 replaces the closed data term of an assignment by its value; IMP2
/// replaces the closed condition of a guarded command by True or False.
/// Errors: AxiomMismatch when the subterm is not an instance of the schema.
ProcTerm apply_axiom(const Interpretation& interp, const ProcTerm& t, Axiom axiom,
                     const Position& pos);

/// Replays a proof log from `t`.
ProcTerm replay(const Interpretation& interp, const ProcTerm& t, const ProofLog& log);

// ---------------------------------------------------------------------------
// Head normal forms of eval_rho(<X|S>)

struct HeadNormalForm {
  enum class Kind : std::uint8_t { Terminated, Step, Stuck };

  Kind kind = Kind::Stuck;
  std::optional<ProcTerm> action;     // Step: basic action, or assignment of a constant
  Valuation next_valuation;           // Step
  std::string next_variable;          // Step
  ProcTerm term = ProcTerm::delta();  // the derived right-hand side
  ProofLog log;
};

/// Unfolds eval_rho(<X|S>) once. Errors: NonLinearSpec, AmbiguousGuards,
/// OpenCondition.
HeadNormalForm head_normal_form(const Interpretation& interp, const ProcTerm& t);

enum class VerdictKind : std::uint8_t { Proven, Refuted, UnknownAtBound };
std::string_view to_string(VerdictKind k);

struct EqualityVerdict {
  VerdictKind kind = VerdictKind::UnknownAtBound;
  std::size_t index = 0;  // number of matched actions (Refuted: first mismatch)
  std::vector<std::string> left_trace, right_trace;  // actions up to `index`
  std::optional<std::string> left_at, right_at;      // what each side does at `index`
  ProofLog left_log, right_log;                      // Proven only
};

/// Co-unfolds two eval-wrapped recursion constants.
EqualityVerdict derivably_equal(const Interpretation& interp, const ProcTerm& t, const ProcTerm& u,
                                std::size_t bound);

}  // namespace protoalg
