#include <algorithm>

#include "protoalg/error.hpp"
#include "protoalg/procalg.hpp"

namespace protoalg {

namespace {

template <class T>
std::strong_ordering compare_vectors(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (auto c = compare(a[i], b[i]); c != 0) return c;
  return a.size() <=> b.size();
}

}  // namespace

// --- DataTerm ---------------------------------------------------------------

struct DataTerm::Node {
  Kind kind = Kind::Var;
  std::string name;
  Value value;
  std::vector<DataTerm> args;
};

DataTerm DataTerm::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return DataTerm(std::move(n));
}

DataTerm DataTerm::constant(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = std::move(v);
  return DataTerm(std::move(n));
}

DataTerm DataTerm::apply(std::string symbol, DataTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Apply;
  n->name = std::move(symbol);
  n->args = {std::move(arg)};
  return DataTerm(std::move(n));
}

DataTerm::Kind DataTerm::kind() const noexcept { return node_->kind; }
const std::string& DataTerm::name() const noexcept { return node_->name; }
const Value& DataTerm::value() const noexcept { return node_->value; }
const DataTerm& DataTerm::arg() const { return node_->args.at(0); }

bool DataTerm::is_closed() const {
  switch (kind()) {
    case Kind::Var: return false;
    case Kind::Const: return true;
    case Kind::Apply: return arg().is_closed();
  }
  return false;
}

std::string DataTerm::to_string() const {
  switch (kind()) {
    case Kind::Var: return name();
    case Kind::Const: return protoalg::to_string(value());
    case Kind::Apply: return name() + "(" + arg().to_string() + ")";
  }
  return "?";
}

std::strong_ordering compare(const DataTerm& a, const DataTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.value() <=> b.value(); c != 0) return c;
  return compare_vectors(a.node_->args, b.node_->args);
}

// --- BitTerm ----------------------------------------------------------------

BitTerm BitTerm::constant(int bit) {
  BitTerm b;
  b.kind_ = Kind::Const;
  b.bit_ = bit;
  return b;
}

BitTerm BitTerm::apply(std::string predicate, DataTerm arg) {
  BitTerm b;
  b.kind_ = Kind::Apply;
  b.predicate_ = std::move(predicate);
  b.arg_ = std::make_shared<const DataTerm>(std::move(arg));
  return b;
}

std::string BitTerm::to_string() const {
  if (kind_ == Kind::Const) return std::to_string(bit_);
  return predicate_ + "(" + arg_->to_string() + ")";
}

std::strong_ordering compare(const BitTerm& a, const BitTerm& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == BitTerm::Kind::Const) return a.bit_ <=> b.bit_;
  if (auto c = a.predicate_ <=> b.predicate_; c != 0) return c;
  return compare(*a.arg_, *b.arg_);
}

// --- CondTerm ---------------------------------------------------------------

struct CondTerm::Node {
  Kind kind = Kind::True;
  std::vector<DataTerm> data;
  std::vector<BitTerm> bits;
  std::vector<CondTerm> operands;
};

CondTerm CondTerm::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return CondTerm(std::move(n));
}

CondTerm CondTerm::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return CondTerm(std::move(n));
}

CondTerm CondTerm::data_eq(DataTerm lhs, DataTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DataEq;
  n->data = {std::move(lhs), std::move(rhs)};
  return CondTerm(std::move(n));
}

CondTerm CondTerm::bit_eq(BitTerm lhs, BitTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::BitEq;
  n->bits = {std::move(lhs), std::move(rhs)};
  return CondTerm(std::move(n));
}

CondTerm CondTerm::negation(CondTerm c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->operands = {std::move(c)};
  return CondTerm(std::move(n));
}

CondTerm CondTerm::connective(Kind k, CondTerm lhs, CondTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->operands = {std::move(lhs), std::move(rhs)};
  return CondTerm(std::move(n));
}

CondTerm::Kind CondTerm::kind() const noexcept { return node_->kind; }
const DataTerm& CondTerm::data_lhs() const { return node_->data.at(0); }
const DataTerm& CondTerm::data_rhs() const { return node_->data.at(1); }
const BitTerm& CondTerm::bit_lhs() const { return node_->bits.at(0); }
const BitTerm& CondTerm::bit_rhs() const { return node_->bits.at(1); }
const std::vector<CondTerm>& CondTerm::operands() const { return node_->operands; }

namespace {

int cond_precedence(CondTerm::Kind k) {
  switch (k) {
    case CondTerm::Kind::Implies: return 0;
    case CondTerm::Kind::Or: return 1;
    case CondTerm::Kind::And: return 2;
    case CondTerm::Kind::Not: return 3;
    default: return 4;
  }
}

std::string render_cond(const CondTerm& c, int min_prec) {
  std::string s;
  int prec = cond_precedence(c.kind());
  const auto& ops = c.operands();
  switch (c.kind()) {
    case CondTerm::Kind::True: return "True";
    case CondTerm::Kind::False: return "False";
    case CondTerm::Kind::DataEq:
      return "(" + c.data_lhs().to_string() + " = " + c.data_rhs().to_string() + ")";
    case CondTerm::Kind::BitEq:
      return "(" + c.bit_lhs().to_string() + " = " + c.bit_rhs().to_string() + ")";
    case CondTerm::Kind::Not: s = "!" + render_cond(ops[0], 3); break;
    case CondTerm::Kind::And: s = render_cond(ops[0], 2) + " & " + render_cond(ops[1], 3); break;
    case CondTerm::Kind::Or: s = render_cond(ops[0], 1) + " | " + render_cond(ops[1], 2); break;
    case CondTerm::Kind::Implies:
      s = render_cond(ops[0], 1) + " -> " + render_cond(ops[1], 0);
      break;
  }
  return prec < min_prec ? "(" + s + ")" : s;
}

}  // namespace

std::string CondTerm::to_string() const { return render_cond(*this, 0); }

std::strong_ordering compare(const CondTerm& a, const CondTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = compare_vectors(a.node_->data, b.node_->data); c != 0) return c;
  if (auto c = compare_vectors(a.node_->bits, b.node_->bits); c != 0) return c;
  return compare_vectors(a.node_->operands, b.node_->operands);
}

// --- Valuation --------------------------------------------------------------

std::optional<Value> Valuation::lookup(const std::string& var) const {
  if (auto it = values_.find(var); it != values_.end()) return it->second;
  return fallback_;
}

Valuation Valuation::updated(const std::string& var, Value value) const {
  Valuation v = *this;
  v.values_[var] = std::move(value);
  return v;
}

std::string Valuation::to_string() const {
  std::string s = "[";
  bool first = true;
  for (const auto& [k, v] : values_) {
    s += (first ? "" : ", ") + k + " -> " + protoalg::to_string(v);
    first = false;
  }
  if (fallback_) s += std::string(first ? "" : ", ") + "* -> " + protoalg::to_string(*fallback_);
  return s + "]";
}

// --- ProcTerm ---------------------------------------------------------------

struct ProcTerm::Node {
  Kind kind = Kind::Delta;
  std::string name;
  std::vector<DataTerm> data;
  std::vector<CondTerm> cond;
  Valuation rho;
  std::shared_ptr<const LinearSpec> spec;
  std::vector<ProcTerm> children;
};

namespace {

std::shared_ptr<ProcTerm::Node> proc_node(ProcTerm::Kind k) {
  auto n = std::make_shared<ProcTerm::Node>();
  n->kind = k;
  return n;
}

}  // namespace

ProcTerm ProcTerm::action(std::string name) {
  auto n = proc_node(Kind::Action);
  n->name = std::move(name);
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::delta() { return ProcTerm(proc_node(Kind::Delta)); }
ProcTerm ProcTerm::epsilon() { return ProcTerm(proc_node(Kind::Epsilon)); }

ProcTerm ProcTerm::alt(std::vector<ProcTerm> summands) {
  std::vector<ProcTerm> flat;
  for (auto& s : summands) {
    if (s.kind() == Kind::Alt)
      flat.insert(flat.end(), s.children().begin(), s.children().end());
    else
      flat.push_back(std::move(s));
  }
  if (flat.empty()) return delta();
  if (flat.size() == 1) return flat.front();
  auto n = proc_node(Kind::Alt);
  n->children = std::move(flat);
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::seq(ProcTerm lhs, ProcTerm rhs) {
  auto n = proc_node(Kind::Seq);
  n->children = {std::move(lhs), std::move(rhs)};
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::assign(std::string var, DataTerm e) {
  auto n = proc_node(Kind::Assign);
  n->name = std::move(var);
  n->data = {std::move(e)};
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::guard(CondTerm cond, ProcTerm body) {
  auto n = proc_node(Kind::Guard);
  n->cond = {std::move(cond)};
  n->children = {std::move(body)};
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::eval(Valuation rho, ProcTerm body) {
  auto n = proc_node(Kind::Eval);
  n->rho = std::move(rho);
  n->children = {std::move(body)};
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::var(std::string name) {
  auto n = proc_node(Kind::Var);
  n->name = std::move(name);
  return ProcTerm(std::move(n));
}

ProcTerm ProcTerm::rec(std::string var, std::shared_ptr<const LinearSpec> spec) {
  auto n = proc_node(Kind::Rec);
  n->name = std::move(var);
  n->spec = std::move(spec);
  return ProcTerm(std::move(n));
}

ProcTerm::Kind ProcTerm::kind() const noexcept { return node_->kind; }
const std::string& ProcTerm::name() const noexcept { return node_->name; }
const DataTerm& ProcTerm::data() const { return node_->data.at(0); }
const CondTerm& ProcTerm::cond() const { return node_->cond.at(0); }
const Valuation& ProcTerm::valuation() const { return node_->rho; }
const std::shared_ptr<const LinearSpec>& ProcTerm::spec() const { return node_->spec; }
const std::vector<ProcTerm>& ProcTerm::children() const noexcept { return node_->children; }

namespace {

// Alt < Guard < Seq < atoms
int proc_precedence(ProcTerm::Kind k) {
  switch (k) {
    case ProcTerm::Kind::Alt: return 0;
    case ProcTerm::Kind::Guard: return 1;
    case ProcTerm::Kind::Seq: return 2;
    default: return 3;
  }
}

std::string render_proc(const ProcTerm& t, int min_prec) {
  std::string s;
  const auto& c = t.children();
  switch (t.kind()) {
    case ProcTerm::Kind::Action:
    case ProcTerm::Kind::Var: return t.name();
    case ProcTerm::Kind::Delta: return "delta";
    case ProcTerm::Kind::Epsilon: return "eps";
    case ProcTerm::Kind::Rec: return "<" + t.name() + "|S>";
    case ProcTerm::Kind::Eval:
      return "eval" + t.valuation().to_string() + "(" + render_proc(c[0], 0) + ")";
    case ProcTerm::Kind::Assign: s = t.name() + " := " + t.data().to_string(); break;
    case ProcTerm::Kind::Guard: s = t.cond().to_string() + " :-> " + render_proc(c[0], 1); break;
    case ProcTerm::Kind::Seq: s = render_proc(c[0], 3) + " . " + render_proc(c[1], 2); break;
    case ProcTerm::Kind::Alt:
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " + " : "") + render_proc(c[i], 1);
      break;
  }
  // Assignments are atoms for the purpose of parenthesisation.
  int prec = t.kind() == ProcTerm::Kind::Assign ? 3 : proc_precedence(t.kind());
  return prec < min_prec ? "(" + s + ")" : s;
}

std::strong_ordering compare_specs(const std::shared_ptr<const LinearSpec>& a,
                                   const std::shared_ptr<const LinearSpec>& b) {
  if (a == b) return std::strong_ordering::equal;
  if (!a || !b) return (a != nullptr) <=> (b != nullptr);
  if (auto c = a->equations.size() <=> b->equations.size(); c != 0) return c;
  for (auto i = a->equations.begin(), j = b->equations.begin(); i != a->equations.end(); ++i, ++j) {
    if (auto c = i->first <=> j->first; c != 0) return c;
    if (auto c = compare(i->second, j->second); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<ProcTerm> sorted(std::vector<ProcTerm> v) {
  std::sort(v.begin(), v.end(),
            [](const ProcTerm& a, const ProcTerm& b) { return compare(a, b) < 0; });
  return v;
}

}  // namespace

std::string ProcTerm::to_string() const { return render_proc(*this, 0); }

std::strong_ordering compare(const ProcTerm& a, const ProcTerm& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = compare_vectors(x.data, y.data); c != 0) return c;
  if (auto c = compare_vectors(x.cond, y.cond); c != 0) return c;
  if (auto c = x.rho <=> y.rho; c != 0) return c;
  if (auto c = compare_specs(x.spec, y.spec); c != 0) return c;
  if (x.kind == ProcTerm::Kind::Alt) return compare_vectors(sorted(x.children), sorted(y.children));
  return compare_vectors(x.children, y.children);
}

const ProcTerm* LinearSpec::find(const std::string& var) const {
  auto it = equations.find(var);
  return it == equations.end() ? nullptr : &it->second;
}

bool operator==(const LinearSpec& a, const LinearSpec& b) { return a.equations == b.equations; }

// --- linear fragment --------------------------------------------------------

bool is_linear(const ProcTerm& t) {
  using K = ProcTerm::Kind;
  switch (t.kind()) {
    case K::Delta: return true;
    case K::Guard: {
      const auto& body = t.children()[0];
      if (body.kind() == K::Epsilon) return true;
      if (body.kind() != K::Seq) return false;
      const auto& atom = body.children()[0];
      const auto& next = body.children()[1];
      return (atom.kind() == K::Action || atom.kind() == K::Assign) && next.kind() == K::Var;
    }
    case K::Alt:
      return std::all_of(t.children().begin(), t.children().end(),
                         [](const ProcTerm& s) { return s.kind() != K::Delta && is_linear(s); });
    default: return false;
  }
}

namespace {

void collect_vars(const ProcTerm& t, std::vector<std::string>& out) {
  if (t.kind() == ProcTerm::Kind::Var) out.push_back(t.name());
  for (const auto& c : t.children()) collect_vars(c, out);
}

}  // namespace

bool is_linear_spec(const LinearSpec& s, std::string* why) {
  for (const auto& [x, rhs] : s.equations) {
    if (!is_linear(rhs)) {
      if (why) *why = "right-hand side of " + x + " is not a linear term";
      return false;
    }
    std::vector<std::string> vars;
    collect_vars(rhs, vars);
    for (const auto& v : vars) {
      if (!s.equations.count(v)) {
        if (why) *why = "variable " + v + " in the equation for " + x + " has no equation";
        return false;
      }
    }
  }
  return true;
}

}  // namespace protoalg
