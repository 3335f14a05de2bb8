#include <algorithm>
#include <array>

#include "protoalg/error.hpp"
#include "protoalg/procalg.hpp"

namespace protoalg {

// --- data algebra -----------------------------------------------------------

Value eval_data(const Interpretation& interp, const Valuation& rho, const DataTerm& e) {
  switch (e.kind()) {
    case DataTerm::Kind::Const: return e.value();
    case DataTerm::Kind::Var: {
      auto v = rho.lookup(e.name());
      if (!v)
        throw Error(ErrorCode::OpenCondition, "flexible variable " + e.name() + " is unbound");
      return *v;
    }
    case DataTerm::Kind::Apply:
      return apply_symbol(interp, e.name(), eval_data(interp, rho, e.arg()));
  }
  throw Error(ErrorCode::MalformedState, "bad data term");
}

int eval_bit(const Interpretation& interp, const Valuation& rho, const BitTerm& b) {
  if (b.kind() == BitTerm::Kind::Const) return b.bit();
  Value v = apply_symbol(interp, b.predicate(), eval_data(interp, rho, b.arg()));
  if (v.arity() != 1 || (v[0] != 0 && v[0] != 1))
    throw Error(ErrorCode::DomainViolation,
                b.predicate() + " yields " + to_string(v) + ", which is not a bit");
  return static_cast<int>(v[0]);
}

bool eval_cond(const Interpretation& interp, const Valuation& rho, const CondTerm& phi) {
  using K = CondTerm::Kind;
  const auto& ops = phi.operands();
  switch (phi.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::DataEq:
      return eval_data(interp, rho, phi.data_lhs()) == eval_data(interp, rho, phi.data_rhs());
    case K::BitEq:
      return eval_bit(interp, rho, phi.bit_lhs()) == eval_bit(interp, rho, phi.bit_rhs());
    case K::Not: return !eval_cond(interp, rho, ops[0]);
    case K::And: return eval_cond(interp, rho, ops[0]) && eval_cond(interp, rho, ops[1]);
    case K::Or: return eval_cond(interp, rho, ops[0]) || eval_cond(interp, rho, ops[1]);
    case K::Implies: return !eval_cond(interp, rho, ops[0]) || eval_cond(interp, rho, ops[1]);
  }
  return false;
}

DataTerm substitute(const Valuation& rho, const DataTerm& e) {
  switch (e.kind()) {
    case DataTerm::Kind::Const: return e;
    case DataTerm::Kind::Var: {
      auto v = rho.lookup(e.name());
      if (!v)
        throw Error(ErrorCode::OpenCondition, "flexible variable " + e.name() + " is unbound");
      return DataTerm::constant(*v);
    }
    case DataTerm::Kind::Apply: return DataTerm::apply(e.name(), substitute(rho, e.arg()));
  }
  return e;
}

namespace {

BitTerm substitute(const Valuation& rho, const BitTerm& b) {
  if (b.kind() == BitTerm::Kind::Const) return b;
  return BitTerm::apply(b.predicate(), substitute(rho, b.arg()));
}

bool is_closed(const BitTerm& b) { return b.kind() == BitTerm::Kind::Const || b.arg().is_closed(); }

bool is_closed(const CondTerm& phi) {
  using K = CondTerm::Kind;
  switch (phi.kind()) {
    case K::True:
    case K::False: return true;
    case K::DataEq: return phi.data_lhs().is_closed() && phi.data_rhs().is_closed();
    case K::BitEq: return is_closed(phi.bit_lhs()) && is_closed(phi.bit_rhs());
    default:
      return std::all_of(phi.operands().begin(), phi.operands().end(),
                         [](const CondTerm& c) { return is_closed(c); });
  }
}

}  // namespace

CondTerm substitute(const Valuation& rho, const CondTerm& phi) {
  using K = CondTerm::Kind;
  const auto& ops = phi.operands();
  switch (phi.kind()) {
    case K::True:
    case K::False: return phi;
    case K::DataEq:
      return CondTerm::data_eq(substitute(rho, phi.data_lhs()), substitute(rho, phi.data_rhs()));
    case K::BitEq:
      return CondTerm::bit_eq(substitute(rho, phi.bit_lhs()), substitute(rho, phi.bit_rhs()));
    case K::Not: return CondTerm::negation(substitute(rho, ops[0]));
    default:
      return CondTerm::connective(phi.kind(), substitute(rho, ops[0]), substitute(rho, ops[1]));
  }
}

// --- axioms -----------------------------------------------------------------

namespace {

constexpr std::array<std::pair<Axiom, std::string_view>, 24> kAxiomNames{{
    {Axiom::A1, "A1"},   {Axiom::A2, "A2"},   {Axiom::A3, "A3"},     {Axiom::A4, "A4"},
    {Axiom::A5, "A5"},   {Axiom::A6, "A6"},   {Axiom::A7, "A7"},     {Axiom::A8, "A8"},
    {Axiom::A9, "A9"},   {Axiom::GC1, "GC1"}, {Axiom::GC2, "GC2"},   {Axiom::GC3, "GC3"},
    {Axiom::GC4, "GC4"}, {Axiom::GC5, "GC5"}, {Axiom::GC6, "GC6"},   {Axiom::GC7, "GC7"},
    {Axiom::RDP, "RDP"}, {Axiom::V1, "V1"},   {Axiom::V2, "V2"},     {Axiom::V3, "V3"},
    {Axiom::V4, "V4"},   {Axiom::V5, "V5"},   {Axiom::IMP1, "IMP1"}, {Axiom::IMP2, "IMP2"},
}};

}  // namespace

std::string_view axiom_name(Axiom a) {
  for (const auto& [ax, name] : kAxiomNames)
    if (ax == a) return name;
  return "?";
}

std::optional<Axiom> axiom_from_name(std::string_view name) {
  for (const auto& [ax, n] : kAxiomNames)
    if (n == name) return ax;
  return std::nullopt;
}

namespace {

using K = ProcTerm::Kind;

[[noreturn]] void mismatch(Axiom a, const ProcTerm& t) {
  throw Error(ErrorCode::AxiomMismatch,
              std::string(axiom_name(a)) + " does not apply to " + t.to_string());
}

void expect(bool ok, Axiom a, const ProcTerm& t) {
  if (!ok) mismatch(a, t);
}

ProcTerm substitute_vars(const ProcTerm& t, const std::shared_ptr<const LinearSpec>& spec) {
  const auto& c = t.children();
  switch (t.kind()) {
    case K::Var: return ProcTerm::rec(t.name(), spec);
    case K::Alt: {
      std::vector<ProcTerm> out;
      for (const auto& s : c) out.push_back(substitute_vars(s, spec));
      return ProcTerm::alt(std::move(out));
    }
    case K::Seq: return ProcTerm::seq(substitute_vars(c[0], spec), substitute_vars(c[1], spec));
    case K::Guard: return ProcTerm::guard(t.cond(), substitute_vars(c[0], spec));
    case K::Eval: return ProcTerm::eval(t.valuation(), substitute_vars(c[0], spec));
    default: return t;
  }
}

ProcTerm rewrite(const Interpretation& interp, const ProcTerm& t, Axiom ax) {
  const auto& c = t.children();
  auto body_is = [&](K k) { return t.kind() == K::Eval && c[0].kind() == k; };
  switch (ax) {
    case Axiom::A1: {
      expect(t.kind() == K::Alt, ax, t);
      std::vector<ProcTerm> r(c.rbegin(), c.rend());
      return ProcTerm::alt(std::move(r));
    }
    case Axiom::A2: expect(t.kind() == K::Alt, ax, t); return t;
    case Axiom::A3: {
      expect(t.kind() == K::Alt, ax, t);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
          if (c[i] == c[j]) {
            std::vector<ProcTerm> r = c;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
            return ProcTerm::alt(std::move(r));
          }
      mismatch(ax, t);
    }
    case Axiom::A4: {
      expect(t.kind() == K::Seq && c[0].kind() == K::Alt, ax, t);
      std::vector<ProcTerm> r;
      for (const auto& s : c[0].children()) r.push_back(ProcTerm::seq(s, c[1]));
      return ProcTerm::alt(std::move(r));
    }
    case Axiom::A5:
      expect(t.kind() == K::Seq && c[0].kind() == K::Seq, ax, t);
      return ProcTerm::seq(c[0].children()[0], ProcTerm::seq(c[0].children()[1], c[1]));
    case Axiom::A6: {
      expect(t.kind() == K::Alt, ax, t);
      std::vector<ProcTerm> r;
      for (const auto& s : c)
        if (s.kind() != K::Delta) r.push_back(s);
      expect(r.size() < c.size(), ax, t);
      return ProcTerm::alt(std::move(r));
    }
    case Axiom::A7:
      expect(t.kind() == K::Seq && c[0].kind() == K::Delta, ax, t);
      return ProcTerm::delta();
    case Axiom::A8: expect(t.kind() == K::Seq && c[1].kind() == K::Epsilon, ax, t); return c[0];
    case Axiom::A9: expect(t.kind() == K::Seq && c[0].kind() == K::Epsilon, ax, t); return c[1];
    case Axiom::GC1:
      expect(t.kind() == K::Guard && t.cond().kind() == CondTerm::Kind::True, ax, t);
      return c[0];
    case Axiom::GC2:
      expect(t.kind() == K::Guard && t.cond().kind() == CondTerm::Kind::False, ax, t);
      return ProcTerm::delta();
    case Axiom::GC3:
      expect(t.kind() == K::Guard && c[0].kind() == K::Delta, ax, t);
      return ProcTerm::delta();
    case Axiom::GC4: {
      expect(t.kind() == K::Guard && c[0].kind() == K::Alt, ax, t);
      std::vector<ProcTerm> r;
      for (const auto& s : c[0].children()) r.push_back(ProcTerm::guard(t.cond(), s));
      return ProcTerm::alt(std::move(r));
    }
    case Axiom::GC5:
      expect(t.kind() == K::Guard && c[0].kind() == K::Seq, ax, t);
      return ProcTerm::seq(ProcTerm::guard(t.cond(), c[0].children()[0]), c[0].children()[1]);
    case Axiom::GC6:
      expect(t.kind() == K::Guard && c[0].kind() == K::Guard, ax, t);
      return ProcTerm::guard(CondTerm::connective(CondTerm::Kind::And, t.cond(), c[0].cond()),
                             c[0].children()[0]);
    case Axiom::GC7: {
      expect(t.kind() == K::Guard && t.cond().kind() == CondTerm::Kind::Or, ax, t);
      const auto& ops = t.cond().operands();
      return ProcTerm::alt({ProcTerm::guard(ops[0], c[0]), ProcTerm::guard(ops[1], c[0])});
    }
    case Axiom::RDP: {
      expect(t.kind() == K::Rec && t.spec(), ax, t);
      const ProcTerm* rhs = t.spec()->find(t.name());
      expect(rhs != nullptr, ax, t);
      return substitute_vars(*rhs, t.spec());
    }
    case Axiom::V1: expect(body_is(K::Epsilon), ax, t); return ProcTerm::epsilon();
    case Axiom::V2: {
      expect(body_is(K::Seq) && c[0].children()[0].kind() == K::Action, ax, t);
      const auto& s = c[0].children();
      return ProcTerm::seq(s[0], ProcTerm::eval(t.valuation(), s[1]));
    }
    case Axiom::V3: {
      expect(body_is(K::Seq) && c[0].children()[0].kind() == K::Assign, ax, t);
      const auto& s = c[0].children();
      const auto& rho = t.valuation();
      Value v = eval_data(interp, rho, s[0].data());
      return ProcTerm::seq(ProcTerm::assign(s[0].name(), substitute(rho, s[0].data())),
                           ProcTerm::eval(rho.updated(s[0].name(), v), s[1]));
    }
    case Axiom::V4: {
      expect(body_is(K::Alt), ax, t);
      std::vector<ProcTerm> r;
      for (const auto& s : c[0].children()) r.push_back(ProcTerm::eval(t.valuation(), s));
      return ProcTerm::alt(std::move(r));
    }
    case Axiom::V5:
      expect(body_is(K::Guard), ax, t);
      return ProcTerm::guard(substitute(t.valuation(), c[0].cond()),
                             ProcTerm::eval(t.valuation(), c[0].children()[0]));
    case Axiom::IMP1:
      expect(
          t.kind() == K::Assign && t.data().is_closed() && t.data().kind() != DataTerm::Kind::Const,
          ax, t);
      return ProcTerm::assign(t.name(),
                              DataTerm::constant(eval_data(interp, Valuation(), t.data())));
    case Axiom::IMP2:
      expect(t.kind() == K::Guard && is_closed(t.cond()), ax, t);
      return ProcTerm::guard(
          eval_cond(interp, Valuation(), t.cond()) ? CondTerm::truth() : CondTerm::falsity(), c[0]);
  }
  mismatch(ax, t);
}

ProcTerm replace_at(const Interpretation& interp, const ProcTerm& t, Axiom ax, const Position& pos,
                    std::size_t depth) {
  if (depth == pos.size()) return rewrite(interp, t, ax);
  const auto& c = t.children();
  std::uint32_t i = pos[depth];
  if (i >= c.size())
    throw Error(ErrorCode::AxiomMismatch, "position out of range in " + t.to_string());
  ProcTerm sub = replace_at(interp, c[i], ax, pos, depth + 1);
  switch (t.kind()) {
    case K::Alt: {
      std::vector<ProcTerm> r = c;
      r[i] = std::move(sub);
      return ProcTerm::alt(std::move(r));
    }
    case K::Seq: return i == 0 ? ProcTerm::seq(sub, c[1]) : ProcTerm::seq(c[0], sub);
    case K::Guard: return ProcTerm::guard(t.cond(), sub);
    case K::Eval: return ProcTerm::eval(t.valuation(), sub);
    default: throw Error(ErrorCode::AxiomMismatch, "position out of range in " + t.to_string());
  }
}

}  // namespace

ProcTerm apply_axiom(const Interpretation& interp, const ProcTerm& t, Axiom axiom,
                     const Position& pos) {
  return replace_at(interp, t, axiom, pos, 0);
}

ProcTerm replay(const Interpretation& interp, const ProcTerm& t, const ProofLog& log) {
  ProcTerm cur = t;
  for (const auto& step : log) cur = apply_axiom(interp, cur, step.axiom, step.position);
  return cur;
}

// --- head normal forms ------------------------------------------------------

HeadNormalForm head_normal_form(const Interpretation& interp, const ProcTerm& t) {
  if (t.kind() != K::Eval || t.children()[0].kind() != K::Rec)
    throw Error(ErrorCode::NonLinearSpec, "expected eval_rho(<X|S>), got " + t.to_string());
  const auto& rho = t.valuation();
  const auto& rec = t.children()[0];
  const auto& spec = rec.spec();
  const ProcTerm* rhs = spec ? spec->find(rec.name()) : nullptr;
  if (!rhs) throw Error(ErrorCode::NonLinearSpec, "no equation for " + rec.name());
  if (!is_linear(*rhs))
    throw Error(ErrorCode::NonLinearSpec, "equation for " + rec.name() + " is not linear");

  HeadNormalForm h;
  h.log.push_back({Axiom::RDP, {0}});
  if (rhs->kind() == K::Delta) {
    h.kind = HeadNormalForm::Kind::Stuck;
    h.term = ProcTerm::eval(rho, ProcTerm::delta());
    return h;
  }

  bool is_sum = rhs->kind() == K::Alt;
  std::vector<ProcTerm> summands = is_sum ? rhs->children() : std::vector<ProcTerm>{*rhs};
  if (is_sum) h.log.push_back({Axiom::V4, {}});
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    Position p = is_sum ? Position{static_cast<std::uint32_t>(i)} : Position{};
    bool holds = eval_cond(interp, rho, summands[i].cond());
    h.log.push_back({Axiom::V5, p});
    h.log.push_back({Axiom::IMP2, p});
    h.log.push_back({holds ? Axiom::GC1 : Axiom::GC2, p});
    if (holds) live.push_back(i);
  }
  if (live.size() > 1)
    throw Error(ErrorCode::AmbiguousGuards, std::to_string(live.size()) + " guards of " +
                                                rec.name() + " hold under " + rho.to_string());
  if (is_sum) h.log.push_back({Axiom::A6, {}});
  if (live.empty()) {
    h.kind = HeadNormalForm::Kind::Stuck;
    h.term = ProcTerm::delta();
    return h;
  }

  const ProcTerm& body = summands[live[0]].children()[0];
  if (body.kind() == K::Epsilon) {
    h.log.push_back({Axiom::V1, {}});
    h.kind = HeadNormalForm::Kind::Terminated;
    h.term = ProcTerm::epsilon();
    return h;
  }

  const ProcTerm& atom = body.children()[0];
  h.kind = HeadNormalForm::Kind::Step;
  h.next_variable = body.children()[1].name();
  if (atom.kind() == K::Action) {
    h.log.push_back({Axiom::V2, {}});
    h.action = atom;
    h.next_valuation = rho;
  } else {
    h.log.push_back({Axiom::V3, {}});
    Value v = eval_data(interp, rho, atom.data());
    if (substitute(rho, atom.data()).kind() != DataTerm::Kind::Const)
      h.log.push_back({Axiom::IMP1, {0}});
    h.action = ProcTerm::assign(atom.name(), DataTerm::constant(v));
    h.next_valuation = rho.updated(atom.name(), v);
  }
  h.term = ProcTerm::seq(*h.action,
                         ProcTerm::eval(h.next_valuation, ProcTerm::rec(h.next_variable, spec)));
  return h;
}

std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Proven: return "Proven";
    case VerdictKind::Refuted: return "Refuted";
    case VerdictKind::UnknownAtBound: return "UnknownAtBound";
  }
  return "?";
}

namespace {

std::string describe_head(const HeadNormalForm& h) {
  switch (h.kind) {
    case HeadNormalForm::Kind::Terminated: return "terminates";
    case HeadNormalForm::Kind::Stuck: return "deadlocks";
    case HeadNormalForm::Kind::Step: return h.action->to_string();
  }
  return "?";
}

void append_shifted(ProofLog& out, const ProofLog& in, std::size_t depth) {
  // Step i of the unfolding acts on the right operand of the i previous
  // sequential compositions.
  for (const auto& s : in) {
    ProofStep shifted = s;
    shifted.position.insert(shifted.position.begin(), depth, 1);
    out.push_back(std::move(shifted));
  }
}

}  // namespace

EqualityVerdict derivably_equal(const Interpretation& interp, const ProcTerm& t, const ProcTerm& u,
                                std::size_t bound) {
  EqualityVerdict v;
  if (t == u) {
    v.kind = VerdictKind::Proven;
    return v;
  }
  ProcTerm cur_t = t, cur_u = u;
  for (std::size_t i = 0;; ++i) {
    if (i >= bound) {
      v.kind = VerdictKind::UnknownAtBound;
      v.index = i;
      v.left_log.clear();
      v.right_log.clear();
      return v;
    }
    HeadNormalForm ht = head_normal_form(interp, cur_t);
    HeadNormalForm hu = head_normal_form(interp, cur_u);
    append_shifted(v.left_log, ht.log, i);
    append_shifted(v.right_log, hu.log, i);
    bool same =
        ht.kind == hu.kind && (ht.kind != HeadNormalForm::Kind::Step || *ht.action == *hu.action);
    if (!same) {
      v.kind = VerdictKind::Refuted;
      v.index = i;
      v.left_at = describe_head(ht);
      v.right_at = describe_head(hu);
      v.left_log.clear();
      v.right_log.clear();
      return v;
    }
    if (ht.kind != HeadNormalForm::Kind::Step) {
      // eval_rho(delta) has no rewrite, so distinct valuations stay distinct.
      v.kind = ht.term == hu.term ? VerdictKind::Proven : VerdictKind::UnknownAtBound;
      if (v.kind != VerdictKind::Proven) {
        v.left_log.clear();
        v.right_log.clear();
      }
      v.index = i;
      return v;
    }
    v.left_trace.push_back(ht.action->to_string());
    v.right_trace.push_back(hu.action->to_string());
    cur_t = ht.term.children()[1];
    cur_u = hu.term.children()[1];
  }
}

}  // namespace protoalg
