#include "protoalg/translate.hpp"

#include <deque>
#include <set>

#include "protoalg/error.hpp"

namespace protoalg {

namespace {

using K = ProcTerm::Kind;

DataTerm mem() { return DataTerm::var(kMem); }

ProcTerm simple_equation(const Symbol& f, const std::string& next) {
  return ProcTerm::guard(
      CondTerm::truth(),
      ProcTerm::seq(ProcTerm::assign(kMem, DataTerm::apply(f, mem())), ProcTerm::var(next)));
}

ProcTerm branch(const Symbol& p, int bit, const std::string& next) {
  return ProcTerm::guard(CondTerm::bit_eq(BitTerm::apply(p, mem()), BitTerm::constant(bit)),
                         ProcTerm::seq(ProcTerm::assign(kMem, mem()), ProcTerm::var(next)));
}

struct Simple {
  Symbol symbol;
  std::string next;
};

// True :-> MEM := f(MEM) . Z
std::optional<Simple> match_simple(const ProcTerm& t) {
  if (t.kind() != K::Guard || t.cond().kind() != CondTerm::Kind::True) return std::nullopt;
  const auto& body = t.children()[0];
  if (body.kind() != K::Seq) return std::nullopt;
  const auto& a = body.children()[0];
  const auto& z = body.children()[1];
  if (a.kind() != K::Assign || a.name() != kMem || z.kind() != K::Var) return std::nullopt;
  const auto& e = a.data();
  if (e.kind() != DataTerm::Kind::Apply || e.arg().kind() != DataTerm::Kind::Var ||
      e.arg().name() != kMem)
    return std::nullopt;
  return Simple{e.name(), z.name()};
}

struct Branch {
  Symbol predicate;
  int bit;
  std::string next;
};

// (p(MEM) = b) :-> MEM := MEM . Z
std::optional<Branch> match_branch(const ProcTerm& t) {
  if (t.kind() != K::Guard || t.cond().kind() != CondTerm::Kind::BitEq) return std::nullopt;
  const auto& l = t.cond().bit_lhs();
  const auto& r = t.cond().bit_rhs();
  if (l.kind() != BitTerm::Kind::Apply || r.kind() != BitTerm::Kind::Const) return std::nullopt;
  if (l.arg().kind() != DataTerm::Kind::Var || l.arg().name() != kMem) return std::nullopt;
  if (r.bit() != 0 && r.bit() != 1) return std::nullopt;
  const auto& body = t.children()[0];
  if (body.kind() != K::Seq) return std::nullopt;
  const auto& a = body.children()[0];
  const auto& z = body.children()[1];
  if (a.kind() != K::Assign || a.name() != kMem || z.kind() != K::Var) return std::nullopt;
  if (a.data().kind() != DataTerm::Kind::Var || a.data().name() != kMem) return std::nullopt;
  return Branch{l.predicate(), r.bit(), z.name()};
}

struct Predicate {
  Symbol predicate;
  std::string on_one, on_zero;
};

std::optional<Predicate> match_predicate(const ProcTerm& t) {
  if (t.kind() != K::Alt || t.children().size() != 2) return std::nullopt;
  auto x = match_branch(t.children()[0]);
  auto y = match_branch(t.children()[1]);
  if (!x || !y || x->predicate != y->predicate || x->bit == y->bit) return std::nullopt;
  if (x->bit == 0) std::swap(x, y);
  return Predicate{x->predicate, x->next, y->next};
}

bool is_empty_equation(const ProcTerm& t) {
  return t.kind() == K::Guard && t.cond().kind() == CondTerm::Kind::True &&
         t.children()[0].kind() == K::Epsilon;
}

ProcTerm rename_vars(const ProcTerm& t, const std::map<std::string, std::string>& m) {
  const auto& c = t.children();
  switch (t.kind()) {
    case K::Var: {
      auto it = m.find(t.name());
      return it == m.end() ? t : ProcTerm::var(it->second);
    }
    case K::Alt: {
      std::vector<ProcTerm> out;
      for (const auto& s : c) out.push_back(rename_vars(s, m));
      return ProcTerm::alt(std::move(out));
    }
    case K::Seq: return ProcTerm::seq(rename_vars(c[0], m), rename_vars(c[1], m));
    case K::Guard: return ProcTerm::guard(t.cond(), rename_vars(c[0], m));
    case K::Eval: return ProcTerm::eval(t.valuation(), rename_vars(c[0], m));
    default: return t;
  }
}

// Continuations in branch order: the 1-branch before the 0-branch.
std::vector<std::string> successors(const ProcTerm& t) {
  if (auto s = match_simple(t)) return {s->next};
  if (auto p = match_predicate(t)) return {p->on_one, p->on_zero};
  std::vector<std::string> out;
  std::deque<const ProcTerm*> work{&t};
  while (!work.empty()) {
    const ProcTerm* x = work.front();
    work.pop_front();
    if (x->kind() == K::Var) out.push_back(x->name());
    for (const auto& c : x->children()) work.push_back(&c);
  }
  return out;
}

}  // namespace

ProcessDiagnosis is_algorithm_process(const AlgorithmProcess& p, const Alphabet& alphabet) {
  ProcessDiagnosis d;
  auto fail = [&](const std::string& var, int form, std::string msg) {
    d.ok = false;
    d.variable = var;
    d.form = form;
    d.message = std::move(msg);
    return d;
  };
  const auto& eqs = p.spec->equations;
  if (!eqs.count(p.root)) return fail(p.root, 1, "root variable has no equation");
  if (!eqs.count(p.empty)) return fail(p.empty, 5, "empty variable has no equation");
  if (p.root == p.empty) return fail(p.root, 1, "root and empty variable coincide");

  auto continuation = [&](const std::string& z) { return z != p.empty && eqs.count(z) != 0; };
  for (const auto& [y, t] : eqs) {
    if (y == p.empty) {
      if (!is_empty_equation(t)) return fail(y, 5, "expected True :-> eps");
      continue;
    }
    if (is_empty_equation(t)) return fail(y, 5, "form (5) is reserved for " + p.empty);
    if (auto s = match_simple(t)) {
      if (y == p.root) {
        if (s->symbol != kIni) return fail(y, 1, "root equation must assign ini(MEM)");
        if (!continuation(s->next))
          return fail(y, 1, "continuation " + s->next + " is not allowed");
        continue;
      }
      if (s->symbol == kIni) return fail(y, 1, "form (1) is reserved for " + p.root);
      if (s->symbol == kFin) {
        if (s->next != p.empty) return fail(y, 4, "fin must continue with " + p.empty);
        continue;
      }
      if (!alphabet.is_operation(s->symbol))
        return fail(y, 2, "'" + s->symbol + "' is not an operation of the alphabet");
      if (!continuation(s->next)) return fail(y, 2, "continuation " + s->next + " is not allowed");
      continue;
    }
    if (y == p.root) return fail(y, 1, "expected True :-> MEM := ini(MEM) . Z");
    if (t.kind() == K::Alt) {
      auto q = match_predicate(t);
      if (!q)
        return fail(y, 3,
                    "expected (p(MEM) = 1) :-> MEM := MEM . Z + (p(MEM) = 0) :-> MEM := MEM . Z'");
      if (!alphabet.is_predicate(q->predicate))
        return fail(y, 3, "'" + q->predicate + "' is not a predicate of the alphabet");
      if (!continuation(q->on_one) || !continuation(q->on_zero))
        return fail(y, 3, "continuation is not allowed");
      if (q->on_one == q->on_zero) return fail(y, 3, "both branches continue with " + q->on_one);
      continue;
    }
    return fail(y, 2, "equation matches none of the five forms");
  }
  return d;
}

std::string process_variable(const AlgorithmGraph& g, const VertexId& v) {
  return v == g.vertex(g.root()).id ? "X" : "X_" + v;
}

AlgorithmProcess graph_to_process(const AlgorithmGraph& g) {
  AlgorithmProcess p;
  auto spec = std::make_shared<LinearSpec>();
  std::set<std::string> names;
  for (const auto& v : g.vertices()) names.insert(process_variable(g, v.id));
  p.empty = "X_eps";
  while (names.count(p.empty)) p.empty += "_";

  for (const auto& v : g.vertices()) {
    auto x = process_variable(g, v.id);
    auto name = [&](std::uint32_t i) { return process_variable(g, g.vertex(i).id); };
    switch (v.kind) {
      case VertexKind::Ini:
      case VertexKind::Operation:
        spec->equations.emplace(x, simple_equation(v.label, name(v.next)));
        break;
      case VertexKind::Fin: spec->equations.emplace(x, simple_equation(kFin, p.empty)); break;
      case VertexKind::Predicate:
        spec->equations.emplace(x, ProcTerm::alt({branch(v.label, 1, name(v.on_one)),
                                                  branch(v.label, 0, name(v.on_zero))}));
        break;
    }
  }
  spec->equations.emplace(p.empty, ProcTerm::guard(CondTerm::truth(), ProcTerm::epsilon()));
  p.root = "X";
  p.spec = std::move(spec);
  return p;
}

AlgorithmGraph process_to_graph(const AlgorithmProcess& p, const Alphabet& alphabet) {
  auto d = is_algorithm_process(p, alphabet);
  if (!d.ok)
    throw Error(ErrorCode::NotAlgorithmProcess, "equation for " + d.variable + " (form (" +
                                                    std::to_string(d.form) + ")): " + d.message);
  RootedLabeledDigraph g;
  g.root = p.root;
  for (const auto& [y, t] : p.spec->equations) {
    if (y == p.empty) continue;
    if (auto s = match_simple(t)) {
      g.add_vertex(y, s->symbol);
      if (s->symbol != kFin) g.add_edge(y, s->next);
    } else if (auto q = match_predicate(t)) {
      g.add_vertex(y, q->predicate);
      g.add_edge(y, q->on_one, 1);
      g.add_edge(y, q->on_zero, 0);
    }
  }
  try {
    return AlgorithmGraph::build(alphabet, g);
  } catch (const ValidationError& e) {
    throw Error(ErrorCode::NotAlgorithmProcess,
                "constructed graph is invalid: " + e.report().summary());
  }
}

AlgorithmProcess rename(const AlgorithmProcess& p, const std::map<std::string, std::string>& m) {
  auto map = [&](const std::string& x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  AlgorithmProcess out;
  out.root = map(p.root);
  out.empty = map(p.empty);
  auto spec = std::make_shared<LinearSpec>();
  for (const auto& [y, t] : p.spec->equations) spec->equations.emplace(map(y), rename_vars(t, m));
  out.spec = std::move(spec);
  return out;
}

AlgorithmProcess canonical(const AlgorithmProcess& p) {
  std::map<std::string, std::string> m;
  std::size_t next = 1;
  auto visit = [&](const std::string& x) {
    if (m.count(x)) return false;
    if (x == p.root)
      m[x] = "X";
    else if (x == p.empty)
      m[x] = "X_eps";
    else
      m[x] = "X_" + std::to_string(next++);
    return true;
  };
  std::deque<std::string> work;
  visit(p.root);
  visit(p.empty);
  work.push_back(p.root);
  while (!work.empty()) {
    auto x = work.front();
    work.pop_front();
    const ProcTerm* t = p.spec->find(x);
    if (!t) continue;
    for (const auto& z : successors(*t))
      if (visit(z)) work.push_back(z);
  }
  for (const auto& [y, _] : p.spec->equations) visit(y);
  return rename(p, m);
}

}  // namespace protoalg
