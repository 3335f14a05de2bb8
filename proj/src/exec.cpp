#include "protoalg/exec.hpp"

#include "protoalg/error.hpp"

namespace protoalg {

ProtoAlgorithm ProtoAlgorithm::make(Alphabet alphabet, RootedLabeledDigraph graph,
                                    Interpretation interp, std::size_t extent_cap) {
  Report r = validate_algorithm_graph(alphabet, graph);
  Report ri = check_interpretation(alphabet, interp, extent_cap);
  r.append(ri);
  if (!r.ok()) throw ValidationError(ErrorCode::InvalidProtoAlgorithm, std::move(r));

  ProtoAlgorithm a(AlgorithmGraph::build(alphabet, graph), std::move(interp));
  a.inputs_ = enumerate(a.interp_.input, extent_cap);
  a.carrier_ = enumerate(a.interp_.main, extent_cap);
  a.outputs_ = enumerate(a.interp_.output, extent_cap);
  return a;
}

std::string describe(const ProtoAlgorithm& a, const State& s) {
  switch (s.kind) {
    case StateKind::Input: return "input " + to_string(s.value);
    case StateKind::Output: return "output " + to_string(s.value);
    case StateKind::Internal: break;
  }
  std::string v = s.vertex < a.graph().size() ? a.graph().vertex(s.vertex).id : "?";
  return "(" + v + "," + to_string(s.value) + ")";
}

namespace {

void require_well_formed(const ProtoAlgorithm& a, const State& s) {
  bool ok = false;
  switch (s.kind) {
    case StateKind::Input: ok = a.interp().input.contains(s.value); break;
    case StateKind::Output: ok = a.interp().output.contains(s.value); break;
    case StateKind::Internal:
      ok = s.vertex < a.graph().size() && a.interp().main.contains(s.value);
      break;
  }
  if (!ok) throw Error(ErrorCode::MalformedState, describe(a, s));
}

// One algorithmic step from a well-formed state.
State step_unchecked(const ProtoAlgorithm& a, const State& s) {
  const auto& g = a.graph();
  const auto& interp = a.interp();
  switch (s.kind) {
    case StateKind::Input:
      return State::internal(g.vertex(g.root()).next, eval_fun(interp, kIni, s.value));
    case StateKind::Output: return s;
    case StateKind::Internal: break;
  }
  const auto& v = g.vertex(s.vertex);
  switch (v.kind) {
    case VertexKind::Operation: return State::internal(v.next, eval_fun(interp, v.label, s.value));
    case VertexKind::Predicate: {
      bool one = eval_fun(interp, v.label, s.value)[0] == 1;
      return State::internal(one ? v.on_one : v.on_zero, s.value);
    }
    case VertexKind::Fin: return State::output(eval_fun(interp, kFin, s.value));
    case VertexKind::Ini: break;
  }
  // The root is never the target of an edge, so (root, d) is unreachable;
  // it steps like the input clause applied to an internal value.
  return State::internal(v.next, s.value);
}

}  // namespace

State astep(const ProtoAlgorithm& a, const State& s) {
  require_well_formed(a, s);
  return step_unchecked(a, s);
}

State cstep(const ProtoAlgorithm& a, const State& s) {
  require_well_formed(a, s);
  State cur = s;
  // Predicate-only paths are acyclic in a validated graph, so this loop
  // visits each predicate vertex at most once.
  for (std::size_t guard = 0; guard <= a.graph().size(); ++guard) {
    bool at_predicate = cur.kind == StateKind::Internal &&
                        a.graph().vertex(cur.vertex).kind == VertexKind::Predicate;
    State next = step_unchecked(a, cur);
    if (!at_predicate) return next;
    cur = std::move(next);
  }
  throw Error(ErrorCode::MalformedState, "predicate-only cycle reached from " + describe(a, s));
}

RunResult run(const ProtoAlgorithm& a, const Value& d, const RunOptions& options) {
  if (!a.interp().input.contains(d))
    throw Error(ErrorCode::InputNotInDomain, to_string(d) + " is not in the input domain");
  RunResult r;
  r.bound = options.max_steps;

  State s = State::input(d);
  if (options.record_algorithmic) r.algorithmic_trace.emplace().push_back(s);
  for (std::size_t n = 1; n <= options.max_steps; ++n) {
    s = step_unchecked(a, s);
    if (r.algorithmic_trace) r.algorithmic_trace->push_back(s);
    if (s.is_output()) {
      r.converged = true;
      r.output = s.value;
      r.nas = n;
      break;
    }
  }

  if (options.record_computational) {
    State c = State::input(d);
    auto& trace = r.computational_trace.emplace();
    trace.push_back(c);
    for (std::size_t n = 1; n <= options.max_steps; ++n) {
      c = cstep(a, c);
      trace.push_back(c);
      if (c.is_output()) {
        r.computational_output = c.value;
        r.computational_steps = n;
        break;
      }
    }
  }
  return r;
}

}  // namespace protoalg
