#include "protoalg/prove.hpp"

#include <set>

#include "protoalg/error.hpp"

namespace protoalg {

std::string_view to_string(ProofOutcome o) {
  switch (o) {
    case ProofOutcome::Proven: return "Proven";
    case ProofOutcome::MethodInconclusive: return "MethodInconclusive";
    case ProofOutcome::UnknownAtBound: return "UnknownAtBound";
  }
  return "?";
}

ProofReport prove_aeqv(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                       const std::optional<std::vector<Value>>& inputs, std::size_t bound) {
  if (!(a.alphabet() == b.alphabet()))
    throw Error(ErrorCode::MismatchedSignature, "the alphabets differ");
  if (!(a.interp() == b.interp()))
    throw Error(ErrorCode::MismatchedSignature, "the interpretations differ");

  auto pa = graph_to_process(a.graph());
  auto pb = graph_to_process(b.graph());
  ProofReport report;
  bool inconclusive = false, unknown = false;
  for (const auto& d : inputs ? *inputs : a.inputs()) {
    if (!a.interp().input.contains(d))
      throw Error(ErrorCode::InputNotInDomain, to_string(d) + " is not in the input domain");
    InputProof ip;
    ip.input = d;
    ip.verdict = derivably_equal(a.interp(), pa.evaluated(d), pb.evaluated(d), bound);
    switch (ip.verdict.kind) {
      case VerdictKind::Proven: ip.outcome = ProofOutcome::Proven; break;
      case VerdictKind::Refuted:
        ip.outcome = ProofOutcome::MethodInconclusive;
        inconclusive = true;
        break;
      case VerdictKind::UnknownAtBound:
        ip.outcome = ProofOutcome::UnknownAtBound;
        unknown = true;
        break;
    }
    report.inputs.push_back(std::move(ip));
  }
  report.outcome = inconclusive ? ProofOutcome::MethodInconclusive
                   : unknown    ? ProofOutcome::UnknownAtBound
                                : ProofOutcome::Proven;
  return report;
}

Report cross_validate_lemma1(const ProtoAlgorithm& a) {
  Report r;
  auto p = graph_to_process(a.graph());
  const auto& g = a.graph();
  const auto& interp = a.interp();

  auto expect_step = [&](const char* code, const State& s, const std::string& var, const Value& d) {
    State next = astep(a, s);
    std::string subject = describe(a, s);
    HeadNormalForm h;
    try {
      h = head_normal_form(interp,
                           ProcTerm::eval(Valuation::of_mem(d), ProcTerm::rec(var, p.spec)));
    } catch (const Error& e) {
      r.add(code, subject, e.what());
      return next;
    }
    if (h.kind != HeadNormalForm::Kind::Step) {
      r.add(code, subject, "unfolding does not perform an action");
      return next;
    }
    std::string want_var =
        next.is_output() ? p.empty : process_variable(g, g.vertex(next.vertex).id);
    auto want = ProcTerm::assign(kMem, DataTerm::constant(next.value));
    if (!(*h.action == want))
      r.add(code, subject, "action " + h.action->to_string() + ", expected " + want.to_string());
    if (h.next_variable != want_var)
      r.add(code, subject, "continuation " + h.next_variable + ", expected " + want_var);
    if (h.next_valuation.lookup(kMem) != std::optional<Value>(next.value))
      r.add(code, subject,
            "valuation " + h.next_valuation.to_string() + " disagrees with the state");
    return next;
  };

  std::set<State> seen;
  for (const auto& d : a.inputs()) {
    State s = expect_step("input", State::input(d), p.root, d);
    while (!s.is_output() && seen.insert(s).second) {
      const char* code = g.vertex(s.vertex).kind == VertexKind::Fin ? "output" : "internal";
      s = expect_step(code, s, process_variable(g, g.vertex(s.vertex).id), s.value);
    }
  }
  auto h = head_normal_form(
      interp,
      ProcTerm::eval(Valuation::of_mem(a.carrier().empty() ? Value{0} : a.carrier().front()),
                     ProcTerm::rec(p.empty, p.spec)));
  if (h.kind != HeadNormalForm::Kind::Terminated) r.add("empty", p.empty, "does not terminate");
  return r;
}

}  // namespace protoalg
