#include "protoalg/json_io.hpp"

namespace protoalg {

namespace {

Json value_map(const std::map<Value, Value>& m) {
  Json out = Json::array();
  for (const auto& [k, v] : m) out.push_back(Json::array({to_json(k), to_json(v)}));
  return out;
}

template <class K>
Json string_map(const std::map<K, K>& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

Json trace(const ProtoAlgorithm& a, const std::vector<State>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(to_json(a, s));
  return out;
}

Json strings(const std::vector<std::string>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

Json to_json(const Value& v) {
  Json out = Json::array();
  for (auto x : v.items()) out.push_back(x);
  return out;
}

Value value_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "value must be an array of integers");
  std::vector<std::int64_t> items;
  for (const auto& x : j) {
    if (!x.is_number_integer())
      throw Error(ErrorCode::ParseError, "value must be an array of integers");
    items.push_back(x.get<std::int64_t>());
  }
  return Value(std::move(items));
}

Json to_json(const ProtoAlgorithm& a, const State& s) {
  Json out;
  switch (s.kind) {
    case StateKind::Input: out["kind"] = "input"; break;
    case StateKind::Internal:
      out["kind"] = "internal";
      out["vertex"] = a.graph().vertex(s.vertex).id;
      break;
    case StateKind::Output: out["kind"] = "output"; break;
  }
  out["value"] = to_json(s.value);
  return out;
}

Json to_json(const Report& r) {
  Json out;
  out["ok"] = r.ok();
  Json issues = Json::array();
  for (const auto& i : r.issues)
    issues.push_back(Json{{"code", i.code}, {"subject", i.subject}, {"message", i.message}});
  out["issues"] = std::move(issues);
  return out;
}

Json to_json(const std::vector<Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics)
    out.push_back(
        Json{{"line", d.line}, {"column", d.column}, {"code", d.code}, {"message", d.message}});
  return out;
}

Json to_json(const ProtoAlgorithm& a, const Value& input, const RunResult& r) {
  Json out;
  out["input"] = to_json(input);
  out["converged"] = r.converged;
  out["output"] = r.output ? to_json(*r.output) : Json(nullptr);
  out["nas"] = r.converged ? Json(r.nas) : Json(nullptr);
  out["bound"] = r.bound;
  if (r.algorithmic_trace) out["algorithmic_trace"] = trace(a, *r.algorithmic_trace);
  if (r.computational_trace) {
    out["computational_trace"] = trace(a, *r.computational_trace);
    out["computational_output"] =
        r.computational_output ? to_json(*r.computational_output) : Json(nullptr);
    out["computational_steps"] = r.computational_steps;
  }
  return out;
}

Json to_json(const IsoVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.kind));
  out["nodes"] = v.nodes;
  if (v.witness) {
    const auto& w = *v.witness;
    out["witness"] = Json{{"functions", string_map(w.functions)},
                          {"predicates", string_map(w.predicates)},
                          {"vertices", string_map(w.vertices)},
                          {"bit_swap", w.bit_swap},
                          {"main", value_map(w.main)},
                          {"input", value_map(w.input)},
                          {"output", value_map(w.output)}};
  } else {
    out["reason"] = v.reason;
  }
  return out;
}

Json to_json(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const SimulationVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.kind));
  out["nodes"] = v.nodes;
  if (v.witness) {
    const auto& w = *v.witness;
    Json rel = Json::array();
    for (const auto& [s, t] : w.relation)
      rel.push_back(Json::array({to_json(a, s), to_json(b, t)}));
    out["witness"] = Json{{"kind", std::string(to_string(w.kind))},
                          {"input_map", value_map(w.input_map)},
                          {"output_map", value_map(w.output_map)},
                          {"relation", std::move(rel)}};
  }
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    Json cx;
    cx["reason"] = std::string(to_string(c.reason));
    cx["input"] = to_json(c.input);
    cx["mapped_input"] = to_json(c.mapped_input);
    cx["step"] = c.step;
    cx["left"] = c.left ? to_json(a, *c.left) : Json(nullptr);
    cx["right"] = c.right ? to_json(b, *c.right) : Json(nullptr);
    cx["other_input"] = c.other_input ? to_json(*c.other_input) : Json(nullptr);
    cx["other_mapped_input"] =
        c.other_mapped_input ? to_json(*c.other_mapped_input) : Json(nullptr);
    cx["input_map"] = value_map(c.input_map);
    cx["description"] = describe(a, b, c);
    out["counterexample"] = std::move(cx);
  }
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

Json to_json(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const EquivalenceVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.kind));
  out["forward"] = to_json(a, b, v.forward);
  out["backward"] = to_json(b, a, v.backward);
  return out;
}

Json to_json(const ProofLog& log) {
  Json out = Json::array();
  for (const auto& s : log) {
    Json pos = Json::array();
    for (auto p : s.position) pos.push_back(p);
    out.push_back(Json{{"axiom", std::string(axiom_name(s.axiom))}, {"position", std::move(pos)}});
  }
  return out;
}

Json to_json(const EqualityVerdict& v) {
  Json out;
  out["verdict"] = std::string(to_string(v.kind));
  out["index"] = v.index;
  out["left_trace"] = strings(v.left_trace);
  out["right_trace"] = strings(v.right_trace);
  out["left_at"] = optional_string(v.left_at);
  out["right_at"] = optional_string(v.right_at);
  if (v.kind == VerdictKind::Proven) {
    out["left_log"] = to_json(v.left_log);
    out["right_log"] = to_json(v.right_log);
  }
  return out;
}

Json to_json(const ProofReport& r) {
  Json out;
  out["outcome"] = std::string(to_string(r.outcome));
  Json inputs = Json::array();
  for (const auto& i : r.inputs)
    inputs.push_back(Json{{"input", to_json(i.input)},
                          {"outcome", std::string(to_string(i.outcome))},
                          {"equality", to_json(i.verdict)}});
  out["inputs"] = std::move(inputs);
  return out;
}

}  // namespace protoalg
