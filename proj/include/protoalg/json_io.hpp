#pragma once

#include <json.hpp>

#include "protoalg/dsl.hpp"
#include "protoalg/equiv.hpp"
#include "protoalg/exec.hpp"
#include "protoalg/procalg.hpp"
#include "protoalg/prove.hpp"
#include "protoalg/report.hpp"

namespace protoalg {

using Json = nlohmann::ordered_json;

/// Machine-readable forms of results. Key order is fixed, so dumping the
/// same result twice yields identical bytes.
Json to_json(const Value& v);
Json to_json(const ProtoAlgorithm& a, const State& s);
Json to_json(const Report& r);
Json to_json(const std::vector<Diagnostic>& diagnostics);
Json to_json(const ProtoAlgorithm& a, const Value& input, const RunResult& r);
Json to_json(const IsoVerdict& v);
Json to_json(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const SimulationVerdict& v);
Json to_json(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const EquivalenceVerdict& v);
Json to_json(const ProofLog& log);
Json to_json(const EqualityVerdict& v);
Json to_json(const ProofReport& r);

Value value_from_json(const Json& j);

}  // namespace protoalg
