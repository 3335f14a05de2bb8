#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "protoalg/exec.hpp"
#include "protoalg/procalg.hpp"
#include "protoalg/report.hpp"

namespace protoalg {

inline constexpr std::size_t kDefaultSearchBudget = 100'000;

// ---------------------------------------------------------------------------
// Isomorphism

struct IsoWitness {
  std::map<Symbol, Symbol> functions;
  std::map<Symbol, Symbol> predicates;
  std::map<VertexId, VertexId> vertices;
  std::map<Value, Value> main, input, output;
  bool bit_swap = false;
};

struct IsoVerdict {
  VerdictKind kind = VerdictKind::UnknownAtBound;
  std::optional<IsoWitness> witness;  // Proven
  std::string reason;                 // Refuted / UnknownAtBound
  std::size_t nodes = 0;              // search nodes visited
};

/// Errors: none; an exhausted budget yields UnknownAtBound.
IsoVerdict check_isomorphism(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                             std::size_t budget = kDefaultSearchBudget);

/// Re-verifies every clause of the isomorphism definition. Empty iff valid.
Report check_iso_witness(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const IsoWitness& w);

/// Structural graph isomorphism with identity symbol maps and identity bit map.
std::optional<std::map<VertexId, VertexId>> graph_isomorphism(const AlgorithmGraph& g,
                                                              const AlgorithmGraph& h);

// ---------------------------------------------------------------------------
// Simulation

enum class SimulationKind : std::uint8_t { Algorithmic, Computational };
std::string_view to_string(SimulationKind k);

State step(const ProtoAlgorithm& a, SimulationKind kind, const State& s);

using StatePair = std::pair<State, State>;

struct SimulationWitness {
  SimulationKind kind = SimulationKind::Algorithmic;
  std::map<Value, Value> input_map;   // fI : Din -> Din'
  std::map<Value, Value> output_map;  // fO : Dout' -> Dout
  std::set<StatePair> relation;
};

struct SimulationCounterexample {
  enum class Reason : std::uint8_t {
    TypeMismatch,    // lockstep broken at `step`
    OutputConflict,  // two A-outputs related to one A'-output
    EmptyOutput,     // Dout' cannot be padded
  };
  Reason reason = Reason::TypeMismatch;
  Value input;         // d
  Value mapped_input;  // fI(d)
  std::size_t step = 0;
  std::optional<State> left, right;  // the offending pair
  // OutputConflict: the second input and its image.
  std::optional<Value> other_input, other_mapped_input;
  std::map<Value, Value> input_map;  // the refuted fI
};

std::string_view to_string(SimulationCounterexample::Reason r);
std::string describe(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                     const SimulationCounterexample& c);

struct SimulationVerdict {
  VerdictKind kind = VerdictKind::UnknownAtBound;
  std::optional<SimulationWitness> witness;                // Proven
  std::optional<SimulationCounterexample> counterexample;  // Refuted
  std::string reason;
  std::size_t nodes = 0;
};

/// Closure-based simulation check. With `input_map` the check is for that
/// map alone; otherwise maps are searched, identity first when the input
/// carriers coincide. Errors: none; budget exhaustion yields UnknownAtBound.
SimulationVerdict check_simulation(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                   SimulationKind kind,
                                   const std::optional<std::map<Value, Value>>& input_map = {},
                                   std::size_t bound = kDefaultMaxSteps,
                                   std::size_t budget = kDefaultSearchBudget);

/// Re-verifies the defining clauses of a simulation. Empty iff valid.
Report check_simulation_witness(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                const SimulationWitness& w);

/// True iff re-executing the counterexample exhibits the stated violation.
bool replay_counterexample(const ProtoAlgorithm& a, const ProtoAlgorithm& b, SimulationKind kind,
                           const SimulationCounterexample& c, std::size_t bound = kDefaultMaxSteps);

struct EquivalenceVerdict {
  VerdictKind kind = VerdictKind::UnknownAtBound;
  SimulationVerdict forward;   // A by A'
  SimulationVerdict backward;  // A' by A
};

EquivalenceVerdict check_equivalence(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                     SimulationKind kind, std::size_t bound = kDefaultMaxSteps,
                                     std::size_t budget = kDefaultSearchBudget);
inline EquivalenceVerdict check_aeqv(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                     std::size_t bound = kDefaultMaxSteps) {
  return check_equivalence(a, b, SimulationKind::Algorithmic, bound);
}
inline EquivalenceVerdict check_ceqv(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                                     std::size_t bound = kDefaultMaxSteps) {
  return check_equivalence(a, b, SimulationKind::Computational, bound);
}

/// Per-input check of the three consequences of an algorithmic simulation:
/// (1) A' converges on fI(d), (2) fO of its output is Â(d), (3) equal nas.
/// Issue codes are "clause-1", "clause-2", "clause-3".
Report verify_theorem2(const ProtoAlgorithm& a, const ProtoAlgorithm& b, const SimulationWitness& w,
                       std::size_t max_steps = kDefaultMaxSteps);

}  // namespace protoalg
