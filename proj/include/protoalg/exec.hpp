#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/graph.hpp"
#include "protoalg/interp.hpp"
#include "protoalg/value.hpp"

namespace protoalg {

/// Alphabet, algorithm graph and interpretation, validated together.
class ProtoAlgorithm {
 public:
  /// Throws Error(InvalidProtoAlgorithm) with every violated clause listed.
  static ProtoAlgorithm make(Alphabet alphabet, RootedLabeledDigraph graph, Interpretation interp,
                             std::size_t extent_cap = kDefaultExtentCap);

  const Alphabet& alphabet() const noexcept { return graph_.alphabet(); }
  const AlgorithmGraph& graph() const noexcept { return graph_; }
  const RootedLabeledDigraph& digraph() const noexcept { return graph_.digraph(); }
  const Interpretation& interp() const noexcept { return interp_; }

  // Enumerated carriers, sorted.
  const std::vector<Value>& inputs() const noexcept { return inputs_; }
  const std::vector<Value>& carrier() const noexcept { return carrier_; }
  const std::vector<Value>& outputs() const noexcept { return outputs_; }

 private:
  ProtoAlgorithm(AlgorithmGraph g, Interpretation i)
      : graph_(std::move(g)), interp_(std::move(i)) {}

  AlgorithmGraph graph_;
  Interpretation interp_;
  std::vector<Value> inputs_, carrier_, outputs_;
};

enum class StateKind : std::uint8_t { Input, Internal, Output };

/// Input(d) | Internal(vertex, d) | Output(d). `vertex` indexes the
/// algorithm graph and is 0 for input and output states.
struct State {
  StateKind kind = StateKind::Input;
  std::uint32_t vertex = 0;
  Value value;

  static State input(Value v) { return {StateKind::Input, 0, std::move(v)}; }
  static State internal(std::uint32_t vertex, Value v) {
    return {StateKind::Internal, vertex, std::move(v)};
  }
  static State output(Value v) { return {StateKind::Output, 0, std::move(v)}; }

  bool is_output() const noexcept { return kind == StateKind::Output; }

  friend auto operator<=>(const State&, const State&) = default;
  friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    return ValueHash{}(s.value) * 31 + s.vertex * 7 + static_cast<std::size_t>(s.kind);
  }
};

std::string describe(const ProtoAlgorithm& a, const State& s);

/// Algorithmic step. Errors: MalformedState.
State astep(const ProtoAlgorithm& a, const State& s);

/// Computational step: predicate inspections are folded into the next
/// non-predicate step. Errors: MalformedState.
State cstep(const ProtoAlgorithm& a, const State& s);

inline constexpr std::size_t kDefaultMaxSteps = 10'000;

struct RunOptions {
  std::size_t max_steps = kDefaultMaxSteps;
  bool record_algorithmic = false;
  bool record_computational = false;
};

struct RunResult {
  bool converged = false;
  std::optional<Value> output;  // set when converged
  std::size_t nas = 0;          // steps to the output state, when converged
  std::size_t bound = 0;        // the step bound used
  std::optional<std::vector<State>> algorithmic_trace;
  std::optional<std::vector<State>> computational_trace;
  // Result of iterating cstep, recorded with the computational trace.
  std::optional<Value> computational_output;
  std::size_t computational_steps = 0;
};

/// Iterates astep from Input(d). Errors: InputNotInDomain.
RunResult run(const ProtoAlgorithm& a, const Value& d, const RunOptions& options = {});

}  // namespace protoalg
