#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "protoalg/exec.hpp"
#include "protoalg/procalg.hpp"
#include "protoalg/report.hpp"
#include "protoalg/translate.hpp"

namespace protoalg {

/// Refuted process equality does not refute equivalence, so the method
/// reports it as MethodInconclusive.
enum class ProofOutcome : std::uint8_t { Proven, MethodInconclusive, UnknownAtBound };
std::string_view to_string(ProofOutcome o);

struct InputProof {
  Value input;
  ProofOutcome outcome = ProofOutcome::UnknownAtBound;
  EqualityVerdict verdict;
};

struct ProofReport {
  ProofOutcome outcome = ProofOutcome::UnknownAtBound;
  std::vector<InputProof> inputs;
};

/// Co-unfolds eval_[MEM -> d] of both translations for each input (all of
/// Din by default). Errors: MismatchedSignature, InputNotInDomain.
ProofReport prove_aeqv(const ProtoAlgorithm& a, const ProtoAlgorithm& b,
                       const std::optional<std::vector<Value>>& inputs = std::nullopt,
                       std::size_t bound = kDefaultMaxSteps);

/// Compares astep with one head-normal unfolding at every reachable state.
/// Issue codes are "input", "internal", "output" and "empty".
Report cross_validate_lemma1(const ProtoAlgorithm& a);

}  // namespace protoalg
