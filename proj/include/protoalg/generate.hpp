#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "protoalg/exec.hpp"
#include "protoalg/translate.hpp"

namespace protoalg {

/// Size knobs for random proto-algorithms. Carriers are 1-tuples over
/// 0..carrier-1 before any shift.
struct GeneratorParams {
  std::size_t vertices = 6;    // internal vertices besides ini, fin and the loop
  std::size_t operations = 3;  // operation symbols besides dec
  std::size_t predicates = 2;  // predicate symbols besides iszero and isle
  std::int64_t carrier = 4;
  bool loops = true;  // allow a countdown loop right after the root
};

enum class VariantKind : std::uint8_t {
  Iso,       // renaming, bit flip and carrier shift
  Merge,     // one vertex split in two
  CycleDup,  // the loop preceded by a copy with a weaker test
  OpSwap,    // labels of two adjacent commuting operations exchanged
};

std::string_view to_string(VariantKind k);
/// Ground truth: iso, aeqv-not-iso, ceqv-not-aeqv, aeqv-but-process-unequal.
std::string_view relation(VariantKind k);

struct Variant {
  VariantKind kind;
  ProtoAlgorithm algorithm;
};

struct Generated {
  ProtoAlgorithm base;
  std::vector<Variant> variants;  // the iso variant first; others when applicable

  const Variant* find(VariantKind k) const;
};

/// Every run of the base and its variants converges. Deterministic in `seed`.
Generated generate_random(std::uint64_t seed, const GeneratorParams& params = {});

/// The base proto-algorithm of generate_random.
ProtoAlgorithm random_proto_algorithm(std::uint64_t seed, const GeneratorParams& params = {});

/// Translation of a random graph with its variables renamed at random.
AlgorithmProcess random_algorithm_process(std::uint64_t seed, const GeneratorParams& params = {});

}  // namespace protoalg
