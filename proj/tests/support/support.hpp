#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/exec.hpp"

namespace protoalg::testing {

inline Document document(const std::string& name) {
  auto r = parse_document(fixtures::get(name));
  if (!r.ok()) throw std::runtime_error(name + ": " + to_string(r.diagnostics.front()));
  return *r.document;
}

inline ProtoAlgorithm algorithm(const std::string& name) {
  return to_proto_algorithm(document(name));
}

/// Names of the top-level fixtures that define a proto-algorithm.
inline std::vector<std::string> algorithm_fixtures() {
  std::vector<std::string> out;
  for (const auto& [name, text] : fixtures::all())
    if (name.find('/') == std::string::npos && name.size() > 5 &&
        name.substr(name.size() - 5) == ".palg")
      out.push_back(name);
  return out;
}

/// Pairs of corpus fixtures sharing an alphabet and interpretation shape.
inline std::vector<std::pair<std::string, std::string>> fixture_pairs() {
  return {{"cd.palg", "cd.palg"},
          {"cd.palg", "cd_reordered.palg"},
          {"cd.palg", "cd_renamed.palg"},
          {"cd.palg", "cd_shifted.palg"},
          {"diamond_a.palg", "diamond_b.palg"},
          {"cyc_a.palg", "cyc_b.palg"},
          {"swap_a.palg", "swap_b.palg"},
          {"single_path.palg", "single_path.palg"}};
}

struct Mutant {
  const char* clause;
  RootedLabeledDigraph graph;
};

/// One minimal violation of each algorithm-graph clause, made from CD.
inline std::vector<Mutant> cd_mutants() {
  const auto cd = document("cd.palg").graph.value();
  std::vector<Mutant> out;

  auto g = cd;  // the root is no longer the ini vertex
  g.root = "c";
  out.push_back({clause::kRootLabel, g});

  g = cd;  // the ini edge carries a label
  g.edges[{"r", "c"}] = 1;
  out.push_back({clause::kIniDegree, g});

  g = cd;  // the fin vertex gets an outgoing edge
  g.add_edge("h", "c");
  out.push_back({clause::kFinDegree, g});

  g = cd;  // the operation edge carries a label
  g.edges[{"g", "c"}] = 0;
  out.push_back({clause::kOperationDegree, g});

  g = cd;  // both predicate edges carry label 1
  g.edges[{"c", "g"}] = 1;
  out.push_back({clause::kPredicateDegree, g});

  g = cd;  // the dec vertex loses its label
  g.labels.erase("g");
  out.push_back({clause::kVertexLabeled, g});

  g = cd;  // a second test q between c and g closes a predicate-only cycle
  g.remove_edge("c", "g");
  g.add_vertex("q", Symbol("iszero"));
  g.add_edge("c", "q", 0);
  g.add_edge("q", "c", 1);
  g.add_edge("q", "g", 0);
  out.push_back({clause::kPredicateCycle, g});
  return out;
}

}  // namespace protoalg::testing
