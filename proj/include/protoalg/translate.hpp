#pragma once

#include <memory>
#include <string>

#include "protoalg/graph.hpp"
#include "protoalg/procalg.hpp"

namespace protoalg {

/// The constant <root|spec>, with `empty` naming the variable X_eps.
struct AlgorithmProcess {
  std::string root = "X";
  std::string empty = "X_eps";
  std::shared_ptr<const LinearSpec> spec = std::make_shared<LinearSpec>();

  ProcTerm constant() const { return ProcTerm::rec(root, spec); }
  /// eval_[MEM -> d](<root|spec>)
  ProcTerm evaluated(const Value& d) const {
    return ProcTerm::eval(Valuation::of_mem(d), constant());
  }

  friend bool operator==(const AlgorithmProcess& a, const AlgorithmProcess& b) {
    return a.root == b.root && a.empty == b.empty && *a.spec == *b.spec;
  }
};

struct ProcessDiagnosis {
  bool ok = true;
  std::string variable;  // first non-conforming equation
  int form = 0;          // the form (1)-(5) the equation fails or should have
  std::string message;
};

/// Checks the five equation forms and the placement of forms (1) and (5).
ProcessDiagnosis is_algorithm_process(const AlgorithmProcess& p, const Alphabet& alphabet);

/// Recursion variable for vertex `v`: the root is X, others X_<v>.
std::string process_variable(const AlgorithmGraph& g, const VertexId& v);

/// Errors: InvalidGraph (never raised for a built AlgorithmGraph).
AlgorithmProcess graph_to_process(const AlgorithmGraph& g);

/// Vertices are the variables other than X_eps. Errors: NotAlgorithmProcess,
/// also when the constructed graph violates a graph clause.
AlgorithmGraph process_to_graph(const AlgorithmProcess& p, const Alphabet& alphabet);

/// Renames variables to X, X_1, X_2, ... in breadth-first order from the
/// root (1-branch first), X_eps for the empty variable; unreachable
/// variables follow in name order.
AlgorithmProcess canonical(const AlgorithmProcess& p);

/// Applies an injective renaming to every variable of the process.
AlgorithmProcess rename(const AlgorithmProcess& p, const std::map<std::string, std::string>& m);

}  // namespace protoalg
