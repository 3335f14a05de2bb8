#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "protoalg/report.hpp"

namespace protoalg {

using VertexId = std::string;
using Symbol = std::string;

inline constexpr const char* kIni = "ini";
inline constexpr const char* kFin = "fin";

/// Function and predicate symbols. `ini` and `fin` are distinguished
/// function symbols; the remaining function symbols are the operations.
struct Alphabet {
  std::set<Symbol> functions;
  std::set<Symbol> predicates;

  bool is_function(const Symbol& s) const { return functions.count(s) != 0; }
  bool is_predicate(const Symbol& s) const { return predicates.count(s) != 0; }
  bool is_operation(const Symbol& s) const { return is_function(s) && s != kIni && s != kFin; }
  std::vector<Symbol> operations() const;

  /// Disjointness and presence of ini/fin.
  Report check() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct Edge {
  VertexId from;
  VertexId to;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Degrees {
  std::size_t in = 0;
  std::size_t out = 0;
  friend bool operator==(const Degrees&, const Degrees&) = default;
};

/// Rooted labeled directed graph without parallel edges. Vertex labels are
/// symbol names; edge labels are bits where present.
struct RootedLabeledDigraph {
  std::set<VertexId> vertices;
  std::map<Edge, std::optional<int>> edges;
  std::map<VertexId, Symbol> labels;
  VertexId root;

  void add_vertex(const VertexId& v, std::optional<Symbol> label = std::nullopt);
  void add_edge(const VertexId& from, const VertexId& to, std::optional<int> label = std::nullopt);
  bool remove_edge(const VertexId& from, const VertexId& to);

  std::optional<Symbol> label(const VertexId& v) const;
  std::vector<Edge> out_edges(const VertexId& v) const;
  std::vector<Edge> in_edges(const VertexId& v) const;

  /// Throws Error(InvalidVertex) for an unknown vertex.
  Degrees degrees(const VertexId& v) const;

  friend bool operator==(const RootedLabeledDigraph&, const RootedLabeledDigraph&) = default;
};

/// Clause codes cited by validate_algorithm_graph.
namespace clause {
inline constexpr const char* kStructure = "structure";
inline constexpr const char* kAlphabet = "alphabet";
inline constexpr const char* kRootLabel = "root-label";
inline constexpr const char* kIniDegree = "ini-degree";
inline constexpr const char* kFinDegree = "fin-degree";
inline constexpr const char* kOperationDegree = "operation-degree";
inline constexpr const char* kPredicateDegree = "predicate-degree";
inline constexpr const char* kVertexLabeled = "vertex-labeled";
inline constexpr const char* kPredicateCycle = "predicate-cycle";
}  // namespace clause

Report validate_algorithm_graph(const Alphabet& alphabet, const RootedLabeledDigraph& g,
                                std::size_t cycle_report_cap = 16);

/// Simple cycles made only of predicate-labeled vertices, each given as a
/// closed walk [v1, ..., vn, v1]. Enumeration stops after `cap` cycles.
std::vector<std::vector<VertexId>> predicate_only_cycles(const Alphabet& alphabet,
                                                         const RootedLabeledDigraph& g,
                                                         std::size_t cap = 16);

enum class VertexKind : std::uint8_t { Ini, Operation, Predicate, Fin };

inline constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

struct CompiledVertex {
  VertexId id;
  VertexKind kind = VertexKind::Operation;
  Symbol label;
  std::uint32_t next = kNoVertex;     // ini / operation successor
  std::uint32_t on_one = kNoVertex;   // predicate successor along the 1-edge
  std::uint32_t on_zero = kNoVertex;  // predicate successor along the 0-edge
  std::size_t indegree = 0;
};

/// A validated algorithm graph with vertices indexed in id order.
class AlgorithmGraph {
 public:
  /// Throws Error(InvalidGraph) carrying the report summary when invalid.
  static AlgorithmGraph build(const Alphabet& alphabet, const RootedLabeledDigraph& g);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const RootedLabeledDigraph& digraph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return graph_.edges.size(); }
  const CompiledVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<CompiledVertex>& vertices() const noexcept { return vertices_; }
  std::uint32_t root() const noexcept { return root_; }
  std::optional<std::uint32_t> index_of(const VertexId& id) const;

 private:
  Alphabet alphabet_;
  RootedLabeledDigraph graph_;
  std::vector<CompiledVertex> vertices_;
  std::uint32_t root_ = 0;
};

}  // namespace protoalg
