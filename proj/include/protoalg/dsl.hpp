#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protoalg/exec.hpp"
#include "protoalg/graph.hpp"
#include "protoalg/interp.hpp"
#include "protoalg/translate.hpp"

namespace protoalg {

/// Parsed `.palg` file. GRAPH, INTERP and PROCESS are optional at parse
/// level; commands that need them report their absence.
struct Document {
  Alphabet alphabet;
  std::optional<RootedLabeledDigraph> graph;
  std::optional<Interpretation> interp;
  std::optional<AlgorithmProcess> process;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Diagnostic {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string code;
  std::string message;
};

std::string to_string(const Diagnostic& d);

struct ParseResult {
  std::optional<Document> document;  // set iff there are no diagnostics
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return document.has_value(); }
};

ParseResult parse_document(std::string_view text);

/// Canonical text; parse_document(print_document(d)) yields d.
std::string print_document(const Document& d);

/// Standalone pieces of the concrete syntax. Errors: ParseError.
Expr parse_expr(std::string_view text, const std::string& param = "x");
LinearSpec parse_equations(std::string_view text, const Alphabet& alphabet);
std::string print_spec(const AlgorithmProcess& p);

/// Builds a validated proto-algorithm. Errors: ParseError when GRAPH or
/// INTERP is missing, InvalidProtoAlgorithm from validation.
ProtoAlgorithm to_proto_algorithm(const Document& d);

/// Inverse of to_proto_algorithm.
Document to_document(const ProtoAlgorithm& a);

}  // namespace protoalg
