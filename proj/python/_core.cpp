#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "protoalg/dsl.hpp"
#include "protoalg/equiv.hpp"
#include "protoalg/error.hpp"
#include "protoalg/generate.hpp"
#include "protoalg/json_io.hpp"
#include "protoalg/prove.hpp"
#include "protoalg/translate.hpp"

namespace py = pybind11;
using namespace protoalg;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Value to_value(const std::vector<std::int64_t>& v) { return Value(v); }

SimulationKind simulation_kind(const std::string& kind) {
  if (kind == "algorithmic") return SimulationKind::Algorithmic;
  if (kind == "computational") return SimulationKind::Computational;
  throw py::value_error("kind must be 'algorithmic' or 'computational'");
}

ProtoAlgorithm from_text(const std::string& text) {
  auto r = parse_document(text);
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += (msg.empty() ? "" : "\n") + to_string(d);
    throw Error(ErrorCode::ParseError, msg);
  }
  return to_proto_algorithm(*r.document);
}

std::vector<std::int64_t> items(const Value& v) { return v.items(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proto-algorithms: validation, execution, equivalence and proofs";

  py::register_exception<Error>(m, "ProtoalgError", PyExc_ValueError);

  m.def(
      "parse",
      [](const std::string& text) {
        auto r = parse_document(text);
        py::dict out;
        out["ok"] = r.ok();
        out["diagnostics"] = to_python(to_json(r.diagnostics));
        out["text"] = r.ok() ? py::object(py::str(print_document(*r.document))) : py::none();
        return out;
      },
      py::arg("text"), "Parse a document; returns ok, diagnostics and the canonical text.");

  py::class_<ProtoAlgorithm>(m, "ProtoAlgorithm")
      .def_static("from_text", &from_text, py::arg("text"))
      .def("to_text", [](const ProtoAlgorithm& a) { return print_document(to_document(a)); })
      .def_property_readonly("inputs",
                             [](const ProtoAlgorithm& a) {
                               std::vector<std::vector<std::int64_t>> out;
                               for (const auto& v : a.inputs()) out.push_back(items(v));
                               return out;
                             })
      .def_property_readonly("vertex_count",
                             [](const ProtoAlgorithm& a) { return a.graph().vertices().size(); })
      .def(
          "run",
          [](const ProtoAlgorithm& a, const std::vector<std::int64_t>& input, std::size_t max_steps,
             bool trace) {
            RunOptions o;
            o.max_steps = max_steps;
            o.record_algorithmic = o.record_computational = trace;
            auto d = to_value(input);
            return to_python(to_json(a, d, run(a, d, o)));
          },
          py::arg("input"), py::arg("max_steps") = kDefaultMaxSteps, py::arg("trace") = false)
      .def("to_process",
           [](const ProtoAlgorithm& a) { return print_spec(graph_to_process(a.graph())); });

  m.def(
      "isomorphism",
      [](const ProtoAlgorithm& a, const ProtoAlgorithm& b, std::size_t budget) {
        return to_python(to_json(check_isomorphism(a, b, budget)));
      },
      py::arg("a"), py::arg("b"), py::arg("budget") = kDefaultSearchBudget);

  m.def(
      "simulation",
      [](const ProtoAlgorithm& a, const ProtoAlgorithm& b, const std::string& kind) {
        return to_python(to_json(a, b, check_simulation(a, b, simulation_kind(kind))));
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "algorithmic");

  m.def(
      "equivalence",
      [](const ProtoAlgorithm& a, const ProtoAlgorithm& b, const std::string& kind,
         std::size_t bound) {
        return to_python(to_json(a, b, check_equivalence(a, b, simulation_kind(kind), bound)));
      },
      py::arg("a"), py::arg("b"), py::arg("kind") = "algorithmic",
      py::arg("bound") = kDefaultMaxSteps);

  m.def(
      "prove",
      [](const ProtoAlgorithm& a, const ProtoAlgorithm& b, std::size_t bound) {
        return to_python(to_json(prove_aeqv(a, b, std::nullopt, bound)));
      },
      py::arg("a"), py::arg("b"), py::arg("bound") = kDefaultMaxSteps);

  m.def("unfolding_report",
        [](const ProtoAlgorithm& a) { return to_python(to_json(cross_validate_lemma1(a))); });

  m.def(
      "generate",
      [](std::uint64_t seed) {
        auto g = generate_random(seed);
        py::dict variants;
        for (const auto& v : g.variants)
          variants[py::str(std::string(to_string(v.kind)))] = v.algorithm;
        return py::make_tuple(g.base, variants);
      },
      py::arg("seed"), "Random proto-algorithm and its variants keyed by kind.");
}
