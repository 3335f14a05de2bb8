#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/equiv.hpp"
#include "protoalg/error.hpp"
#include "protoalg/generate.hpp"
#include "protoalg/json_io.hpp"
#include "protoalg/prove.hpp"
#include "protoalg/translate.hpp"

using namespace protoalg;

namespace {

enum Exit : int { kOk = 0, kRefuted = 1, kUnknown = 2, kInvalid = 3 };

struct Options {
  bool json = false;
  std::size_t bound = kDefaultMaxSteps;
  std::size_t max_steps = kDefaultMaxSteps;
  std::size_t budget = kDefaultSearchBudget;
  std::uint64_t seed = 1;
};

// Raised for unusable input; carries the message for stderr.
struct InvalidInput {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput{path + ": cannot open"};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Document load_document(const std::string& path) {
  auto r = parse_document(read_file(path));
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += path + ":" + to_string(d) + "\n";
    msg.pop_back();
    throw InvalidInput{msg};
  }
  return *r.document;
}

ProtoAlgorithm load_algorithm(const std::string& path) {
  try {
    return to_proto_algorithm(load_document(path));
  } catch (const Error& e) {
    throw InvalidInput{path + ": " + e.what()};
  }
}

Value parse_value_arg(const std::string& text) {
  try {
    Expr e = parse_expr(text);
    return e.eval(Value{0});
  } catch (const Error& e) {
    throw InvalidInput{"bad value '" + text + "': " + e.what()};
  }
}

int exit_for(VerdictKind k) {
  switch (k) {
    case VerdictKind::Proven: return kOk;
    case VerdictKind::Refuted: return kRefuted;
    case VerdictKind::UnknownAtBound: return kUnknown;
  }
  return kUnknown;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

SimulationKind parse_kind(const std::string& k) {
  return k == "computational" ? SimulationKind::Computational : SimulationKind::Algorithmic;
}

int cmd_validate(const Options& o, const std::string& path) {
  auto r = parse_document(read_file(path));
  if (!r.ok()) {
    if (o.json)
      emit(Json{{"ok", false}, {"diagnostics", to_json(r.diagnostics)}});
    else
      for (const auto& d : r.diagnostics) std::cerr << path << ":" << to_string(d) << "\n";
    return kInvalid;
  }
  const auto& doc = *r.document;
  Report report;
  if (doc.graph) report.append(validate_algorithm_graph(doc.alphabet, *doc.graph));
  if (doc.interp) {
    try {
      report.append(check_interpretation(doc.alphabet, *doc.interp));
    } catch (const Error& e) {
      report.add("interpretation", "", e.what());
    }
  }
  if (doc.process) {
    auto d = is_algorithm_process(*doc.process, doc.alphabet);
    if (!d.ok) report.add("form-" + std::to_string(d.form), d.variable, d.message);
  }
  if (o.json)
    emit(to_json(report));
  else if (report.ok())
    std::cout << path << ": ok\n";
  else
    for (const auto& i : report.issues)
      std::cout << path << ": [" << i.code << "] " << i.subject << ": " << i.message << "\n";
  return report.ok() ? kOk : kRefuted;
}

std::vector<Value> chosen_inputs(const ProtoAlgorithm& a, const std::vector<std::string>& args) {
  if (args.empty()) return a.inputs();
  std::vector<Value> out;
  for (const auto& s : args) out.push_back(parse_value_arg(s));
  return out;
}

int cmd_run(const Options& o, const std::string& path, const std::vector<std::string>& inputs,
            bool trace, const std::string& kind) {
  auto a = load_algorithm(path);
  RunOptions ro;
  ro.max_steps = o.max_steps;
  ro.record_algorithmic = trace && kind != "computational";
  ro.record_computational = trace && kind != "algorithmic";
  Json runs = Json::array();
  bool all = true;
  for (const auto& d : chosen_inputs(a, inputs)) {
    RunResult r;
    try {
      r = run(a, d, ro);
    } catch (const Error& e) {
      throw InvalidInput{e.what()};
    }
    all = all && r.converged;
    if (o.json) {
      runs.push_back(to_json(a, d, r));
      continue;
    }
    std::cout << to_string(d) << " -> "
              << (r.converged ? to_string(*r.output) + " nas=" + std::to_string(r.nas)
                              : "diverged at bound " + std::to_string(r.bound))
              << "\n";
    auto print = [&](const char* title, const std::vector<State>& states) {
      std::cout << "  " << title << ":";
      for (const auto& s : states) std::cout << " " << describe(a, s);
      std::cout << "\n";
    };
    if (r.algorithmic_trace) print("algorithmic", *r.algorithmic_trace);
    if (r.computational_trace) print("computational", *r.computational_trace);
  }
  if (o.json) emit(Json{{"runs", std::move(runs)}});
  return all ? kOk : kUnknown;
}

int cmd_iso(const Options& o, const std::string& p, const std::string& q) {
  auto a = load_algorithm(p);
  auto b = load_algorithm(q);
  auto v = check_isomorphism(a, b, o.budget);
  if (o.json)
    emit(to_json(v));
  else
    std::cout << to_string(v.kind) << (v.reason.empty() ? "" : ": " + v.reason) << "\n";
  return exit_for(v.kind);
}

int cmd_equiv(const Options& o, const std::string& p, const std::string& q,
              const std::string& kind) {
  auto a = load_algorithm(p);
  auto b = load_algorithm(q);
  auto v = check_equivalence(a, b, parse_kind(kind), o.bound, o.budget);
  if (o.json) {
    emit(to_json(a, b, v));
  } else {
    std::cout << to_string(v.kind) << "\n";
    if (v.forward.counterexample)
      std::cout << "  forward: " << describe(a, b, *v.forward.counterexample) << "\n";
    if (v.backward.counterexample)
      std::cout << "  backward: " << describe(b, a, *v.backward.counterexample) << "\n";
  }
  return exit_for(v.kind);
}

int cmd_to_process(const Options& o, const std::string& path) {
  auto a = load_algorithm(path);
  auto p = graph_to_process(a.graph());
  if (o.json) {
    Json eqs = Json::object();
    for (const auto& [x, t] : p.spec->equations) eqs[x] = t.to_string();
    emit(Json{{"root", p.root}, {"empty", p.empty}, {"equations", std::move(eqs)}});
  } else {
    Document d;
    d.alphabet = a.alphabet();
    d.process = p;
    std::cout << print_document(d);
  }
  return kOk;
}

int cmd_to_graph(const Options& o, const std::string& path) {
  auto doc = load_document(path);
  if (!doc.process) throw InvalidInput{path + ": missing PROCESS section"};
  AlgorithmGraph g = [&] {
    try {
      return process_to_graph(*doc.process, doc.alphabet);
    } catch (const Error& e) {
      throw InvalidInput{path + ": " + e.what()};
    }
  }();
  if (o.json) {
    Json vs = Json::array();
    for (const auto& v : g.vertices()) vs.push_back(Json{{"id", v.id}, {"label", v.label}});
    Json es = Json::array();
    for (const auto& [e, l] : g.digraph().edges)
      es.push_back(Json{{"from", e.from}, {"to", e.to}, {"label", l ? Json(*l) : Json(nullptr)}});
    emit(Json{{"root", g.digraph().root}, {"vertices", std::move(vs)}, {"edges", std::move(es)}});
  } else {
    Document d;
    d.alphabet = doc.alphabet;
    d.graph = g.digraph();
    d.interp = doc.interp;
    std::cout << print_document(d);
  }
  return kOk;
}

int cmd_prove(const Options& o, const std::string& p, const std::string& q,
              const std::vector<std::string>& inputs) {
  auto a = load_algorithm(p);
  auto b = load_algorithm(q);
  std::optional<std::vector<Value>> chosen;
  if (!inputs.empty()) chosen = chosen_inputs(a, inputs);
  ProofReport r;
  try {
    r = prove_aeqv(a, b, chosen, o.bound);
  } catch (const Error& e) {
    throw InvalidInput{e.what()};
  }
  if (o.json) {
    emit(to_json(r));
  } else {
    std::cout << to_string(r.outcome) << "\n";
    for (const auto& i : r.inputs) {
      std::cout << "  " << to_string(i.input) << ": " << to_string(i.outcome);
      if (i.verdict.kind == VerdictKind::Refuted)
        std::cout << " (action " << i.verdict.index << ": " << i.verdict.left_at.value_or("?")
                  << " vs " << i.verdict.right_at.value_or("?") << ")";
      std::cout << "\n";
    }
  }
  return r.outcome == ProofOutcome::Proven ? kOk : kUnknown;
}

// Fixture checks plus generator ground truth for a run of seeds.
int cmd_selftest(const Options& o, std::size_t count) {
  Json checks = Json::array();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass) {
    ok = ok && pass;
    checks.push_back(Json{{"check", name}, {"pass", pass}});
  };
  for (const auto& [name, text] : fixtures::all()) {
    if (name.find('/') != std::string::npos) continue;
    auto r = parse_document(text);
    bool pass = r.ok();
    if (pass && r.document->graph) {
      try {
        auto a = to_proto_algorithm(*r.document);
        pass = cross_validate_lemma1(a).ok();
      } catch (const Error&) {
        pass = false;
      }
    }
    record("fixture " + name, pass);
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto seed = o.seed + i;
    auto g = generate_random(seed);
    for (const auto& v : g.variants) {
      bool pass = false;
      switch (v.kind) {
        case VariantKind::Iso:
          pass = check_isomorphism(g.base, v.algorithm, o.budget).kind == VerdictKind::Proven;
          break;
        case VariantKind::Merge:
          pass = check_aeqv(g.base, v.algorithm, o.bound).kind == VerdictKind::Proven &&
                 check_isomorphism(g.base, v.algorithm, o.budget).kind == VerdictKind::Refuted;
          break;
        case VariantKind::CycleDup:
          pass = check_ceqv(g.base, v.algorithm, o.bound).kind == VerdictKind::Proven &&
                 check_aeqv(g.base, v.algorithm, o.bound).kind == VerdictKind::Refuted;
          break;
        case VariantKind::OpSwap:
          pass = check_aeqv(g.base, v.algorithm, o.bound).kind == VerdictKind::Proven &&
                 prove_aeqv(g.base, v.algorithm, std::nullopt, o.bound).outcome ==
                     ProofOutcome::MethodInconclusive;
          break;
      }
      record("seed " + std::to_string(seed) + " " + std::string(to_string(v.kind)), pass);
    }
  }
  if (o.json) {
    emit(Json{{"ok", ok}, {"seed", o.seed}, {"checks", std::move(checks)}});
  } else {
    std::size_t failed = 0;
    for (const auto& c : checks)
      if (!c["pass"].get<bool>()) {
        ++failed;
        std::cout << "FAIL " << c["check"].get<std::string>() << "\n";
      }
    std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  }
  return ok ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proto-algorithm toolkit: validation, execution, equivalence and proofs."};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--bound", o.bound, "Step bound for simulation and proof checks");
  app.add_option("--max-steps", o.max_steps, "Step bound for run and trace");
  app.add_option("--budget", o.budget, "Search-node budget for isomorphism and simulation");
  app.add_option("--seed", o.seed, "First generator seed for selftest");

  std::string file, other, kind = "algorithmic";
  std::vector<std::string> inputs;
  std::size_t count = 20;

  auto* validate = app.add_subcommand("validate", "Check a .palg file against every clause");
  validate->add_option("file", file)->required();

  auto* run_cmd = app.add_subcommand("run", "Run on the given inputs (all of Din by default)");
  run_cmd->add_option("file", file)->required();
  run_cmd->add_option("--input", inputs, "Input value such as <2>");

  auto* trace = app.add_subcommand("trace", "Run and print state traces");
  trace->add_option("file", file)->required();
  trace->add_option("--input", inputs, "Input value such as <2>");
  trace->add_option("--kind", kind, "algorithmic, computational or both")
      ->check(CLI::IsMember({"algorithmic", "computational", "both"}));

  auto* iso = app.add_subcommand("iso", "Search for an isomorphism");
  iso->add_option("a", file)->required();
  iso->add_option("b", other)->required();

  auto* equiv = app.add_subcommand("equiv", "Check algorithmic or computational equivalence");
  equiv->add_option("a", file)->required();
  equiv->add_option("b", other)->required();
  equiv->add_option("--kind", kind, "algorithmic or computational")
      ->check(CLI::IsMember({"algorithmic", "computational"}));

  auto* to_process =
      app.add_subcommand("to-process", "Translate the graph to an algorithm process");
  to_process->add_option("file", file)->required();

  auto* to_graph = app.add_subcommand("to-graph", "Translate the PROCESS section to a graph");
  to_graph->add_option("file", file)->required();

  auto* prove =
      app.add_subcommand("prove", "Prove algorithmic equivalence by equational reasoning");
  prove->add_option("a", file)->required();
  prove->add_option("b", other)->required();
  auto* input_opt = prove->add_option("--input", inputs, "Input value such as <2>");
  prove->add_flag("--all", "Every input of Din (the default)")->excludes(input_opt);

  auto* selftest = app.add_subcommand("selftest", "Check fixtures and generator ground truth");
  selftest->add_option("--count", count, "Number of generator seeds");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kInvalid;
  }

  try {
    if (*validate) return cmd_validate(o, file);
    if (*run_cmd) return cmd_run(o, file, inputs, false, kind);
    if (*trace) return cmd_run(o, file, inputs, true, kind);
    if (*iso) return cmd_iso(o, file, other);
    if (*equiv) return cmd_equiv(o, file, other, kind);
    if (*to_process) return cmd_to_process(o, file);
    if (*to_graph) return cmd_to_graph(o, file);
    if (*prove) return cmd_prove(o, file, other, inputs);
    if (*selftest) return cmd_selftest(o, count);
  } catch (const InvalidInput& e) {
    std::cerr << e.message << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
