#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "protoalg/dsl.hpp"
#include "protoalg/equiv.hpp"
#include "protoalg/generate.hpp"
#include "protoalg/prove.hpp"
#include "protoalg/translate.hpp"
#include "support.hpp"

using namespace protoalg;
using namespace protoalg::testing;

namespace {

int palg(const std::string& args) {
  std::string cmd = std::string(PALG_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::vector<Diagnostic> diagnostics(std::string_view text) {
  auto r = parse_document(text);
  CHECK_FALSE(r.ok());
  return r.diagnostics;
}

}  // namespace

TEST_CASE("countdown parses to four vertices and four edges") {
  auto d = document("cd.palg");
  REQUIRE(d.graph);
  CHECK(d.graph->vertices.size() == 4);
  CHECK(d.graph->edges.size() == 4);
  CHECK(d.graph->root == "r");
  CHECK(d.graph->edges.at({"c", "h"}) == 1);
  CHECK(d.graph->edges.at({"c", "g"}) == 0);
  CHECK(d.alphabet.predicates == std::set<Symbol>{"iszero"});
  REQUIRE(d.interp);
  CHECK(d.interp->main.size() == 4);
}

TEST_CASE("empty file reports the missing alphabet at 1:1") {
  auto ds = diagnostics("");
  REQUIRE(ds.size() == 1);
  CHECK(to_string(ds[0]) == "1:1: [missing-section] missing ALPHABET section");
}

TEST_CASE("duplicate edge label on a predicate vertex") {
  auto ds = diagnostics(
      "ALPHABET\nfun ini fin dec\npred iszero\nGRAPH\nroot r\nv r : ini\nv c : iszero\n"
      "v g : dec\nv h : fin\nedge r -> c\nedge c ->1 h\nedge c ->1 g\nedge g -> c\n");
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].code == "duplicate-edge-label");
  CHECK(ds[0].line == 12);
  CHECK(ds[0].message == "duplicate edge label on predicate vertex c");
}

TEST_CASE("diagnostics are positioned and ordered") {
  auto ds =
      diagnostics("ALPHABET\nfun ini fin\nGRAPH\nroot r\nv r : ini\nv h : nope\nedge r -> q\n");
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].code == "unknown-symbol");
  CHECK(ds[0].line == 6);
  CHECK(ds[1].code == "unknown-vertex");
  CHECK(ds[1].line == 7);
}

TEST_CASE("expressions") {
  CHECK(parse_expr("x[0] + 2 * 3").eval(Value{1}) == Value{7});
  CHECK(parse_expr("<x[1], x[0]>").eval(Value{1, 2}) == Value{2, 1});
  CHECK(parse_expr("if x[0] < 2 then 1 else 0").eval(Value{5}) == Value{0});
  CHECK_THROWS_AS(parse_expr("x[0] +"), Error);
  CHECK_THROWS_AS(parse_expr("1 < 2 < 3"), Error);
}

TEST_CASE("printing round-trips every fixture") {
  for (const auto& [name, text] : fixtures::all()) {
    if (name.size() < 5 || name.substr(name.size() - 5) != ".palg") continue;
    auto r = parse_document(text);
    if (!r.ok()) continue;
    CAPTURE(name);
    auto printed = print_document(*r.document);
    auto again = parse_document(printed);
    REQUIRE(again.ok());
    CHECK(*again.document == *r.document);
    CHECK(print_document(*again.document) == printed);
  }
}

TEST_CASE("printing round-trips generated algorithms and processes") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto a = random_proto_algorithm(seed);
    auto d = to_document(a);
    d.process = random_algorithm_process(seed);
    auto r = parse_document(print_document(d));
    REQUIRE(r.ok());
    CHECK(*r.document == d);
    auto back = to_proto_algorithm(*r.document);
    CHECK(check_isomorphism(a, back).kind == VerdictKind::Proven);
  }
}

TEST_CASE("conformance corpus matches its golden output") {
  std::size_t cases = 0;
  for (const auto& [name, text] : fixtures::all()) {
    if (name.rfind("conformance/", 0) != 0 || name.substr(name.size() - 5) != ".palg") continue;
    CAPTURE(name);
    ++cases;
    auto golden = fixtures::get(name.substr(0, name.size() - 5) + ".out");
    auto r = parse_document(text);
    std::string out;
    if (r.ok()) {
      out = print_document(*r.document);
    } else {
      for (const auto& d : r.diagnostics) out += to_string(d) + "\n";
    }
    CHECK(out == golden);
  }
  CHECK(cases == 9);
}

TEST_CASE("document and proto-algorithm conversions") {
  auto d = document("cd.palg");
  auto a = to_proto_algorithm(d);
  CHECK(to_document(a) == d);
  d.interp.reset();
  CHECK_THROWS_AS(to_proto_algorithm(d), Error);
}

TEST_CASE("generator is deterministic and honours its ground truth") {
  auto g1 = generate_random(1), g2 = generate_random(1);
  CHECK(to_document(g1.base) == to_document(g2.base));
  REQUIRE(g1.variants.size() == g2.variants.size());
  REQUIRE(g1.find(VariantKind::Iso));
  CHECK(check_isomorphism(g1.base, g1.find(VariantKind::Iso)->algorithm).kind ==
        VerdictKind::Proven);

  std::size_t cycle = 0, swap = 0, merge = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = generate_random(seed);
    if (const auto* v = g.find(VariantKind::CycleDup)) {
      ++cycle;
      CHECK(check_aeqv(g.base, v->algorithm).kind == VerdictKind::Refuted);
      CHECK(check_ceqv(g.base, v->algorithm).kind == VerdictKind::Proven);
    }
    if (const auto* v = g.find(VariantKind::OpSwap)) {
      ++swap;
      CHECK(check_aeqv(g.base, v->algorithm).kind == VerdictKind::Proven);
      CHECK(prove_aeqv(g.base, v->algorithm).outcome == ProofOutcome::MethodInconclusive);
    }
    if (const auto* v = g.find(VariantKind::Merge)) {
      ++merge;
      CHECK(check_isomorphism(g.base, v->algorithm).kind == VerdictKind::Refuted);
      CHECK(check_aeqv(g.base, v->algorithm).kind == VerdictKind::Proven);
    }
  }
  CHECK(cycle > 0);
  CHECK(swap > 0);
  CHECK(merge > 0);
}

TEST_CASE("command line exit codes") {
  CHECK(palg("validate " + fixture("cd.palg")) == 0);
  CHECK(palg("validate " + fixture("conformance/err_syntax.palg")) == 3);
  CHECK(palg("validate /nonexistent.palg") == 3);
  CHECK(palg("run " + fixture("cd.palg") + " --input '<2>'") == 0);
  CHECK(palg("iso " + fixture("cd.palg") + " " + fixture("cd_renamed.palg")) == 0);
  CHECK(palg("iso " + fixture("diamond_a.palg") + " " + fixture("diamond_b.palg")) == 1);
  CHECK(palg("equiv " + fixture("cyc_a.palg") + " " + fixture("cyc_b.palg")) == 1);
  CHECK(palg("equiv --kind computational " + fixture("cyc_a.palg") + " " + fixture("cyc_b.palg")) ==
        0);
  CHECK(palg("prove " + fixture("swap_a.palg") + " " + fixture("swap_b.palg")) == 2);
  CHECK(palg("prove " + fixture("cd.palg") + " " + fixture("cd_reordered.palg")) == 0);
  CHECK(palg("to-process " + fixture("cd.palg")) == 0);
  CHECK(palg("to-graph " + fixture("conformance/valid_process.palg")) == 0);
  CHECK(palg("frobnicate") == 3);
  CHECK(palg("--json selftest --count 5") == 0);
}
