#include <doctest.h>

#include "protoalg/equiv.hpp"
#include "protoalg/generate.hpp"
#include "protoalg/translate.hpp"
#include "support.hpp"

using namespace protoalg;
using namespace protoalg::testing;

namespace {

AlgorithmProcess process(const char* text, const Alphabet& alphabet, std::string root = "X",
                         std::string empty = "X_eps") {
  AlgorithmProcess p;
  p.root = std::move(root);
  p.empty = std::move(empty);
  p.spec = std::make_shared<LinearSpec>(parse_equations(text, alphabet));
  return p;
}

const char* kCountdown =
    "X = True :-> MEM := ini(MEM) . X_c\n"
    "X_c = (iszero(MEM) = 1) :-> MEM := MEM . X_h + (iszero(MEM) = 0) :-> MEM := MEM . X_g\n"
    "X_g = True :-> MEM := dec(MEM) . X_c\n"
    "X_h = True :-> MEM := fin(MEM) . X_eps\n"
    "X_eps = True :-> eps\n";

}  // namespace

TEST_CASE("countdown translates to the five expected equations") {
  auto cd = algorithm("cd.palg");
  auto p = graph_to_process(cd.graph());
  CHECK(p == process(kCountdown, cd.alphabet()));
  CHECK(p.spec->equations.size() == 5);
  CHECK(is_algorithm_process(p, cd.alphabet()).ok);
}

TEST_CASE("single path translates to three equations plus the empty one") {
  auto a = algorithm("single_path.palg");
  auto p = graph_to_process(a.graph());
  auto expected = process(
      "X = True :-> MEM := ini(MEM) . X_d\n"
      "X_d = True :-> MEM := double(MEM) . X_h\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = True :-> eps\n",
      a.alphabet());
  CHECK(p == expected);
  auto g = process_to_graph(expected, a.alphabet());
  CHECK(graph_isomorphism(g, a.graph()).has_value());
}

TEST_CASE("merged diamond shares one operation equation") {
  auto a = algorithm("diamond_b.palg");
  auto p = graph_to_process(a.graph());
  CHECK(p.spec->equations.size() == 7);
  const auto& v2 = p.spec->equations.at("X_v2");
  CHECK(v2.to_string() == "True :-> MEM := f(MEM) . X_v1p");
  const auto& v1 = p.spec->equations.at("X_v1");
  CHECK(v1.to_string() == "True :-> MEM := f(MEM) . X_v1p");
}

TEST_CASE("every fixture translates to an algorithm process and back") {
  for (const auto& name : algorithm_fixtures()) {
    auto a = algorithm(name);
    CAPTURE(name);
    auto p = graph_to_process(a.graph());
    CHECK(is_algorithm_process(p, a.alphabet()).ok);
    auto g = process_to_graph(p, a.alphabet());
    CHECK(graph_isomorphism(g, a.graph()).has_value());
  }
}

TEST_CASE("diagnoses") {
  auto alphabet = document("cd.palg").alphabet;
  auto wrong_empty = process(
      "X = True :-> MEM := ini(MEM) . X_h\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = delta\n",
      alphabet);
  auto d = is_algorithm_process(wrong_empty, alphabet);
  CHECK_FALSE(d.ok);
  CHECK(d.form == 5);
  CHECK(d.variable == "X_eps");

  auto same_bit = process(
      "X = True :-> MEM := ini(MEM) . X_c\n"
      "X_c = (iszero(MEM) = 1) :-> MEM := MEM . X_h + (iszero(MEM) = 1) :-> MEM := MEM . X_g\n"
      "X_g = True :-> MEM := dec(MEM) . X_c\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = True :-> eps\n",
      alphabet);
  d = is_algorithm_process(same_bit, alphabet);
  CHECK_FALSE(d.ok);
  CHECK(d.form == 3);
  CHECK(d.variable == "X_c");
  CHECK_THROWS_AS(process_to_graph(same_bit, alphabet), Error);

  auto ini_elsewhere = process(
      "X = True :-> MEM := ini(MEM) . X_g\n"
      "X_g = True :-> MEM := ini(MEM) . X_h\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = True :-> eps\n",
      alphabet);
  d = is_algorithm_process(ini_elsewhere, alphabet);
  CHECK(d.form == 1);

  auto fin_goes_on = process(
      "X = True :-> MEM := ini(MEM) . X_h\n"
      "X_h = True :-> MEM := fin(MEM) . X_h\n"
      "X_eps = True :-> eps\n",
      alphabet);
  CHECK(is_algorithm_process(fin_goes_on, alphabet).form == 4);

  auto unknown_op = process(
      "X = True :-> MEM := ini(MEM) . X_g\n"
      "X_g = True :-> MEM := inc(MEM) . X_h\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = True :-> eps\n",
      Alphabet{{"ini", "fin", "dec", "inc"}, {"iszero"}});
  CHECK(is_algorithm_process(unknown_op, alphabet).form == 2);

  // Well-shaped equations whose graph has a predicate-only cycle.
  auto spin = process(
      "X = True :-> MEM := ini(MEM) . X_c\n"
      "X_c = (iszero(MEM) = 1) :-> MEM := MEM . X_h + (iszero(MEM) = 0) :-> MEM := MEM . X_c\n"
      "X_h = True :-> MEM := fin(MEM) . X_eps\n"
      "X_eps = True :-> eps\n",
      alphabet);
  CHECK(is_algorithm_process(spin, alphabet).ok);
  CHECK_THROWS_AS(process_to_graph(spin, alphabet), Error);
}

TEST_CASE("canonical renaming") {
  auto cd = algorithm("cd.palg");
  auto p = graph_to_process(cd.graph());
  auto c = canonical(p);
  CHECK(c.root == "X");
  CHECK(c.empty == "X_eps");
  std::set<std::string> names;
  for (const auto& [x, _] : c.spec->equations) names.insert(x);
  CHECK(names == std::set<std::string>{"X", "X_1", "X_2", "X_3", "X_eps"});
  // BFS from the root, 1-branch first: X_c, then X_h, then X_g.
  CHECK(c.spec->equations.at("X_1").to_string().find("iszero") != std::string::npos);
  CHECK(c.spec->equations.at("X_2").to_string() == "True :-> MEM := fin(MEM) . X_eps");
  CHECK(canonical(rename(p, {{"X_c", "Q"}, {"X_h", "R"}, {"X", "S"}})) == c);
  CHECK(canonical(c) == c);
}

TEST_CASE("round trips on random graphs and processes") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto a = random_proto_algorithm(seed);
    auto g = process_to_graph(graph_to_process(a.graph()), a.alphabet());
    CHECK(graph_isomorphism(g, a.graph()).has_value());

    auto p = random_algorithm_process(seed);
    auto back = graph_to_process(process_to_graph(p, a.alphabet()));
    CHECK(canonical(back) == canonical(p));
  }
}

TEST_CASE("empty-variable name avoids collisions") {
  auto d = document("cd.palg");
  d.graph->labels["eps"] = "dec";
  d.graph->vertices.insert("eps");
  d.graph->remove_edge("c", "g");
  d.graph->add_edge("c", "eps", 0);
  d.graph->add_edge("eps", "g");
  auto a = to_proto_algorithm(d);
  auto p = graph_to_process(a.graph());
  CHECK(p.empty == "X_eps_");
  CHECK(is_algorithm_process(p, a.alphabet()).ok);
}
