#include <doctest.h>

#include "protoalg/exec.hpp"
#include "support.hpp"

using namespace protoalg;
using namespace protoalg::testing;

namespace {

std::uint32_t at(const ProtoAlgorithm& a, const char* id) { return *a.graph().index_of(id); }

// Countdown whose loop body is the identity: it never leaves the loop for n > 0.
ProtoAlgorithm stuck_countdown() {
  auto d = document("cd.palg");
  d.interp->functions.insert_or_assign("dec", FunctionDef{"x", parse_expr("x")});
  return to_proto_algorithm(d);
}

}  // namespace

TEST_CASE("construction validates everything") {
  auto d = document("cd.palg");
  d.graph->remove_edge("c", "g");
  CHECK_THROWS_AS(to_proto_algorithm(d), ValidationError);
  auto w = document("cd.palg");
  w.interp->main = DomainDecl::boxed("main", {{0, 5}});
  CHECK_THROWS_AS(to_proto_algorithm(w), ValidationError);
}

TEST_CASE("astep clauses on the countdown") {
  auto a = algorithm("cd.palg");
  CHECK(astep(a, State::input({2})) == State::internal(at(a, "c"), {2}));
  CHECK(astep(a, State::internal(at(a, "c"), {0})) == State::internal(at(a, "h"), {0}));
  CHECK(astep(a, State::internal(at(a, "c"), {2})) == State::internal(at(a, "g"), {2}));
  CHECK(astep(a, State::internal(at(a, "g"), {2})) == State::internal(at(a, "c"), {1}));
  CHECK(astep(a, State::internal(at(a, "h"), {0})) == State::output({0}));
  CHECK(astep(a, State::output({1})) == State::output({1}));
  // The root keeps its value and hands over to its successor.
  CHECK(astep(a, State::internal(at(a, "r"), {3})) == State::internal(at(a, "c"), {3}));
  CHECK_THROWS_AS(astep(a, State::internal(99, {0})), Error);
  CHECK_THROWS_AS(astep(a, State::internal(at(a, "c"), {9})), Error);
}

TEST_CASE("cstep conceals predicate inspections") {
  auto a = algorithm("cd.palg");
  CHECK(cstep(a, State::internal(at(a, "c"), {2})) == State::internal(at(a, "c"), {1}));
  CHECK(cstep(a, State::internal(at(a, "c"), {0})) == State::output({0}));
  CHECK(cstep(a, State::output({3})) == State::output({3}));
  CHECK(cstep(a, State::input({1})) == State::internal(at(a, "c"), {1}));
  CHECK(cstep(a, State::internal(at(a, "g"), {1})) == State::internal(at(a, "c"), {0}));
}

TEST_CASE("countdown runs: nas = 2n + 3, output 0") {
  auto a = algorithm("cd.palg");
  for (std::int64_t n = 0; n <= 3; ++n) {
    RunOptions o;
    o.record_algorithmic = true;
    o.record_computational = true;
    auto r = run(a, {n}, o);
    CAPTURE(n);
    REQUIRE(r.converged);
    CHECK(*r.output == Value{0});
    CHECK(r.nas == static_cast<std::size_t>(2 * n + 3));
    CHECK(r.algorithmic_trace->size() == r.nas + 1);
    CHECK(r.algorithmic_trace->front() == State::input({n}));
    CHECK(r.algorithmic_trace->back() == State::output({0}));
    CHECK(*r.computational_output == Value{0});
    // ini, n decrements and fin remain visible.
    CHECK(r.computational_steps == static_cast<std::size_t>(n + 2));
  }
  auto r0 = run(a, {0}, RunOptions{10, true, false});
  std::vector<State> expected{State::input({0}), State::internal(at(a, "c"), {0}),
                              State::internal(at(a, "h"), {0}), State::output({0})};
  CHECK(*r0.algorithmic_trace == expected);
  CHECK_THROWS_AS(run(a, {7}), Error);
}

TEST_CASE("divergence is reported at the bound") {
  auto a = stuck_countdown();
  auto r = run(a, {2}, RunOptions{50, false, false});
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.output.has_value());
  CHECK(r.bound == 50);
  CHECK(run(a, {0}).converged);
}

TEST_CASE("swap fixture runs take four steps") {
  auto a = algorithm("swap_a.palg");
  auto b = algorithm("swap_b.palg");
  for (const auto& d : a.inputs()) {
    auto ra = run(a, d), rb = run(b, d);
    CHECK(ra.nas == 4);
    CHECK(rb.nas == 4);
    CHECK(*ra.output == *rb.output);
    CHECK(*ra.output == Value{(d[0] + 1) % 8, (d[1] + 1) % 8});
  }
}

TEST_CASE("state descriptions") {
  auto a = algorithm("cd.palg");
  CHECK(describe(a, State::input({1})) == "input <1>");
  CHECK(describe(a, State::internal(at(a, "g"), {1})) == "(g,<1>)");
  CHECK(describe(a, State::output({0})) == "output <0>");
}
