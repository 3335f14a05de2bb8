#include <doctest.h>

#include <cstdint>
#include <limits>
#include <random>

#include "protoalg/interp.hpp"
#include "support.hpp"

using namespace protoalg;
using namespace protoalg::testing;

namespace {

Value eval(const char* text, const Value& x) { return parse_expr(text).eval(x); }

Expr random_expr(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (depth == 0 || pick(4) == 0) {
    if (pick(2)) return Expr::literal(static_cast<std::int64_t>(pick(21)) - 10);
    return Expr::project(Expr::param(), static_cast<std::size_t>(pick(2)));
  }
  switch (pick(5)) {
    case 0: return Expr::negate(random_expr(rng, depth - 1));
    case 1:
      return Expr::if_then_else(random_expr(rng, depth - 1), random_expr(rng, depth - 1),
                                random_expr(rng, depth - 1));
    case 2: return Expr::vector({random_expr(rng, depth - 1), random_expr(rng, depth - 1)});
    default: {
      static const Expr::Op ops[] = {Expr::Op::Add, Expr::Op::Sub, Expr::Op::Mul, Expr::Op::Div,
                                     Expr::Op::Mod, Expr::Op::Eq,  Expr::Op::Lt,  Expr::Op::Le};
      return Expr::binary(ops[pick(8)], random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("expression semantics") {
  CHECK(eval("x[0] + 2 * 3", {1}) == Value{7});
  CHECK(eval("(x[0] + 2) * 3", {1}) == Value{9});
  CHECK(eval("<x[1], x[0]>", {4, 5}) == Value{5, 4});
  CHECK(eval("x", {4, 5}) == Value{4, 5});
  CHECK(eval("-x[0] - -2", {3}) == Value{-1});
  CHECK(eval("7 / 2", {0}) == Value{3});
  CHECK(eval("-7 / 2", {0}) == Value{-3});
  CHECK(eval("-7 % 3", {0}) == Value{-1});
  CHECK(eval("x[0] / 0", {5}) == Value{0});
  CHECK(eval("x[0] % 0", {5}) == Value{0});
  CHECK(eval("x[0] < 3", {2}) == Value{1});
  CHECK(eval("x[0] <= 2", {3}) == Value{0});
  CHECK(eval("x[0] = 2", {2}) == Value{1});
  CHECK(eval("if x[0] then 10 else 20", {0}) == Value{20});
  CHECK(eval("if x[0] then 10 else 20", {-4}) == Value{10});
  CHECK(eval("<x, 9>", {1, 2}) == Value{1, 2, 9});
}

TEST_CASE("overflow is the only runtime failure") {
  auto max = std::to_string(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(eval(("x[0] + " + max).c_str(), {1}), Error);
  CHECK_THROWS_AS(eval("x[0] * x[0]", {std::int64_t{1} << 40}), Error);
  CHECK_THROWS_AS(eval("-x[0]", {std::numeric_limits<std::int64_t>::min()}), Error);
  CHECK(eval("x[0] % -1", {std::numeric_limits<std::int64_t>::min()}) == Value{0});
  CHECK(eval("-9223372036854775808", {0}) == Value{std::numeric_limits<std::int64_t>::min()});
}

TEST_CASE("static arity") {
  CHECK(parse_expr("<x[0], x[1] + 1>").result_arity(2) == 2u);
  CHECK(parse_expr("x").result_arity(3) == 3u);
  std::string why;
  CHECK_FALSE(parse_expr("x[2]").result_arity(2, &why).has_value());
  CHECK_FALSE(why.empty());
  CHECK_FALSE(parse_expr("x + 1").result_arity(2).has_value());
  CHECK_FALSE(parse_expr("if x then 1 else <1, 2>").result_arity(1).has_value());
}

TEST_CASE("expression syntax errors") {
  CHECK_THROWS_AS(parse_expr("x[0] +"), Error);
  CHECK_THROWS_AS(parse_expr("y"), Error);
  CHECK_THROWS_AS(parse_expr("1 < 2 < 3"), Error);
  CHECK_THROWS_AS(parse_expr("99999999999999999999"), Error);
  CHECK(parse_expr("y[0]", "y") == parse_expr("x[0]"));
}

TEST_CASE("printing reparses to the same expression") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Expr e = random_expr(rng, 4);
    auto text = e.to_string();
    CAPTURE(text);
    CHECK(parse_expr(text) == e);
  }
}

TEST_CASE("substitution") {
  Expr e = parse_expr("x[0] * 2");
  Expr s = e.substitute(parse_expr("x[0] - 1"));
  CHECK(s.eval({5}) == Value{8});
}

TEST_CASE("enumerate") {
  auto box = DomainDecl::boxed("main", {{0, 3}});
  CHECK(enumerate(box) == std::vector<Value>{{0}, {1}, {2}, {3}});
  auto list = DomainDecl::finite("main", 2, {{2, 1}, {0, 0}});
  CHECK(enumerate(list) == std::vector<Value>{{0, 0}, {2, 1}});
  auto square = DomainDecl::boxed("main", {{0, 1}, {0, 1}});
  CHECK(enumerate(square) == std::vector<Value>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(square.size() == 4);
  CHECK(square.contains({1, 0}));
  CHECK_FALSE(square.contains({2, 0}));
  CHECK_FALSE(square.contains({0}));
  CHECK_THROWS_AS(enumerate(DomainDecl::boxed("main", {{0, 999}, {0, 999}}), 1000), Error);
  CHECK_FALSE(DomainDecl::boxed("main", {{3, 1}}).check().ok());
}

TEST_CASE("eval_fun on fixtures") {
  auto cd = document("cd.palg");
  CHECK(eval_fun(*cd.interp, "dec", {3}) == Value{2});
  CHECK(eval_fun(*cd.interp, "dec", {0}) == Value{0});
  CHECK(eval_fun(*cd.interp, "iszero", {0}) == Value{1});
  auto swap = document("swap_a.palg");
  CHECK(eval_fun(*swap.interp, "incA", {2, 5}) == Value{3, 5});
  CHECK_THROWS_AS(eval_fun(*cd.interp, "nope", {0}), Error);
  CHECK_THROWS_AS(eval_fun(*cd.interp, "dec", {0, 1}), Error);
}

TEST_CASE("check_interpretation") {
  auto cd = document("cd.palg");
  CHECK(check_interpretation(cd.alphabet, *cd.interp).ok());
  CHECK(reachable_closure(cd.alphabet, *cd.interp) == std::vector<Value>{{0}, {1}, {2}, {3}});

  auto wide = *cd.interp;
  wide.main = DomainDecl::boxed("main", {{0, 5}});
  wide.output = DomainDecl::boxed("output", {{0, 5}});
  auto r = check_interpretation(cd.alphabet, wide);
  CHECK(r.cites("minimality"));
  std::vector<std::string> unreachable;
  for (const auto& i : r.issues)
    if (i.code == "minimality") unreachable.push_back(i.subject);
  CHECK(unreachable == std::vector<std::string>{"<4>", "<5>"});

  auto bad = *cd.interp;
  bad.predicates.insert_or_assign("iszero", FunctionDef{"x", parse_expr("x[0] + 1")});
  auto rb = check_interpretation(cd.alphabet, bad);
  CHECK_FALSE(rb.ok());
  bool at_one = false;
  for (const auto& i : rb.issues) at_one = at_one || i.subject == "<1>";
  CHECK(at_one);
  CHECK_THROWS_AS(eval_fun(bad, "iszero", {1}), Error);

  auto missing = *cd.interp;
  missing.functions.erase("dec");
  CHECK_FALSE(check_interpretation(cd.alphabet, missing).ok());
}
