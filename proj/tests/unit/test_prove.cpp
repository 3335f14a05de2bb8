#include <doctest.h>

#include "protoalg/equiv.hpp"
#include "protoalg/generate.hpp"
#include "protoalg/prove.hpp"
#include "support.hpp"

using namespace protoalg;
using namespace protoalg::testing;

TEST_CASE("reordered countdown is proven on every input") {
  auto r = prove_aeqv(algorithm("cd.palg"), algorithm("cd_reordered.palg"));
  CHECK(r.outcome == ProofOutcome::Proven);
  REQUIRE(r.inputs.size() == 4);
  for (const auto& i : r.inputs) CHECK(i.outcome == ProofOutcome::Proven);
}

TEST_CASE("swap pair is out of reach of the method") {
  auto a = algorithm("swap_a.palg"), b = algorithm("swap_b.palg");
  auto r = prove_aeqv(a, b);
  CHECK(r.outcome == ProofOutcome::MethodInconclusive);
  CHECK(r.inputs.size() == 64);
  for (const auto& i : r.inputs) CHECK(i.outcome == ProofOutcome::MethodInconclusive);
  CHECK(check_aeqv(a, b).kind == VerdictKind::Proven);
}

TEST_CASE("cycle pair is inconclusive while the checker refutes") {
  auto a = algorithm("cyc_a.palg"), b = algorithm("cyc_b.palg");
  CHECK(prove_aeqv(a, b).outcome == ProofOutcome::MethodInconclusive);
  CHECK(check_aeqv(a, b).kind == VerdictKind::Refuted);
}

TEST_CASE("input subsets and signature checks") {
  auto a = algorithm("swap_a.palg"), b = algorithm("swap_b.palg");
  auto r = prove_aeqv(a, b, std::vector<Value>{{0, 0}});
  REQUIRE(r.inputs.size() == 1);
  CHECK(r.inputs[0].verdict.index == 1);
  CHECK_THROWS_AS(prove_aeqv(a, b, std::vector<Value>{{9, 9}}), Error);
  CHECK_THROWS_AS(prove_aeqv(algorithm("cd.palg"), algorithm("cd_renamed.palg")), Error);
  auto bounded = prove_aeqv(algorithm("cd.palg"), algorithm("cd_reordered.palg"), std::nullopt, 1);
  CHECK(bounded.outcome == ProofOutcome::Proven);
}

TEST_CASE("diamond pair is proven") {
  CHECK(prove_aeqv(algorithm("diamond_a.palg"), algorithm("diamond_b.palg")).outcome ==
        ProofOutcome::Proven);
}

TEST_CASE("astep agrees with one unfolding on fixtures") {
  for (const auto& name : algorithm_fixtures()) {
    CAPTURE(name);
    CHECK(cross_validate_lemma1(algorithm(name)).ok());
  }
}

TEST_CASE("soundness on generated pairs") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = generate_random(seed);
    for (const auto& v : g.variants) {
      if (!(v.algorithm.alphabet() == g.base.alphabet())) continue;
      auto proof = prove_aeqv(g.base, v.algorithm);
      if (proof.outcome == ProofOutcome::Proven)
        CHECK(check_aeqv(g.base, v.algorithm).kind == VerdictKind::Proven);
    }
    CHECK(cross_validate_lemma1(g.base).ok());
  }
}
