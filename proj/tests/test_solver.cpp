#include <doctest.h>

#include "gibbssat/rng.hpp"
#include "gibbssat/solver.hpp"
#include "helpers.hpp"

using namespace gibbssat;
using gibbssat::testing::contradiction_formula;
using gibbssat::testing::demo_formula;

TEST_SUITE_BEGIN("solver");

TEST_CASE("2-sat: the four-pattern contradiction is unsatisfiable") {
  SatResult r = solve_2sat(contradiction_formula());
  CHECK_FALSE(r.satisfiable);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.work.conflicts == 1);
}

TEST_CASE("2-sat: a forced literal shows up in the witness") {
  // (x1 v x2) and (x1 v !x2) force x1 = 1.
  CnfFormula f(2, 2);
  f.add_clause({pos(0), pos(1)});
  f.add_clause({pos(0), neg(1)});
  for (SatResult r : {solve_2sat(f), solve_dpll(f)}) {
    REQUIRE(r.satisfiable);
    REQUIRE(r.witness.has_value());
    CHECK((*r.witness)[0]);
    CHECK(evaluate(f, *r.witness) == 0);
  }
}

TEST_CASE("2-sat rejects other widths") {
  CHECK_THROWS_AS(solve_2sat(demo_formula()), std::invalid_argument);
}

TEST_CASE("dpll solves the demo formula") {
  SatResult r = solve_dpll(demo_formula());
  REQUIRE(r.satisfiable);
  CHECK(evaluate(demo_formula(), *r.witness) == 0);
}

TEST_CASE("dpll on the empty formula") {
  CnfFormula f(4, 2);
  SatResult r = solve_dpll(f);
  REQUIRE(r.satisfiable);
  CHECK(*r.witness == Assignment(4, false));
  CHECK(r.work.decisions == 0);
}

TEST_CASE("dpll refutes the four-pattern contradiction") {
  SatResult r = solve_dpll(contradiction_formula());
  CHECK_FALSE(r.satisfiable);
}

TEST_CASE("work counters are reproducible") {
  CnfFormula f = generate_instance(60, 250, 3, 5150);
  SatResult a = solve_dpll(f);
  SatResult b = solve_dpll(f);
  CHECK(a.work.decisions == b.work.decisions);
  CHECK(a.work.propagations == b.work.propagations);
  CHECK(a.work.conflicts == b.work.conflicts);

  CnfFormula g = generate_instance(200, 260, 2, 5151);
  SatResult c = solve_2sat(g);
  SatResult d = solve_2sat(g);
  CHECK(c.work.decisions == d.work.decisions);
  CHECK(c.work.propagations == d.work.propagations);
}

TEST_CASE("witnesses returned on random instances are sound") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    CnfFormula f = generate_instance(50, 50, 2, mix_seed(11, seed));
    SatResult a = solve_2sat(f);
    if (a.satisfiable) CHECK(evaluate(f, *a.witness) == 0);
    SatResult b = solve_dpll(f);
    if (b.satisfiable) CHECK(evaluate(f, *b.witness) == 0);
    CHECK(a.satisfiable == b.satisfiable);
  }
}

TEST_CASE("dpll agrees with the implication-graph solver" *
          doctest::timeout(300)) {
  // 10,000 random 2-SAT instances at N = 50 across the transition.
  const double alphas[3] = {0.5, 1.0, 2.0};
  for (uint64_t i = 0; i < 10000; ++i) {
    uint32_t m = static_cast<uint32_t>(alphas[i % 3] * 50);
    CnfFormula f = generate_instance(50, m, 2, mix_seed(22, i));
    SatResult a = solve_2sat(f);
    SatResult b = solve_dpll(f);
    REQUIRE(a.satisfiable == b.satisfiable);
  }
}

TEST_CASE("brute force on the demo formula") {
  GroundState g = max_sat_bruteforce(demo_formula());
  CHECK(g.lambda_min == 0);
  CHECK(g.degeneracy == 25);  // frozen from the 32-assignment scan
}

TEST_CASE("brute force on the empty formula") {
  CnfFormula f(4, 2);
  GroundState g = max_sat_bruteforce(f);
  CHECK(g.lambda_min == 0);
  CHECK(g.degeneracy == 16);
}

TEST_CASE("brute force on the four-pattern contradiction") {
  GroundState g = max_sat_bruteforce(contradiction_formula());
  CHECK(g.lambda_min == 1);
  CHECK(g.degeneracy == 4);  // every assignment violates exactly one clause
}

TEST_CASE("brute force refuses oversized inputs") {
  CnfFormula f(12, 2);
  CHECK_THROWS_AS(max_sat_bruteforce(f, 10), TooLargeError);
}

TEST_CASE("three-way agreement on small random instances") {
  for (uint64_t i = 0; i < 500; ++i) {
    uint32_t n = 4 + i % 9;  // 4..12
    uint32_t m = 1 + static_cast<uint32_t>((0.4 + 0.2 * (i % 10)) * n);
    CnfFormula f = generate_instance(n, m, 2, mix_seed(33, i));
    SatResult a = solve_2sat(f);
    SatResult b = solve_dpll(f);
    GroundState g = max_sat_bruteforce(f);
    REQUIRE(a.satisfiable == b.satisfiable);
    REQUIRE(a.satisfiable == (g.lambda_min == 0));
  }
}

TEST_CASE("implication-graph solver scales linearly" * doctest::timeout(120)) {
  // Mean work at fixed alpha must grow no faster than 1.3x linear in N.
  auto mean_work = [](uint32_t n) {
    double total = 0;
    for (uint64_t seed = 0; seed < 30; ++seed) {
      CnfFormula f =
          generate_instance(n, static_cast<uint32_t>(0.6 * n), 2, mix_seed(44, seed));
      total += double(solve_2sat(f).work.total());
    }
    return total / 30;
  };
  double w1 = mean_work(4000);
  double w2 = mean_work(8000);
  CHECK(w2 / w1 < 2.0 * 1.3);
}

TEST_SUITE_END();
