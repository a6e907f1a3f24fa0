#pragma once

#include <cstdint>
#include <optional>

#include "gibbssat/cnf.hpp"

namespace gibbssat {

// Deterministic work counters. What each field counts depends on the solver
// (documented at the solve functions); for a fixed formula the counts are
// identical run to run and thread-count independent. wall_seconds is
// informational only and carries no contract.
struct WorkStats {
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
  double wall_seconds = 0.0;

  uint64_t total() const { return decisions + propagations; }
};

struct SatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;  // present iff satisfiable
  WorkStats work;
};

// Implication-graph 2-SAT decision in O(N + M): clause (a v b) contributes
// edges !a -> b and !b -> a; the formula is unsatisfiable iff some variable
// shares a strongly connected component with its negation. Traversal stops
// at the first contradictory component, so the counters track how much of
// the graph had to be explored.
//
// Counters: decisions = DFS roots started, propagations = edges traversed,
// conflicts = 1 if a contradictory component was found.
SatResult solve_2sat(const CnfFormula& formula);

// Complete DPLL with unit propagation and pure-literal elimination.
// Branching rule (fixed): take the first unresolved clause of minimal
// current width in input order, pick its lowest-index unassigned variable
// and try true first.
//
// Counters: decisions = branch variables chosen, propagations = forced
// assignments (units, pure literals, post-conflict flips), conflicts =
// falsified clauses encountered.
SatResult solve_dpll(const CnfFormula& formula);

// Minimum violated-clause count and the number of assignments attaining it.
struct GroundState {
  uint32_t lambda_min = 0;
  uint64_t degeneracy = 0;
};

// Exhaustive MAX-SAT scan over all 2^N assignments. lambda_min = 0 iff the
// formula is satisfiable, in which case degeneracy is the model count.
GroundState max_sat_bruteforce(const CnfFormula& formula,
                               uint32_t max_vars = kDefaultExhaustiveLimit);

}  // namespace gibbssat
