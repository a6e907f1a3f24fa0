#pragma once

#include <cmath>

#include "gibbssat/cnf.hpp"
#include "gibbssat/gibbs.hpp"

namespace gibbssat::testing {

// (x1 v !x2 v x3) and (x1 v x4 v !x5): satisfiable, e.g. by x = (1,1,0,0,0);
// 25 of the 32 assignments are models.
inline CnfFormula demo_formula() {
  CnfFormula f(5, 3);
  f.add_clause({pos(0), neg(1), pos(2)});
  f.add_clause({pos(0), pos(3), neg(4)});
  return f;
}

// All four polarity patterns over two variables: minimally unsatisfiable,
// every assignment violates exactly one clause.
inline CnfFormula contradiction_formula() {
  CnfFormula f(2, 2);
  f.add_clause({pos(0), pos(1)});
  f.add_clause({neg(0), pos(1)});
  f.add_clause({pos(0), neg(1)});
  f.add_clause({neg(0), neg(1)});
  return f;
}

// Independent occupancy oracle: p = sum over ground states of exp(-beta E)
// divided by the full partition sum, both accumulated in long double over
// all 2^N assignments via evaluate().
inline double direct_occupancy(const CnfFormula& f, double beta) {
  const uint64_t total = uint64_t{1} << f.n_vars();
  uint32_t lambda = UINT32_MAX;
  std::vector<uint32_t> energies(total);
  for (uint64_t bits = 0; bits < total; ++bits) {
    energies[bits] = evaluate(f, Assignment::from_bits(bits, f.n_vars()));
    if (energies[bits] < lambda) lambda = energies[bits];
  }
  long double z = 0.0L, ground = 0.0L;
  for (uint64_t bits = 0; bits < total; ++bits) {
    long double w = std::exp(-static_cast<long double>(beta) * energies[bits]);
    z += w;
    if (energies[bits] == lambda) ground += w;
  }
  return static_cast<double>(ground / z);
}

}  // namespace gibbssat::testing
