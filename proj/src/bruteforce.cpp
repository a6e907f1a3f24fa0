#include <vector>

#include "gibbssat/solver.hpp"

namespace gibbssat {

GroundState max_sat_bruteforce(const CnfFormula& formula, uint32_t max_vars) {
  const uint32_t n = formula.n_vars();
  if (n > max_vars)
    throw TooLargeError("max_sat_bruteforce: " + std::to_string(n) +
                        " variables exceeds the exhaustive limit of " +
                        std::to_string(max_vars));

  // Clause -> (mask, pattern): violated iff (bits & mask) == pattern, where
  // pattern carries a 1 at each negated literal's position.
  const uint32_t m = formula.num_clauses();
  std::vector<uint64_t> mask(m, 0), pattern(m, 0);
  for (uint32_t c = 0; c < m; ++c) {
    for (const Literal& lit : formula.clause(c).literals()) {
      mask[c] |= uint64_t{1} << lit.var;
      if (lit.negated) pattern[c] |= uint64_t{1} << lit.var;
    }
  }

  uint32_t best = m + 1;
  uint64_t degeneracy = 0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t bits = 0; bits < total; ++bits) {
    uint32_t violated = 0;
    for (uint32_t c = 0; c < m; ++c) {
      if ((bits & mask[c]) == pattern[c]) {
        if (++violated > best) break;  // cannot improve or tie
      }
    }
    if (violated < best) {
      best = violated;
      degeneracy = 1;
    } else if (violated == best) {
      ++degeneracy;
    }
  }
  return {best, degeneracy};
}

}  // namespace gibbssat
