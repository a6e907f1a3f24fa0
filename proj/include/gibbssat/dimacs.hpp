#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gibbssat/cnf.hpp"

namespace gibbssat {

struct DimacsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses standard DIMACS CNF: "p cnf N M" header, whitespace-separated
// signed literals with 0 terminating each clause, 'c' comment lines.
// All clauses must share one width; with strict_k set, that width must
// equal *strict_k or the parse fails.
CnfFormula parse_dimacs(std::string_view text,
                        std::optional<uint32_t> strict_k = std::nullopt);
CnfFormula parse_dimacs_file(const std::string& path,
                             std::optional<uint32_t> strict_k = std::nullopt);

// Emits "p cnf N M" plus one "l1 l2 ... 0" line per clause, 1-indexed.
// write_dimacs then parse_dimacs is the identity on the formula.
std::string write_dimacs(const CnfFormula& formula);
void write_dimacs_file(const CnfFormula& formula, const std::string& path);

}  // namespace gibbssat
