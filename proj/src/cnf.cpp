#include "gibbssat/cnf.hpp"

#include "gibbssat/rng.hpp"

namespace gibbssat {

namespace {

void check_distinct_vars(const std::vector<Literal>& lits) {
  for (size_t i = 0; i < lits.size(); ++i)
    for (size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i].var == lits[j].var)
        throw std::invalid_argument(
            "clause literals must reference distinct variables");
}

}  // namespace

Clause::Clause(std::initializer_list<Literal> lits)
    : Clause(std::vector<Literal>(lits)) {}

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
  if (lits_.empty()) throw std::invalid_argument("empty clause");
  check_distinct_vars(lits_);
}

Assignment Assignment::from_bits(uint64_t bits, size_t n) {
  if (n > 64) throw std::invalid_argument("from_bits supports at most 64 variables");
  Assignment a(n);
  for (size_t i = 0; i < n; ++i) a.bits_[i] = (bits >> i) & 1u;
  return a;
}

uint64_t Assignment::to_bits() const {
  if (size() > 64) throw std::invalid_argument("to_bits supports at most 64 variables");
  uint64_t bits = 0;
  for (size_t i = 0; i < size(); ++i)
    if (bits_[i]) bits |= uint64_t{1} << i;
  return bits;
}

CnfFormula::CnfFormula(uint32_t n_vars, uint32_t k) : n_vars_(n_vars), k_(k) {
  if (n_vars == 0) throw std::invalid_argument("formula needs at least one variable");
}

void CnfFormula::add_clause(Clause clause) {
  for (const Literal& lit : clause.literals())
    if (lit.var >= n_vars_)
      throw std::invalid_argument("literal variable out of range");
  if (k_ == 0)
    k_ = clause.size();
  else if (clause.size() != k_)
    throw std::invalid_argument("clause width " + std::to_string(clause.size()) +
                                " does not match formula width " +
                                std::to_string(k_));
  clauses_.push_back(std::move(clause));
}

CnfFormula generate_instance(uint32_t n_vars, uint32_t n_clauses, uint32_t k,
                             uint64_t seed) {
  if (k < 2) throw std::invalid_argument("clause width must be at least 2");
  if (n_vars <= k)
    throw std::invalid_argument("need n_vars > k to sample distinct variables");

  SplitMix64 rng(seed);
  CnfFormula formula(n_vars, k);
  std::vector<Literal> lits(k);
  std::vector<bool> picked(n_vars, false);
  for (uint32_t c = 0; c < n_clauses; ++c) {
    for (uint32_t j = 0; j < k; ++j) {
      uint32_t var;
      do {
        var = rng.next_below(n_vars);
      } while (picked[var]);
      picked[var] = true;
      lits[j] = {var, rng.next_bool()};
    }
    for (uint32_t j = 0; j < k; ++j) picked[lits[j].var] = false;
    formula.add_clause(Clause(lits));
  }
  return formula;
}

uint32_t evaluate(const CnfFormula& formula, const Assignment& assignment) {
  if (assignment.size() != formula.n_vars())
    throw std::invalid_argument("assignment length " +
                                std::to_string(assignment.size()) +
                                " does not match variable count " +
                                std::to_string(formula.n_vars()));
  uint32_t violated = 0;
  for (const Clause& clause : formula.clauses()) {
    bool satisfied = false;
    for (const Literal& lit : clause.literals()) {
      if (assignment[lit.var] != lit.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) ++violated;
  }
  return violated;
}

}  // namespace gibbssat
