#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace gibbssat {

// Hard cap for routines that walk all 2^N assignments.
inline constexpr uint32_t kDefaultExhaustiveLimit = 30;

// Thrown when an exhaustive routine is asked for more variables than its
// configured limit.
struct TooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One literal of a clause. Variables are 0-indexed in memory; DIMACS I/O
// uses the conventional 1-indexed signed form.
struct Literal {
  uint32_t var = 0;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline Literal pos(uint32_t var) { return {var, false}; }
inline Literal neg(uint32_t var) { return {var, true}; }

// A disjunction of literals over distinct variables. Repeated-variable
// clauses (including tautologies) are rejected on construction.
class Clause {
 public:
  Clause(std::initializer_list<Literal> lits);
  explicit Clause(std::vector<Literal> lits);

  uint32_t size() const { return static_cast<uint32_t>(lits_.size()); }
  const Literal& operator[](uint32_t i) const { return lits_[i]; }
  const std::vector<Literal>& literals() const { return lits_; }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

// Truth assignment: bit j holds the value of variable j. Logical 0 maps to
// spin +1 and logical 1 to spin -1 in the Ising modules, so an Assignment
// doubles as a spin configuration.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(size_t n, bool value = false)
      : bits_(n, value ? 1 : 0) {}

  // Bit i of `bits` becomes the value of variable i (n <= 64).
  static Assignment from_bits(uint64_t bits, size_t n);
  uint64_t to_bits() const;  // requires size() <= 64

  size_t size() const { return bits_.size(); }
  bool operator[](size_t i) const { return bits_[i] != 0; }
  void set(size_t i, bool v) { bits_[i] = v ? 1 : 0; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<uint8_t> bits_;
};

// A uniform-width CNF formula. Width k is fixed at 2 or 3 for everything in
// this project; mixed widths in one formula are unsupported. k == 0 marks a
// clause-free formula of unknown width (e.g. "p cnf 3 0").
class CnfFormula {
 public:
  CnfFormula(uint32_t n_vars, uint32_t k = 0);

  void add_clause(Clause clause);

  uint32_t n_vars() const { return n_vars_; }
  uint32_t k() const { return k_; }
  uint32_t num_clauses() const { return static_cast<uint32_t>(clauses_.size()); }
  const Clause& clause(uint32_t i) const { return clauses_[i]; }
  const std::vector<Clause>& clauses() const { return clauses_; }

  // M/N; derived, never stored.
  double density() const {
    return static_cast<double>(clauses_.size()) / n_vars_;
  }

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  uint32_t n_vars_;
  uint32_t k_;
  std::vector<Clause> clauses_;
};

// Draws a random k-SAT instance: each clause samples k distinct variables
// uniformly without replacement and negates each with probability 1/2;
// clauses are independent, so duplicate clauses across the formula can
// occur. Pure function of its arguments.
CnfFormula generate_instance(uint32_t n_vars, uint32_t n_clauses, uint32_t k,
                             uint64_t seed);

// Number of clauses (with multiplicity) whose literals are all false under
// the assignment. 0 iff the assignment satisfies the formula.
uint32_t evaluate(const CnfFormula& formula, const Assignment& assignment);

}  // namespace gibbssat
