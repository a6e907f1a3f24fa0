#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "gibbssat/cnf.hpp"

namespace gibbssat {

// Diagonal penalty Hamiltonian of a CNF formula: for every spin
// configuration s, energy(s) equals the number of violated clauses.
//
// All coefficients are exact dyadic rationals stored as int64 numerators
// over one shared power-of-two denominator (2^k for a width-k source), so
// energies evaluate exactly in integer arithmetic.
//
// Spin convention: logical bit b maps to z = (-1)^b, i.e. |0> has z = +1.
struct IsingHamiltonian {
  uint32_t n_spins = 0;
  int64_t denominator = 1;
  int64_t constant_num = 0;
  std::vector<int64_t> field_num;                       // h_i, size n_spins
  std::vector<int64_t> pair_num;                        // J_ij, i<j packed
  std::map<std::array<uint32_t, 3>, int64_t> triple_num;  // K_ijl, width-3 only

  // Index of the packed upper-triangular pair (i < j).
  size_t pair_index(uint32_t i, uint32_t j) const {
    return static_cast<size_t>(i) * (2 * n_spins - i - 1) / 2 + (j - i - 1);
  }

  double constant() const { return double(constant_num) / double(denominator); }
  double field(uint32_t i) const {
    return double(field_num[i]) / double(denominator);
  }
  double pair(uint32_t i, uint32_t j) const {
    return double(pair_num[pair_index(i, j)]) / double(denominator);
  }
};

// Maps each clause to the projector onto its unique violating assignment
// (x_j -> P_j^0, !x_j -> P_j^1, OR -> tensor product), substitutes
// P^a = (1 + (-1)^a sigma_z) / 2 and collects the resulting polynomial in
// sigma_z into constant / field / pair / triple coefficients, summed over
// clauses with multiplicity. Widths 2 and 3 are supported.
IsingHamiltonian embed(const CnfFormula& formula);

// Exact energy numerator: energy = numerator / denominator.
int64_t energy_numerator(const IsingHamiltonian& h, const Assignment& s);

// constant + sum h_i z_i + sum J_ij z_i z_j (+ sum K z z z) with
// z_j = (-1)^{bit_j}. Exact because every coefficient is dyadic.
double energy(const IsingHamiltonian& h, const Assignment& s);

// True iff energy(h, s) equals evaluate(formula, s) for all 2^N
// configurations.
bool verify_embedding(const CnfFormula& formula, const IsingHamiltonian& h,
                      uint32_t max_vars = kDefaultExhaustiveLimit);

// JSON document for downstream annealer toolchains. Spins are 0-indexed;
// values are exact reduced fractions "p/q"; pair and triple couplings are
// listed in lexicographic index order, zero entries omitted.
nlohmann::json ising_to_json(const IsingHamiltonian& h);

}  // namespace gibbssat
