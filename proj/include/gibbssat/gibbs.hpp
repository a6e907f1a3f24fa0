#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "gibbssat/cnf.hpp"

namespace gibbssat {

// Exact density of states: number of configurations at each integer energy
// (violated-clause count). Zero-count levels are omitted, so the smallest
// key is the ground energy. This is the sufficient statistic for every
// thermal quantity here: Z, lambda_min, d and p(lambda_min, beta).
struct EnergyHistogram {
  uint32_t n_spins = 0;
  std::map<uint32_t, uint64_t> counts;

  uint64_t total() const;
  uint32_t lambda_min() const;  // smallest populated level
  uint64_t degeneracy() const;  // count at lambda_min

  friend bool operator==(const EnergyHistogram&, const EnergyHistogram&) = default;
};

// Counts configurations per energy by walking all 2^N assignments in
// Gray-code order with incremental per-clause updates. The index range is
// split into contiguous blocks processed in parallel with private
// histograms, merged by exact integer addition, so the result is identical
// for any thread count.
EnergyHistogram enumerate_spectrum(const CnfFormula& formula,
                                   unsigned threads = 1,
                                   uint32_t max_vars = kDefaultExhaustiveLimit);

// Ground-state occupancy d / sum_e counts(e) * exp(-beta * (e - lambda_min)).
// The shift keeps every exponent <= 0, so large beta saturates to 1 instead
// of overflowing. Result in (0, 1], non-decreasing in beta,
// p(0) = d / 2^N exactly.
double ground_occupancy(const EnergyHistogram& hist, double beta);

struct OccupancyCurve {
  EnergyHistogram histogram;
  std::vector<double> betas;
  std::vector<double> p_values;
};

OccupancyCurve occupancy_curve(const EnergyHistogram& hist,
                               std::vector<double> betas);

// Smallest beta with p(lambda_min, beta) >= threshold, to absolute
// tolerance tol, found by bisection (p is monotone in beta). Returns 0 when
// the uniform distribution already meets the threshold. The initial upper
// bound N ln 2 + 10 suffices because the spectral gap is at least one
// violated clause.
double min_beta_for_occupancy(const EnergyHistogram& hist,
                              double threshold = 0.9, double tol = 1e-3);

// {"n_spins": N, "counts": [[energy, count], ...]} with exact integers,
// levels in increasing order. Used for caching and sweep checkpoints.
nlohmann::json histogram_to_json(const EnergyHistogram& hist);
EnergyHistogram histogram_from_json(const nlohmann::json& doc);

}  // namespace gibbssat
