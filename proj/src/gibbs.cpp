#include "gibbssat/gibbs.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "gibbssat/parallel.hpp"

namespace gibbssat {

uint64_t EnergyHistogram::total() const {
  uint64_t sum = 0;
  for (const auto& [e, c] : counts) sum += c;
  return sum;
}

uint32_t EnergyHistogram::lambda_min() const {
  if (counts.empty()) throw std::logic_error("empty histogram");
  return counts.begin()->first;
}

uint64_t EnergyHistogram::degeneracy() const {
  if (counts.empty()) throw std::logic_error("empty histogram");
  return counts.begin()->second;
}

namespace {

// Per-block Gray-code walk. Configuration at step t is g(t) = t ^ (t >> 1);
// between g(t-1) and g(t) exactly the bit ctz(t) flips, so the violated
// count can be maintained with per-clause false-literal counters touching
// only the clauses of the flipped variable.
struct BlockScan {
  const std::vector<uint32_t>& clause_len;
  const std::vector<uint32_t>& var_clauses;      // CSR payload: clause ids
  const std::vector<uint32_t>& var_begin;        // CSR offsets per variable
  const std::vector<uint32_t>& lit_negated_bit;  // per (var,clause) entry

  std::vector<uint32_t> false_count;
  std::vector<uint64_t> hist;

  void run(const CnfFormula& f, uint64_t begin, uint64_t end) {
    const uint32_t m = f.num_clauses();
    false_count.assign(m, 0);
    hist.assign(m + 1, 0);

    uint64_t config = begin ^ (begin >> 1);
    uint32_t violated = 0;
    for (uint32_t c = 0; c < m; ++c) {
      const Clause& clause = f.clause(c);
      for (const Literal& lit : clause.literals()) {
        bool bit = (config >> lit.var) & 1;
        if (bit == lit.negated) ++false_count[c];  // literal is false
      }
      if (false_count[c] == clause.size()) ++violated;
    }
    ++hist[violated];

    for (uint64_t t = begin + 1; t < end; ++t) {
      uint32_t flip = static_cast<uint32_t>(std::countr_zero(t));
      bool old_bit = (config >> flip) & 1;
      for (uint32_t i = var_begin[flip]; i < var_begin[flip + 1]; ++i) {
        uint32_t c = var_clauses[i];
        bool was_false = (old_bit ? 1u : 0u) == lit_negated_bit[i];
        if (was_false) {
          if (false_count[c]-- == clause_len[c]) --violated;
        } else {
          if (++false_count[c] == clause_len[c]) ++violated;
        }
      }
      config ^= uint64_t{1} << flip;
      ++hist[violated];
    }
  }
};

}  // namespace

EnergyHistogram enumerate_spectrum(const CnfFormula& formula, unsigned threads,
                                   uint32_t max_vars) {
  const uint32_t n = formula.n_vars();
  if (n > max_vars)
    throw TooLargeError("enumerate_spectrum: " + std::to_string(n) +
                        " variables exceeds the exhaustive limit of " +
                        std::to_string(max_vars));

  const uint32_t m = formula.num_clauses();
  std::vector<uint32_t> clause_len(m);
  std::vector<uint32_t> var_begin(n + 1, 0);
  for (uint32_t c = 0; c < m; ++c) {
    clause_len[c] = formula.clause(c).size();
    for (const Literal& lit : formula.clause(c).literals())
      ++var_begin[lit.var + 1];
  }
  for (uint32_t v = 0; v < n; ++v) var_begin[v + 1] += var_begin[v];
  std::vector<uint32_t> var_clauses(var_begin.back());
  std::vector<uint32_t> lit_negated_bit(var_begin.back());
  {
    std::vector<uint32_t> fill(var_begin.begin(), var_begin.end() - 1);
    for (uint32_t c = 0; c < m; ++c)
      for (const Literal& lit : formula.clause(c).literals()) {
        var_clauses[fill[lit.var]] = c;
        lit_negated_bit[fill[lit.var]] = lit.negated ? 1 : 0;
        ++fill[lit.var];
      }
  }

  const uint64_t total = uint64_t{1} << n;
  unsigned t = resolve_thread_count(threads);
  size_t n_blocks = std::min<uint64_t>(t, total);
  std::vector<BlockScan> blocks(
      n_blocks,
      BlockScan{clause_len, var_clauses, var_begin, lit_negated_bit, {}, {}});

  parallel_for(n_blocks, t, [&](size_t b) {
    uint64_t begin = total / n_blocks * b + std::min<uint64_t>(b, total % n_blocks);
    uint64_t size = total / n_blocks + (b < total % n_blocks ? 1 : 0);
    blocks[b].run(formula, begin, begin + size);
  });

  EnergyHistogram result;
  result.n_spins = n;
  std::vector<uint64_t> merged(m + 1, 0);
  for (const BlockScan& block : blocks)
    for (uint32_t e = 0; e <= m; ++e) merged[e] += block.hist[e];
  for (uint32_t e = 0; e <= m; ++e)
    if (merged[e] != 0) result.counts.emplace(e, merged[e]);
  return result;
}

double ground_occupancy(const EnergyHistogram& hist, double beta) {
  if (beta < 0) throw std::invalid_argument("beta must be non-negative");
  const uint32_t lambda = hist.lambda_min();
  double z_shifted = 0.0;
  for (const auto& [e, c] : hist.counts)
    z_shifted += double(c) * std::exp(-beta * double(e - lambda));
  return double(hist.degeneracy()) / z_shifted;
}

OccupancyCurve occupancy_curve(const EnergyHistogram& hist,
                               std::vector<double> betas) {
  OccupancyCurve curve;
  curve.histogram = hist;
  curve.betas = std::move(betas);
  curve.p_values.reserve(curve.betas.size());
  for (double beta : curve.betas)
    curve.p_values.push_back(ground_occupancy(hist, beta));
  return curve;
}

double min_beta_for_occupancy(const EnergyHistogram& hist, double threshold,
                              double tol) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("threshold must lie in (0, 1)");
  if (ground_occupancy(hist, 0.0) >= threshold) return 0.0;

  double hi = hist.n_spins * std::log(2.0) + 10.0;
  while (ground_occupancy(hist, hi) < threshold) hi *= 2;  // extreme thresholds
  double lo = 0.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (ground_occupancy(hist, mid) >= threshold)
      hi = mid;
    else
      lo = mid;
  }
  return hi;  // p(hi) >= threshold, p(hi - 2 tol) < threshold
}

nlohmann::json histogram_to_json(const EnergyHistogram& hist) {
  nlohmann::json doc;
  doc["n_spins"] = hist.n_spins;
  auto counts = nlohmann::json::array();
  for (const auto& [e, c] : hist.counts) counts.push_back({e, c});
  doc["counts"] = std::move(counts);
  return doc;
}

EnergyHistogram histogram_from_json(const nlohmann::json& doc) {
  EnergyHistogram hist;
  hist.n_spins = doc.at("n_spins").get<uint32_t>();
  for (const auto& entry : doc.at("counts")) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::invalid_argument("histogram counts entries must be [energy, count]");
    hist.counts.emplace(entry[0].get<uint32_t>(), entry[1].get<uint64_t>());
  }
  return hist;
}

}  // namespace gibbssat
