#include "gibbssat/ising.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace gibbssat {

IsingHamiltonian embed(const CnfFormula& formula) {
  const uint32_t k = formula.k();
  if (k > 3)
    throw std::invalid_argument("embed supports clause widths 2 and 3, got " +
                                std::to_string(k));

  IsingHamiltonian h;
  h.n_spins = formula.n_vars();
  h.denominator = k == 0 ? 1 : (int64_t{1} << k);
  h.field_num.assign(h.n_spins, 0);
  h.pair_num.assign(size_t(h.n_spins) * (h.n_spins - 1) / 2, 0);

  // Each clause contributes (1/2^k) * prod_j (1 + s_j sigma_j) with
  // s_j = +1 for a positive literal and -1 for a negated one; expanding the
  // product gives the constant, field, pair and triple terms below.
  for (const Clause& clause : formula.clauses()) {
    uint32_t var[3];
    int64_t sign[3];
    for (uint32_t j = 0; j < clause.size(); ++j) {
      var[j] = clause[j].var;
      sign[j] = clause[j].negated ? -1 : +1;
    }

    h.constant_num += 1;
    for (uint32_t j = 0; j < clause.size(); ++j)
      h.field_num[var[j]] += sign[j];
    for (uint32_t a = 0; a < clause.size(); ++a) {
      for (uint32_t b = a + 1; b < clause.size(); ++b) {
        uint32_t i = std::min(var[a], var[b]);
        uint32_t j = std::max(var[a], var[b]);
        h.pair_num[h.pair_index(i, j)] += sign[a] * sign[b];
      }
    }
    if (clause.size() == 3) {
      std::array<uint32_t, 3> key = {var[0], var[1], var[2]};
      std::sort(key.begin(), key.end());
      h.triple_num[key] += sign[0] * sign[1] * sign[2];
    }
  }
  return h;
}

int64_t energy_numerator(const IsingHamiltonian& h, const Assignment& s) {
  if (s.size() != h.n_spins)
    throw std::invalid_argument("assignment length " + std::to_string(s.size()) +
                                " does not match spin count " +
                                std::to_string(h.n_spins));
  std::vector<int64_t> z(h.n_spins);
  for (uint32_t i = 0; i < h.n_spins; ++i) z[i] = s[i] ? -1 : +1;

  int64_t num = h.constant_num;
  for (uint32_t i = 0; i < h.n_spins; ++i) num += h.field_num[i] * z[i];
  size_t idx = 0;
  for (uint32_t i = 0; i < h.n_spins; ++i)
    for (uint32_t j = i + 1; j < h.n_spins; ++j, ++idx)
      if (h.pair_num[idx] != 0) num += h.pair_num[idx] * z[i] * z[j];
  for (const auto& [key, coeff] : h.triple_num)
    num += coeff * z[key[0]] * z[key[1]] * z[key[2]];
  return num;
}

double energy(const IsingHamiltonian& h, const Assignment& s) {
  return double(energy_numerator(h, s)) / double(h.denominator);
}

bool verify_embedding(const CnfFormula& formula, const IsingHamiltonian& h,
                      uint32_t max_vars) {
  if (formula.n_vars() > max_vars)
    throw TooLargeError("verify_embedding: " + std::to_string(formula.n_vars()) +
                        " variables exceeds the exhaustive limit of " +
                        std::to_string(max_vars));
  if (h.n_spins != formula.n_vars()) return false;
  const uint64_t total = uint64_t{1} << formula.n_vars();
  for (uint64_t bits = 0; bits < total; ++bits) {
    Assignment s = Assignment::from_bits(bits, formula.n_vars());
    int64_t expected = int64_t(evaluate(formula, s)) * h.denominator;
    if (energy_numerator(h, s) != expected) return false;
  }
  return true;
}

namespace {

std::string fraction(int64_t num, int64_t den) {
  if (num == 0) return "0";
  int64_t g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

nlohmann::json ising_to_json(const IsingHamiltonian& h) {
  nlohmann::json doc;
  doc["n_spins"] = h.n_spins;
  doc["denominator"] = h.denominator;
  doc["constant"] = fraction(h.constant_num, h.denominator);
  auto fields = nlohmann::json::array();
  for (uint32_t i = 0; i < h.n_spins; ++i)
    fields.push_back(fraction(h.field_num[i], h.denominator));
  doc["fields"] = std::move(fields);

  auto pairs = nlohmann::json::array();
  size_t idx = 0;
  for (uint32_t i = 0; i < h.n_spins; ++i)
    for (uint32_t j = i + 1; j < h.n_spins; ++j, ++idx)
      if (h.pair_num[idx] != 0)
        pairs.push_back({{"i", i},
                         {"j", j},
                         {"value", fraction(h.pair_num[idx], h.denominator)}});
  doc["pair_couplings"] = std::move(pairs);

  auto triples = nlohmann::json::array();
  for (const auto& [key, coeff] : h.triple_num)
    if (coeff != 0)
      triples.push_back({{"i", key[0]},
                         {"j", key[1]},
                         {"l", key[2]},
                         {"value", fraction(coeff, h.denominator)}});
  doc["triple_couplings"] = std::move(triples);
  return doc;
}

}  // namespace gibbssat
