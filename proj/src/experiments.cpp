#include "gibbssat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gibbssat/gibbs.hpp"
#include "gibbssat/parallel.hpp"
#include "gibbssat/rng.hpp"
#include "gibbssat/solver.hpp"

namespace gibbssat {

namespace {

constexpr const char* kCheckpointSchema = "gibbssat-checkpoint-v1";

const char* mode_name(SweepMode mode) {
  return mode == SweepMode::satisfiability ? "satisfiability" : "gibbs";
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

uint32_t clause_count_for(double alpha, uint32_t n_vars) {
  return static_cast<uint32_t>(std::lround(alpha * n_vars));
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / double(xs.size());
}

// Sample standard deviation (n - 1); 0 for fewer than two samples.
double stddev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return std::sqrt(sum / double(xs.size() - 1));
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string checkpoint_path(const std::string& dir, size_t density_index) {
  char name[64];
  std::snprintf(name, sizeof(name), "checkpoint_d%03zu.json", density_index);
  return dir + "/" + name;
}

void write_json_atomic(const nlohmann::json& doc, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out << doc.dump();
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

// Returns the parsed checkpoint for this density, nullptr json if absent.
// A checkpoint written under a different configuration is an error: silent
// reuse would corrupt the sweep.
nlohmann::json load_checkpoint(const std::string& dir, size_t density_index,
                               const std::string& config_hash) {
  std::string path = checkpoint_path(dir, density_index);
  std::ifstream in(path, std::ios::binary);
  if (!in) return nullptr;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error("corrupt checkpoint '" + path + "': " + err.what());
  }
  if (doc.value("schema", "") != kCheckpointSchema ||
      doc.value("config_hash", "") != config_hash)
    throw CheckpointMismatch("checkpoint '" + path +
                             "' belongs to a different configuration");
  return doc;
}

struct SatRecord {
  bool satisfiable = false;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
};

SweepPoint aggregate_sat(const std::vector<SatRecord>& records, double alpha,
                         uint32_t m_clauses) {
  SweepPoint point;
  point.alpha = alpha;
  point.m_clauses = m_clauses;
  point.n_instances = static_cast<uint32_t>(records.size());
  size_t sat = 0;
  std::vector<double> works;
  works.reserve(records.size());
  for (const SatRecord& r : records) {
    if (r.satisfiable) ++sat;
    works.push_back(double(r.decisions + r.propagations));
  }
  point.sat_fraction = records.empty() ? 0.0 : double(sat) / double(records.size());
  point.work_mean = mean_of(works);
  point.work_median = median_of(works);
  return point;
}

SweepPoint aggregate_gibbs(const std::vector<EnergyHistogram>& hists,
                           const SweepConfig& config, double alpha,
                           uint32_t m_clauses) {
  SweepPoint point;
  point.alpha = alpha;
  point.m_clauses = m_clauses;
  point.n_instances = static_cast<uint32_t>(hists.size());

  std::vector<double> beta_stars;
  beta_stars.reserve(hists.size());
  std::vector<std::vector<double>> p_per_beta(config.betas.size());
  for (auto& v : p_per_beta) v.reserve(hists.size());

  for (const EnergyHistogram& hist : hists) {
    for (size_t b = 0; b < config.betas.size(); ++b)
      p_per_beta[b].push_back(ground_occupancy(hist, config.betas[b]));
    beta_stars.push_back(min_beta_for_occupancy(hist, config.threshold));
  }

  for (size_t b = 0; b < config.betas.size(); ++b) {
    double mean = mean_of(p_per_beta[b]);
    double sd = stddev_of(p_per_beta[b], mean);
    point.p_mean.push_back(mean);
    point.p_std.push_back(sd);
    point.p_stderr.push_back(
        hists.empty() ? 0.0 : sd / std::sqrt(double(hists.size())));
  }
  point.beta_star_mean = mean_of(beta_stars);
  point.beta_star_std = stddev_of(beta_stars, point.beta_star_mean);
  return point;
}

}  // namespace

void SweepConfig::validate() const {
  if (k != 2 && k != 3)
    throw std::invalid_argument("clause width must be 2 or 3");
  if (n_vars <= k)
    throw std::invalid_argument("n_vars must exceed the clause width");
  if (densities.empty())
    throw std::invalid_argument("densities must be non-empty");
  for (size_t i = 0; i < densities.size(); ++i) {
    if (densities[i] < 0.0)
      throw std::invalid_argument("densities must be non-negative");
    if (i > 0 && densities[i] <= densities[i - 1])
      throw std::invalid_argument("densities must be strictly increasing");
  }
  if (instances_per_density < 1)
    throw std::invalid_argument("instances_per_density must be at least 1");
  if (mode == SweepMode::gibbs) {
    if (betas.empty())
      throw std::invalid_argument("gibbs mode needs at least one beta");
    for (double beta : betas)
      if (beta < 0.0) throw std::invalid_argument("betas must be non-negative");
    if (!(threshold > 0.0 && threshold < 1.0))
      throw std::invalid_argument("threshold must lie in (0, 1)");
    if (n_vars > kDefaultExhaustiveLimit)
      throw TooLargeError("gibbs sweeps enumerate 2^N states; n_vars " +
                          std::to_string(n_vars) + " exceeds the limit of " +
                          std::to_string(kDefaultExhaustiveLimit));
  }
}

SweepConfig SweepConfig::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const std::vector<std::string> known = {
      "mode",  "k",     "n_vars",    "densities", "density_grid",
      "betas", "threshold", "instances_per_density", "master_seed"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown config key '" + key + "'");
  }

  SweepConfig config;
  std::string mode = doc.at("mode").get<std::string>();
  if (mode == "satisfiability")
    config.mode = SweepMode::satisfiability;
  else if (mode == "gibbs")
    config.mode = SweepMode::gibbs;
  else
    throw std::invalid_argument("mode must be 'satisfiability' or 'gibbs'");

  config.k = doc.at("k").get<uint32_t>();
  config.n_vars = doc.at("n_vars").get<uint32_t>();
  config.instances_per_density = doc.at("instances_per_density").get<uint32_t>();
  config.master_seed = doc.at("master_seed").get<uint64_t>();

  bool has_list = doc.contains("densities");
  bool has_grid = doc.contains("density_grid");
  if (has_list == has_grid)
    throw std::invalid_argument(
        "config needs exactly one of 'densities' or 'density_grid'");
  if (has_list) {
    config.densities = doc.at("densities").get<std::vector<double>>();
  } else {
    const auto& grid = doc.at("density_grid");
    double start = grid.at("start").get<double>();
    double stop = grid.at("stop").get<double>();
    double step = grid.at("step").get<double>();
    if (step <= 0.0 || stop < start)
      throw std::invalid_argument("density_grid needs step > 0 and stop >= start");
    size_t count = static_cast<size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    for (size_t i = 0; i < count; ++i)
      config.densities.push_back(start + double(i) * step);
  }

  if (config.mode == SweepMode::gibbs) {
    config.betas = doc.at("betas").get<std::vector<double>>();
    if (doc.contains("threshold"))
      config.threshold = doc.at("threshold").get<double>();
  } else {
    if (doc.contains("betas") || doc.contains("threshold"))
      throw std::invalid_argument(
          "'betas'/'threshold' only apply to gibbs mode");
  }

  config.validate();
  return config;
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json doc;
  doc["mode"] = mode_name(mode);
  doc["k"] = k;
  doc["n_vars"] = n_vars;
  doc["densities"] = densities;
  doc["instances_per_density"] = instances_per_density;
  doc["master_seed"] = master_seed;
  if (mode == SweepMode::gibbs) {
    doc["betas"] = betas;
    doc["threshold"] = threshold;
  }
  return doc;
}

std::string SweepConfig::canonical_hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json().dump())));
  return buf;
}

std::vector<SweepPoint> run_satisfiability_sweep(const SweepConfig& config,
                                                 const SweepOptions& options) {
  config.validate();
  if (config.mode != SweepMode::satisfiability)
    throw std::invalid_argument("config mode is not 'satisfiability'");

  const std::string hash = config.canonical_hash();
  const bool checkpointing = !options.checkpoint_dir.empty();
  if (checkpointing)
    std::filesystem::create_directories(options.checkpoint_dir);

  std::vector<SweepPoint> points;
  points.reserve(config.densities.size());
  for (size_t d = 0; d < config.densities.size(); ++d) {
    const uint32_t m = clause_count_for(config.densities[d], config.n_vars);
    const double alpha = double(m) / double(config.n_vars);
    std::vector<SatRecord> records(config.instances_per_density);

    nlohmann::json saved =
        checkpointing ? load_checkpoint(options.checkpoint_dir, d, hash)
                      : nullptr;
    if (!saved.is_null()) {
      const auto& rows = saved.at("results");
      if (rows.size() != records.size())
        throw CheckpointMismatch("checkpoint instance count differs");
      for (size_t i = 0; i < records.size(); ++i) {
        const auto& row = rows[i];
        records[i] = {row[0].get<bool>(), row[1].get<uint64_t>(),
                      row[2].get<uint64_t>(), row[3].get<uint64_t>()};
      }
    } else {
      parallel_for(records.size(), options.threads, [&](size_t i) {
        uint64_t seed = mix_seed(config.master_seed, d, i);
        CnfFormula f = generate_instance(config.n_vars, m, config.k, seed);
        SatResult r = config.k == 2 ? solve_2sat(f) : solve_dpll(f);
        records[i] = {r.satisfiable, r.work.decisions, r.work.propagations,
                      r.work.conflicts};
      });
      if (checkpointing) {
        nlohmann::json doc;
        doc["schema"] = kCheckpointSchema;
        doc["config_hash"] = hash;
        doc["mode"] = mode_name(config.mode);
        doc["density_index"] = d;
        doc["m_clauses"] = m;
        auto rows = nlohmann::json::array();
        for (const SatRecord& r : records)
          rows.push_back({r.satisfiable, r.decisions, r.propagations, r.conflicts});
        doc["results"] = std::move(rows);
        write_json_atomic(doc, checkpoint_path(options.checkpoint_dir, d));
      }
    }

    points.push_back(aggregate_sat(records, alpha, m));
    if (options.on_point) options.on_point(d, points.back());
  }
  return points;
}

std::vector<SweepPoint> run_gibbs_sweep(const SweepConfig& config,
                                        const SweepOptions& options) {
  config.validate();
  if (config.mode != SweepMode::gibbs)
    throw std::invalid_argument("config mode is not 'gibbs'");

  const std::string hash = config.canonical_hash();
  const bool checkpointing = !options.checkpoint_dir.empty();
  if (checkpointing)
    std::filesystem::create_directories(options.checkpoint_dir);

  std::vector<SweepPoint> points;
  points.reserve(config.densities.size());
  for (size_t d = 0; d < config.densities.size(); ++d) {
    const uint32_t m = clause_count_for(config.densities[d], config.n_vars);
    const double alpha = double(m) / double(config.n_vars);
    std::vector<EnergyHistogram> hists(config.instances_per_density);

    nlohmann::json saved =
        checkpointing ? load_checkpoint(options.checkpoint_dir, d, hash)
                      : nullptr;
    if (!saved.is_null()) {
      const auto& rows = saved.at("histograms");
      if (rows.size() != hists.size())
        throw CheckpointMismatch("checkpoint instance count differs");
      for (size_t i = 0; i < hists.size(); ++i)
        hists[i] = histogram_from_json(rows[i]);
    } else {
      parallel_for(hists.size(), options.threads, [&](size_t i) {
        uint64_t seed = mix_seed(config.master_seed, d, i);
        CnfFormula f = generate_instance(config.n_vars, m, config.k, seed);
        hists[i] = enumerate_spectrum(f, 1);
      });
      if (checkpointing) {
        nlohmann::json doc;
        doc["schema"] = kCheckpointSchema;
        doc["config_hash"] = hash;
        doc["mode"] = mode_name(config.mode);
        doc["density_index"] = d;
        doc["m_clauses"] = m;
        auto rows = nlohmann::json::array();
        for (const EnergyHistogram& hist : hists)
          rows.push_back(histogram_to_json(hist));
        doc["histograms"] = std::move(rows);
        write_json_atomic(doc, checkpoint_path(options.checkpoint_dir, d));
      }
    }

    points.push_back(aggregate_gibbs(hists, config, alpha, m));
    if (options.on_point) options.on_point(d, points.back());
  }
  return points;
}

ScalingWindow estimate_scaling_window(const std::vector<SweepPoint>& points,
                                      double delta) {
  if (points.empty()) throw std::invalid_argument("empty sweep");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");

  ScalingWindow window;
  window.delta = delta;
  const size_t n = points.size();

  // alpha_minus: largest density with P(sat) > 1 - delta, refined towards
  // the next grid point where the fraction has dropped below the level.
  size_t i_minus = n;
  for (size_t i = 0; i < n; ++i)
    if (points[i].sat_fraction > 1.0 - delta) i_minus = i;
  if (i_minus == n) {
    window.alpha_minus = points.front().alpha;
    window.minus_clamped = true;
  } else if (i_minus + 1 == n) {
    window.alpha_minus = points.back().alpha;
    window.minus_clamped = true;
  } else {
    double f0 = points[i_minus].sat_fraction;
    double f1 = points[i_minus + 1].sat_fraction;
    double t = (f0 - (1.0 - delta)) / (f0 - f1);
    window.alpha_minus = points[i_minus].alpha +
                         t * (points[i_minus + 1].alpha - points[i_minus].alpha);
  }

  // alpha_plus: smallest density with P(sat) < delta.
  size_t i_plus = n;
  for (size_t i = n; i-- > 0;)
    if (points[i].sat_fraction < delta) i_plus = i;
  if (i_plus == n) {
    window.alpha_plus = points.back().alpha;
    window.plus_clamped = true;
  } else if (i_plus == 0) {
    window.alpha_plus = points.front().alpha;
    window.plus_clamped = true;
  } else {
    double f0 = points[i_plus - 1].sat_fraction;
    double f1 = points[i_plus].sat_fraction;
    double t = (f0 - delta) / (f0 - f1);
    window.alpha_plus = points[i_plus - 1].alpha +
                        t * (points[i_plus].alpha - points[i_plus - 1].alpha);
  }

  // Non-monotone data can invert the edges by a hair; keep the invariant.
  if (window.alpha_plus < window.alpha_minus)
    window.alpha_plus = window.alpha_minus;
  return window;
}

}  // namespace gibbssat
