#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gibbssat/cnf.hpp"

namespace gibbssat {

enum class SweepMode { satisfiability, gibbs };

// Thrown when a checkpoint in the output directory was produced by a
// different configuration.
struct CheckpointMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An ensemble sweep over clause density. M = round(alpha * N) per point;
// per-instance seeds derive from (master_seed, density index, instance
// index), so any subset of the sweep reproduces in isolation.
struct SweepConfig {
  SweepMode mode = SweepMode::satisfiability;
  uint32_t k = 2;
  uint32_t n_vars = 0;
  std::vector<double> densities;  // strictly increasing
  uint32_t instances_per_density = 1;
  std::vector<double> betas;      // gibbs mode
  double threshold = 0.9;         // gibbs mode: target occupancy for beta*
  uint64_t master_seed = 0;

  void validate() const;

  static SweepConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  // Hash of the canonical JSON form; guards checkpoint compatibility.
  std::string canonical_hash() const;
};

// Aggregated statistics of one density point. Satisfiability sweeps fill
// sat_fraction and the work fields (work = decisions + propagations, the
// deterministic run-time proxy); Gibbs sweeps fill the per-beta occupancy
// statistics and beta*.
struct SweepPoint {
  double alpha = 0.0;  // realized density m_clauses / n_vars
  uint32_t m_clauses = 0;
  uint32_t n_instances = 0;

  double sat_fraction = 0.0;
  double work_mean = 0.0;
  double work_median = 0.0;

  std::vector<double> p_mean, p_std, p_stderr;  // parallel to config.betas
  double beta_star_mean = 0.0;
  double beta_star_std = 0.0;
};

// Finite-size scaling window W(N, delta): alpha_minus is the largest swept
// density with P(sat) > 1 - delta and alpha_plus the smallest with
// P(sat) < delta, both refined by linear interpolation to the neighbouring
// grid point. A clamped flag marks a window edge that ran off the grid.
struct ScalingWindow {
  double delta = 0.0;
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
  bool minus_clamped = false;
  bool plus_clamped = false;

  double width() const { return alpha_plus - alpha_minus; }
};

struct SweepOptions {
  unsigned threads = 1;        // 0 = hardware concurrency
  std::string checkpoint_dir;  // empty disables checkpointing
  // Called after each density completes (progress reporting).
  std::function<void(size_t, const SweepPoint&)> on_point;
};

// Generates and solves instances_per_density formulas per density with the
// width-appropriate solver (implication graph for k=2, DPLL otherwise).
// Instances run concurrently; aggregation is in instance order, so the
// output is a pure function of the config regardless of thread count.
std::vector<SweepPoint> run_satisfiability_sweep(const SweepConfig& config,
                                                 const SweepOptions& options = {});

// Enumerates the exact spectrum per instance, then derives p(lambda_min,
// beta) for every configured beta and beta* for the threshold. Same
// determinism contract as above.
std::vector<SweepPoint> run_gibbs_sweep(const SweepConfig& config,
                                        const SweepOptions& options = {});

ScalingWindow estimate_scaling_window(const std::vector<SweepPoint>& points,
                                      double delta);

// --- CSV / plot emission ------------------------------------------------
//
// Satisfiability header:
//   alpha,m_clauses,n_instances,sat_fraction,work_mean,work_median
// Gibbs header:
//   alpha,m_clauses,n_instances,
//   p_mean_beta<b>,p_std_beta<b>,p_stderr_beta<b>   (one group per beta)
//   ,beta_star_mean,beta_star_std
// i.e. 3 leading + 3 per beta + 2 trailing columns. Values are '%.17g',
// UTF-8, '.' decimal separator.

std::string points_csv(const std::vector<SweepPoint>& points,
                       SweepMode mode, const std::vector<double>& betas);
void write_points_csv(const std::vector<SweepPoint>& points, SweepMode mode,
                      const std::vector<double>& betas,
                      const std::string& path);

struct ParsedCsv {
  SweepMode mode = SweepMode::satisfiability;
  std::vector<double> betas;
  std::vector<SweepPoint> points;
};

ParsedCsv parse_points_csv(const std::string& content);
ParsedCsv parse_points_csv_file(const std::string& path);

// Window CSV: delta,alpha_minus,alpha_plus,width,minus_clamped,plus_clamped
std::string window_csv(const ScalingWindow& window);
void write_window_csv(const ScalingWindow& window, const std::string& path);

// Self-contained gnuplot program rendering the CSV next to it: density on
// x, satisfiable fraction + median work (satisfiability) or occupancy +
// beta* with standard-deviation error bars (gibbs).
std::string plot_script(SweepMode mode, const std::vector<double>& betas,
                        const std::string& csv_name);
void write_plot_script(SweepMode mode, const std::vector<double>& betas,
                       const std::string& csv_name, const std::string& path);

}  // namespace gibbssat
