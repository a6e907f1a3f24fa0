#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gibbssat/experiments.hpp"
#include "helpers.hpp"

using namespace gibbssat;
namespace fs = std::filesystem;

namespace {

SweepConfig small_sat_config() {
  SweepConfig config;
  config.mode = SweepMode::satisfiability;
  config.k = 2;
  config.n_vars = 30;
  config.densities = {0.5, 1.0, 2.0};
  config.instances_per_density = 50;
  config.master_seed = 314;
  return config;
}

SweepConfig small_gibbs_config() {
  SweepConfig config;
  config.mode = SweepMode::gibbs;
  config.k = 2;
  config.n_vars = 10;
  config.densities = {0.5, 1.0, 2.0};
  config.instances_per_density = 30;
  config.betas = {1.0, 2.0, 3.0};
  config.master_seed = 2718;
  return config;
}

std::vector<SweepPoint> step_points() {
  // Synthetic step: fully satisfiable below 0.9, fully unsatisfiable above 1.1.
  std::vector<SweepPoint> points;
  for (double alpha = 0.5; alpha < 1.55; alpha += 0.1) {
    SweepPoint p;
    p.alpha = alpha;
    p.sat_fraction = alpha < 0.95 ? 1.0 : (alpha > 1.05 ? 0.0 : 0.5);
    points.push_back(p);
  }
  return points;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE_BEGIN("experiments");

TEST_CASE("config validation catches bad grids") {
  SweepConfig config = small_sat_config();
  config.densities = {1.0, 1.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.densities = {2.0, 1.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.densities.clear();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("config JSON round-trip and schema rejection") {
  SweepConfig config = small_gibbs_config();
  SweepConfig back = SweepConfig::from_json(config.to_json());
  CHECK(back.to_json() == config.to_json());
  CHECK(back.canonical_hash() == config.canonical_hash());

  nlohmann::json doc = config.to_json();
  doc["unexpected"] = 1;
  CHECK_THROWS_AS(SweepConfig::from_json(doc), std::invalid_argument);

  nlohmann::json grid = small_sat_config().to_json();
  grid.erase("densities");
  grid["density_grid"] = {{"start", 0.5}, {"stop", 1.5}, {"step", 0.25}};
  SweepConfig from_grid = SweepConfig::from_json(grid);
  REQUIRE(from_grid.densities.size() == 5);
  CHECK(from_grid.densities.front() == doctest::Approx(0.5));
  CHECK(from_grid.densities.back() == doctest::Approx(1.5));

  nlohmann::json sat_with_betas = small_sat_config().to_json();
  sat_with_betas["betas"] = {1.0};
  CHECK_THROWS_AS(SweepConfig::from_json(sat_with_betas), std::invalid_argument);
}

TEST_CASE("single-point sweep is deterministic") {
  SweepConfig config = small_sat_config();
  config.densities = {1.0};
  config.instances_per_density = 1;
  auto a = run_satisfiability_sweep(config);
  auto b = run_satisfiability_sweep(config);
  REQUIRE(a.size() == 1);
  CHECK(a[0].sat_fraction == b[0].sat_fraction);
  CHECK(a[0].work_mean == b[0].work_mean);
  CHECK(a[0].work_median == b[0].work_median);
  CHECK(a[0].m_clauses == 30);
}

TEST_CASE("sweep output is independent of the thread count") {
  SweepConfig config = small_gibbs_config();
  SweepOptions one, two, four;
  one.threads = 1;
  two.threads = 2;
  four.threads = 4;
  std::string csv1 = points_csv(run_gibbs_sweep(config, one), config.mode, config.betas);
  std::string csv2 = points_csv(run_gibbs_sweep(config, two), config.mode, config.betas);
  std::string csv4 = points_csv(run_gibbs_sweep(config, four), config.mode, config.betas);
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv4);

  SweepConfig sat = small_sat_config();
  std::string s1 = points_csv(run_satisfiability_sweep(sat, one), sat.mode, {});
  std::string s2 = points_csv(run_satisfiability_sweep(sat, two), sat.mode, {});
  CHECK(s1 == s2);
}

TEST_CASE("a zero-clause density column is exactly trivial") {
  SweepConfig config = small_gibbs_config();
  config.densities = {0.01, 1.0};  // rounds to M = 0 at N = 10
  auto points = run_gibbs_sweep(config);
  REQUIRE(points.size() == 2);
  CHECK(points[0].m_clauses == 0);
  for (double p : points[0].p_mean) CHECK(p == 1.0);
  for (double sd : points[0].p_std) CHECK(sd == 0.0);
  CHECK(points[0].beta_star_mean == 0.0);
}

TEST_CASE("mean occupancy is monotone in beta after averaging") {
  auto points = run_gibbs_sweep(small_gibbs_config());
  for (const SweepPoint& p : points) {
    CHECK(p.p_mean[2] >= p.p_mean[1]);
    CHECK(p.p_mean[1] >= p.p_mean[0]);
  }
}

TEST_CASE("scaling window on a synthetic step") {
  auto points = step_points();
  ScalingWindow w = estimate_scaling_window(points, 0.1);
  CHECK_FALSE(w.minus_clamped);
  CHECK_FALSE(w.plus_clamped);
  CHECK(w.alpha_minus >= 0.85);
  CHECK(w.alpha_plus <= 1.15);
  CHECK(w.alpha_minus <= w.alpha_plus);

  // delta = 0.5: both edges collapse onto the 50% crossing.
  ScalingWindow mid = estimate_scaling_window(points, 0.5);
  CHECK(mid.width() == doctest::Approx(0.0).epsilon(1e-9));

  // Monotone in delta: larger delta, narrower-or-equal window.
  double prev_width = w.width();
  for (double delta : {0.2, 0.3, 0.4}) {
    double width = estimate_scaling_window(points, delta).width();
    CHECK(width <= prev_width + 1e-12);
    prev_width = width;
  }
}

TEST_CASE("scaling window flags degenerate grids and rejects bad input") {
  std::vector<SweepPoint> all_sat(3);
  for (size_t i = 0; i < 3; ++i) {
    all_sat[i].alpha = 0.5 + 0.5 * double(i);
    all_sat[i].sat_fraction = 1.0;
  }
  ScalingWindow w = estimate_scaling_window(all_sat, 0.1);
  CHECK(w.minus_clamped);  // never drops below 1 - delta
  CHECK(w.plus_clamped);   // never drops below delta

  CHECK_THROWS_AS(estimate_scaling_window({}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_scaling_window(all_sat, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_scaling_window(all_sat, 1.0), std::invalid_argument);
}

TEST_CASE("CSV round-trips every field to 12 significant digits") {
  SweepConfig sat = small_sat_config();
  auto sat_points = run_satisfiability_sweep(sat);
  ParsedCsv sat_back = parse_points_csv(points_csv(sat_points, sat.mode, {}));
  CHECK(sat_back.mode == SweepMode::satisfiability);
  REQUIRE(sat_back.points.size() == sat_points.size());
  for (size_t i = 0; i < sat_points.size(); ++i) {
    CHECK(sat_back.points[i].alpha ==
          doctest::Approx(sat_points[i].alpha).epsilon(1e-12));
    CHECK(sat_back.points[i].m_clauses == sat_points[i].m_clauses);
    CHECK(sat_back.points[i].n_instances == sat_points[i].n_instances);
    CHECK(sat_back.points[i].sat_fraction ==
          doctest::Approx(sat_points[i].sat_fraction).epsilon(1e-12));
    CHECK(sat_back.points[i].work_mean ==
          doctest::Approx(sat_points[i].work_mean).epsilon(1e-12));
    CHECK(sat_back.points[i].work_median ==
          doctest::Approx(sat_points[i].work_median).epsilon(1e-12));
  }

  SweepConfig gibbs = small_gibbs_config();
  auto gibbs_points = run_gibbs_sweep(gibbs);
  ParsedCsv gibbs_back =
      parse_points_csv(points_csv(gibbs_points, gibbs.mode, gibbs.betas));
  CHECK(gibbs_back.mode == SweepMode::gibbs);
  CHECK(gibbs_back.betas == gibbs.betas);
  REQUIRE(gibbs_back.points.size() == gibbs_points.size());
  for (size_t i = 0; i < gibbs_points.size(); ++i) {
    for (size_t b = 0; b < gibbs.betas.size(); ++b) {
      CHECK(gibbs_back.points[i].p_mean[b] ==
            doctest::Approx(gibbs_points[i].p_mean[b]).epsilon(1e-12));
      CHECK(gibbs_back.points[i].p_std[b] ==
            doctest::Approx(gibbs_points[i].p_std[b]).epsilon(1e-12));
      CHECK(gibbs_back.points[i].p_stderr[b] ==
            doctest::Approx(gibbs_points[i].p_stderr[b]).epsilon(1e-12));
    }
    CHECK(gibbs_back.points[i].beta_star_mean ==
          doctest::Approx(gibbs_points[i].beta_star_mean).epsilon(1e-12));
  }
}

TEST_CASE("CSV schema: header-only when empty, fixed column count") {
  std::string empty = points_csv({}, SweepMode::satisfiability, {});
  CHECK(empty == "alpha,m_clauses,n_instances,sat_fraction,work_mean,work_median\n");

  std::vector<double> betas = {1.0, 2.0, 3.0};
  std::string header = points_csv({}, SweepMode::gibbs, betas);
  size_t columns = 1 + std::count(header.begin(), header.end(), ',');
  CHECK(columns == 3 + 3 * betas.size() + 2);
}

TEST_CASE("checkpoints resume to identical results") {
  TempDir dir("gibbssat_test_ckpt");
  SweepConfig config = small_gibbs_config();
  SweepOptions options;
  options.checkpoint_dir = dir.path.string();

  auto first = run_gibbs_sweep(config, options);
  CHECK(fs::exists(dir.path / "checkpoint_d000.json"));

  // Resume with all checkpoints present, then with one removed.
  auto resumed = run_gibbs_sweep(config, options);
  CHECK(points_csv(first, config.mode, config.betas) ==
        points_csv(resumed, config.mode, config.betas));

  fs::remove(dir.path / "checkpoint_d001.json");
  auto partial = run_gibbs_sweep(config, options);
  CHECK(points_csv(first, config.mode, config.betas) ==
        points_csv(partial, config.mode, config.betas));
}

TEST_CASE("checkpoints from another config are refused") {
  TempDir dir("gibbssat_test_ckpt_mismatch");
  SweepConfig config = small_sat_config();
  SweepOptions options;
  options.checkpoint_dir = dir.path.string();
  run_satisfiability_sweep(config, options);

  config.master_seed += 1;
  CHECK_THROWS_AS(run_satisfiability_sweep(config, options), CheckpointMismatch);
}

TEST_CASE("plot scripts reference the CSV and render both panels") {
  std::string sat = plot_script(SweepMode::satisfiability, {}, "fig1.csv");
  CHECK(sat.find("plot 'fig1.csv'") != std::string::npos);
  CHECK(sat.find("fraction satisfiable") != std::string::npos);
  CHECK(sat.find("median work") != std::string::npos);

  std::string gibbs = plot_script(SweepMode::gibbs, {1.0, 2.0, 3.0}, "fig2.csv");
  CHECK(gibbs.find("multiplot") != std::string::npos);
  CHECK(gibbs.find("yerrorlines") != std::string::npos);
  CHECK(gibbs.find("beta*") != std::string::npos);
  // beta* mean column for three betas: 3 leading + 9 + 1 = column 13.
  CHECK(gibbs.find("using 1:13:14") != std::string::npos);
}

TEST_CASE("bundled sweep configs validate against the schema") {
  size_t seen = 0;
  for (const auto& entry :
       fs::directory_iterator(fs::path(GIBBSSAT_SOURCE_DIR) / "configs")) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    std::ifstream in(entry.path());
    REQUIRE(in.good());
    CHECK_NOTHROW(SweepConfig::from_json(nlohmann::json::parse(in)));
  }
  CHECK(seen >= 6);
}

TEST_CASE("window CSV carries the documented header") {
  ScalingWindow w;
  w.delta = 0.1;
  w.alpha_minus = 0.9;
  w.alpha_plus = 1.1;
  std::string csv = window_csv(w);
  CHECK(csv.rfind("delta,alpha_minus,alpha_plus,width,minus_clamped,plus_clamped\n",
                  0) == 0);
  CHECK(csv.find("0.2") != std::string::npos);  // width
}

TEST_SUITE_END();
