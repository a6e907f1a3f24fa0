// gibbssat: random k-SAT phase-transition experiments and exact Gibbs-state
// analysis from the command line. See README.md for the full tour.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gibbssat/dimacs.hpp"
#include "gibbssat/experiments.hpp"
#include "gibbssat/gibbs.hpp"
#include "gibbssat/ising.hpp"
#include "gibbssat/parallel.hpp"
#include "gibbssat/solver.hpp"

namespace {

using namespace gibbssat;

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("GIBBSSAT_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<unsigned>(v);
  }
  return resolve_thread_count(0);
}

void write_text(const std::string& content, const std::string& path) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string witness_line(const Assignment& a) {
  std::string line = "v";
  for (size_t v = 0; v < a.size(); ++v) {
    line += ' ';
    if (!a[v]) line += '-';
    line += std::to_string(v + 1);
  }
  line += " 0";
  return line;
}

void print_work(const WorkStats& work) {
  std::cout << "c decisions=" << work.decisions
            << " propagations=" << work.propagations
            << " conflicts=" << work.conflicts << " wall=" << work.wall_seconds
            << "s\n";
}

struct GenArgs {
  uint32_t n_vars = 0;
  uint32_t k = 3;
  uint64_t seed = 1;
  int64_t clauses = -1;
  double alpha = -1.0;
  std::string out = "-";
};

struct FileArgs {
  std::string in;
  std::string out = "-";
  std::string solver = "auto";
};

struct GibbsArgs {
  std::string in;
  std::vector<double> betas{1.0, 2.0, 3.0};
  double threshold = 0.9;
  std::string json_out;
  unsigned threads = 0;
};

struct SweepArgs {
  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
};

struct WindowArgs {
  std::string csv;
  double delta = 0.1;
  std::string out;
};

struct PlotArgs {
  std::string csv;
  std::string out;
};

void cmd_gen(const GenArgs& args, bool have_clauses) {
  uint32_t m = have_clauses
                   ? static_cast<uint32_t>(args.clauses)
                   : static_cast<uint32_t>(std::lround(args.alpha * args.n_vars));
  CnfFormula f = generate_instance(args.n_vars, m, args.k, args.seed);
  write_text(write_dimacs(f), args.out);
  std::cerr << "generated k=" << args.k << " N=" << f.n_vars() << " M=" << m
            << " alpha=" << f.density() << " seed=" << args.seed << "\n";
}

void cmd_solve(const FileArgs& args) {
  CnfFormula f = parse_dimacs_file(args.in);
  SatResult r;
  if (args.solver == "2sat" || (args.solver == "auto" && f.k() == 2))
    r = solve_2sat(f);
  else
    r = solve_dpll(f);
  std::cout << (r.satisfiable ? "s SATISFIABLE\n" : "s UNSATISFIABLE\n");
  if (r.witness) std::cout << witness_line(*r.witness) << "\n";
  print_work(r.work);
}

void cmd_embed(const FileArgs& args) {
  CnfFormula f = parse_dimacs_file(args.in);
  write_text(ising_to_json(embed(f)).dump(2) + "\n", args.out);
}

void cmd_gibbs(const GibbsArgs& args) {
  CnfFormula f = parse_dimacs_file(args.in);
  EnergyHistogram hist =
      enumerate_spectrum(f, resolve_threads(args.threads));
  std::cout << "n_vars " << f.n_vars() << "\n";
  std::cout << "m_clauses " << f.num_clauses() << "\n";
  std::cout << "lambda_min " << hist.lambda_min() << "\n";
  std::cout << "degeneracy " << hist.degeneracy() << "\n";
  for (double beta : args.betas) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "p(beta=%g) %.12g", beta,
                  ground_occupancy(hist, beta));
    std::cout << buf << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "beta_star %.12g (threshold %g)",
                min_beta_for_occupancy(hist, args.threshold), args.threshold);
  std::cout << buf << "\n";
  if (!args.json_out.empty())
    write_text(histogram_to_json(hist).dump() + "\n", args.json_out);
}

void cmd_sweep(const SweepArgs& args) {
  std::ifstream in(args.config_path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open config '" + args.config_path + "'");
  SweepConfig config;
  try {
    nlohmann::json doc = nlohmann::json::parse(in);
    config = SweepConfig::from_json(doc);
  } catch (const nlohmann::json::exception& err) {
    throw CLI::ValidationError("config", err.what());
  } catch (const std::invalid_argument& err) {
    throw CLI::ValidationError("config", err.what());
  }

  std::filesystem::create_directories(args.out_dir);
  SweepOptions options;
  options.threads = resolve_threads(args.threads);
  options.checkpoint_dir = args.out_dir;
  size_t n_densities = config.densities.size();
  options.on_point = [n_densities](size_t d, const SweepPoint& point) {
    std::cerr << "[" << (d + 1) << "/" << n_densities << "] alpha=" << point.alpha;
    if (!point.p_mean.empty())
      std::cerr << " p_mean[0]=" << point.p_mean.front()
                << " beta*=" << point.beta_star_mean;
    else
      std::cerr << " sat_fraction=" << point.sat_fraction
                << " work_median=" << point.work_median;
    std::cerr << "\n";
  };

  std::vector<SweepPoint> points = config.mode == SweepMode::satisfiability
                                       ? run_satisfiability_sweep(config, options)
                                       : run_gibbs_sweep(config, options);

  std::string stem = std::string(config.mode == SweepMode::satisfiability
                                     ? "satisfiability"
                                     : "gibbs") +
                     "_k" + std::to_string(config.k) + "_n" +
                     std::to_string(config.n_vars);
  std::string csv_name = stem + ".csv";
  write_points_csv(points, config.mode, config.betas,
                   args.out_dir + "/" + csv_name);
  write_plot_script(config.mode, config.betas, csv_name,
                    args.out_dir + "/" + stem + ".gp");
  std::cout << args.out_dir << "/" << csv_name << "\n";
}

void cmd_window(const WindowArgs& args) {
  ParsedCsv parsed = parse_points_csv_file(args.csv);
  if (parsed.mode != SweepMode::satisfiability)
    throw std::runtime_error("window needs a satisfiability sweep CSV");
  ScalingWindow window = estimate_scaling_window(parsed.points, args.delta);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "delta %.12g\nalpha_minus %.12g\nalpha_plus %.12g\nwidth %.12g\n",
                window.delta, window.alpha_minus, window.alpha_plus,
                window.width());
  std::cout << buf;
  std::cout << "clamped "
            << (window.minus_clamped && window.plus_clamped ? "both"
                : window.minus_clamped                      ? "minus"
                : window.plus_clamped                       ? "plus"
                                                            : "none")
            << "\n";
  if (!args.out.empty()) write_window_csv(window, args.out);
}

void cmd_plot(const PlotArgs& args) {
  ParsedCsv parsed = parse_points_csv_file(args.csv);
  std::string csv_name = std::filesystem::path(args.csv).filename().string();
  std::string out = args.out;
  if (out.empty())
    out = (std::filesystem::path(args.csv).parent_path() /
           (std::filesystem::path(args.csv).stem().string() + ".gp"))
              .string();
  write_plot_script(parsed.mode, parsed.betas, csv_name, out);
  std::cout << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random k-SAT phase-transition experiments and exact "
               "Gibbs-state analysis"};
  app.require_subcommand(1);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a random k-SAT instance");
  gen->add_option("--vars", gen_args.n_vars, "variable count")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* clauses_opt = gen->add_option("--clauses", gen_args.clauses, "clause count")
                          ->check(CLI::NonNegativeNumber);
  auto* alpha_opt = gen->add_option(
      "--alpha", gen_args.alpha, "clause density; M = round(alpha * N)");
  alpha_opt->check(CLI::NonNegativeNumber);
  clauses_opt->excludes(alpha_opt);
  alpha_opt->excludes(clauses_opt);
  gen->add_option("--k", gen_args.k, "clause width (default 3)")
      ->check(CLI::Range(2u, 30u));
  gen->add_option("--seed", gen_args.seed, "generator seed (default 1)");
  gen->add_option("--out", gen_args.out, "output DIMACS path, '-' = stdout");
  gen->callback([&] {
    if (clauses_opt->count() + alpha_opt->count() != 1)
      throw CLI::RequiredError("exactly one of --clauses / --alpha");
    cmd_gen(gen_args, clauses_opt->count() == 1);
  });

  FileArgs solve_args;
  auto* solve = app.add_subcommand("solve", "decide satisfiability");
  solve->add_option("--in", solve_args.in, "DIMACS input")->required();
  solve->add_option("--solver", solve_args.solver, "auto | 2sat | dpll")
      ->check(CLI::IsMember({"auto", "2sat", "dpll"}));
  solve->callback([&] { cmd_solve(solve_args); });

  FileArgs embed_args;
  auto* embed = app.add_subcommand(
      "embed", "map a CNF instance to its penalty Hamiltonian (JSON)");
  embed->add_option("--in", embed_args.in, "DIMACS input")->required();
  embed->add_option("--out", embed_args.out, "output path, '-' = stdout");
  embed->callback([&] { cmd_embed(embed_args); });

  GibbsArgs gibbs_args;
  auto* gibbs = app.add_subcommand(
      "gibbs", "exact spectrum, ground occupancy and minimal beta");
  gibbs->add_option("--in", gibbs_args.in, "DIMACS input")->required();
  gibbs->add_option("--beta", gibbs_args.betas,
                    "inverse temperatures (default 1 2 3)");
  gibbs->add_option("--threshold", gibbs_args.threshold,
                    "occupancy target for beta* (default 0.9)");
  gibbs->add_option("--json", gibbs_args.json_out, "dump histogram JSON here");
  gibbs->add_option("--threads", gibbs_args.threads,
                    "worker threads (default: GIBBSSAT_THREADS or hardware)");
  gibbs->callback([&] { cmd_gibbs(gibbs_args); });

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand(
      "sweep", "run a density sweep from a JSON config; resumable");
  sweep->add_option("--config", sweep_args.config_path, "sweep config JSON")
      ->required();
  sweep->add_option("--out-dir", sweep_args.out_dir,
                    "output directory (CSV, plot script, checkpoints)")
      ->required();
  sweep->add_option("--threads", sweep_args.threads,
                    "worker threads (default: GIBBSSAT_THREADS or hardware)");
  sweep->callback([&] { cmd_sweep(sweep_args); });

  WindowArgs window_args;
  auto* window = app.add_subcommand(
      "window", "finite-size scaling window from a satisfiability CSV");
  window->add_option("--csv", window_args.csv, "satisfiability sweep CSV")
      ->required();
  window->add_option("--delta", window_args.delta,
                     "probability parameter in (0,1), default 0.1");
  window->add_option("--out", window_args.out, "also write a window CSV here");
  window->callback([&] { cmd_window(window_args); });

  PlotArgs plot_args;
  auto* plot =
      app.add_subcommand("plot", "regenerate the gnuplot script for a CSV");
  plot->add_option("--csv", plot_args.csv, "sweep CSV")->required();
  plot->add_option("--out", plot_args.out,
                   "script path (default: CSV path with .gp)");
  plot->callback([&] { cmd_plot(plot_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
