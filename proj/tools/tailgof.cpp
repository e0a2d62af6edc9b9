#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tailgof/datagen.hpp"
#include "tailgof/errors.hpp"
#include "tailgof/pipeline.hpp"
#include "tailgof/rng.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::string input;
  std::string output;
  std::string field_csv;
  std::string family;
  double theta = std::numeric_limits<double>::quiet_NaN();
  int k = 250;
  int n = 1500;
  double delta = 0.001;
  double tau = 1.001;
  double T = 2.0;
  int grid_cells = 200;
  int integ_cells = 400;
  std::string benchmark;
  int paths = 10000;
  std::uint64_t bench_seed = 424243;
  std::uint64_t seed = 20260817;
  int workers = 1;
  int model = 1;
  std::string mode = "null";
  int replications = 0;
  std::string generator;
  double p = 0.75;
  double lambda = 0.95;
  double mu = 0.65;
  double phi = 0.25;
  double theta_dep = 0.25;
  std::string out_dir = ".";
};

void apply_config_file(Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) tailgof::fail(tailgof::errc::config, "cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    tailgof::fail(tailgof::errc::config, "config file is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) tailgof::fail(tailgof::errc::config, "config file must hold a JSON object");
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "input") opt.input = val.get<std::string>();
      else if (key == "output") opt.output = val.get<std::string>();
      else if (key == "field_csv") opt.field_csv = val.get<std::string>();
      else if (key == "family") opt.family = val.get<std::string>();
      else if (key == "theta") opt.theta = val.get<double>();
      else if (key == "k") opt.k = val.get<int>();
      else if (key == "n") opt.n = val.get<int>();
      else if (key == "delta") opt.delta = val.get<double>();
      else if (key == "tau") opt.tau = val.get<double>();
      else if (key == "T") opt.T = val.get<double>();
      else if (key == "grid_cells") opt.grid_cells = val.get<int>();
      else if (key == "integ_cells") opt.integ_cells = val.get<int>();
      else if (key == "benchmark") opt.benchmark = val.get<std::string>();
      else if (key == "paths") opt.paths = val.get<int>();
      else if (key == "bench_seed") opt.bench_seed = val.get<std::uint64_t>();
      else if (key == "seed") opt.seed = val.get<std::uint64_t>();
      else if (key == "workers") opt.workers = val.get<int>();
      else if (key == "model") opt.model = val.get<int>();
      else if (key == "mode") opt.mode = val.get<std::string>();
      else if (key == "replications") opt.replications = val.get<int>();
      else if (key == "generator") opt.generator = val.get<std::string>();
      else if (key == "p") opt.p = val.get<double>();
      else if (key == "lambda") opt.lambda = val.get<double>();
      else if (key == "mu") opt.mu = val.get<double>();
      else if (key == "phi") opt.phi = val.get<double>();
      else if (key == "theta_dep") opt.theta_dep = val.get<double>();
      else if (key == "out_dir") opt.out_dir = val.get<std::string>();
      else tailgof::fail(tailgof::errc::config, "unknown config key: " + key);
    }
  } catch (const json::exception& e) {
    tailgof::fail(tailgof::errc::config, "bad config value: " + std::string(e.what()));
  }
}

tailgof::GridSpec grid_from(const Options& opt) {
  tailgof::GridSpec grid;
  grid.delta = opt.delta;
  grid.tau = opt.tau;
  grid.T = opt.T;
  grid.eval_cells = opt.grid_cells;
  grid.integ_cells = opt.integ_cells;
  grid.validate();
  return grid;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_test(const Options& opt) {
  const tailgof::GridSpec grid = grid_from(opt);
  if (opt.input.empty()) {
    tailgof::fail(tailgof::errc::config, "test requires an input data file (--input)");
  }
  if (opt.family.empty()) {
    tailgof::fail(tailgof::errc::config,
                  "test requires --family (logistic | scaled_model1 | fixed_logistic_half)");
  }
  if (opt.benchmark.empty()) {
    tailgof::fail(tailgof::errc::config,
                  "test requires --benchmark (table file; created when missing)");
  }
  const bool theta_given = !std::isnan(opt.theta);
  tailgof::TailCopulaFamily base = tailgof::TailCopulaFamily::fixed_logistic_half();
  bool estimate = false;
  if (opt.family == "logistic") {
    base = tailgof::TailCopulaFamily::logistic(theta_given ? opt.theta : 0.5);
    estimate = !theta_given;
  } else if (opt.family == "scaled_model1") {
    base = tailgof::TailCopulaFamily::scaled_model1(theta_given ? opt.theta : 0.5);
    estimate = !theta_given;
  } else if (opt.family != "fixed_logistic_half") {
    tailgof::fail(tailgof::errc::config, "unknown family: " + opt.family);
  }
  if (theta_given && opt.family == "fixed_logistic_half") {
    tailgof::fail(tailgof::errc::config, "fixed_logistic_half has no free parameter");
  }
  if (theta_given) base = base.as_fixed();

  const tailgof::Sample data = tailgof::read_sample_csv(opt.input);
  const tailgof::BenchmarkTable bench = tailgof::load_or_create_benchmark(
      opt.benchmark, grid, opt.paths, opt.bench_seed, opt.workers);
  tailgof::TransformedField field;
  const tailgof::TestReport report = tailgof::run_single_test(
      data, base, estimate, opt.k, grid, bench, opt.workers, &field);

  json out;
  out["family"] = report.family_name;
  out["n"] = report.n;
  out["k"] = report.k;
  out["grid"] = {{"delta", grid.delta},
                 {"tau", grid.tau},
                 {"T", grid.T},
                 {"eval_cells", grid.eval_cells},
                 {"integ_cells", grid.integ_cells}};
  out["gamma_hats"] = {report.gamma_hats[0], report.gamma_hats[1]};
  out["theta_hat"] = report.theta_hat;
  out["statistics"] = {{"kappa", report.stats.kappa},
                       {"omega2", report.stats.omega2},
                       {"a2", report.stats.a2}};
  out["p_values"] = {{"kappa", report.p_values[0]},
                     {"omega2", report.p_values[1]},
                     {"a2", report.p_values[2]}};
  out["benchmark_paths"] = bench.path_count;
  const std::string text = out.dump(2);
  if (!opt.output.empty()) {
    std::ofstream of(opt.output);
    if (!of) tailgof::fail(tailgof::errc::data, "cannot open output file: " + opt.output);
    of << text << '\n';
    if (!of) tailgof::fail(tailgof::errc::data, "failed writing " + opt.output);
  }
  if (!opt.field_csv.empty()) tailgof::write_field_csv(field, opt.field_csv);

  std::cout << "family: " << report.family_name;
  if (!report.theta_hat.empty()) std::cout << " (theta_hat " << fmt(report.theta_hat[0]) << ")";
  std::cout << "\ngamma_hats: " << fmt(report.gamma_hats[0]) << ' ' << fmt(report.gamma_hats[1])
            << "\nkappa  " << fmt(report.stats.kappa) << "  p " << fmt(report.p_values[0])
            << "\nomega2 " << fmt(report.stats.omega2) << "  p " << fmt(report.p_values[1])
            << "\na2     " << fmt(report.stats.a2) << "  p " << fmt(report.p_values[2]) << '\n';
  if (!opt.output.empty()) std::cout << "report: " << opt.output << '\n';
  if (!opt.field_csv.empty()) std::cout << "field: " << opt.field_csv << '\n';
  return 0;
}

int cmd_benchmark(const Options& opt) {
  const tailgof::GridSpec grid = grid_from(opt);
  if (opt.output.empty()) {
    tailgof::fail(tailgof::errc::config, "benchmark requires an output path (--out)");
  }
  const tailgof::BenchmarkTable table =
      tailgof::wiener_benchmark(grid, opt.paths, opt.seed, opt.workers);
  tailgof::write_benchmark(table, opt.output);
  std::cout << "benchmark: " << opt.output << " (" << table.path_count << " paths)\n";
  return 0;
}

int cmd_simulate(const Options& opt) {
  if (opt.generator.empty()) {
    tailgof::fail(tailgof::errc::config, "simulate requires --generator");
  }
  tailgof::GeneratorSpec spec;
  spec.kind = tailgof::parse_generator_kind(opt.generator);
  spec.p = opt.p;
  spec.lambda = opt.lambda;
  spec.mu = opt.mu;
  spec.phi = opt.phi;
  spec.theta_dep = opt.theta_dep;
  const int files = opt.replications > 0 ? opt.replications : 1;
  std::filesystem::create_directories(opt.out_dir);
  for (int i = 0; i < files; ++i) {
    const tailgof::Sample sample = tailgof::generate(
        spec, opt.n, tailgof::substream_seed(opt.seed, static_cast<std::uint64_t>(i)));
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%04d.csv", i + 1);
    tailgof::write_sample_csv(sample, opt.out_dir + "/" + name);
  }
  std::cout << "wrote " << files << " sample file(s) of n=" << opt.n << " to " << opt.out_dir
            << '\n';
  return 0;
}

int cmd_reproduce(const Options& opt) {
  tailgof::ReproduceConfig config;
  config.model = opt.model;
  if (opt.mode == "null") {
    config.alternative = false;
  } else if (opt.mode == "alt" || opt.mode == "alternative") {
    config.alternative = true;
  } else {
    tailgof::fail(tailgof::errc::config, "mode must be 'null' or 'alt'");
  }
  config.replications = opt.replications;
  config.n = opt.n;
  config.k = opt.k;
  config.grid = grid_from(opt);
  config.seed = opt.seed;
  config.bench_seed = opt.bench_seed;
  config.bench_paths = opt.paths;
  config.benchmark_path = opt.benchmark;
  config.out_dir = opt.out_dir;
  config.workers = opt.workers;
  const tailgof::ReproduceSummary summary = tailgof::run_reproduce(config);
  const char* names[3] = {"kappa ", "omega2", "a2    "};
  std::cout << "model " << opt.model << ' ' << (config.alternative ? "alt" : "null") << ", "
            << summary.replications << " replications, " << summary.failures << " failure(s)\n";
  for (int s = 0; s < 3; ++s) {
    std::cout << names[s] << ' ' << summary.rejections[static_cast<std::size_t>(s)] << '/'
              << summary.replications << " rejected (rate "
              << fmt(summary.rates[static_cast<std::size_t>(s)]) << ", ks "
              << fmt(summary.ks[static_cast<std::size_t>(s)]) << ")\n";
  }
  std::cout << "summary: " << summary.summary_path << "\nrates: " << summary.rates_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  // the config file (if any) provides defaults; explicit flags override it
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    try {
      if (arg == "--config" && i + 1 < argc) {
        apply_config_file(opt, argv[i + 1]);
        break;
      }
      if (arg.rfind("--config=", 0) == 0) {
        apply_config_file(opt, arg.substr(9));
        break;
      }
    } catch (const tailgof::error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return e.exit_code();
    }
  }

  CLI::App app{"goodness-of-fit testing for bivariate tail copulas"};
  app.require_subcommand(1);

  auto add_grid = [&opt](CLI::App* cmd) {
    cmd->add_option("--delta", opt.delta, "lower grid corner");
    cmd->add_option("--tau", opt.tau, "evaluation grid upper corner");
    cmd->add_option("--T", opt.T, "integration grid upper corner");
    cmd->add_option("--grid-cells", opt.grid_cells, "evaluation cells per axis");
    cmd->add_option("--integ-cells", opt.integ_cells, "integration cells per axis");
    cmd->add_option("--config", opt.config, "JSON config file (flags override it)");
    cmd->add_option("--workers", opt.workers, "worker threads");
  };

  CLI::App* test = app.add_subcommand("test", "run the goodness-of-fit test on a data file");
  add_grid(test);
  test->add_option("--input", opt.input, "two-column CSV data file");
  test->add_option("--family", opt.family, "logistic | scaled_model1 | fixed_logistic_half");
  test->add_option("--theta", opt.theta, "fix the family parameter (simple-null mode)");
  test->add_option("--k", opt.k, "number of tail order statistics");
  test->add_option("--benchmark", opt.benchmark, "benchmark table file (created when missing)");
  test->add_option("--paths", opt.paths, "benchmark paths when creating the table");
  test->add_option("--bench-seed", opt.bench_seed, "benchmark simulation seed");
  test->add_option("--out", opt.output, "JSON report path");
  test->add_option("--field-csv", opt.field_csv, "also dump the transformed field as CSV");

  CLI::App* bench = app.add_subcommand("benchmark", "simulate a Wiener-sheet benchmark table");
  add_grid(bench);
  bench->add_option("--out", opt.output, "table output path");
  bench->add_option("--paths", opt.paths, "number of simulated paths");
  bench->add_option("--seed", opt.seed, "simulation seed");

  CLI::App* sim = app.add_subcommand("simulate", "generate seeded samples");
  add_grid(sim);
  sim->add_option("--generator", opt.generator,
                  "cauchy_quadrant | model3_null_mixture | model1_alt_mixture | linear_factor | "
                  "asym_logistic | logistic_frechet");
  sim->add_option("--n", opt.n, "sample size per file");
  sim->add_option("--replications", opt.replications, "number of files");
  sim->add_option("--seed", opt.seed, "base seed");
  sim->add_option("--out-dir", opt.out_dir, "output directory");
  sim->add_option("--p", opt.p, "mixing probability");
  sim->add_option("--lambda", opt.lambda, "first factor loading");
  sim->add_option("--mu", opt.mu, "second factor loading");
  sim->add_option("--phi", opt.phi, "asymmetry parameter");
  sim->add_option("--theta-dep", opt.theta_dep, "dependence parameter");

  CLI::App* rep = app.add_subcommand("reproduce", "run a full replication study");
  add_grid(rep);
  rep->add_option("--model", opt.model, "1 | 2 | 3");
  rep->add_option("--mode", opt.mode, "null | alt");
  rep->add_option("--replications", opt.replications, "replication count (0 = default)");
  rep->add_option("--n", opt.n, "sample size");
  rep->add_option("--k", opt.k, "number of tail order statistics");
  rep->add_option("--seed", opt.seed, "base seed");
  rep->add_option("--benchmark", opt.benchmark, "benchmark table file");
  rep->add_option("--paths", opt.paths, "benchmark paths when creating the table");
  rep->add_option("--bench-seed", opt.bench_seed, "benchmark simulation seed");
  rep->add_option("--out-dir", opt.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (test->parsed()) return cmd_test(opt);
    if (bench->parsed()) return cmd_benchmark(opt);
    if (sim->parsed()) return cmd_simulate(opt);
    if (rep->parsed()) return cmd_reproduce(opt);
  } catch (const tailgof::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
