#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailgof/datagen.hpp"
#include "tailgof/grid.hpp"
#include "tailgof/marginals.hpp"
#include "tailgof/stats_bench.hpp"
#include "tailgof/tail_models.hpp"
#include "tailgof/transform.hpp"

namespace tailgof {

inline constexpr double kDefaultLevel = 0.05;

// Full single-sample pipeline: marginal fits, standardization, family
// parameter estimation (unless the family is fully specified or
// estimate_parameters is false), signed-measure construction, transform,
// statistics, Monte Carlo p-values. The benchmark fingerprint is checked
// first. With field_out set, the transformed field is copied there.
TestReport run_single_test(std::span<const std::array<double, 2>> data,
                           const TailCopulaFamily& base_family, bool estimate_parameters, int k,
                           const GridSpec& grid, const BenchmarkTable& bench, int workers = 1,
                           TransformedField* field_out = nullptr);

// Loads the benchmark table at `path` if the file exists (fingerprint
// checked), otherwise simulates it and writes it there.
BenchmarkTable load_or_create_benchmark(const std::string& path, const GridSpec& grid, int paths,
                                        std::uint64_t seed, int workers);

// Kolmogorov distance between the empirical distribution functions of two
// samples (neither needs to be sorted).
double ks_distance(std::vector<double> sample, std::vector<double> reference);

struct ReproduceConfig {
  int model = 1;            // 1, 2 or 3
  bool alternative = false; // false: null-hypothesis data, true: alternative
  int replications = 0;     // 0 picks the default: 300 null, 100 alternative
  int n = 1500;
  int k = 250;
  GridSpec grid;
  std::uint64_t seed = 20260817;
  std::uint64_t bench_seed = 424243;
  int bench_paths = 10000;
  std::string benchmark_path;  // empty: <out_dir>/benchmark.csv
  std::string out_dir = ".";
  int workers = 1;
};

struct ReproduceSummary {
  int replications = 0;
  int failures = 0;
  std::array<int, 3> rejections{};    // kappa, omega2, a2
  std::array<double, 3> rates{};
  std::array<double, 3> ks{};         // vs the benchmark tables
  std::string summary_path, rates_path;
  std::array<std::string, 3> ppplot_paths;
};

// Replication study for one model/mode pair: seeded data generation, the full
// pipeline per replication (worker pool over replications, per-replication
// seed streams), rejection counts at the 5% level, PP-plot data against the
// benchmark tables. Failed replications count as rejections under the
// alternative and as recorded errors under the null; a failure rate above 5%
// aborts. Output files are byte-deterministic in (config, seed) regardless
// of the worker count.
ReproduceSummary run_reproduce(const ReproduceConfig& config);

}  // namespace tailgof
