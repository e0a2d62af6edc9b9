#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tailgof/grid.hpp"
#include "tailgof/transform.hpp"

namespace tailgof {

struct TestStatistics {
  double kappa = 0.0;   // sup-norm statistic
  double omega2 = 0.0;  // integrated-square statistic
  double a2 = 0.0;      // weighted integrated-square statistic
};

// kappa = max |field|; omega2 = mesh^2 * sum field^2;
// a2 = mesh^2 * sum field^2 / ((x - delta) (y - delta)) over grid nodes
// (nodes exclude delta, so the weights are finite).
TestStatistics test_statistics(const TransformedField& field, const GridSpec& grid);

// Full per-run report: the three statistics, their Monte Carlo p-values, and
// an echo of the configuration that produced them.
struct TestReport {
  TestStatistics stats;
  std::array<double, 3> p_values{};  // order: kappa, omega2, a2
  GridSpec grid;
  int n = 0;
  int k = 0;
  std::string family_name;
  std::vector<double> theta_hat;  // empty when the family was fully specified
  std::array<double, 2> gamma_hats{};
};

// Sorted Monte Carlo samples of the three statistics under a standard Wiener
// sheet on the evaluation grid.
struct BenchmarkTable {
  std::vector<double> kappa, omega2, a2;  // each sorted ascending
  int path_count = 0;
  std::string fingerprint;
  std::uint64_t seed = 0;
};

// Per-path observer used by diagnostics; receives the node-value field of
// each simulated sheet in path order (forces sequential simulation).
using PathObserver = std::function<void(int path, const Eigen::MatrixXd& field)>;

// Simulates `paths` independent standard Wiener sheets on the evaluation
// grid (i.i.d. centered Gaussian cell increments with variance equal to the
// cell area, prefix-summed to node values), computes the three statistics on
// each, and returns individually sorted tables. Paths use counter-derived
// seed streams indexed by path, so the result is independent of the worker
// count.
BenchmarkTable wiener_benchmark(const GridSpec& grid, int paths, std::uint64_t seed,
                                int workers = 1, const PathObserver* observer = nullptr);

// Monte Carlo p-value with +1 smoothing: (1 + #{table >= stat}) / (N + 1).
double p_value(double stat, const std::vector<double>& sorted_table);

// Level-alpha critical value: the ceil((1-alpha)(N+1))-th order statistic.
double critical_value(const std::vector<double>& sorted_table, double alpha);

// File format: one header line
//   tailgof-benchmark v1; delta=...; tau=...; cells=...; paths=...; seed=...
// followed by one "kappa,omega2,a2" row per path, each column sorted
// ascending, 17 significant digits.
void write_benchmark(const BenchmarkTable& table, const std::string& path);
BenchmarkTable read_benchmark(const std::string& path);

// Fails with the benchmark-mismatch error when the table's fingerprint does
// not match the grid's.
void check_benchmark(const BenchmarkTable& table, const GridSpec& grid);

}  // namespace tailgof
