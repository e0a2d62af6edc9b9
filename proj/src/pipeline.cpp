#include "tailgof/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tailgof/empirical.hpp"
#include "tailgof/errors.hpp"
#include "tailgof/parallel.hpp"
#include "tailgof/rng.hpp"

namespace tailgof {

TestReport run_single_test(std::span<const std::array<double, 2>> data,
                           const TailCopulaFamily& base_family, bool estimate_parameters, int k,
                           const GridSpec& grid, const BenchmarkTable& bench, int workers,
                           TransformedField* field_out) {
  grid.validate();
  check_benchmark(bench, grid);
  const int n = static_cast<int>(data.size());
  if (2 * k > n) {
    fail(errc::config, "k too close to n (requires k <= n/2)");
  }
  std::vector<double> xs(static_cast<std::size_t>(n)), ys(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i)][0];
    ys[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i)][1];
  }
  const MarginalFit fit_x = fit_marginal(xs, k);
  const MarginalFit fit_y = fit_marginal(ys, k);
  const StandardizedSample std_sample = standardize(data, fit_x, fit_y);

  TailCopulaFamily family = base_family.as_fixed();
  std::vector<double> theta_hat;
  if (estimate_parameters && base_family.dim() >= 1) {
    const double th = estimate_theta_mom(std_sample, k, base_family.id()).theta_hat.at(0);
    family = base_family.id() == family_id::logistic ? TailCopulaFamily::logistic(th)
                                                     : TailCopulaFamily::scaled_model1(th);
    theta_hat.push_back(th);
  }

  const EmpiricalSignedMeasure measure = build_eta_measure(std_sample, k, family);
  TransformedField field =
      transform_field(measure, family, {fit_x.gamma_hat, fit_y.gamma_hat}, grid, workers);

  TestReport report;
  report.stats = test_statistics(field, grid);
  if (!std::isfinite(report.stats.kappa) || !std::isfinite(report.stats.omega2) ||
      !std::isfinite(report.stats.a2)) {
    fail(errc::numerical, "test statistics are not finite");
  }
  report.p_values = {p_value(report.stats.kappa, bench.kappa),
                     p_value(report.stats.omega2, bench.omega2),
                     p_value(report.stats.a2, bench.a2)};
  report.grid = grid;
  report.n = n;
  report.k = k;
  report.family_name = family.name();
  report.theta_hat = std::move(theta_hat);
  report.gamma_hats = {fit_x.gamma_hat, fit_y.gamma_hat};
  if (field_out) *field_out = std::move(field);
  return report;
}

BenchmarkTable load_or_create_benchmark(const std::string& path, const GridSpec& grid, int paths,
                                        std::uint64_t seed, int workers) {
  if (std::filesystem::exists(path)) {
    BenchmarkTable table = read_benchmark(path);
    check_benchmark(table, grid);
    return table;
  }
  BenchmarkTable table = wiener_benchmark(grid, paths, seed, workers);
  write_benchmark(table, path);
  return table;
}

double ks_distance(std::vector<double> sample, std::vector<double> reference) {
  if (sample.empty() || reference.empty()) fail(errc::config, "ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  std::sort(reference.begin(), reference.end());
  const double na = static_cast<double>(sample.size());
  const double nb = static_cast<double>(reference.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sample.size() && j < reference.size()) {
    const double v = std::min(sample[i], reference[j]);
    while (i < sample.size() && sample[i] <= v) ++i;
    while (j < reference.size() && reference[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  if (i < sample.size()) d = std::max(d, 1.0 - static_cast<double>(i) / na);
  if (j < reference.size()) d = std::max(d, 1.0 - static_cast<double>(j) / nb);
  return d;
}

namespace {

struct RepResult {
  bool ok = false;
  TestStatistics stats;
  std::array<double, 3> p{};
  std::vector<double> theta;
  std::array<double, 2> gammas{};
  std::string error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n') c = ';';
  }
  return s;
}

}  // namespace

ReproduceSummary run_reproduce(const ReproduceConfig& config) {
  if (config.model < 1 || config.model > 3) {
    fail(errc::config, "model must be 1, 2 or 3");
  }
  config.grid.validate();
  if (config.n < 4 || config.k < 2) fail(errc::config, "reproduce needs n >= 4 and k >= 2");
  const int reps =
      config.replications > 0 ? config.replications : (config.alternative ? 100 : 300);

  std::filesystem::create_directories(config.out_dir);
  const std::string bench_path = config.benchmark_path.empty()
                                     ? config.out_dir + "/benchmark.csv"
                                     : config.benchmark_path;
  const BenchmarkTable bench = load_or_create_benchmark(bench_path, config.grid,
                                                        config.bench_paths, config.bench_seed,
                                                        config.workers);

  GeneratorSpec gen;
  TailCopulaFamily base = TailCopulaFamily::fixed_logistic_half();
  bool estimate = false;
  switch (config.model) {
    case 1:
      gen.kind = config.alternative ? generator_kind::model1_alt_mixture
                                    : generator_kind::cauchy_quadrant;
      break;
    case 2:
      gen.kind = config.alternative ? generator_kind::linear_factor
                                    : generator_kind::cauchy_quadrant;
      base = TailCopulaFamily::logistic(0.5);
      estimate = true;
      break;
    default:
      gen.kind = config.alternative ? generator_kind::asym_logistic
                                    : generator_kind::model3_null_mixture;
      base = TailCopulaFamily::scaled_model1(0.5);
      estimate = true;
      break;
  }

  std::vector<RepResult> results(static_cast<std::size_t>(reps));
  parallel_blocks(reps, config.workers, [&](int lo, int hi) {
    for (int r = lo; r < hi; ++r) {
      const Sample data = generate(gen, config.n, substream_seed(config.seed,
                                                                 static_cast<std::uint64_t>(r)));
      RepResult& out = results[static_cast<std::size_t>(r)];
      try {
        const TestReport tr =
            run_single_test(data, base, estimate, config.k, config.grid, bench, 1);
        out.ok = true;
        out.stats = tr.stats;
        out.p = tr.p_values;
        out.theta = tr.theta_hat;
        out.gammas = tr.gamma_hats;
      } catch (const error& e) {
        out.ok = false;
        out.error = e.what();
      }
    }
  });

  ReproduceSummary summary;
  summary.replications = reps;
  std::string first_error;
  for (const RepResult& r : results) {
    if (!r.ok) {
      ++summary.failures;
      if (first_error.empty()) first_error = r.error;
    }
  }
  if (summary.failures * 20 > reps) {
    fail(errc::numerical, "replication failure rate above 5% (" +
                              std::to_string(summary.failures) + " of " + std::to_string(reps) +
                              "); first error: " + first_error);
  }

  std::array<std::vector<double>, 3> values;  // successful statistic values
  for (const RepResult& r : results) {
    if (!r.ok) {
      if (config.alternative) {
        for (int s = 0; s < 3; ++s) ++summary.rejections[static_cast<std::size_t>(s)];
      }
      continue;
    }
    const std::array<double, 3> v{r.stats.kappa, r.stats.omega2, r.stats.a2};
    for (int s = 0; s < 3; ++s) {
      values[static_cast<std::size_t>(s)].push_back(v[static_cast<std::size_t>(s)]);
      if (r.p[static_cast<std::size_t>(s)] <= kDefaultLevel) {
        ++summary.rejections[static_cast<std::size_t>(s)];
      }
    }
  }
  const std::array<const std::vector<double>*, 3> bench_cols{&bench.kappa, &bench.omega2,
                                                             &bench.a2};
  for (int s = 0; s < 3; ++s) {
    summary.rates[static_cast<std::size_t>(s)] =
        static_cast<double>(summary.rejections[static_cast<std::size_t>(s)]) /
        static_cast<double>(reps);
    summary.ks[static_cast<std::size_t>(s)] =
        values[static_cast<std::size_t>(s)].empty()
            ? 1.0
            : ks_distance(values[static_cast<std::size_t>(s)], *bench_cols[static_cast<std::size_t>(s)]);
  }

  // per-replication log
  summary.summary_path = config.out_dir + "/summary.csv";
  {
    std::ofstream out(summary.summary_path);
    if (!out) fail(errc::data, "cannot open output file: " + summary.summary_path);
    out << "rep,status,kappa,omega2,a2,p_kappa,p_omega2,p_a2,theta_hat,gamma1,gamma2,error\n";
    for (int r = 0; r < reps; ++r) {
      const RepResult& res = results[static_cast<std::size_t>(r)];
      out << r << ',';
      if (res.ok) {
        out << "ok," << fmt(res.stats.kappa) << ',' << fmt(res.stats.omega2) << ','
            << fmt(res.stats.a2) << ',' << fmt(res.p[0]) << ',' << fmt(res.p[1]) << ','
            << fmt(res.p[2]) << ',';
        for (std::size_t t = 0; t < res.theta.size(); ++t) {
          if (t) out << ';';
          out << fmt(res.theta[t]);
        }
        out << ',' << fmt(res.gammas[0]) << ',' << fmt(res.gammas[1]) << ",\n";
      } else {
        out << "error,,,,,,,,,," << sanitize(res.error) << '\n';
      }
    }
    if (!out) fail(errc::data, "failed writing " + summary.summary_path);
  }

  // rejection-rate summary
  summary.rates_path = config.out_dir + "/rates.csv";
  {
    std::ofstream out(summary.rates_path);
    if (!out) fail(errc::data, "cannot open output file: " + summary.rates_path);
    out << "statistic,rejections,replications,rate,ks_distance\n";
    const std::array<const char*, 3> names{"kappa", "omega2", "a2"};
    for (int s = 0; s < 3; ++s) {
      out << names[static_cast<std::size_t>(s)] << ','
          << summary.rejections[static_cast<std::size_t>(s)] << ',' << reps << ','
          << fmt(summary.rates[static_cast<std::size_t>(s)]) << ','
          << fmt(summary.ks[static_cast<std::size_t>(s)]) << '\n';
    }
    out << "failures," << summary.failures << ',' << reps << ','
        << fmt(static_cast<double>(summary.failures) / static_cast<double>(reps)) << ",\n";
    if (!out) fail(errc::data, "failed writing " + summary.rates_path);
  }

  // PP-plot data: empirical d.f. of replication values vs benchmark d.f.
  const std::array<const char*, 3> stems{"ppplot_kappa.csv", "ppplot_omega2.csv",
                                         "ppplot_a2.csv"};
  for (int s = 0; s < 3; ++s) {
    const std::string path = config.out_dir + "/" + stems[static_cast<std::size_t>(s)];
    summary.ppplot_paths[static_cast<std::size_t>(s)] = path;
    std::ofstream out(path);
    if (!out) fail(errc::data, "cannot open output file: " + path);
    out << "value,empirical_df,benchmark_df\n";
    std::vector<double> vals = values[static_cast<std::size_t>(s)];
    std::sort(vals.begin(), vals.end());
    const std::vector<double>& col = *bench_cols[static_cast<std::size_t>(s)];
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double emp = static_cast<double>(i + 1) / static_cast<double>(vals.size());
      const auto le = std::upper_bound(col.begin(), col.end(), vals[i]) - col.begin();
      const double ref = static_cast<double>(le) / static_cast<double>(col.size());
      out << fmt(vals[i]) << ',' << fmt(emp) << ',' << fmt(ref) << '\n';
    }
    if (!out) fail(errc::data, "failed writing " + path);
  }
  return summary;
}

}  // namespace tailgof
