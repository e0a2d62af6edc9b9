// Acceptance suite: one numbered check per line, [PASS]/[FAIL] prefix, exit
// status 0 only when every check passes. Tolerances are pinned as named
// constants next to each check.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tailgof/datagen.hpp"
#include "tailgof/empirical.hpp"
#include "tailgof/errors.hpp"
#include "tailgof/marginals.hpp"
#include "tailgof/pipeline.hpp"
#include "tailgof/rng.hpp"
#include "tailgof/stats_bench.hpp"
#include "tailgof/tail_models.hpp"
#include "tailgof/transform.hpp"

namespace {

bool g_all_ok = true;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ": " << detail << std::endl;
  if (!ok) g_all_ok = false;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Richardson-extrapolated central difference.
double fd(const std::function<double(double)>& f, double x, double h) {
  const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

double quad_rect(const std::function<double(double, double)>& f, double x_lo, double x_hi,
                 double y_lo, double y_hi, int cells) {
  const double hx = (x_hi - x_lo) / cells;
  const double hy = (y_hi - y_lo) / cells;
  double sum = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double x = x_lo + (i + 0.5) * hx;
    for (int j = 0; j < cells; ++j) sum += f(x, y_lo + (j + 0.5) * hy);
  }
  return sum * hx * hy;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct StudyOutcome {
  std::array<double, 3> rates{};
  std::array<double, 3> ks{};
  int failures = 0;
};

StudyOutcome run_study(int model, bool alternative, const tailgof::GridSpec& grid,
                       const std::string& bench_path, const std::string& out_dir) {
  tailgof::ReproduceConfig cfg;
  cfg.model = model;
  cfg.alternative = alternative;
  cfg.replications = 0;  // defaults: 300 null, 100 alternative
  cfg.n = 1500;
  cfg.k = 250;
  cfg.grid = grid;
  cfg.seed = 20260817;
  cfg.bench_seed = 424243;
  cfg.bench_paths = 10000;
  cfg.benchmark_path = bench_path;
  cfg.out_dir = out_dir;
  cfg.workers = 1;
  const tailgof::ReproduceSummary s = tailgof::run_reproduce(cfg);
  return {s.rates, s.ks, s.failures};
}

}  // namespace

int main() {
  const tailgof::GridSpec grid;  // default geometry throughout
  const auto work = std::filesystem::temp_directory_path() / "tailgof_acceptance";
  std::filesystem::remove_all(work);
  std::filesystem::create_directories(work);
  const std::string bench_path = (work / "benchmark.csv").string();

  // ---- shared 10k-path benchmark, instrumented for check 6 -----------------
  const int kBenchPaths = 10000;
  const std::uint64_t kBenchSeed = 424243;
  const int top = grid.eval_cells - 1;              // node at (tau, tau)
  const int half = grid.eval_cells / 2 - 1;         // node at (0.501, 0.501)
  Eigen::MatrixXd mean_sum = Eigen::MatrixXd::Zero(grid.eval_cells, grid.eval_cells);
  double sum_top_sq = 0.0, sum_half_sq = 0.0, sum_cross = 0.0;
  double sum_top = 0.0, sum_half = 0.0;
  tailgof::PathObserver observer = [&](int, const Eigen::MatrixXd& field) {
    mean_sum += field;
    const double t = field(top, top);
    const double h = field(half, half);
    sum_top_sq += t * t;
    sum_half_sq += h * h;
    sum_cross += t * h;
    sum_top += t;
    sum_half += h;
  };
  const tailgof::BenchmarkTable bench =
      tailgof::wiener_benchmark(grid, kBenchPaths, kBenchSeed, 1, &observer);
  tailgof::write_benchmark(bench, bench_path);

  // ---- checks 1, 2, 4: null studies -----------------------------------------
  const double kRateLo = 0.015, kRateHi = 0.11;  // band for the 5%-level rates
  const double kKsMax = 0.12;
  std::array<StudyOutcome, 3> null_out;
  for (int model = 1; model <= 3; ++model) {
    null_out[model - 1] = run_study(model, false, grid, bench_path,
                                    (work / ("null_m" + std::to_string(model))).string());
  }
  {
    const auto& r = null_out[0].rates;
    const bool ok = r[0] >= kRateLo && r[0] <= kRateHi && r[1] >= kRateLo && r[1] <= kRateHi &&
                    r[2] >= kRateLo && r[2] <= kRateHi;
    report("AC1", ok,
           "model-1 null rejection rates in [" + fmt(kRateLo) + ", " + fmt(kRateHi) +
               "] at 300 replications: kappa " + fmt(r[0]) + ", omega2 " + fmt(r[1]) + ", a2 " +
               fmt(r[2]) + " (" + std::to_string(null_out[0].failures) + " failures)");
  }
  {
    bool ok = true;
    std::string detail;
    for (int model = 2; model <= 3; ++model) {
      const auto& r = null_out[model - 1].rates;
      for (double v : r) ok = ok && v >= kRateLo && v <= kRateHi;
      detail += "model-" + std::to_string(model) + " (kappa " + fmt(r[0]) + ", omega2 " +
                fmt(r[1]) + ", a2 " + fmt(r[2]) + ") ";
    }
    report("AC2", ok, "model-2/3 null rejection rates in the same band: " + detail);
  }

  // ---- check 3: power under the alternatives --------------------------------
  {
    const double kPowerMin = 0.85;
    bool ok = true;
    std::string detail;
    for (int model = 1; model <= 3; ++model) {
      const StudyOutcome alt = run_study(model, true, grid, bench_path,
                                         (work / ("alt_m" + std::to_string(model))).string());
      for (double v : alt.rates) ok = ok && v >= kPowerMin;
      detail += "model-" + std::to_string(model) + " (kappa " + fmt(alt.rates[0]) + ", omega2 " +
                fmt(alt.rates[1]) + ", a2 " + fmt(alt.rates[2]) + ") ";
    }
    report("AC3", ok, "alternative rejection rates >= " + fmt(kPowerMin) +
                          " at 100 replications for every statistic: " + detail);
  }

  // ---- check 4: distributional match against the benchmark ------------------
  {
    bool ok = true;
    std::string detail;
    for (int model = 1; model <= 3; ++model) {
      const auto& ks = null_out[model - 1].ks;
      for (double v : ks) ok = ok && v <= kKsMax;
      detail += "model-" + std::to_string(model) + " (" + fmt(ks[0]) + ", " + fmt(ks[1]) + ", " +
                fmt(ks[2]) + ") ";
    }
    report("AC4", ok,
           "Kolmogorov distance of null statistics to the benchmark <= " + fmt(kKsMax) + ": " +
               detail);
  }

  // ---- check 5: the transform annihilates every score direction -------------
  {
    const double kResidualMax = 5e-2;   // at the default grid
    const double kRefineMin = 1.8;      // improvement when both meshes halve
    const std::array<double, 2> gammas{0.9, 1.15};
    tailgof::GridSpec fine = grid;
    fine.eval_cells = 2 * grid.eval_cells;
    fine.integ_cells = 2 * grid.integ_cells;
    bool ok = true;
    std::string detail;
    double worst_residual = 0.0, worst_factor = std::numeric_limits<double>::infinity();
    for (const auto& fam :
         {tailgof::TailCopulaFamily::logistic(0.5), tailgof::TailCopulaFamily::scaled_model1(0.75),
          tailgof::TailCopulaFamily::fixed_logistic_half()}) {
      const int n_scores = 6 + fam.dim();
      for (int j = 0; j < n_scores; ++j) {
        const auto density = [&](double s, double t) {
          std::vector<double> q(static_cast<std::size_t>(n_scores));
          tailgof::score_vector(fam, gammas[0], gammas[1], s, t, q);
          return q[static_cast<std::size_t>(j)] * fam.density(s, t);
        };
        const double coarse_res =
            tailgof::transform_field_smooth(density, fam, gammas, grid).values.cwiseAbs().maxCoeff();
        const double fine_res =
            tailgof::transform_field_smooth(density, fam, gammas, fine).values.cwiseAbs().maxCoeff();
        const double factor = fine_res > 0.0 ? coarse_res / fine_res
                                             : std::numeric_limits<double>::infinity();
        worst_residual = std::max(worst_residual, coarse_res);
        worst_factor = std::min(worst_factor, factor);
        if (!(coarse_res <= kResidualMax && factor >= kRefineMin)) {
          ok = false;
          detail += fam.name() + "#" + std::to_string(j + 1) + " residual " + fmt(coarse_res) +
                    " factor " + fmt(factor) + "; ";
        }
      }
    }
    report("AC5", ok,
           "score-direction densities annihilated for every component of every family: worst "
           "residual " +
               fmt(worst_residual) + " (max " + fmt(kResidualMax) + "), worst refinement factor " +
               fmt(worst_factor) + " (min " + fmt(kRefineMin) + ") " + detail);
  }

  // ---- check 6: the simulated sheet has Wiener moments ----------------------
  {
    const double kVarTol = 0.05;   // relative, at the top corner
    const double kCovTol = 0.05;   // relative, overlap of the two square regions
    const double paths = static_cast<double>(kBenchPaths);
    const Eigen::MatrixXd means = mean_sum / paths;
    const double mean_bound = 4.0 / std::sqrt(paths);
    const double max_mean = means.cwiseAbs().maxCoeff();

    const double var_top = sum_top_sq / paths - (sum_top / paths) * (sum_top / paths);
    const double span = grid.tau - grid.delta;
    const double var_expect = span * span;  // area of [delta,tau]^2 per axis pair

    const double cov = sum_cross / paths - (sum_top / paths) * (sum_half / paths);
    const double x_half = grid.delta + (half + 1) * grid.eval_mesh();
    const double cov_expect = (x_half - grid.delta) * (x_half - grid.delta);  // 0.25

    const bool ok = max_mean <= mean_bound && std::abs(var_top - var_expect) <= kVarTol * var_expect &&
                    std::abs(cov - cov_expect) <= kCovTol * cov_expect;
    report("AC6", ok,
           "Wiener-sheet sanity over " + std::to_string(kBenchPaths) + " paths: max node mean " +
               fmt(max_mean) + " (bound " + fmt(mean_bound) + "), corner variance " +
               fmt(var_top) + " (expect " + fmt(var_expect) + " +-5%), overlap covariance " +
               fmt(cov) + " (expect " + fmt(cov_expect) + " +-5%)");
  }

  // ---- check 7: independent oracles for the estimating pieces ---------------
  {
    bool ok = true;
    std::string detail;

    // empirical tail copula vs brute-force counting, 100 random configurations
    tailgof::Engine eng(106);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      const int n = 1 + static_cast<int>(eng.uniform() * 400);
      const int k = 1 + static_cast<int>(eng.uniform() * n);
      tailgof::StandardizedSample s;
      s.points.resize(static_cast<std::size_t>(n));
      for (auto& p : s.points) {
        p[0] = 3.0 * eng.uniform();
        p[1] = 3.0 * eng.uniform();
      }
      const double x = 3.2 * eng.uniform();
      const double y = 3.2 * eng.uniform();
      long count = 0;
      for (const auto& p : s.points)
        if (p[0] <= x && p[1] <= y) ++count;
      const double expected = static_cast<double>(count) / k;
      if (tailgof::empirical_tail_copula(s, k, x, y) != expected) {
        ok = false;
        detail += "counting mismatch at trial " + std::to_string(trial) + "; ";
      }
    }

    // rectangle masses vs 2-D midpoint quadrature of the density
    const double kQuadTol = 1e-4;
    const tailgof::Rectangle rects[] = {{0.2, 1.1, 0.3, 0.9}, {0.05, 1.8, 0.5, 1.5}};
    for (const auto& fam :
         {tailgof::TailCopulaFamily::logistic(0.35), tailgof::TailCopulaFamily::logistic(0.7),
          tailgof::TailCopulaFamily::scaled_model1(0.6),
          tailgof::TailCopulaFamily::fixed_logistic_half()}) {
      for (const auto& rect : rects) {
        const double quad = quad_rect([&](double x, double y) { return fam.density(x, y); },
                                      rect.x_lo, rect.x_hi, rect.y_lo, rect.y_hi, 500);
        const double err = std::abs(fam.rectangle_mass(rect) - quad);
        if (err > kQuadTol) {
          ok = false;
          detail += fam.name() + " rectangle error " + fmt(err) + "; ";
        }
      }
    }

    // closed-form derivatives vs finite differences, relative error <= 1e-5
    const double kFdTol = 1e-5;
    double worst_fd = 0.0;
    for (const auto& fam :
         {tailgof::TailCopulaFamily::logistic(0.35), tailgof::TailCopulaFamily::logistic(0.7),
          tailgof::TailCopulaFamily::scaled_model1(0.6),
          tailgof::TailCopulaFamily::fixed_logistic_half()}) {
      std::vector<double> rho_theta(static_cast<std::size_t>(fam.dim()));
      for (double x : {0.2, 0.7, 1.4})
        for (double y : {0.3, 1.0, 1.6}) {
          const auto grad = fam.partials(x, y);
          const double ref1 = fd([&](double u) { return fam.value(u, y); }, x, 1e-4);
          const double ref2 = fd([&](double v) { return fam.value(x, v); }, y, 1e-4);
          worst_fd = std::max(worst_fd, std::abs(grad[0] - ref1) / std::max(1.0, std::abs(ref1)));
          worst_fd = std::max(worst_fd, std::abs(grad[1] - ref2) / std::max(1.0, std::abs(ref2)));
          double rho1 = 0.0, rho2 = 0.0;
          fam.log_density_grads(x, y, rho1, rho2, rho_theta);
          const double lref1 = fd([&](double u) { return std::log(fam.density(u, y)); }, x, 1e-4);
          const double lref2 = fd([&](double v) { return std::log(fam.density(x, v)); }, y, 1e-4);
          worst_fd = std::max(worst_fd, std::abs(rho1 - lref1) / std::max(1.0, std::abs(lref1)));
          worst_fd = std::max(worst_fd, std::abs(rho2 - lref2) / std::max(1.0, std::abs(lref2)));
        }
    }
    if (worst_fd > kFdTol) {
      ok = false;
      detail += "derivative relative error " + fmt(worst_fd) + "; ";
    }
    report("AC7", ok,
           "estimating pieces agree with independent oracles (counting exact, rectangle "
           "quadrature <= " +
               fmt(kQuadTol) + ", derivative FD <= " + fmt(kFdTol) + ", worst " + fmt(worst_fd) +
               ") " + detail);
  }

  // ---- check 8: estimator round trips ---------------------------------------
  {
    bool ok = true;
    std::string detail;
    const double kThetaTol = 1e-4;
    // forward moment -> single atom with that exact moment -> estimate
    for (double theta : {0.15, 0.3, 0.5, 0.7, 0.9}) {
      const double m = tailgof::unit_square_moment(tailgof::TailCopulaFamily::logistic(theta));
      tailgof::StandardizedSample s;
      s.points = {{0.0, 1.0 - m}};
      const double est =
          tailgof::estimate_theta_mom(s, 1, tailgof::family_id::logistic).theta_hat.at(0);
      if (std::abs(est - theta) > kThetaTol) {
        ok = false;
        detail += "logistic " + fmt(theta) + " -> " + fmt(est) + "; ";
      }
    }
    for (double psi : {0.2, 0.5, 0.85}) {
      const double m = tailgof::unit_square_moment(tailgof::TailCopulaFamily::scaled_model1(psi));
      tailgof::StandardizedSample s;
      s.points = {{0.0, 1.0 - m}};
      const double est =
          tailgof::estimate_theta_mom(s, 1, tailgof::family_id::scaled_model1).theta_hat.at(0);
      if (std::abs(est - psi) > kThetaTol) {
        ok = false;
        detail += "scale " + fmt(psi) + " -> " + fmt(est) + "; ";
      }
    }

    // marginal fit on a standard Pareto sample: gamma = 1
    const double kGammaTol = 0.1;
    tailgof::Engine eng(2);
    std::vector<double> pareto(100000);
    for (double& v : pareto) v = 1.0 / eng.uniform();
    const tailgof::MarginalFit fit = tailgof::fit_marginal(pareto, 1000);
    if (std::abs(fit.gamma_hat - 1.0) > kGammaTol) {
      ok = false;
      detail += "pareto gamma_hat " + fmt(fit.gamma_hat) + "; ";
    }
    report("AC8", ok,
           "moment estimators invert exact forward moments to " + fmt(kThetaTol) +
               " and recover the Pareto index to " + fmt(kGammaTol) + " (gamma_hat " +
               fmt(fit.gamma_hat) + ") " + detail);
  }

  // ---- check 9: replication outputs are worker-count invariant --------------
  {
    tailgof::ReproduceConfig cfg;
    cfg.model = 3;
    cfg.alternative = false;
    cfg.replications = 8;
    cfg.n = 600;
    cfg.k = 100;
    cfg.grid = grid;
    cfg.seed = 99;
    cfg.benchmark_path = bench_path;  // reuse the shared table
    cfg.workers = 1;
    cfg.out_dir = (work / "det_w1").string();
    tailgof::run_reproduce(cfg);
    cfg.workers = 3;
    cfg.out_dir = (work / "det_w3").string();
    tailgof::run_reproduce(cfg);
    bool ok = true;
    std::string detail;
    for (const char* name :
         {"summary.csv", "rates.csv", "ppplot_kappa.csv", "ppplot_omega2.csv", "ppplot_a2.csv"}) {
      const std::string a = slurp(work / "det_w1" / name);
      const std::string b = slurp(work / "det_w3" / name);
      if (a.empty() || a != b) {
        ok = false;
        detail += std::string(name) + " differs; ";
      }
    }
    report("AC9", ok, "replication summary files byte-identical for 1 vs 3 workers " + detail);
  }

  std::cout << (g_all_ok ? "acceptance: all checks passed" : "acceptance: FAILURES above")
            << std::endl;
  return g_all_ok ? 0 : 1;
}
