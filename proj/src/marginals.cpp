#include "tailgof/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailgof/errors.hpp"

namespace tailgof {

namespace {
constexpr double kGammaZeroSwitch = 1e-6;
}

MarginalFit fit_marginal(std::span<const double> values, int k) {
  const int n = static_cast<int>(values.size());
  if (k < 2) fail(errc::config, "moment estimator requires k >= 2");
  if (n <= k) fail(errc::config, "moment estimator requires more observations than k");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  const double threshold = sorted[n - k - 1];  // (n-k)-th order statistic
  if (!(threshold > 0.0)) fail(errc::data, "moment estimator requires positive threshold");

  const double log_threshold = std::log(threshold);
  double m1 = 0.0, m2 = 0.0;
  for (int i = n - k; i < n; ++i) {
    double spacing = std::log(sorted[i]) - log_threshold;
    m1 += spacing;
    m2 += spacing * spacing;
  }
  m1 /= k;
  m2 /= k;
  if (m2 <= 0.0) fail(errc::data, "degenerate sample: all top log spacings are zero");

  const double denom = 1.0 - m1 * m1 / m2;
  if (std::abs(denom) < 1e-12)
    fail(errc::data, "degenerate sample: top order statistics are constant multiples");

  const double gamma_minus = 1.0 - 0.5 / denom;
  MarginalFit fit;
  fit.gamma_hat = m1 + gamma_minus;
  fit.b_hat = threshold;
  fit.a_hat = threshold * m1 * (1.0 - gamma_minus);
  fit.k = k;
  if (!(fit.a_hat > 0.0)) fail(errc::data, "degenerate sample: non-positive scale estimate");
  return fit;
}

double standardize_value(double x, const MarginalFit& fit) {
  const double u = (x - fit.b_hat) / fit.a_hat;
  if (std::abs(fit.gamma_hat) < kGammaZeroSwitch) return std::exp(-u);
  const double gu = fit.gamma_hat * u;
  if (gu <= -1.0) return std::numeric_limits<double>::infinity();
  // (1 + gu)^(-1/gamma) via log1p, stable through the gamma -> 0 switch
  return std::exp(-std::log1p(gu) / fit.gamma_hat);
}

StandardizedSample standardize(std::span<const std::array<double, 2>> sample,
                               const MarginalFit& fit_x, const MarginalFit& fit_y) {
  StandardizedSample out;
  out.points.reserve(sample.size());
  for (const auto& p : sample)
    out.points.push_back({standardize_value(p[0], fit_x), standardize_value(p[1], fit_y)});
  return out;
}

}  // namespace tailgof
