#pragma once

#include <array>
#include <span>
#include <vector>

namespace tailgof {

// Moment-estimator fit of one margin: extreme value index gamma_hat, scale
// a_hat and location b_hat at the k-th upper order statistic.
struct MarginalFit {
  double gamma_hat = 0.0;
  double a_hat = 1.0;
  double b_hat = 0.0;
  int k = 0;
};

// Fits gamma_hat = M1 + 1 - (1/2)/(1 - M1^2/M2) from the top-k log spacings,
// b_hat = (n-k)-th order statistic, a_hat = b_hat * M1 * (1 - gamma_minus).
// Requires n > k >= 2 and a strictly positive threshold order statistic.
MarginalFit fit_marginal(std::span<const double> values, int k);

// One coordinate of the standardization map
//   x -> [(1 + gamma (x - b)/a) v 0]^(-1/gamma),
// with the exponential branch exp(-(x-b)/a) taken for |gamma| < 1e-6.
// A zero bracket maps to +infinity.
double standardize_value(double x, const MarginalFit& fit);

// Bivariate points on the common heavy-tailed scale; coordinates are >= 0 or
// +infinity (the encoding of a non-positive bracket).
struct StandardizedSample {
  std::vector<std::array<double, 2>> points;
};

StandardizedSample standardize(std::span<const std::array<double, 2>> sample,
                               const MarginalFit& fit_x, const MarginalFit& fit_y);

}  // namespace tailgof
