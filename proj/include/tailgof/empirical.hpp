#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tailgof/grid.hpp"
#include "tailgof/marginals.hpp"
#include "tailgof/tail_models.hpp"

namespace tailgof {

// The parametric empirical process eta_hat = sqrt(k) (Rhat_n - R_thetahat) as
// a signed measure, split exactly into an atomic part (one atom of weight
// 1/sqrt(k) per finite standardized point) and a smooth part with density
// -sqrt(k) r_thetahat. Points with a +infinity coordinate never intersect a
// finite region and are dropped at construction.
struct EmpiricalSignedMeasure {
  std::vector<std::array<double, 2>> atoms;
  int k = 0;
  TailCopulaFamily family;
};

// (1/k) #{i : Xhat_i <= x and Yhat_i <= y}; +infinity coordinates never count.
double empirical_tail_copula(const StandardizedSample& std_sample, int k, double x, double y);

EmpiricalSignedMeasure build_eta_measure(const StandardizedSample& std_sample, int k,
                                         const TailCopulaFamily& family);

// sqrt(k) [Rhat_n-mass - R-mass] of the rectangle, computed exactly from the
// atom counts and the family's inclusion-exclusion mass.
double rectangle_eval(const EmpiricalSignedMeasure& measure, const Rectangle& rect);

// Stieltjes integral of phi against the measure over a rectangle region:
// atoms are evaluated exactly, the smooth part by the midpoint rule on the
// integration grid (full-cell midpoint sample weighted by the clipped cell
// area). The region must lie inside the integration grid's span [delta,T]^2.
double integrate(const EmpiricalSignedMeasure& measure,
                 const std::function<double(double, double)>& phi, const Rectangle& region,
                 const GridSpec& grid);

struct ThetaEstimate {
  std::vector<double> theta_hat;
  double moment_lhs = 0.0;  // L = (1/k) sum (1 - Xhat)^+ (1 - Yhat)^+
};

// Method-of-moments estimate matching the mean of (1-X)^+(1-Y)^+ under the
// family to its empirical counterpart: closed form for scaled_model1,
// bisection on a monotone 1-D reduction for logistic. Boundary solutions are
// errors.
ThetaEstimate estimate_theta_mom(const StandardizedSample& std_sample, int k, family_id which);

// Mean of R_theta over the unit square, reduced by homogeneity to a 1-D
// integral evaluated with adaptive Simpson quadrature. Exposed for tests.
double unit_square_moment(const TailCopulaFamily& family);

}  // namespace tailgof
