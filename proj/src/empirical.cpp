#include "tailgof/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "tailgof/errors.hpp"

namespace tailgof {

namespace {

constexpr const char* kBoundaryMessage =
    "parameter estimate at boundary; model likely misspecified or tail-independent data";

// Atom containment convention: half-open (lo,hi] in both coordinates, matching
// the rectangle increments of the right-continuous counting process.
bool atom_in(const std::array<double, 2>& p, const Rectangle& rect) {
  return p[0] > rect.x_lo && p[0] <= rect.x_hi && p[1] > rect.y_lo && p[1] <= rect.y_hi;
}

double simpson_recurse(const std::function<double(double)>& f, double a, double b, double fa,
                       double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) < 15.0 * tol)
    return refined + (refined - whole) / 15.0;
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 30);
}

}  // namespace

double empirical_tail_copula(const StandardizedSample& std_sample, int k, double x, double y) {
  if (k < 1) fail(errc::config, "empirical tail copula requires k >= 1");
  long count = 0;
  for (const auto& p : std_sample.points)
    if (p[0] <= x && p[1] <= y) ++count;  // +infinity coordinates never satisfy <=
  return static_cast<double>(count) / k;
}

EmpiricalSignedMeasure build_eta_measure(const StandardizedSample& std_sample, int k,
                                         const TailCopulaFamily& family) {
  if (k < 1) fail(errc::config, "signed measure requires k >= 1");
  EmpiricalSignedMeasure measure{{}, k, family};
  measure.atoms.reserve(std_sample.points.size());
  for (const auto& p : std_sample.points)
    if (std::isfinite(p[0]) && std::isfinite(p[1])) measure.atoms.push_back(p);
  return measure;
}

double rectangle_eval(const EmpiricalSignedMeasure& measure, const Rectangle& rect) {
  long count = 0;
  for (const auto& p : measure.atoms)
    if (atom_in(p, rect)) ++count;
  const double sqrt_k = std::sqrt(static_cast<double>(measure.k));
  return sqrt_k * (static_cast<double>(count) / measure.k - measure.family.rectangle_mass(rect));
}

double integrate(const EmpiricalSignedMeasure& measure,
                 const std::function<double(double, double)>& phi, const Rectangle& region,
                 const GridSpec& grid) {
  grid.validate();
  if (!(region.x_lo <= region.x_hi && region.y_lo <= region.y_hi))
    fail(errc::config, "integrate: invalid region");
  if (region.x_lo < grid.delta || region.y_lo < grid.delta || region.x_hi > grid.T ||
      region.y_hi > grid.T)
    fail(errc::config, "integrate: region exceeds the integration grid coverage");

  const double sqrt_k = std::sqrt(static_cast<double>(measure.k));
  double atomic = 0.0;
  for (const auto& p : measure.atoms)
    if (atom_in(p, region)) atomic += phi(p[0], p[1]);
  atomic /= sqrt_k;

  // Smooth part: midpoint-sampled integrand weighted by the clipped cell area.
  const double mesh = grid.integ_mesh();
  const auto clip_range = [&](double lo, double hi, int& first, int& last) {
    first = std::max(0, static_cast<int>(std::floor((lo - grid.delta) / mesh)));
    last = std::min(grid.integ_cells - 1, static_cast<int>(std::ceil((hi - grid.delta) / mesh)));
  };
  int c_first, c_last, r_first, r_last;
  clip_range(region.x_lo, region.x_hi, c_first, c_last);
  clip_range(region.y_lo, region.y_hi, r_first, r_last);

  double smooth = 0.0;
  for (int c = c_first; c <= c_last; ++c) {
    const double cell_x_lo = grid.delta + c * mesh;
    const double cell_x_hi = cell_x_lo + mesh;
    const double x_overlap =
        std::min(cell_x_hi, region.x_hi) - std::max(cell_x_lo, region.x_lo);
    if (x_overlap <= 0.0) continue;
    const double mid_x = cell_x_lo + 0.5 * mesh;
    for (int r = r_first; r <= r_last; ++r) {
      const double cell_y_lo = grid.delta + r * mesh;
      const double cell_y_hi = cell_y_lo + mesh;
      const double y_overlap =
          std::min(cell_y_hi, region.y_hi) - std::max(cell_y_lo, region.y_lo);
      if (y_overlap <= 0.0) continue;
      const double mid_y = cell_y_lo + 0.5 * mesh;
      smooth += phi(mid_x, mid_y) * measure.family.density(mid_x, mid_y) * x_overlap * y_overlap;
    }
  }
  return atomic - sqrt_k * smooth;
}

double unit_square_moment(const TailCopulaFamily& family) {
  // Int over [0,1]^2 of the order-1 homogeneous R reduces along rays:
  // 2 int_0^1 x^2 dx int_0^1 R(1,v) dv = (2/3) int_0^1 R(1,v) dv.
  const auto slice = [&](double v) { return family.value(1.0, v); };
  return (2.0 / 3.0) * adaptive_simpson(slice, 0.0, 1.0, 1e-11);
}

ThetaEstimate estimate_theta_mom(const StandardizedSample& std_sample, int k, family_id which) {
  if (k < 1) fail(errc::config, "moment estimator requires k >= 1");
  if (which == family_id::fixed_logistic_half)
    fail(errc::config, "moment estimator requires a family with a free parameter");

  double lhs = 0.0;
  for (const auto& p : std_sample.points) {
    const double wx = std::max(1.0 - p[0], 0.0);
    const double wy = std::max(1.0 - p[1], 0.0);
    lhs += wx * wy;
  }
  lhs /= k;

  ThetaEstimate est;
  est.moment_lhs = lhs;
  if (which == family_id::scaled_model1) {
    // I1 = int over [0,1]^2 of (x + y - sqrt(x^2+y^2)).
    const double i1 = 1.0 - (std::sqrt(2.0) + std::log1p(std::sqrt(2.0))) / 3.0;
    const double psi = lhs / i1;
    if (!(psi > 1e-6 && psi < 1.0 - 1e-6)) fail(errc::numerical, kBoundaryMessage);
    est.theta_hat = {psi};
    return est;
  }

  // Logistic: theta -> unit-square moment is continuous and strictly
  // decreasing (comonotone limit 1/3 at theta -> 0, independence limit 0 at
  // theta -> 1), so bisection on the bracket is exact to interval width.
  const double lo = 1e-4;
  const double hi = 1.0 - 1e-4;
  const double m_lo = unit_square_moment(TailCopulaFamily::logistic(lo));
  const double m_hi = unit_square_moment(TailCopulaFamily::logistic(hi));
  if (!(lhs < m_lo && lhs > m_hi)) fail(errc::numerical, kBoundaryMessage);
  double a = lo, b = hi;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (a + b);
    if (unit_square_moment(TailCopulaFamily::logistic(mid)) > lhs)
      a = mid;
    else
      b = mid;
  }
  const double theta = 0.5 * (a + b);
  if (theta <= lo + 1e-6 || theta >= hi - 1e-6) fail(errc::numerical, kBoundaryMessage);
  est.theta_hat = {theta};
  return est;
}

}  // namespace tailgof
