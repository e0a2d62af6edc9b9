#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace tailgof {

// Parametric bivariate tail-copula families. All values R are homogeneous of
// order 1 with 0 <= R(x,y) <= min(x,y); the densities r = d^2 R / dx dy are
// positive on (0,inf)^2.
enum class family_id {
  logistic,            // R(x,y) = x + y - (x^{1/theta} + y^{1/theta})^theta
  scaled_model1,       // R(x,y) = psi (x + y - sqrt(x^2 + y^2))
  fixed_logistic_half  // R(x,y) = x + y - sqrt(x^2 + y^2), no free parameter
};

struct Rectangle {
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
};

class TailCopulaFamily {
 public:
  static TailCopulaFamily logistic(double theta);
  static TailCopulaFamily scaled_model1(double psi);
  static TailCopulaFamily fixed_logistic_half();
  // Same family with the parameter treated as known: the parameter dimension
  // drops to zero, so downstream score vectors carry margin components only.
  TailCopulaFamily as_fixed() const;

  family_id id() const { return id_; }
  int dim() const { return d_; }  // number of free parameters
  const std::vector<double>& theta() const { return theta_; }
  std::string name() const;

  double value(double x, double y) const;
  double density(double x, double y) const;
  std::array<double, 2> partials(double x, double y) const;
  // dR/dtheta_i; empty for dim() == 0. Analytic for scaled_model1, central
  // finite differences (step clamped inside (0,1)) for logistic.
  std::vector<double> theta_gradient(double x, double y) const;
  // rho_1 = d log r / dx, rho_2 = d log r / dy, then d log r / dtheta_i.
  // rho_theta must have length dim().
  void log_density_grads(double x, double y, double& rho1, double& rho2,
                         std::span<double> rho_theta) const;
  // For the pure scale family the parameter score d log r / dpsi = 1/psi is a
  // pointwise linear combination of the margin scores (Euler's identity for
  // the order-1 homogeneous R gives x rho_1 + y rho_2 = -1 identically), so
  // the transform must drop it from its projection basis to keep the
  // information matrices invertible. The projected span is unchanged.
  bool scale_score_redundant() const { return id_ == family_id::scaled_model1; }

  // R-measure of a rectangle by inclusion-exclusion; always >= 0.
  double rectangle_mass(const Rectangle& rect) const;

 private:
  TailCopulaFamily(family_id id, std::vector<double> theta, int d);
  void require_interior(double x, double y) const;

  family_id id_;
  std::vector<double> theta_;
  int d_;
};

}  // namespace tailgof
