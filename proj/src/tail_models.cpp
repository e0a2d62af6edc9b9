#include "tailgof/tail_models.hpp"

#include <algorithm>
#include <cmath>

#include "tailgof/errors.hpp"

namespace tailgof {

namespace {

void require_open_unit(double value, const char* what) {
  if (!(value > 0.0 && value < 1.0)) {
    fail(errc::config, std::string(what) + " must lie strictly inside (0,1)");
  }
}

}  // namespace

TailCopulaFamily::TailCopulaFamily(family_id id, std::vector<double> theta, int d)
    : id_(id), theta_(std::move(theta)), d_(d) {}

TailCopulaFamily TailCopulaFamily::logistic(double theta) {
  require_open_unit(theta, "logistic dependence parameter");
  return TailCopulaFamily(family_id::logistic, {theta}, 1);
}

TailCopulaFamily TailCopulaFamily::scaled_model1(double psi) {
  require_open_unit(psi, "scale parameter");
  return TailCopulaFamily(family_id::scaled_model1, {psi}, 1);
}

TailCopulaFamily TailCopulaFamily::fixed_logistic_half() {
  return TailCopulaFamily(family_id::fixed_logistic_half, {}, 0);
}

TailCopulaFamily TailCopulaFamily::as_fixed() const {
  TailCopulaFamily copy = *this;
  copy.d_ = 0;
  return copy;
}

std::string TailCopulaFamily::name() const {
  switch (id_) {
    case family_id::logistic:
      return "logistic";
    case family_id::scaled_model1:
      return "scaled_model1";
    case family_id::fixed_logistic_half:
      return "fixed_logistic_half";
  }
  return "unknown";
}

void TailCopulaFamily::require_interior(double x, double y) const {
  if (!(x > 0.0) || !(y > 0.0)) fail(errc::numerical, "tail-copula density requires x > 0, y > 0");
}

double TailCopulaFamily::value(double x, double y) const {
  switch (id_) {
    case family_id::logistic: {
      if (x <= 0.0 || y <= 0.0) return 0.0;
      const double a = 1.0 / theta_[0];
      return x + y - std::pow(std::pow(x, a) + std::pow(y, a), theta_[0]);
    }
    case family_id::scaled_model1:
      return theta_[0] * (x + y - std::hypot(x, y));
    case family_id::fixed_logistic_half:
      return x + y - std::hypot(x, y);
  }
  return 0.0;
}

double TailCopulaFamily::density(double x, double y) const {
  require_interior(x, y);
  switch (id_) {
    case family_id::logistic: {
      const double theta = theta_[0];
      const double a = 1.0 / theta;
      const double sum = std::pow(x, a) + std::pow(y, a);
      return ((1.0 - theta) / theta) * std::pow(x * y, a - 1.0) * std::pow(sum, theta - 2.0);
    }
    case family_id::scaled_model1: {
      const double s2 = x * x + y * y;
      return theta_[0] * x * y / (s2 * std::sqrt(s2));
    }
    case family_id::fixed_logistic_half: {
      const double s2 = x * x + y * y;
      return x * y / (s2 * std::sqrt(s2));
    }
  }
  return 0.0;
}

std::array<double, 2> TailCopulaFamily::partials(double x, double y) const {
  require_interior(x, y);
  switch (id_) {
    case family_id::logistic: {
      const double theta = theta_[0];
      const double a = 1.0 / theta;
      const double sum = std::pow(x, a) + std::pow(y, a);
      const double outer = std::pow(sum, theta - 1.0);
      return {1.0 - outer * std::pow(x, a - 1.0), 1.0 - outer * std::pow(y, a - 1.0)};
    }
    case family_id::scaled_model1: {
      const double norm = std::hypot(x, y);
      return {theta_[0] * (1.0 - x / norm), theta_[0] * (1.0 - y / norm)};
    }
    case family_id::fixed_logistic_half: {
      const double norm = std::hypot(x, y);
      return {1.0 - x / norm, 1.0 - y / norm};
    }
  }
  return {0.0, 0.0};
}

std::vector<double> TailCopulaFamily::theta_gradient(double x, double y) const {
  require_interior(x, y);
  if (d_ == 0) return {};
  switch (id_) {
    case family_id::scaled_model1:
      // d/dpsi of psi * C(x,y) is the unscaled Model-1 value.
      return {x + y - std::hypot(x, y)};
    case family_id::logistic: {
      const double theta = theta_[0];
      double step = 1e-6;
      step = std::min({step, 0.5 * theta, 0.5 * (1.0 - theta)});
      const TailCopulaFamily up = logistic(theta + step);
      const TailCopulaFamily down = logistic(theta - step);
      return {(up.value(x, y) - down.value(x, y)) / (2.0 * step)};
    }
    case family_id::fixed_logistic_half:
      return {};
  }
  return {};
}

void TailCopulaFamily::log_density_grads(double x, double y, double& rho1, double& rho2,
                                         std::span<double> rho_theta) const {
  require_interior(x, y);
  if (static_cast<int>(rho_theta.size()) != d_)
    fail(errc::config, "log_density_grads: parameter-gradient span has wrong length");
  switch (id_) {
    case family_id::logistic: {
      const double theta = theta_[0];
      const double a = 1.0 / theta;
      const double xa = std::pow(x, a);
      const double ya = std::pow(y, a);
      const double sum = xa + ya;
      rho1 = (a - 1.0) / x + (theta - 2.0) * a * std::pow(x, a - 1.0) / sum;
      rho2 = (a - 1.0) / y + (theta - 2.0) * a * std::pow(y, a - 1.0) / sum;
      if (d_ == 1) {
        // d/dtheta of log r at fixed (x,y); sum_prime = d sum / dtheta.
        const double log_x = std::log(x);
        const double log_y = std::log(y);
        const double sum_prime = -(xa * log_x + ya * log_y) / (theta * theta);
        rho_theta[0] = -1.0 / (1.0 - theta) - 1.0 / theta - (log_x + log_y) / (theta * theta) +
                       std::log(sum) + (theta - 2.0) * sum_prime / sum;
      }
      return;
    }
    case family_id::scaled_model1: {
      const double s2 = x * x + y * y;
      rho1 = 1.0 / x - 3.0 * x / s2;
      rho2 = 1.0 / y - 3.0 * y / s2;
      if (d_ == 1) rho_theta[0] = 1.0 / theta_[0];
      return;
    }
    case family_id::fixed_logistic_half: {
      const double s2 = x * x + y * y;
      rho1 = 1.0 / x - 3.0 * x / s2;
      rho2 = 1.0 / y - 3.0 * y / s2;
      return;
    }
  }
}

double TailCopulaFamily::rectangle_mass(const Rectangle& rect) const {
  if (!(rect.x_lo >= 0.0 && rect.x_lo <= rect.x_hi && rect.y_lo >= 0.0 && rect.y_lo <= rect.y_hi))
    fail(errc::config, "rectangle_mass: invalid rectangle");
  const double mass = value(rect.x_hi, rect.y_hi) - value(rect.x_lo, rect.y_hi) -
                      value(rect.x_hi, rect.y_lo) + value(rect.x_lo, rect.y_lo);
  return std::max(mass, 0.0);
}

}  // namespace tailgof
