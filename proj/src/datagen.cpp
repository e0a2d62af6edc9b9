#include "tailgof/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tailgof/errors.hpp"

namespace tailgof {

namespace {

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    fail(errc::config, std::string(name) + " must lie strictly inside (0,1)");
  }
}

void require_count(int n) {
  if (n < 1) fail(errc::config, "sample size must be >= 1");
}

double nonzero_normal(Engine& eng) {
  double z = eng.normal();
  while (z == 0.0) z = eng.normal();
  return z;
}

double half_cauchy(Engine& eng) {
  double c = std::abs(eng.cauchy());
  while (c == 0.0) c = std::abs(eng.cauchy());
  return c;
}

std::array<double, 2> cauchy_quadrant_draw(Engine& eng) {
  const double z1 = eng.normal();
  const double z2 = eng.normal();
  const double z3 = nonzero_normal(eng);
  return {std::abs(z1 / z3), std::abs(z2 / z3)};
}

std::array<double, 2> logistic_frechet_draw(double theta_dep, Engine& eng) {
  const double s = positive_stable(theta_dep, eng);
  const double ratio1 = s / eng.exponential();
  const double ratio2 = s / eng.exponential();
  return {std::pow(ratio1, theta_dep) - 1.0, std::pow(ratio2, theta_dep) - 1.0};
}

}  // namespace

double positive_stable(double alpha, Engine& eng) {
  require_open_unit(alpha, "stable exponent");
  const double u = std::numbers::pi * eng.uniform();
  const double w = eng.exponential();
  const double first = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
  const double second = std::sin((1.0 - alpha) * u) / w;
  return first * std::pow(second, (1.0 - alpha) / alpha);
}

Sample gen_cauchy_quadrant(int n, std::uint64_t seed) {
  require_count(n);
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) row = cauchy_quadrant_draw(eng);
  return out;
}

Sample gen_model3_null_mixture(int n, double p, std::uint64_t seed) {
  require_count(n);
  require_open_unit(p, "mixing probability");
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) {
    if (eng.uniform() < p) {
      row = cauchy_quadrant_draw(eng);
    } else {
      const double x = half_cauchy(eng);
      row = {x, 1.0 / x};
    }
  }
  return out;
}

Sample gen_logistic_frechet(double theta_dep, int n, std::uint64_t seed) {
  require_count(n);
  require_open_unit(theta_dep, "dependence parameter");
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) row = logistic_frechet_draw(theta_dep, eng);
  return out;
}

Sample gen_model1_alt_mixture(int n, std::uint64_t seed) {
  require_count(n);
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) {
    if (eng.uniform() < 0.75) {
      row = logistic_frechet_draw(0.25, eng);
    } else {
      // countermonotonic pair with margins exp(-1/(1+x)) via the exact
      // quantile maps F^{-1}(u) = -1/log(u) - 1 applied at (u, 1-u)
      const double u = eng.uniform();
      row = {-1.0 / std::log(u) - 1.0, -1.0 / std::log1p(-u) - 1.0};
    }
  }
  return out;
}

Sample gen_linear_factor(double lambda, double mu, int n, std::uint64_t seed) {
  require_count(n);
  require_open_unit(lambda, "lambda");
  require_open_unit(mu, "mu");
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) {
    const double z1 = 1.0 / eng.uniform();  // standard Pareto
    const double z2 = 1.0 / eng.uniform();
    row = {lambda * z1 + (1.0 - lambda) * z2, mu * z1 + (1.0 - mu) * z2};
  }
  return out;
}

Sample gen_asym_logistic(double phi, int n, std::uint64_t seed) {
  require_count(n);
  require_open_unit(phi, "phi");
  Engine eng(seed);
  Sample out(static_cast<std::size_t>(n));
  for (auto& row : out) {
    const double s = positive_stable(0.5, eng);
    const double a = std::sqrt(s / eng.exponential());  // unit Frechet
    const double b = std::sqrt(s / eng.exponential());
    const double c = (1.0 - phi) / eng.exponential();   // Frechet, scale 1-phi
    row = {a - 1.0, std::max(phi * b, c) - 1.0};
  }
  return out;
}

Sample generate(const GeneratorSpec& spec, int n, std::uint64_t seed) {
  switch (spec.kind) {
    case generator_kind::cauchy_quadrant:
      return gen_cauchy_quadrant(n, seed);
    case generator_kind::model3_null_mixture:
      return gen_model3_null_mixture(n, spec.p, seed);
    case generator_kind::model1_alt_mixture:
      return gen_model1_alt_mixture(n, seed);
    case generator_kind::linear_factor:
      return gen_linear_factor(spec.lambda, spec.mu, n, seed);
    case generator_kind::asym_logistic:
      return gen_asym_logistic(spec.phi, n, seed);
    case generator_kind::logistic_frechet:
      return gen_logistic_frechet(spec.theta_dep, n, seed);
  }
  fail(errc::config, "unknown generator kind");
}

generator_kind parse_generator_kind(const std::string& name) {
  if (name == "cauchy_quadrant") return generator_kind::cauchy_quadrant;
  if (name == "model3_null_mixture") return generator_kind::model3_null_mixture;
  if (name == "model1_alt_mixture") return generator_kind::model1_alt_mixture;
  if (name == "linear_factor") return generator_kind::linear_factor;
  if (name == "asym_logistic") return generator_kind::asym_logistic;
  if (name == "logistic_frechet") return generator_kind::logistic_frechet;
  fail(errc::config, "unknown generator: " + name);
}

std::string generator_name(generator_kind kind) {
  switch (kind) {
    case generator_kind::cauchy_quadrant:
      return "cauchy_quadrant";
    case generator_kind::model3_null_mixture:
      return "model3_null_mixture";
    case generator_kind::model1_alt_mixture:
      return "model1_alt_mixture";
    case generator_kind::linear_factor:
      return "linear_factor";
    case generator_kind::asym_logistic:
      return "asym_logistic";
    case generator_kind::logistic_frechet:
      return "logistic_frechet";
  }
  return "unknown";
}

void write_sample_csv(const Sample& sample, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::data, "cannot open sample output file: " + path);
  out << "x,y\n";
  char buf[96];
  for (const auto& row : sample) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", row[0], row[1]);
    out << buf << '\n';
  }
  if (!out) fail(errc::data, "failed writing sample file: " + path);
}

Sample read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::data, "cannot open data file: " + path);
  Sample out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) {
      fail(errc::data, "data file must have two comma-separated columns: " + path);
    }
    try {
      const double x = std::stod(a);
      const double y = std::stod(b);
      out.push_back({x, y});
    } catch (const std::exception&) {
      if (first) {
        first = false;  // header line
        continue;
      }
      fail(errc::data, "data file has a non-numeric row: " + path);
    }
    first = false;
  }
  if (out.empty()) fail(errc::data, "data file contains no observations: " + path);
  return out;
}

}  // namespace tailgof
