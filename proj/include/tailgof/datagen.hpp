#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tailgof/rng.hpp"

namespace tailgof {

using Sample = std::vector<std::array<double, 2>>;

// One positive-stable draw with Laplace transform exp(-s^alpha), alpha in
// (0,1), via the explicit trigonometric formula (no rejection loop).
double positive_stable(double alpha, Engine& eng);

// Bivariate Cauchy restricted to the positive quadrant: absolute values of a
// standard spherical bivariate Cauchy vector, density 2 / (pi (1+x^2+y^2)^{3/2}).
Sample gen_cauchy_quadrant(int n, std::uint64_t seed);

// With probability p a cauchy-quadrant draw, otherwise the countermonotonic
// half-Cauchy pair (X, 1/X). Tail copula: p (x + y - sqrt(x^2 + y^2)).
Sample gen_model3_null_mixture(int n, double p, std::uint64_t seed);

// Bivariate logistic dependence with margins exp(-1/(1+x)): stable-mixture
// construction (S/E_j)^theta_dep - 1 componentwise. Tail copula:
// x + y - (x^{1/theta} + y^{1/theta})^theta.
Sample gen_logistic_frechet(double theta_dep, int n, std::uint64_t seed);

// Bernoulli(0.75) mixture of the theta_dep = 1/4 logistic pair and a
// countermonotonic pair with the same margins. Tail copula:
// 0.75 [x + y - (x^4 + y^4)^{1/4}].
Sample gen_model1_alt_mixture(int n, std::uint64_t seed);

// (lambda Z1 + (1-lambda) Z2, mu Z1 + (1-mu) Z2) with Z i.i.d. standard
// Pareto. Tail copula: min(lambda x, mu y) + min((1-lambda) x, (1-mu) y).
Sample gen_linear_factor(double lambda, double mu, int n, std::uint64_t seed);

// Asymmetric logistic max-mixture: (A, B) unit-Frechet logistic pair with
// dependence 1/2, C independent Frechet with scale 1-phi; returns
// (A - 1, max(phi B, C) - 1). Tail copula: x + phi y - sqrt(x^2 + (phi y)^2).
Sample gen_asym_logistic(double phi, int n, std::uint64_t seed);

enum class generator_kind {
  cauchy_quadrant,
  model3_null_mixture,
  model1_alt_mixture,
  linear_factor,
  asym_logistic,
  logistic_frechet,
};

struct GeneratorSpec {
  generator_kind kind = generator_kind::cauchy_quadrant;
  double p = 0.75;          // mixing probability (model3 mixture)
  double lambda = 0.95;     // first factor loading (linear factor)
  double mu = 0.65;         // second factor loading (linear factor)
  double phi = 0.25;        // asymmetry parameter (asym logistic)
  double theta_dep = 0.25;  // dependence parameter (logistic helper)
};

Sample generate(const GeneratorSpec& spec, int n, std::uint64_t seed);

generator_kind parse_generator_kind(const std::string& name);
std::string generator_name(generator_kind kind);

// Two-column CSV with a one-line "x,y" header, 17 significant digits.
void write_sample_csv(const Sample& sample, const std::string& path);
Sample read_sample_csv(const std::string& path);

}  // namespace tailgof
