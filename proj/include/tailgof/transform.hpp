#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "tailgof/empirical.hpp"
#include "tailgof/grid.hpp"
#include "tailgof/tail_models.hpp"

namespace tailgof {

// Helper functions entering the margin scores, with derivatives:
//   f = x (x^gamma - 1)/gamma,  g = -x^{gamma+1},
//   h = x (1 - x^gamma)/gamma^2 + x log(x)/gamma,
// with their gamma -> 0 limits taken for |gamma| < 1e-6 (series-stabilized
// evaluation near the switch).
struct FGH {
  double f, g, h, fp, gp, hp;
};
FGH fgh(double gamma, double x);

// Full-contract score vector of length 6 + dim: components 1..3 combine
// (f,g,h)' at gamma1 with rho_1, components 4..6 the same in the second
// coordinate, components 7.. are the parameter scores d log r / dtheta_i.
void score_vector(const TailCopulaFamily& family, double gamma1, double gamma2, double s, double t,
                  std::span<double> out);

// Dimension of the projection basis used by the transform: 6 + dim, except
// that the scale family drops its redundant parameter score (see
// TailCopulaFamily::scale_score_redundant).
int effective_basis_dim(const TailCopulaFamily& family);

// Partial information matrices I(t) = integral of q q^T r over the shrinking
// slabs [delta,T] x (t,T], approximated by the midpoint rule on the
// integration grid, with eigendecomposition-based inverses and explicit
// condition numbers. Matrices are basis_dim x basis_dim.
struct InformationCurve {
  std::vector<double> t_nodes;  // increasing, inside [delta, tau]
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<Eigen::MatrixXd> inverses;
  std::vector<double> condition_numbers;
  int basis_dim = 0;
};

InformationCurve information_curve(const TailCopulaFamily& family,
                                   const std::array<double, 2>& gamma_hats, const GridSpec& grid);

// Single-slab variant, t inside [delta, tau].
Eigen::MatrixXd information_matrix(const TailCopulaFamily& family,
                                   const std::array<double, 2>& gamma_hats, const GridSpec& grid,
                                   double t);

// The transformed process on the evaluation grid. values(i,j) is the field at
// ([delta, x_{i+1}] x [delta, y_{j+1}]); the excluded delta-edge extends the
// field continuously to zero.
struct TransformedField {
  GridSpec grid;
  Eigen::MatrixXd values;
};

// Transformed parametric empirical process: first term integrates
// r^{-1/2} d eta over [delta,x] x [delta,y] (atomic part exact, smooth part by
// product-coverage of the integration-grid prefix), the compensator solves
// I(t) u(t) = v(t) per evaluation row and accumulates q^T u sqrt(r) by the
// midpoint rule on the evaluation grid.
TransformedField transform_field(const EmpiricalSignedMeasure& measure,
                                 const TailCopulaFamily& family,
                                 const std::array<double, 2>& gamma_hats, const GridSpec& grid,
                                 int workers = 1);

// Same transform applied to a purely smooth signed measure density(s,t) ds dt
// (no atoms). Feeding c * q_j * r yields the annihilation property; feeding 0
// yields the exactly-zero field.
TransformedField transform_field_smooth(const std::function<double(double, double)>& density,
                                        const TailCopulaFamily& family,
                                        const std::array<double, 2>& gamma_hats,
                                        const GridSpec& grid, int workers = 1);

// CSV serialization: header row of x-nodes, first column of y-nodes, values
// in row-major order (one row per y-node), 17 significant digits.
void write_field_csv(const TransformedField& field, const std::string& path);
TransformedField read_field_csv(const std::string& path);

}  // namespace tailgof
