#pragma once

#include <string>
#include <vector>

namespace tailgof {

// Geometry of the two grids used throughout: the evaluation grid on
// [delta,tau]^2 where the transformed field and statistics live, and the
// finer integration grid on [delta,T]^2 where inner integrals and the
// information matrices are accumulated.
struct GridSpec {
  double delta = 0.001;
  double tau = 1.001;
  double T = 2.0;
  int eval_cells = 200;
  int integ_cells = 400;

  void validate() const;  // throws errc::config on violation

  double eval_mesh() const { return (tau - delta) / eval_cells; }
  double integ_mesh() const { return (T - delta) / integ_cells; }

  // Evaluation nodes x_i = delta + i*mesh, i = 1..eval_cells. The node at
  // delta itself is excluded: the field vanishes there identically and the
  // Anderson-Darling weight would divide by zero.
  std::vector<double> eval_nodes() const;
  // Midpoints of the evaluation cells, delta + (i+1/2)*mesh.
  std::vector<double> eval_midpoints() const;
  // Integration-cell boundaries delta + r*mesh, r = 0..integ_cells.
  std::vector<double> integ_boundaries() const;
  // Midpoints of the integration cells.
  std::vector<double> integ_midpoints() const;

  // Identifies the evaluation grid a benchmark table was simulated on.
  std::string fingerprint() const;
};

}  // namespace tailgof
