#include "tailgof/grid.hpp"

#include <cstdio>

#include "tailgof/errors.hpp"

namespace tailgof {

void GridSpec::validate() const {
  if (!(delta > 0.0)) fail(errc::config, "grid requires delta > 0");
  if (!(delta < tau && tau < T)) fail(errc::config, "grid requires delta < tau < T");
  if (eval_cells < 1) fail(errc::config, "grid requires at least one evaluation cell");
  if (integ_cells < 1) fail(errc::config, "grid requires at least one integration cell");
}

std::vector<double> GridSpec::eval_nodes() const {
  std::vector<double> nodes(eval_cells);
  double mesh = eval_mesh();
  for (int i = 0; i < eval_cells; ++i) nodes[i] = delta + (i + 1) * mesh;
  return nodes;
}

std::vector<double> GridSpec::eval_midpoints() const {
  std::vector<double> mids(eval_cells);
  double mesh = eval_mesh();
  for (int i = 0; i < eval_cells; ++i) mids[i] = delta + (i + 0.5) * mesh;
  return mids;
}

std::vector<double> GridSpec::integ_boundaries() const {
  std::vector<double> bounds(integ_cells + 1);
  double mesh = integ_mesh();
  for (int r = 0; r <= integ_cells; ++r) bounds[r] = delta + r * mesh;
  return bounds;
}

std::vector<double> GridSpec::integ_midpoints() const {
  std::vector<double> mids(integ_cells);
  double mesh = integ_mesh();
  for (int r = 0; r < integ_cells; ++r) mids[r] = delta + (r + 0.5) * mesh;
  return mids;
}

std::string GridSpec::fingerprint() const {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "delta=%.17g; tau=%.17g; cells=%d", delta, tau, eval_cells);
  return buf;
}

}  // namespace tailgof
