#pragma once

#include <functional>

#include "sphereot/profiles.hpp"
#include "sphereot/sphere.hpp"

namespace sphereot {

/// Scalar function sampled on a fixed node set of S^n.
struct GridFunction {
  std::vector<SpherePoint> nodes;
  Vec values;

  GridFunction(std::vector<SpherePoint> nodes_, Vec values_);
};

/// Uniform angular nodes on the circle: (cos 2*pi*i/N, sin 2*pi*i/N).
std::vector<SpherePoint> circle_nodes(int N);

/// Fibonacci spiral lattice on S^2.
std::vector<SpherePoint> fibonacci_nodes(int N);

/// Sample a meridian-profile potential on a node set.
GridFunction sample_potential(const MeridianProfile& profile,
                              std::vector<SpherePoint> nodes, int k);

/// Discrete c-transform phi^c(p) = max_q {-c(p,q) - phi(q)} over the nodes,
/// with c = d^2/2. Ties broken by lowest node index (max is order-free).
GridFunction sup_convolution(const GridFunction& phi);

/// max_i |phi^cc(i) - phi(i)|.
double c_convexity_defect(const GridFunction& phi);

/// phi^c(p) for the SO(k) x SO(l)-invariant potential of potential_phi,
/// reduced to a 1-D maximization over the great circle through (u,0), (0,v):
/// dense sampling plus golden-section refinement.
double reduce_to_meridian(const MeridianProfile& profile, const SpherePoint& p, int k);

struct CircleCriterionReport {
  bool monotone = false;    // x + f(x) nondecreasing on the grid
  double min_slope_gap = 0; // min over the grid of increments of x + f(x)
  bool zero_mean = false;   // integral of f over a period vanishes
  double integral = 0;

  bool pass() const { return monotone && zero_mean; }
};

/// Cordero-Erausquin criterion on the circle for x -> x + f(x).
CircleCriterionReport circle_optimality_criterion(const MeridianProfile& profile,
                                                  int grid_points = 4096);

/// Same criterion for an arbitrary displacement function on the circle.
CircleCriterionReport circle_optimality_criterion(
    const std::function<double(double)>& eval, int grid_points = 4096);

}  // namespace sphereot
