#pragma once

#include <cstdint>
#include <functional>

#include "sphereot/sphere.hpp"

namespace sphereot {

struct DiscreteMeasure {
  std::vector<SpherePoint> points;
  Vec weights;

  DiscreteMeasure(std::vector<SpherePoint> points_, Vec weights_);

  static DiscreteMeasure uniform(std::vector<SpherePoint> points_);

  int size() const { return static_cast<int>(points.size()); }
};

enum class SampleScheme { UniformCircle, FibonacciS2, SeededRandom };

DiscreteMeasure sample_sphere(int n, int N, SampleScheme scheme, std::uint64_t seed = 0);

/// Mean nearest-neighbor geodesic distance of a cloud.
double mean_spacing(const DiscreteMeasure& mu);

struct TransportPlan {
  DiscreteMeasure source, target;
  Mat coupling;
  double cost = 0.0;            // sum coupling_ij * d_ij^2 / 2
  double marginal_error = 0.0;  // max row/column marginal defect
  bool converged = true;
  double epsilon = 0.0;         // final regularization, 0 for exact
};

/// Globally optimal assignment for equal-size uniform clouds (cost d^2/2),
/// augmenting-path (Jonker-Volgenant style) solver.
TransportPlan solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// The optimal permutation itself: sigma[i] is the target index of source i.
std::vector<int> solve_assignment(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct EntropicConfig {
  std::vector<double> schedule = {0.1, 0.03, 0.01, 0.003, 0.001};
  int max_iters = 2000;  // per schedule stage
  double marginal_tol = 1e-6;
};

/// Log-domain Sinkhorn scaling with epsilon annealing. On iteration cap the
/// plan is still returned with converged = false.
TransportPlan solve_entropic(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const EntropicConfig& cfg = {});

/// Barycentric projection of a plan: plan-weighted ambient average of the
/// targets, renormalized; argmax fallback when mass is split across
/// far-apart targets (barycenter norm < 0.1). Ties go to the lowest index.
std::vector<SpherePoint> extract_map(const TransportPlan& plan);

struct MapStats {
  double mean = 0.0, max = 0.0, p95 = 0.0;
};

MapStats compare_maps(const std::vector<SpherePoint>& T1,
                      const std::vector<SpherePoint>& T2);

struct SolverConfig {
  bool exact = false;
  EntropicConfig entropic;
};

struct NumericalFactorization {
  std::vector<SpherePoint> S_samples;  // S at each source point
  std::vector<SpherePoint> T_samples;  // extracted optimal-map estimate
  std::vector<SpherePoint> U_samples;  // rearrangement estimate T^{-1} o S
  double transport_cost = 0.0;
  double marginal_error = 0.0;
  double volume_stat = 0.0;  // max |log k-NN ball volume ratio| under U
  bool converged = true;
};

/// Numerical Brenier-McCann factorization S = T o U on a sampled cloud.
NumericalFactorization numerical_polar_factorization(
    const std::function<SpherePoint(const SpherePoint&)>& S, const DiscreteMeasure& mu,
    const SolverConfig& cfg);

}  // namespace sphereot
