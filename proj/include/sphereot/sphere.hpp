#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sphereot/error.hpp"
#include "sphereot/numeric.hpp"

namespace sphereot {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Point of S^n as a unit vector in R^{n+1}. Immutable after construction.
class SpherePoint {
public:
  explicit SpherePoint(Vec coords);

  static SpherePoint normalized(Vec coords);

  const Vec& coords() const { return coords_; }
  double operator[](Eigen::Index i) const { return coords_[i]; }
  Eigen::Index ambient_dim() const { return coords_.size(); }
  Eigen::Index sphere_dim() const { return coords_.size() - 1; }

  /// Canonical basis vector e_i of R^{ambient}.
  static SpherePoint basis(Eigen::Index ambient, Eigen::Index i);

private:
  Vec coords_;
};

/// Tangent vector at a base point; constructor enforces <vec, base> = 0.
struct TangentVector {
  TangentVector(SpherePoint base_, Vec vec_);

  SpherePoint base;
  Vec vec;

  double norm() const { return vec.norm(); }
};

/// Meridian coordinates p = (cos x * u, sin x * v) for R^{n+1} = R^k + R^l,
/// with x in [0, pi/2]. When a block of p vanishes the corresponding unit
/// vector is the first canonical vector of that block and flagged degenerate.
struct SplitCoordinates {
  double x = 0.0;
  Vec u, v;
  int k = 0, l = 0;
  bool degenerate_u = false, degenerate_v = false;

  SpherePoint reconstruct() const;
};

/// Adapted frames at p and q: B = {u_1..u_n} orthonormal in T_p S^n with
/// u_1 = gamma'(0), Bbar the parallel transports along the minimal geodesic.
struct OmegaFrame {
  SpherePoint p, q;
  double d = 0.0;
  std::vector<Vec> basis_p;  // u_1..u_n
  std::vector<Vec> basis_q;  // v_1..v_n
};

double geodesic_distance(const SpherePoint& p, const SpherePoint& q);
SpherePoint exp_map(const TangentVector& w);
TangentVector log_map(const SpherePoint& p, const SpherePoint& q);
TangentVector parallel_transport(const SpherePoint& p, const SpherePoint& q,
                                 const TangentVector& w);
SplitCoordinates split_coords(const SpherePoint& p, int k);
OmegaFrame adapted_frame(const SpherePoint& p, const SpherePoint& q);

}  // namespace sphereot
