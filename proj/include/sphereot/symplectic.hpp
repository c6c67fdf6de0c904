#pragma once

#include <array>

#include "sphereot/groups.hpp"
#include "sphereot/sphere.hpp"

namespace sphereot {

/// Which block of the form on T_p x T_q is probed by the finite-difference
/// path: mixed ((u_i,0),(0,v_j)), horizontal ((u_i,0),(u_j,0)) or vertical.
enum class OmegaBlock { Mixed, Horizontal, Vertical };

/// Matrix of the Kim-McCann-Warren form in the adapted frame C = B | Bbar:
/// (0 A; -A 0) with A = diag(1, d/sin d I_{n-1}).
Mat omega_matrix(const SpherePoint& p, const SpherePoint& q);

/// Finite-difference evaluation of the same form from the cost function,
/// entry (i, j) of the requested block, frame indices starting at 0.
double omega_numeric(const SpherePoint& p, const SpherePoint& q, int i, int j,
                     OmegaBlock block = OmegaBlock::Mixed);

/// Differential of the projective map induced by a symmetric positive P:
/// dT_p(v) = pr_{q-perp}(P v) / |P p| with q = P p / |P p|.
TangentVector dT_projective(const Mat& P, const SpherePoint& p, const TangentVector& v);

struct LagrangianReport {
  SpherePoint p, q;
  double d = 0.0;
  Mat dT_matrix;               // B'-coefficients of dT(u_j), column j
  double asymmetry = 0.0;      // max-abs entry of dT_matrix - dT_matrix^t
  double predicted_ratio = 0;  // <q,p> sin d / d
  double measured_ratio = 0;   // <dT u_2, V_1> / <dT u_1, v_2>, V_1 = sin d / d v_1
};

/// Lagrangian-graph test at p for the projective map of a symmetric positive
/// definite P. The graph is Lagrangian iff dT_matrix is symmetric.
LagrangianReport lagrangian_test(const Mat& P, const SpherePoint& p);

/// Both sides of <P^2 x, P x cross x> =
/// (l0-l1)(l0-l2)(l1-l2) x0 x1 x2 for P = diag(l0,l1,l2).
std::pair<double, double> triple_product_identity(const std::array<double, 3>& lambdas,
                                                  const Eigen::Vector3d& x);

}  // namespace sphereot
