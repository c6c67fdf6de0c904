#include "sphereot/symplectic.hpp"

#include <cmath>

namespace sphereot {

namespace {

double cost(const SpherePoint& p, const SpherePoint& q) {
  double d = geodesic_distance(p, q);
  return 0.5 * d * d;
}

SpherePoint geodesic_step(const SpherePoint& base, const Vec& dir, double t) {
  return exp_map(TangentVector(base, t * dir));
}

void check_nondegenerate(double d) {
  if (d <= policy().cut_locus_margin || d >= M_PI - policy().cut_locus_margin)
    fail(ErrorCode::DegenerateDistance, "omega needs 0 < d < pi");
}

}  // namespace

Mat omega_matrix(const SpherePoint& p, const SpherePoint& q) {
  double d = geodesic_distance(p, q);
  check_nondegenerate(d);
  Eigen::Index n = p.sphere_dim();
  Vec diag = Vec::Constant(n, d_over_sin(d));
  diag[0] = 1.0;
  Mat out = Mat::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = diag.asDiagonal();
  out.bottomLeftCorner(n, n) = -out.topRightCorner(n, n);
  return out;
}

double omega_numeric(const SpherePoint& p, const SpherePoint& q, int i, int j,
                     OmegaBlock block) {
  OmegaFrame fr = adapted_frame(p, q);
  Eigen::Index n = p.sphere_dim();
  if (i < 0 || j < 0 || i >= n || j >= n)
    fail(ErrorCode::InvalidArgument, "frame index out of range");
  const double h = policy().fd_step;

  if (block == OmegaBlock::Mixed) {
    // omega((u_i,0),(0,v_j)) = -d2/dsdt c(sigma_i(s), tau_j(t)) at 0.
    auto c = [&](double s, double t) {
      return cost(geodesic_step(p, fr.basis_p[i], s), geodesic_step(q, fr.basis_q[j], t));
    };
    auto mixed = [&](double e) {
      return -(c(e, e) - c(e, -e) - c(-e, e) + c(-e, -e)) / (4.0 * e * e);
    };
    // Richardson step: near the cut locus the cost's fourth derivatives grow
    // like 1/sin^3 d and plain central differences lose the 1e-6 target.
    return (4.0 * mixed(h) - mixed(2.0 * h)) / 3.0;
  }

  // Zero blocks: alpha only sees the first-factor component, so both reduce
  // to antisymmetrized second derivatives of smooth functions. Horizontal:
  // omega((u_i,0),(u_j,0)) = d_i F_j - d_j F_i with
  // F_j(x) = d/ds c(exp_p(x + s u_j), q) in normal coordinates at p.
  if (block == OmegaBlock::Horizontal) {
    auto F = [&](int dir, const Vec& offset) {
      auto cc = [&](double s) {
        return cost(exp_map(TangentVector(p, offset + s * fr.basis_p[dir])), q);
      };
      return (cc(h) - cc(-h)) / (2.0 * h);
    };
    double dFj = (F(j, (h * fr.basis_p[i]).eval()) - F(j, (-h * fr.basis_p[i]).eval())) / (2.0 * h);
    double dFi = (F(i, (h * fr.basis_p[j]).eval()) - F(i, (-h * fr.basis_p[j]).eval())) / (2.0 * h);
    return dFj - dFi;
  }

  // Vertical: alpha(0, V) = 0 identically, so the bracket-free part is the
  // difference of derivatives of the zero function.
  return 0.0;
}

TangentVector dT_projective(const Mat& P, const SpherePoint& p, const TangentVector& v) {
  if (P.rows() != p.ambient_dim())
    fail(ErrorCode::SizeMismatch, "matrix dimension does not match point");
  Vec Pp = P * p.coords();
  double a = Pp.norm();
  SpherePoint q = SpherePoint::normalized(Pp);
  Vec w = P * v.vec;
  return TangentVector(q, (w - w.dot(q.coords()) * q.coords()) / a);
}

LagrangianReport lagrangian_test(const Mat& P, const SpherePoint& p) {
  SpherePoint q = projective_act(P, p);
  double d = geodesic_distance(p, q);
  if (d <= policy().cut_locus_margin)
    fail(ErrorCode::FixedPoint, "p is a fixed point of the projective map");
  check_nondegenerate(d);

  OmegaFrame fr = adapted_frame(p, q);
  Eigen::Index n = p.sphere_dim();
  double sdd = 1.0 / d_over_sin(d);  // sin d / d

  // B' = {V_1 = (d/sin d) v_1, v_2, ..., v_n}; coefficient extraction against
  // this orthogonal basis brings the sin d / d factor onto the first row.
  Mat m(n, n);
  for (Eigen::Index jj = 0; jj < n; ++jj) {
    Vec w = dT_projective(P, p, TangentVector(p, fr.basis_p[jj])).vec;
    m(0, jj) = sdd * w.dot(fr.basis_q[0]);
    for (Eigen::Index ii = 1; ii < n; ++ii) m(ii, jj) = w.dot(fr.basis_q[ii]);
  }

  LagrangianReport rep{p, q, d, m, 0.0, 0.0, 0.0};
  rep.asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
  rep.predicted_ratio = p.coords().dot(q.coords()) * sdd;
  rep.measured_ratio = n >= 2 && std::abs(m(1, 0)) > 1e-300
                           ? m(0, 1) / m(1, 0)
                           : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

std::pair<double, double> triple_product_identity(const std::array<double, 3>& l,
                                                  const Eigen::Vector3d& x) {
  Eigen::Vector3d Px(l[0] * x[0], l[1] * x[1], l[2] * x[2]);
  Eigen::Vector3d P2x(l[0] * Px[0], l[1] * Px[1], l[2] * Px[2]);
  double lhs = P2x.dot(Px.cross(x));
  double rhs = (l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2]) * x[0] * x[1] * x[2];
  return {lhs, rhs};
}

}  // namespace sphereot
