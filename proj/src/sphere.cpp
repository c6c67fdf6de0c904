#include "sphereot/sphere.hpp"

#include <cmath>

namespace sphereot {

SpherePoint::SpherePoint(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    fail(ErrorCode::InvalidArgument, "SpherePoint needs ambient dimension >= 2");
  double n = coords_.norm();
  if (std::abs(n - 1.0) > policy().unit_tol)
    fail(ErrorCode::InvalidArgument, "SpherePoint coordinates are not unit length");
  coords_ /= n;
}

SpherePoint SpherePoint::normalized(Vec coords) {
  double n = coords.norm();
  if (n < 1e-14)
    fail(ErrorCode::InvalidArgument, "cannot normalize a near-zero vector");
  return SpherePoint(coords / n);
}

SpherePoint SpherePoint::basis(Eigen::Index ambient, Eigen::Index i) {
  Vec e = Vec::Zero(ambient);
  e[i] = 1.0;
  return SpherePoint(std::move(e));
}

TangentVector::TangentVector(SpherePoint base_, Vec vec_)
    : base(std::move(base_)), vec(std::move(vec_)) {
  if (vec.size() != base.ambient_dim())
    fail(ErrorCode::SizeMismatch, "tangent vector dimension mismatch");
  double t = vec.dot(base.coords());
  if (std::abs(t) > policy().unit_tol * std::max(1.0, vec.norm()))
    fail(ErrorCode::InvalidArgument, "vector is not tangent to the sphere at base");
  vec -= t * base.coords();
}

SpherePoint SplitCoordinates::reconstruct() const {
  Vec p(k + l);
  p.head(k) = std::cos(x) * u;
  p.tail(l) = std::sin(x) * v;
  return SpherePoint(std::move(p));
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  // atan2 of the (sin, cos) pair is well conditioned at both ends of [0, pi],
  // unlike acos of the clamped dot product.
  double c = p.coords().dot(q.coords());
  double s = (q.coords() - c * p.coords()).norm();
  return std::atan2(s, c);
}

SpherePoint exp_map(const TangentVector& w) {
  double t = w.norm();
  if (t < 1e-14) return w.base;
  return SpherePoint(std::cos(t) * w.base.coords() + (std::sin(t) / t) * w.vec);
}

TangentVector log_map(const SpherePoint& p, const SpherePoint& q) {
  double d = geodesic_distance(p, q);
  if (d >= M_PI - policy().cut_locus_margin)
    fail(ErrorCode::AntipodalPoints, "log map undefined near the cut locus");
  Vec w = q.coords() - q.coords().dot(p.coords()) * p.coords();
  double n = w.norm();
  if (n < 1e-14) return TangentVector(p, Vec::Zero(p.ambient_dim()));
  return TangentVector(p, (d / n) * w);
}

TangentVector parallel_transport(const SpherePoint& p, const SpherePoint& q,
                                 const TangentVector& w) {
  double d = geodesic_distance(p, q);
  if (d <= policy().cut_locus_margin) return TangentVector(q, w.vec);
  if (d >= M_PI - policy().cut_locus_margin)
    fail(ErrorCode::AntipodalPoints, "parallel transport undefined near the cut locus");
  TangentVector lg = log_map(p, q);
  Vec dir = lg.vec / d;  // gamma'(0)
  double along = w.vec.dot(dir);
  Vec ortho = w.vec - along * dir;
  // gamma'(d) = -sin d * p + cos d * dir
  Vec dir_q = -std::sin(d) * p.coords() + std::cos(d) * dir;
  return TangentVector(q, ortho + along * dir_q);
}

SplitCoordinates split_coords(const SpherePoint& p, int k) {
  int ambient = static_cast<int>(p.ambient_dim());
  if (k < 1 || k > ambient - 1)
    fail(ErrorCode::InvalidArgument, "split dimension k out of range");
  SplitCoordinates s;
  s.k = k;
  s.l = ambient - k;
  Vec head = p.coords().head(k);
  Vec tail = p.coords().tail(s.l);
  double ch = head.norm();
  double sh = tail.norm();
  s.x = std::atan2(sh, ch);  // in [0, pi/2] since ch, sh >= 0
  if (ch < 1e-14) {
    s.u = Vec::Zero(k);
    s.u[0] = 1.0;
    s.degenerate_u = true;
  } else {
    s.u = head / ch;
  }
  if (sh < 1e-14) {
    s.v = Vec::Zero(s.l);
    s.v[0] = 1.0;
    s.degenerate_v = true;
  } else {
    s.v = tail / sh;
  }
  return s;
}

OmegaFrame adapted_frame(const SpherePoint& p, const SpherePoint& q) {
  double d = geodesic_distance(p, q);
  if (d <= policy().cut_locus_margin || d >= M_PI - policy().cut_locus_margin)
    fail(ErrorCode::DegenerateDistance, "adapted frame needs 0 < d < pi");
  Eigen::Index ambient = p.ambient_dim();
  Eigen::Index n = ambient - 1;

  OmegaFrame frame{p, q, d, {}, {}};
  frame.basis_p.reserve(n);
  Vec u1 = log_map(p, q).vec / d;
  frame.basis_p.push_back(u1);

  // Complete with canonical vectors projected to {p, u1}^perp, in order,
  // skipping near-dependent candidates.
  for (Eigen::Index i = 0; i < ambient && (Eigen::Index)frame.basis_p.size() < n; ++i) {
    Vec c = Vec::Zero(ambient);
    c[i] = 1.0;
    c -= c.dot(p.coords()) * p.coords();
    for (const Vec& b : frame.basis_p) c -= c.dot(b) * b;
    double nn = c.norm();
    if (nn < policy().frame_skip_tol) continue;
    frame.basis_p.push_back(c / nn);
  }
  if ((Eigen::Index)frame.basis_p.size() != n)
    fail(ErrorCode::DegenerateCoordinates, "failed to complete the adapted frame");

  frame.basis_q.reserve(n);
  for (const Vec& b : frame.basis_p)
    frame.basis_q.push_back(parallel_transport(p, q, TangentVector(p, b)).vec);
  return frame;
}

}  // namespace sphereot
