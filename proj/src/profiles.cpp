#include "sphereot/profiles.hpp"

#include <cmath>

namespace sphereot {

namespace {

// h(u, t) = u sinh(at) + cosh(at); strictly positive for |u| <= 1.
double meridian_h(double a, double u, double t) {
  return u * std::sinh(a * t) + std::cosh(a * t);
}

double g_eval(double a, double x) {
  if (a == 0.0) return 0.0;
  const Quadrature& q = Quadrature::get(policy().quadrature_order);
  double cx = std::cos(x), sx = std::sin(x);
  return -q.integrate01([&](double t) { return a * sx / meridian_h(a, cx, t); });
}

double g_deriv(double a, double x) {
  return 1.0 / (std::cos(x) * std::sinh(a) + std::cosh(a)) - 1.0;
}

// Meridian displacement along the great circle through e (the axis) and p.
SpherePoint axis_meridian_apply(const MeridianProfile& prof, const Vec& axis,
                                const SpherePoint& p) {
  double c = axis.dot(p.coords());
  Vec w = p.coords() - c * axis;
  double wn = w.norm();
  if (wn < 1e-14) return p;  // poles are fixed (profile vanishes at 0 and pi)
  w /= wn;
  // atan2 keeps x well conditioned near the poles; the angle-addition form
  // reuses the exact components (c, wn) = (cos x, sin x).
  double g = prof.eval(std::atan2(wn, c));
  double cg = std::cos(g), sg = std::sin(g);
  return SpherePoint::normalized((c * cg - wn * sg) * axis + (wn * cg + c * sg) * w);
}

}  // namespace

// The projective profile is half the conformal one at the doubled angle:
// squaring the circle intertwines the two meridian maps, so
// x + f(x) = (2x + g(2x)) / 2. This is the only scaling that leaves f
// pi-periodic.
double MeridianProfile::eval(double x) const {
  return kind == Kind::ConformalG ? g_eval(a, x) : 0.5 * g_eval(a, 2.0 * x);
}

double MeridianProfile::deriv(double x) const {
  return kind == Kind::ConformalG ? g_deriv(a, x) : g_deriv(a, 2.0 * x);
}

MeridianProfile g_profile(double a) {
  return MeridianProfile{MeridianProfile::Kind::ConformalG, a};
}

MeridianProfile f_profile(double a) {
  return MeridianProfile{MeridianProfile::Kind::ProjectiveF, a};
}

SpherePoint ClosedFormMap::forward(const SpherePoint& p) const {
  if (p.ambient_dim() != k + l)
    fail(ErrorCode::SizeMismatch, "point dimension does not match the splitting");
  if (profile.kind == MeridianProfile::Kind::ConformalG) {
    // Representative with u = +1 and x in [0, pi]; g is only 2pi-periodic.
    Vec axis = Vec::Zero(p.ambient_dim());
    axis[0] = 1.0;
    return axis_meridian_apply(profile, axis, p);
  }
  SplitCoordinates s = split_coords(p, k);
  double cx = p.coords().head(k).norm(), sx = p.coords().tail(l).norm();
  double fx = profile.eval(s.x);
  double cf = std::cos(fx), sf = std::sin(fx);
  Vec img(p.ambient_dim());
  img.head(k) = (cx * cf - sx * sf) * s.u;
  img.tail(l) = (sx * cf + cx * sf) * s.v;
  return SpherePoint::normalized(img);
}

ClosedFormMap conformal_map(double a, int n) {
  return ClosedFormMap{1, n, g_profile(a)};
}

ClosedFormMap projective_map_two_eigen(double a, int k, int l) {
  if (k < 1 || l < 1) fail(ErrorCode::InvalidArgument, "need k, l >= 1");
  return ClosedFormMap{k, l, f_profile(a)};
}

double potential_phi(const MeridianProfile& profile, const SpherePoint& p, int k) {
  const Quadrature& q = Quadrature::get(policy().quadrature_order);
  double x;
  if (profile.kind == MeridianProfile::Kind::ConformalG) {
    if (k != 1) fail(ErrorCode::InvalidArgument, "conformal potential needs k = 1");
    x = std::acos(clamp_unit(p[0]));
  } else {
    x = split_coords(p, k).x;  // normalized to [0, pi/2]
  }
  return q.integrate_to(x, [&](double s) { return profile.eval(s); });
}

TangentVector gradient_field_W(const MeridianProfile& profile, const SpherePoint& p,
                               int k) {
  Eigen::Index ambient = p.ambient_dim();
  Vec dir(ambient);
  double fx;
  if (profile.kind == MeridianProfile::Kind::ConformalG) {
    if (k != 1) fail(ErrorCode::InvalidArgument, "conformal field needs k = 1");
    double x = std::acos(clamp_unit(p[0]));
    Vec tail = p.coords().tail(ambient - 1);
    double tn = tail.norm();
    Vec v = tn < 1e-14 ? Vec::Unit(ambient - 1, 0).eval() : Vec(tail / tn);
    dir[0] = -std::sin(x);
    dir.tail(ambient - 1) = std::cos(x) * v;
    fx = profile.eval(x);
  } else {
    SplitCoordinates s = split_coords(p, k);
    dir.head(s.k) = -std::sin(s.x) * s.u;
    dir.tail(s.l) = std::cos(s.x) * s.v;
    fx = profile.eval(s.x);
  }
  return TangentVector(p, fx * dir);
}

double displacement_distance(double a, const SpherePoint& p) {
  const Quadrature& q = Quadrature::get(policy().quadrature_order);
  double cx = clamp_unit(p[0]);
  double sx = std::sqrt(std::max(0.0, 1.0 - cx * cx));  // |sin x|
  return q.integrate01([&](double t) { return a * sx / meridian_h(a, cx, t); });
}

double double_cover_check(double a, int samples) {
  if (samples < 1) fail(ErrorCode::InvalidArgument, "need samples >= 1");
  double worst = 0.0;
  double ea = std::exp(a), eia = std::exp(-a);
  double ch = std::cosh(a), sh = std::sinh(a);
  for (int i = 0; i < samples; ++i) {
    double x = 2.0 * M_PI * i / samples;
    double cx = std::cos(x), sx = std::sin(x);
    // projective exp(a/2 diag(1,-1)) on the circle, then rho(z) = z^2
    double norm = std::sqrt(ea * cx * cx + eia * sx * sx);
    double p0 = std::exp(0.5 * a) * cx / norm;
    double p1 = std::exp(-0.5 * a) * sx / norm;
    double lhs0 = p0 * p0 - p1 * p1, lhs1 = 2.0 * p0 * p1;
    // rho(z) first, then the conformal exp(a (0 1; 1 0)) action
    double c2 = std::cos(2.0 * x), s2 = std::sin(2.0 * x);
    double den = sh * c2 + ch;
    double rhs0 = (ch * c2 + sh) / den, rhs1 = s2 / den;
    worst = std::max(worst, std::hypot(lhs0 - rhs0, lhs1 - rhs1));
  }
  return worst;
}

SpherePoint conformal_closed_form_apply(const Vec& v, const SpherePoint& p) {
  if (v.size() != p.ambient_dim())
    fail(ErrorCode::SizeMismatch, "generator dimension does not match point");
  double a = v.norm();
  if (a < 1e-15) return p;
  return axis_meridian_apply(g_profile(a), v / a, p);
}

}  // namespace sphereot
