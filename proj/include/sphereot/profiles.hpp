#pragma once

#include "sphereot/groups.hpp"
#include "sphereot/sphere.hpp"

namespace sphereot {

/// 1-D displacement profile driving the closed-form optimal maps: the
/// conformal profile g (2*pi-periodic) or the projective profile
/// f(x) = g(2x)/2 (pi-periodic). Both are odd with derivative > -1.
struct MeridianProfile {
  enum class Kind { ConformalG, ProjectiveF };

  Kind kind = Kind::ConformalG;
  double a = 0.0;

  double eval(double x) const;
  double deriv(double x) const;
  double period() const { return kind == Kind::ConformalG ? 2.0 * M_PI : M_PI; }
};

MeridianProfile g_profile(double a);
MeridianProfile f_profile(double a);

/// Map (cos x u, sin x v) -> (cos(x + f(x)) u, sin(x + f(x)) v) for the
/// splitting R^{n+1} = R^k + R^l.
struct ClosedFormMap {
  int k = 1, l = 1;
  MeridianProfile profile;

  SpherePoint forward(const SpherePoint& p) const;
};

ClosedFormMap conformal_map(double a, int n);
ClosedFormMap projective_map_two_eigen(double a, int k, int l);

/// phi(cos x u, sin x v) = integral of the profile from 0 to x.
double potential_phi(const MeridianProfile& profile, const SpherePoint& p, int k);

/// W(p) = f(x) (-sin x u, cos x v); satisfies Exp_p(W(p)) = forward(p).
TangentVector gradient_field_W(const MeridianProfile& profile, const SpherePoint& p,
                               int k);

/// Distance from p to its image under the conformal map with parameter a.
double displacement_distance(double a, const SpherePoint& p);

/// Max deviation of the circle double-cover diagram (squaring map rho
/// intertwines the projective exp(a/2 diag(1,-1)) with the conformal
/// exp(a (0 1; 1 0)) action) over uniformly sampled angles.
double double_cover_check(double a, int samples);

/// Closed-form conformal action for an arbitrary generator v: conjugates the
/// meridian map for |v| e_0 by a rotation taking e_0 to v/|v|.
SpherePoint conformal_closed_form_apply(const Vec& v, const SpherePoint& p);

}  // namespace sphereot
