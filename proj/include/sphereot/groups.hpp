#pragma once

#include "sphereot/sphere.hpp"

namespace sphereot {

/// Element of the identity component O_o(1, n+1), acting conformally on S^n
/// through the projectivized light cone. J = diag(-1, I_{n+1}).
class LorentzElement {
public:
  explicit LorentzElement(Mat mat);

  static LorentzElement identity(int n);

  const Mat& mat() const { return mat_; }
  int sphere_dim() const { return static_cast<int>(mat_.rows()) - 2; }

  LorentzElement operator*(const LorentzElement& other) const;

private:
  Mat mat_;
};

/// Generator in the p-part of o(1, n+1): blocks (0 v^t; v 0), v in R^{n+1}.
struct SymmetricGenerator {
  Vec v;

  Mat matrix() const;  // the (n+2)x(n+2) Lie-algebra element
};

/// Positive-determinant linear map of R^{n+1}, acting projectively on S^n.
class ProjectiveElement {
public:
  explicit ProjectiveElement(Mat mat);

  const Mat& mat() const { return mat_; }
  int sphere_dim() const { return static_cast<int>(mat_.rows()) - 1; }

  ProjectiveElement operator*(const ProjectiveElement& other) const;

private:
  Mat mat_;
};

struct CartanFactors {
  SymmetricGenerator generator;  // A = exp(X_v) * diag(1, rotation)
  Mat rotation;                  // (n+1)x(n+1), in SO(n+1)

  LorentzElement reconstruct() const;
};

struct PolarPair {
  Mat symmetric_part;  // positive definite self-adjoint P
  Mat rotation_part;   // O in SO(n+1), A = P * O
};

SpherePoint conformal_act(const LorentzElement& A, const SpherePoint& u);
SpherePoint projective_act(const ProjectiveElement& A, const SpherePoint& p);
SpherePoint projective_act(const Mat& A, const SpherePoint& p);

LorentzElement exp_generator(const SymmetricGenerator& g);
CartanFactors cartan_decompose(const LorentzElement& A);
PolarPair polar_decompose(const ProjectiveElement& A);

/// V(p) = v - <v,p> p, the velocity field of t -> exp(t g) acting on S^n.
TangentVector conformal_flow_field(const SymmetricGenerator& g, const SpherePoint& p);

/// Eigenvalues of the symmetric polar factor, grouped at relative tolerance;
/// returns one representative per cluster, ascending.
std::vector<double> eigenvalue_clusters(const Mat& symmetric_part, double rel_tol);

}  // namespace sphereot
