#include "sphereot/groups.hpp"

#include <cmath>

namespace sphereot {

namespace {

Mat minkowski_form(Eigen::Index size) {
  Mat J = Mat::Identity(size, size);
  J(0, 0) = -1.0;
  return J;
}

}  // namespace

LorentzElement::LorentzElement(Mat mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 3)
    fail(ErrorCode::NotLorentz, "Lorentz matrix must be square, size >= 3");
  Mat J = minkowski_form(mat_.rows());
  double defect = (mat_.transpose() * J * mat_ - J).cwiseAbs().maxCoeff();
  if (defect > policy().group_gate_tol)
    fail(ErrorCode::NotLorentz, "matrix does not preserve the (1,n+1) form");
  if (mat_(0, 0) <= 0.0)
    fail(ErrorCode::NotLorentz, "matrix is not orthochronous (mat_00 <= 0)");
  if (mat_.determinant() <= 0.0)
    fail(ErrorCode::NotLorentz, "matrix has nonpositive determinant");
}

LorentzElement LorentzElement::identity(int n) {
  return LorentzElement(Mat::Identity(n + 2, n + 2));
}

LorentzElement LorentzElement::operator*(const LorentzElement& other) const {
  return LorentzElement(mat_ * other.mat_);
}

Mat SymmetricGenerator::matrix() const {
  Eigen::Index m = v.size() + 1;
  Mat X = Mat::Zero(m, m);
  X.row(0).tail(v.size()) = v.transpose();
  X.col(0).tail(v.size()) = v;
  return X;
}

ProjectiveElement::ProjectiveElement(Mat mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 2)
    fail(ErrorCode::NotProjective, "projective matrix must be square, size >= 2");
  if (mat_.determinant() <= 0.0)
    fail(ErrorCode::NotProjective, "projective matrix needs positive determinant");
}

ProjectiveElement ProjectiveElement::operator*(const ProjectiveElement& other) const {
  return ProjectiveElement(mat_ * other.mat_);
}

LorentzElement CartanFactors::reconstruct() const {
  Eigen::Index m = generator.v.size() + 1;
  Mat Q = Mat::Identity(m, m);
  Q.bottomRightCorner(m - 1, m - 1) = rotation;
  return exp_generator(generator) * LorentzElement(Q);
}

SpherePoint conformal_act(const LorentzElement& A, const SpherePoint& u) {
  if (u.ambient_dim() != A.mat().rows() - 1)
    fail(ErrorCode::SizeMismatch, "point dimension does not match group element");
  Vec w(u.ambient_dim() + 1);
  w[0] = 1.0;
  w.tail(u.ambient_dim()) = u.coords();
  w = A.mat() * w;
  // w_0 > 0 on the identity component.
  return SpherePoint::normalized(w.tail(u.ambient_dim()) / w[0]);
}

SpherePoint projective_act(const Mat& A, const SpherePoint& p) {
  if (p.ambient_dim() != A.rows())
    fail(ErrorCode::SizeMismatch, "point dimension does not match group element");
  return SpherePoint::normalized(A * p.coords());
}

SpherePoint projective_act(const ProjectiveElement& A, const SpherePoint& p) {
  return projective_act(A.mat(), p);
}

LorentzElement exp_generator(const SymmetricGenerator& g) {
  // X^3 = a^2 X with a = |v|, so
  //   exp(X) = I + sinh(a)/a X + (cosh(a)-1)/a^2 X^2.
  Eigen::Index m = g.v.size() + 1;
  double a = g.v.norm();
  Mat X = g.matrix();
  double c1, c2;
  if (a < 1e-6) {
    c1 = 1.0 + a * a / 6.0;
    c2 = 0.5 + a * a / 24.0;
  } else {
    c1 = std::sinh(a) / a;
    c2 = (std::cosh(a) - 1.0) / (a * a);
  }
  return LorentzElement(Mat::Identity(m, m) + c1 * X + c2 * (X * X));
}

CartanFactors cartan_decompose(const LorentzElement& A) {
  // A = exp(X) Q with X in the p-part and Q = diag(1, O); then
  // A A^t = exp(2X), symmetric positive definite.
  Eigen::Index m = A.mat().rows();
  Mat M = A.mat() * A.mat().transpose();
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "eigendecomposition of A A^t failed");
  Vec logs = es.eigenvalues().array().log() * 0.5;
  Mat X = es.eigenvectors() * logs.asDiagonal() * es.eigenvectors().transpose();

  CartanFactors out;
  out.generator.v = X.col(0).tail(m - 1);
  LorentzElement expX = exp_generator(out.generator);
  // exp(-X) = exp of the negated generator
  SymmetricGenerator neg{-out.generator.v};
  Mat Q = exp_generator(neg).mat() * A.mat();
  out.rotation = Q.bottomRightCorner(m - 1, m - 1);
  return out;
}

PolarPair polar_decompose(const ProjectiveElement& A) {
  Eigen::SelfAdjointEigenSolver<Mat> es(A.mat() * A.mat().transpose());
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "eigendecomposition of A A^t failed");
  Vec roots = es.eigenvalues().array().sqrt();
  PolarPair out;
  out.symmetric_part = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().transpose();
  Mat Pinv = es.eigenvectors() * roots.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  out.rotation_part = Pinv * A.mat();
  return out;
}

TangentVector conformal_flow_field(const SymmetricGenerator& g, const SpherePoint& p) {
  if (g.v.size() != p.ambient_dim())
    fail(ErrorCode::SizeMismatch, "generator dimension does not match point");
  return TangentVector(p, g.v - g.v.dot(p.coords()) * p.coords());
}

std::vector<double> eigenvalue_clusters(const Mat& symmetric_part, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetric_part, Eigen::EigenvaluesOnly);
  Vec ev = es.eigenvalues();
  double scale = std::max(std::abs(ev[0]), std::abs(ev[ev.size() - 1]));
  std::vector<double> reps;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (reps.empty() || ev[i] - reps.back() > rel_tol * scale) reps.push_back(ev[i]);
  }
  return reps;
}

}  // namespace sphereot
