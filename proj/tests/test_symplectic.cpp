#include <doctest.h>

#include <cmath>
#include <random>

#include "sphereot/symplectic.hpp"

using namespace sphereot;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(404);
  return r;
}

SpherePoint random_point(int ambient) {
  std::normal_distribution<double> nd;
  Vec v(ambient);
  for (int i = 0; i < ambient; ++i) v[i] = nd(rng());
  return SpherePoint::normalized(v);
}

Mat random_rotation(int m) {
  std::normal_distribution<double> nd;
  Mat M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = nd(rng());
  Eigen::HouseholderQR<Mat> qr(M);
  Mat Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace

TEST_CASE("omega matrix structure") {
  auto p = SpherePoint::basis(4, 0);
  Vec qv = Vec::Zero(4);
  qv[0] = std::cos(M_PI / 2);
  qv[1] = std::sin(M_PI / 2);
  SpherePoint q(qv);
  Mat om = omega_matrix(p, q);
  REQUIRE(om.rows() == 6);
  SUBCASE("d = pi/2 block values") {
    CHECK(om(0, 3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(om(1, 4) == doctest::Approx(M_PI / 2).epsilon(1e-12));
    CHECK(om(2, 5) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  }
  SUBCASE("antisymmetric and nondegenerate") {
    CHECK((om + om.transpose()).norm() < 1e-12);
    CHECK(std::abs(om.determinant()) > 1e-6);
  }
  SUBCASE("small-distance limit A -> I") {
    Vec close = Vec::Zero(4);
    close[0] = std::cos(1e-6);
    close[1] = std::sin(1e-6);
    Mat om0 = omega_matrix(p, SpherePoint(close));
    CHECK(om0(1, 4) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("degenerate distances rejected") {
    CHECK_THROWS_AS(omega_matrix(p, p), Error);
  }
}

TEST_CASE("omega numeric pinned entries") {
  auto p = SpherePoint::basis(3, 0);
  Vec qv = Vec::Zero(3);
  qv[0] = std::cos(1.0);
  qv[1] = std::sin(1.0);
  SpherePoint q(qv);
  CHECK(std::abs(omega_numeric(p, q, 0, 0, OmegaBlock::Mixed) - 1.0) < 1e-6);
  CHECK(std::abs(omega_numeric(p, q, 1, 1, OmegaBlock::Mixed) - 1.0 / std::sin(1.0)) <
        1e-6);
  CHECK(std::abs(omega_numeric(p, q, 1, 0, OmegaBlock::Mixed)) < 1e-6);
}

TEST_CASE("omega numeric agrees with the closed form, including zero blocks") {
  for (int ambient : {3, 4}) {
    int n = ambient - 1;
    int done = 0;
    while (done < 25) {
      auto p = random_point(ambient), q = random_point(ambient);
      double d = geodesic_distance(p, q);
      if (d < 0.05 || d > M_PI - 0.05) continue;
      ++done;
      Mat om = omega_matrix(p, q);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(omega_numeric(p, q, i, j, OmegaBlock::Mixed) - om(i, n + j)) <
                1e-6);
          CHECK(std::abs(omega_numeric(p, q, i, j, OmegaBlock::Horizontal)) < 1e-6);
          CHECK(std::abs(omega_numeric(p, q, i, j, OmegaBlock::Vertical)) < 1e-6);
        }
    }
  }
}

TEST_CASE("dT of the projective map") {
  SUBCASE("identity matrix gives the identity differential") {
    auto p = random_point(3);
    Vec w(3);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 3; ++i) w[i] = nd(rng());
    TangentVector v(p, w - w.dot(p.coords()) * p.coords());
    TangentVector out = dT_projective(Mat::Identity(3, 3), p, v);
    CHECK((out.vec - v.vec).norm() < 1e-13);
  }
  SUBCASE("finite-difference oracle and orthogonality to q") {
    Mat P = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    std::normal_distribution<double> nd;
    for (int t = 0; t < 50; ++t) {
      auto p = random_point(3);
      Vec w(3);
      for (int i = 0; i < 3; ++i) w[i] = nd(rng());
      TangentVector v(p, w - w.dot(p.coords()) * p.coords());
      TangentVector out = dT_projective(P, p, v);
      SpherePoint q = projective_act(P, p);
      CHECK(std::abs(out.vec.dot(q.coords())) < 1e-12);
      double h = 1e-6;
      Vec fd = (projective_act(P, exp_map(TangentVector(p, h * v.vec))).coords() -
                projective_act(P, exp_map(TangentVector(p, -h * v.vec))).coords()) /
               (2 * h);
      CHECK((out.vec - fd).norm() < 1e-6 * std::max(1.0, v.norm()));
    }
  }
}

TEST_CASE("lagrangian dichotomy") {
  SUBCASE("two-eigenvalue maps have Lagrangian graphs") {
    Mat P = Eigen::Vector3d(2.0, 2.0, 5.0).asDiagonal();
    for (int t = 0; t < 200; ++t) {
      LagrangianReport rep = lagrangian_test(P, random_point(3));
      CHECK(rep.asymmetry < 1e-8);
    }
    // also on S^3
    Mat P4 = Eigen::Vector4d(2.0, 2.0, 5.0, 5.0).asDiagonal();
    for (int t = 0; t < 200; ++t) {
      LagrangianReport rep = lagrangian_test(P4, random_point(4));
      CHECK(rep.asymmetry < 1e-8);
    }
  }
  SUBCASE("diag(1,2,3) fails on W with the predicted entry ratio") {
    Mat P = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    Vec ones(3);
    ones << 1, 1, 1;
    LagrangianReport rep = lagrangian_test(P, SpherePoint::normalized(ones));
    CHECK(rep.asymmetry > 1e-4);
    CHECK(std::abs(rep.measured_ratio - rep.predicted_ratio) < 1e-10);
    CHECK(std::abs(rep.predicted_ratio - 1.0) > 1e-4);
    int tested = 0;
    while (tested < 200) {
      auto p = random_point(3);
      if (std::abs(p[0]) < 1e-2 || std::abs(p[1]) < 1e-2 || std::abs(p[2]) < 1e-2)
        continue;  // outside W the proposition asserts nothing
      ++tested;
      LagrangianReport r = lagrangian_test(P, p);
      CHECK(r.asymmetry > 0.0);
      CHECK(std::abs(r.measured_ratio - r.predicted_ratio) < 1e-10);
    }
  }
  SUBCASE("fixed points rejected") {
    Mat P = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    CHECK_THROWS_AS(lagrangian_test(P, SpherePoint::basis(3, 0)), Error);
  }
  SUBCASE("rotation covariance of the asymmetry verdict") {
    Mat P = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
    for (int t = 0; t < 20; ++t) {
      auto p = random_point(3);
      double base = lagrangian_test(P, p).asymmetry;
      Mat R = random_rotation(3);
      Mat RP = R * P * R.transpose();
      double rotated =
          lagrangian_test(RP, SpherePoint::normalized(R * p.coords())).asymmetry;
      // symmetry of dT is frame-covariant; verdicts must agree
      CHECK(((base < 1e-8) == (rotated < 1e-8) ||
             std::abs(base - rotated) < 1e-6));
    }
  }
}

TEST_CASE("triple product identity") {
  auto both = triple_product_identity({1.0, 1.0, 2.0}, Eigen::Vector3d(0.3, -1.0, 2.0));
  CHECK(both.first == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(both.second == doctest::Approx(0.0).epsilon(1e-12));
  both = triple_product_identity({1.0, 2.0, 3.0}, Eigen::Vector3d(0.0, 1.0, 1.0));
  CHECK(std::abs(both.first) < 1e-12);
  both = triple_product_identity({1.0, 2.0, 3.0}, Eigen::Vector3d(1.0, 1.0, 1.0));
  CHECK(both.first == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(both.second == doctest::Approx(-2.0).epsilon(1e-12));
  std::normal_distribution<double> nd;
  for (int t = 0; t < 100; ++t) {
    Eigen::Vector3d x(nd(rng()), nd(rng()), nd(rng()));
    auto lr = triple_product_identity({0.5, 1.7, 2.9}, x);
    CHECK(std::abs(lr.first - lr.second) < 1e-10);
  }
}
