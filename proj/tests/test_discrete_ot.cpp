#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sphereot/discrete_ot.hpp"
#include "sphereot/profiles.hpp"

using namespace sphereot;

namespace {

double plan_cost(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                 const std::vector<int>& sigma) {
  double c = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    double d = geodesic_distance(mu.points[i], nu.points[sigma[i]]);
    c += 0.5 * d * d / mu.size();
  }
  return c;
}

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const ClosedFormMap& m) {
  std::vector<SpherePoint> pts;
  pts.reserve(mu.points.size());
  for (const auto& p : mu.points) pts.push_back(m.forward(p));
  return DiscreteMeasure(std::move(pts), mu.weights);
}

}  // namespace

TEST_CASE("sampling schemes") {
  SUBCASE("uniform circle angles") {
    DiscreteMeasure mu = sample_sphere(1, 8, SampleScheme::UniformCircle);
    CHECK((mu.points[0].coords() - Eigen::Vector2d(1, 0)).norm() < 1e-15);
    CHECK((mu.points[2].coords() - Eigen::Vector2d(0, 1)).norm() < 1e-15);
    CHECK((mu.points[4].coords() - Eigen::Vector2d(-1, 0)).norm() < 1e-14);
    CHECK((mu.points[6].coords() - Eigen::Vector2d(0, -1)).norm() < 1e-14);
    CHECK(std::abs(mu.weights.sum() - 1.0) < 1e-15);
  }
  SUBCASE("fibonacci lattice quality") {
    DiscreteMeasure mu = sample_sphere(2, 1000, SampleScheme::FibonacciS2);
    Vec nn(1000);
    for (int i = 0; i < 1000; ++i) {
      double best = 1e300;
      for (int j = 0; j < 1000; ++j)
        if (j != i) best = std::min(best, geodesic_distance(mu.points[i], mu.points[j]));
      nn[i] = best;
    }
    double mean = nn.mean();
    double var = (nn.array() - mean).square().mean();
    CHECK(std::sqrt(var) / mean < 0.5);
  }
  SUBCASE("seeded random determinism") {
    DiscreteMeasure a = sample_sphere(3, 50, SampleScheme::SeededRandom, 42);
    DiscreteMeasure b = sample_sphere(3, 50, SampleScheme::SeededRandom, 42);
    for (int i = 0; i < 50; ++i)
      CHECK((a.points[i].coords() - b.points[i].coords()).norm() == 0.0);
  }
  SUBCASE("scheme/dimension mismatch") {
    CHECK_THROWS_AS(sample_sphere(2, 10, SampleScheme::UniformCircle), Error);
    CHECK_THROWS_AS(sample_sphere(1, 10, SampleScheme::FibonacciS2), Error);
  }
}

TEST_CASE("exact solver") {
  SUBCASE("self transport is the identity permutation") {
    DiscreteMeasure mu = sample_sphere(2, 32, SampleScheme::SeededRandom, 3);
    TransportPlan plan = solve_exact(mu, mu);
    CHECK(plan.cost < 1e-12);
    std::vector<int> sigma = solve_assignment(mu, mu);
    for (int i = 0; i < 32; ++i) CHECK(sigma[i] == i);
  }
  SUBCASE("circle rotation by one lattice step: brute-force oracle at N = 8") {
    DiscreteMeasure mu = sample_sphere(1, 8, SampleScheme::UniformCircle);
    std::vector<SpherePoint> rotated;
    for (int i = 0; i < 8; ++i) rotated.push_back(mu.points[(i + 1) % 8]);
    DiscreteMeasure nu(rotated, mu.weights);
    std::vector<int> sigma = solve_assignment(mu, nu);
    double cost = plan_cost(mu, nu, sigma);
    std::vector<int> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do best = std::min(best, plan_cost(mu, nu, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(cost == doctest::Approx(best).epsilon(1e-13));
    // the assigned target is the same geometric point (zero displacement)
    for (int i = 0; i < 8; ++i)
      CHECK(geodesic_distance(mu.points[i], nu.points[sigma[i]]) < 1e-12);
  }
  SUBCASE("circle N = 64 conformal pushforward matches the monotone map") {
    DiscreteMeasure mu = sample_sphere(1, 64, SampleScheme::UniformCircle);
    ClosedFormMap m = conformal_map(0.5, 1);
    DiscreteMeasure nu = pushforward(mu, m);
    std::vector<int> sigma = solve_assignment(mu, nu);
    for (int i = 0; i < 64; ++i) CHECK(sigma[i] == i);
  }
  SUBCASE("2-swap cyclical monotonicity of exact plans") {
    DiscreteMeasure mu = sample_sphere(2, 128, SampleScheme::SeededRandom, 5);
    DiscreteMeasure nu = sample_sphere(2, 128, SampleScheme::SeededRandom, 6);
    std::vector<int> sigma = solve_assignment(mu, nu);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 127);
    auto half_d2 = [&](int i, int j) {
      double d = geodesic_distance(mu.points[i], nu.points[j]);
      return 0.5 * d * d;
    };
    for (int t = 0; t < 10000; ++t) {
      int i = pick(rng), j = pick(rng);
      if (i == j) continue;
      CHECK(half_d2(i, sigma[i]) + half_d2(j, sigma[j]) <=
            half_d2(i, sigma[j]) + half_d2(j, sigma[i]) + 1e-12);
    }
  }
  SUBCASE("input gates") {
    DiscreteMeasure mu = sample_sphere(1, 8, SampleScheme::UniformCircle);
    DiscreteMeasure nu = sample_sphere(1, 16, SampleScheme::UniformCircle);
    CHECK_THROWS_AS(solve_exact(mu, nu), Error);
    Vec w = Vec::Constant(8, 1.0 / 8);
    w[0] = 0.2;
    w[1] = 1.0 - 0.2 - 6.0 / 8;
    DiscreteMeasure lop(mu.points, w);
    CHECK_THROWS_AS(solve_exact(lop, mu), Error);
  }
}

TEST_CASE("entropic solver") {
  SUBCASE("self transport stays near the identity") {
    DiscreteMeasure mu = sample_sphere(2, 200, SampleScheme::FibonacciS2);
    TransportPlan plan = solve_entropic(mu, mu);
    CHECK(plan.converged);
    CHECK(plan.marginal_error < 1e-6);
    auto T = extract_map(plan);
    double spacing = mean_spacing(mu);
    for (int i = 0; i < 200; ++i)
      CHECK(geodesic_distance(mu.points[i], T[i]) < 2.0 * spacing);
  }
  SUBCASE("huge epsilon gives the product measure") {
    DiscreteMeasure mu = sample_sphere(1, 16, SampleScheme::UniformCircle);
    DiscreteMeasure nu = sample_sphere(1, 16, SampleScheme::SeededRandom, 8);
    EntropicConfig cfg;
    cfg.schedule = {1e6};
    TransportPlan plan = solve_entropic(mu, nu, cfg);
    Mat product = mu.weights * nu.weights.transpose();
    CHECK((plan.coupling - product).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("circle conformal transport recovers the closed form") {
    DiscreteMeasure mu = sample_sphere(1, 512, SampleScheme::UniformCircle);
    ClosedFormMap m = conformal_map(0.5, 1);
    TransportPlan plan = solve_entropic(mu, pushforward(mu, m));
    CHECK(plan.converged);
    auto T = extract_map(plan);
    double step = 2.0 * M_PI / 512;
    int good = 0;
    for (int i = 0; i < 512; ++i)
      if (geodesic_distance(T[i], m.forward(mu.points[i])) <= step) ++good;
    CHECK(good >= 507);  // >= 99%
  }
  SUBCASE("cost is nonincreasing along the anneal") {
    DiscreteMeasure mu = sample_sphere(2, 100, SampleScheme::FibonacciS2);
    DiscreteMeasure nu = sample_sphere(2, 100, SampleScheme::SeededRandom, 9);
    std::vector<double> anneal = {0.1, 0.03, 0.01, 0.003, 0.001};
    double prev = 1e300;
    for (std::size_t k = 1; k <= anneal.size(); ++k) {
      EntropicConfig cfg;
      cfg.schedule.assign(anneal.begin(), anneal.begin() + k);
      double cost = solve_entropic(mu, nu, cfg).cost;
      CHECK(cost <= prev + 1e-9);
      prev = cost;
    }
  }
}

TEST_CASE("map extraction") {
  SUBCASE("permutation plans return the assigned targets") {
    DiscreteMeasure mu = sample_sphere(2, 64, SampleScheme::SeededRandom, 11);
    DiscreteMeasure nu = sample_sphere(2, 64, SampleScheme::SeededRandom, 12);
    TransportPlan plan = solve_exact(mu, nu);
    std::vector<int> sigma = solve_assignment(mu, nu);
    auto T = extract_map(plan);
    for (int i = 0; i < 64; ++i)
      CHECK((T[i].coords() - nu.points[sigma[i]].coords()).norm() < 1e-14);
  }
  SUBCASE("mass split across antipodal targets triggers the argmax fallback") {
    DiscreteMeasure mu = sample_sphere(1, 8, SampleScheme::UniformCircle);
    TransportPlan plan{mu, mu, Mat::Zero(8, 8)};
    for (int i = 0; i < 8; ++i) {
      plan.coupling(i, i) = 0.5 / 8;
      plan.coupling(i, (i + 4) % 8) = 0.5 / 8;  // antipodal split
    }
    auto T = extract_map(plan);
    // ties go to the lowest target index
    for (int i = 0; i < 8; ++i) {
      int expect = std::min(i, (i + 4) % 8);
      CHECK((T[i].coords() - mu.points[expect].coords()).norm() < 1e-14);
    }
  }
}

TEST_CASE("compare maps statistics") {
  DiscreteMeasure mu = sample_sphere(1, 32, SampleScheme::UniformCircle);
  SUBCASE("identical maps give zeros") {
    MapStats s = compare_maps(mu.points, mu.points);
    CHECK(s.mean < 1e-15);
    CHECK(s.max < 1e-15);
    CHECK(s.p95 < 1e-15);
  }
  SUBCASE("rotation by theta gives constant deviation theta") {
    double theta = 0.37;
    Mat R(2, 2);
    R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    std::vector<SpherePoint> rotated;
    for (const auto& p : mu.points)
      rotated.push_back(SpherePoint::normalized(R * p.coords()));
    MapStats s = compare_maps(mu.points, rotated);
    CHECK(s.mean == doctest::Approx(theta).epsilon(1e-12));
    CHECK(s.max == doctest::Approx(theta).epsilon(1e-12));
    CHECK(s.p95 == doctest::Approx(theta).epsilon(1e-12));
  }
}

TEST_CASE("rotation equivariance of the exact solve") {
  DiscreteMeasure mu = sample_sphere(2, 64, SampleScheme::SeededRandom, 13);
  DiscreteMeasure nu = sample_sphere(2, 64, SampleScheme::SeededRandom, 14);
  std::vector<int> sigma = solve_assignment(mu, nu);
  std::mt19937_64 rng(15);
  std::normal_distribution<double> nd;
  Mat M(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = nd(rng);
  Eigen::HouseholderQR<Mat> qr(M);
  Mat R = qr.householderQ();
  if (R.determinant() < 0) R.col(0) *= -1.0;
  auto rotate = [&](const DiscreteMeasure& m) {
    std::vector<SpherePoint> pts;
    for (const auto& p : m.points) pts.push_back(SpherePoint::normalized(R * p.coords()));
    return DiscreteMeasure(std::move(pts), m.weights);
  };
  std::vector<int> sigma_rot = solve_assignment(rotate(mu), rotate(nu));
  for (int i = 0; i < 64; ++i) CHECK(sigma[i] == sigma_rot[i]);
}

TEST_CASE("numerical polar factorization") {
  SUBCASE("rotations factor as T = identity, U = S") {
    DiscreteMeasure mu = sample_sphere(2, 400, SampleScheme::FibonacciS2);
    double theta = 0.9;
    Mat R = Mat::Identity(3, 3);
    R(0, 0) = std::cos(theta);
    R(0, 1) = -std::sin(theta);
    R(1, 0) = std::sin(theta);
    R(1, 1) = std::cos(theta);
    auto S = [&](const SpherePoint& p) { return SpherePoint::normalized(R * p.coords()); };
    SolverConfig cfg;
    cfg.exact = true;
    NumericalFactorization nf = numerical_polar_factorization(S, mu, cfg);
    double spacing = mean_spacing(mu);
    int id_ok = 0, u_ok = 0;
    for (int i = 0; i < 400; ++i) {
      if (geodesic_distance(nf.T_samples[i], mu.points[i]) < 2.0 * spacing) ++id_ok;
      if (geodesic_distance(nf.U_samples[i], nf.S_samples[i]) < 2.0 * spacing) ++u_ok;
    }
    CHECK(id_ok >= 380);
    CHECK(u_ok >= 380);
    CHECK(nf.volume_stat < 2.0);  // rotations are volume preserving on the lattice
  }
  SUBCASE("conformal map is its own optimal factor (desk scale)") {
    DiscreteMeasure mu = sample_sphere(2, 400, SampleScheme::FibonacciS2);
    ClosedFormMap m = conformal_map(0.3, 2);
    auto S = [&](const SpherePoint& p) { return m.forward(p); };
    SolverConfig cfg;
    cfg.exact = true;
    NumericalFactorization nf = numerical_polar_factorization(S, mu, cfg);
    double spacing = mean_spacing(mu);
    int ok = 0;
    for (int i = 0; i < 400; ++i)
      if (geodesic_distance(nf.T_samples[i], m.forward(mu.points[i])) < 2.0 * spacing)
        ++ok;
    CHECK(ok >= 380);  // >= 95%
  }
}
