#include "sphereot/cconvex.hpp"

#include <cmath>
#include <limits>

namespace sphereot {

namespace {

double half_dist2(const SpherePoint& p, const SpherePoint& q) {
  double d = geodesic_distance(p, q);
  return 0.5 * d * d;
}

}  // namespace

GridFunction::GridFunction(std::vector<SpherePoint> nodes_, Vec values_)
    : nodes(std::move(nodes_)), values(std::move(values_)) {
  if ((Eigen::Index)nodes.size() != values.size())
    fail(ErrorCode::SizeMismatch, "node/value count mismatch");
  if (nodes.size() < 8) fail(ErrorCode::InvalidArgument, "need at least 8 nodes");
  if (!values.allFinite()) fail(ErrorCode::InvalidArgument, "non-finite grid values");
}

std::vector<SpherePoint> circle_nodes(int N) {
  std::vector<SpherePoint> nodes;
  nodes.reserve(N);
  for (int i = 0; i < N; ++i) {
    double t = 2.0 * M_PI * i / N;
    nodes.push_back(SpherePoint(Eigen::Vector2d(std::cos(t), std::sin(t))));
  }
  return nodes;
}

std::vector<SpherePoint> fibonacci_nodes(int N) {
  std::vector<SpherePoint> nodes;
  nodes.reserve(N);
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int i = 0; i < N; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / N;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double t = 2.0 * M_PI * i / golden;
    nodes.push_back(SpherePoint::normalized(
        Eigen::Vector3d(r * std::cos(t), r * std::sin(t), z)));
  }
  return nodes;
}

GridFunction sample_potential(const MeridianProfile& profile,
                              std::vector<SpherePoint> nodes, int k) {
  Vec vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    vals[i] = potential_phi(profile, nodes[i], k);
  return GridFunction(std::move(nodes), std::move(vals));
}

GridFunction sup_convolution(const GridFunction& phi) {
  const auto N = phi.nodes.size();
  Vec out(N);
  for (std::size_t i = 0; i < N; ++i) {
    double best = -half_dist2(phi.nodes[i], phi.nodes[0]) - phi.values[0];
    for (std::size_t j = 1; j < N; ++j) {
      double cand = -half_dist2(phi.nodes[i], phi.nodes[j]) - phi.values[j];
      if (cand > best) best = cand;
    }
    out[i] = best;
  }
  return GridFunction(phi.nodes, std::move(out));
}

double c_convexity_defect(const GridFunction& phi) {
  GridFunction phicc = sup_convolution(sup_convolution(phi));
  return (phicc.values - phi.values).cwiseAbs().maxCoeff();
}

double reduce_to_meridian(const MeridianProfile& profile, const SpherePoint& p, int k) {
  SplitCoordinates s = split_coords(p, k);
  Eigen::Index ambient = p.ambient_dim();
  auto circle_point = [&](double theta) {
    Vec q(ambient);
    q.head(s.k) = std::cos(theta) * s.u;
    q.tail(s.l) = std::sin(theta) * s.v;
    return SpherePoint::normalized(q);
  };
  auto objective = [&](double theta) {
    SpherePoint q = circle_point(theta);
    return -half_dist2(p, q) - potential_phi(profile, q, k);
  };

  // Dense scan, then golden-section refinement around the best sample.
  const int scan = 512;
  double best_theta = 0.0, best = objective(0.0);
  for (int i = 1; i < scan; ++i) {
    double theta = 2.0 * M_PI * i / scan;
    double val = objective(theta);
    if (val > best) {
      best = val;
      best_theta = theta;
    }
  }
  double lo = best_theta - 2.0 * M_PI / scan;
  double hi = best_theta + 2.0 * M_PI / scan;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = objective(c), fd = objective(d);
  for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective(d);
    }
  }
  return std::max(best, std::max(fc, fd));
}

CircleCriterionReport circle_optimality_criterion(
    const std::function<double(double)>& eval, int grid_points) {
  CircleCriterionReport rep;
  double prev = 0.0 + eval(0.0);
  rep.min_slope_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid_points; ++i) {
    double x = 2.0 * M_PI * i / grid_points;
    double cur = x + eval(x);
    rep.min_slope_gap = std::min(rep.min_slope_gap, cur - prev);
    prev = cur;
  }
  rep.monotone = rep.min_slope_gap >= 0.0;
  // Periodic trapezoid rule; spectrally accurate for smooth displacements.
  double sum = 0.0;
  for (int i = 0; i < grid_points; ++i) sum += eval(2.0 * M_PI * i / grid_points);
  rep.integral = sum * 2.0 * M_PI / grid_points;
  rep.zero_mean = std::abs(rep.integral) < 1e-9;
  return rep;
}

CircleCriterionReport circle_optimality_criterion(const MeridianProfile& profile,
                                                  int grid_points) {
  return circle_optimality_criterion(
      [&](double x) { return profile.eval(x); }, grid_points);
}

}  // namespace sphereot
