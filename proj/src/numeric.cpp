#include "sphereot/numeric.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "sphereot/error.hpp"

namespace sphereot {

NumericPolicy& policy() {
  static NumericPolicy p;
  return p;
}

namespace {

// Legendre nodes on [-1,1] by Newton iteration, then shifted to [0,1].
Quadrature make_quadrature(int order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  Quadrature q;
  q.nodes.resize(order);
  q.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = 0.5 * (1.0 - x);
    q.nodes[order - 1 - i] = 0.5 * (1.0 + x);
    q.weights[i] = 0.5 * w;
    q.weights[order - 1 - i] = 0.5 * w;
  }
  return q;
}

}  // namespace

const Quadrature& Quadrature::get(int order) {
  static std::mutex mu;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_quadrature(order)).first;
  return it->second;
}

double d_over_sin(double d) {
  if (std::abs(d) < 1e-4) {
    double d2 = d * d;
    return 1.0 + d2 / 6.0 + 7.0 * d2 * d2 / 360.0;
  }
  return d / std::sin(d);
}

}  // namespace sphereot
