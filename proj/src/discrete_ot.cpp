#include "sphereot/discrete_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace sphereot {

namespace {

Mat cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  Mat C(mu.size(), nu.size());
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j) {
      double d = geodesic_distance(mu.points[i], nu.points[j]);
      C(i, j) = 0.5 * d * d;
    }
  return C;
}

double plan_cost(const Mat& coupling, const Mat& C) {
  return (coupling.array() * C.array()).sum();
}

double marginal_defect(const TransportPlan& plan) {
  double row = (plan.coupling.rowwise().sum() - plan.source.weights).cwiseAbs().maxCoeff();
  double col = (plan.coupling.colwise().sum().transpose() - plan.target.weights)
                   .cwiseAbs()
                   .maxCoeff();
  return std::max(row, col);
}

// k-NN geodesic radius of point i within a cloud (excluding itself).
double knn_radius(const std::vector<SpherePoint>& cloud, int i, int k) {
  std::vector<double> d;
  d.reserve(cloud.size() - 1);
  for (std::size_t j = 0; j < cloud.size(); ++j)
    if ((int)j != i) d.push_back(geodesic_distance(cloud[i], cloud[j]));
  std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
  return d[k - 1];
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<SpherePoint> points_, Vec weights_)
    : points(std::move(points_)), weights(std::move(weights_)) {
  if ((Eigen::Index)points.size() != weights.size())
    fail(ErrorCode::SizeMismatch, "point/weight count mismatch");
  if (points.empty()) fail(ErrorCode::InvalidArgument, "empty measure");
  if (weights.minCoeff() < 0.0)
    fail(ErrorCode::InvalidArgument, "negative weight in discrete measure");
  if (std::abs(weights.sum() - 1.0) > 1e-12)
    fail(ErrorCode::InvalidArgument, "weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<SpherePoint> points_) {
  Vec w = Vec::Constant(points_.size(), 1.0 / points_.size());
  return DiscreteMeasure(std::move(points_), std::move(w));
}

DiscreteMeasure sample_sphere(int n, int N, SampleScheme scheme, std::uint64_t seed) {
  if (N < 8) fail(ErrorCode::InvalidArgument, "need N >= 8 samples");
  std::vector<SpherePoint> pts;
  pts.reserve(N);
  switch (scheme) {
    case SampleScheme::UniformCircle: {
      if (n != 1) fail(ErrorCode::UnsupportedScheme, "uniform-circle needs n = 1");
      for (int i = 0; i < N; ++i) {
        double t = 2.0 * M_PI * i / N;
        pts.push_back(SpherePoint(Eigen::Vector2d(std::cos(t), std::sin(t))));
      }
      break;
    }
    case SampleScheme::FibonacciS2: {
      if (n != 2) fail(ErrorCode::UnsupportedScheme, "fibonacci-s2 needs n = 2");
      const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
      for (int i = 0; i < N; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / N;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double t = 2.0 * M_PI * i / golden;
        pts.push_back(SpherePoint::normalized(
            Eigen::Vector3d(r * std::cos(t), r * std::sin(t), z)));
      }
      break;
    }
    case SampleScheme::SeededRandom: {
      // Box-Muller over mt19937_64 so clouds are reproducible bit-for-bit.
      std::mt19937_64 rng(seed);
      auto uniform01 = [&]() {
        return (rng() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
      };
      for (int i = 0; i < N; ++i) {
        Vec x(n + 1);
        for (int d = 0; d < n + 1; d += 2) {
          double u1 = std::max(uniform01(), 1e-300);
          double u2 = uniform01();
          double r = std::sqrt(-2.0 * std::log(u1));
          x[d] = r * std::cos(2.0 * M_PI * u2);
          if (d + 1 < n + 1) x[d + 1] = r * std::sin(2.0 * M_PI * u2);
        }
        pts.push_back(SpherePoint::normalized(x));
      }
      break;
    }
  }
  return DiscreteMeasure::uniform(std::move(pts));
}

double mean_spacing(const DiscreteMeasure& mu) {
  double sum = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < mu.size(); ++j)
      if (j != i) best = std::min(best, geodesic_distance(mu.points[i], mu.points[j]));
    sum += best;
  }
  return sum / mu.size();
}

std::vector<int> solve_assignment(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.size() != nu.size())
    fail(ErrorCode::SizeMismatch, "exact solver needs equal cardinality");
  const int n = mu.size();
  double w0 = mu.weights[0];
  if ((mu.weights.array() - w0).abs().maxCoeff() > 1e-12 ||
      (nu.weights.array() - w0).abs().maxCoeff() > 1e-12)
    fail(ErrorCode::NotUniform, "exact solver needs uniform weights");
  if (n > 4096) fail(ErrorCode::InvalidArgument, "exact solver capped at N = 4096");

  Mat C = cost_matrix(mu, nu);

  // Augmenting-path assignment with dual potentials (Jonker-Volgenant).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j)
        if (!used[j]) {
          double cur = C(i0 - 1, j - 1) - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> sigma(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) sigma[p[j] - 1] = j - 1;
  return sigma;
}

TransportPlan solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<int> sigma = solve_assignment(mu, nu);
  const int n = mu.size();
  TransportPlan plan{mu, nu, Mat::Zero(n, n)};
  for (int i = 0; i < n; ++i) plan.coupling(i, sigma[i]) = 1.0 / n;
  plan.cost = plan_cost(plan.coupling, cost_matrix(mu, nu));
  plan.marginal_error = marginal_defect(plan);
  plan.converged = true;
  plan.epsilon = 0.0;
  return plan;
}

TransportPlan solve_entropic(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const EntropicConfig& cfg) {
  if (cfg.schedule.empty() || cfg.schedule.back() <= 0.0)
    fail(ErrorCode::InvalidArgument, "epsilon schedule must be positive");
  if (mu.weights.minCoeff() <= 0.0 || nu.weights.minCoeff() <= 0.0)
    fail(ErrorCode::InvalidArgument, "entropic solver needs strictly positive weights");

  const int nr = mu.size(), nc = nu.size();
  Mat C = cost_matrix(mu, nu);
  Vec logmu = mu.weights.array().log();
  Vec lognu = nu.weights.array().log();
  Vec f = Vec::Zero(nr), g = Vec::Zero(nc);

  auto lse_rows = [&](const Mat& M) {  // logsumexp over columns, per row
    Vec mx = M.rowwise().maxCoeff();
    return (mx.array() +
            ((M.colwise() - mx).array().exp().rowwise().sum()).log())
        .matrix()
        .eval();
  };

  bool converged = false;
  double eps = cfg.schedule.back();
  for (double e : cfg.schedule) {
    eps = e;
    converged = false;
    for (int it = 0; it < cfg.max_iters; ++it) {
      // f-update makes row marginals exact; then test columns.
      Mat A = ((-C).rowwise() + (g + e * lognu).transpose()) / e;
      f = -e * lse_rows(A);
      Mat B = ((-C).colwise() + (f + e * logmu)).transpose() / e;
      Vec g_new = -e * lse_rows(B);
      // column marginal error of the plan implied by (f, g)
      Vec col_log = (-g_new + g) / e;  // log(colsum_j / nu_j) = (g_j - g_new_j)/e
      double err = (col_log.array().exp() - 1.0).abs().matrix().cwiseProduct(nu.weights).maxCoeff();
      g = g_new;
      if (err < cfg.marginal_tol) {
        converged = true;
        break;
      }
    }
  }

  TransportPlan plan{mu, nu, Mat()};
  plan.coupling =
      ((((-C).colwise() + (f + eps * logmu)).rowwise() + (g + eps * lognu).transpose()) /
       eps)
          .array()
          .exp();
  plan.cost = plan_cost(plan.coupling, C);
  plan.marginal_error = marginal_defect(plan);
  plan.converged = converged;
  plan.epsilon = eps;
  return plan;
}

std::vector<SpherePoint> extract_map(const TransportPlan& plan) {
  std::vector<SpherePoint> out;
  out.reserve(plan.source.points.size());
  Eigen::Index ambient = plan.target.points[0].ambient_dim();
  for (int i = 0; i < plan.source.size(); ++i) {
    double mass = plan.coupling.row(i).sum();
    Vec bary = Vec::Zero(ambient);
    for (int j = 0; j < plan.target.size(); ++j)
      bary += plan.coupling(i, j) * plan.target.points[j].coords();
    if (mass > 0.0) bary /= mass;
    if (bary.norm() < 0.1) {
      // mass split across far-apart targets: argmax fallback, lowest index wins
      int best = 0;
      for (int j = 1; j < plan.target.size(); ++j)
        if (plan.coupling(i, j) > plan.coupling(i, best)) best = j;
      out.push_back(plan.target.points[best]);
    } else {
      out.push_back(SpherePoint::normalized(bary));
    }
  }
  return out;
}

MapStats compare_maps(const std::vector<SpherePoint>& T1,
                      const std::vector<SpherePoint>& T2) {
  if (T1.size() != T2.size()) fail(ErrorCode::SizeMismatch, "map size mismatch");
  std::vector<double> dev(T1.size());
  for (std::size_t i = 0; i < T1.size(); ++i) dev[i] = geodesic_distance(T1[i], T2[i]);
  MapStats st;
  st.max = *std::max_element(dev.begin(), dev.end());
  for (double d : dev) st.mean += d;
  st.mean /= dev.size();
  std::vector<double> sorted = dev;
  std::sort(sorted.begin(), sorted.end());
  st.p95 = sorted[static_cast<std::size_t>(0.95 * (sorted.size() - 1))];
  return st;
}

NumericalFactorization numerical_polar_factorization(
    const std::function<SpherePoint(const SpherePoint&)>& S, const DiscreteMeasure& mu,
    const SolverConfig& cfg) {
  NumericalFactorization out;
  out.S_samples.reserve(mu.size());
  for (const SpherePoint& p : mu.points) out.S_samples.push_back(S(p));
  DiscreteMeasure nu(out.S_samples, mu.weights);

  TransportPlan plan = cfg.exact ? solve_exact(mu, nu) : solve_entropic(mu, nu, cfg.entropic);
  out.T_samples = extract_map(plan);
  out.transport_cost = plan.cost;
  out.marginal_error = plan.marginal_error;
  out.converged = plan.converged;

  // U = T^{-1} o S via nearest-sample inversion of T (lowest index on ties).
  out.U_samples.reserve(mu.size());
  for (int i = 0; i < mu.size(); ++i) {
    int best = 0;
    double bd = geodesic_distance(out.T_samples[0], out.S_samples[i]);
    for (int j = 1; j < mu.size(); ++j) {
      double d = geodesic_distance(out.T_samples[j], out.S_samples[i]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    out.U_samples.push_back(mu.points[best]);
  }

  // Volume statistic: k-NN ball volume ratio before/after U.
  const int k = std::min(8, mu.size() - 1);
  const double n_dim = static_cast<double>(mu.points[0].sphere_dim());
  double worst = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    double r_before = knn_radius(mu.points, i, k);
    double r_after = knn_radius(out.U_samples, i, k);
    if (r_after < 1e-15) r_after = 1e-15;  // duplicate images collapse the ball
    worst = std::max(worst, std::abs(n_dim * std::log(r_after / r_before)));
  }
  out.volume_stat = worst;
  return out;
}

}  // namespace sphereot
