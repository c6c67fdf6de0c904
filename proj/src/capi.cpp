#include "sphereot.h"

#include <cstring>
#include <string>

#include "sphereot/cconvex.hpp"
#include "sphereot/discrete_ot.hpp"
#include "sphereot/groups.hpp"
#include "sphereot/io.hpp"
#include "sphereot/profiles.hpp"
#include "sphereot/symplectic.hpp"

using namespace sphereot;

namespace {

thread_local std::string g_last_error;

sot_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SOT_ERR_INVALID_ARGUMENT;
    case ErrorCode::AntipodalPoints: return SOT_ERR_ANTIPODAL_POINTS;
    case ErrorCode::DegenerateDistance: return SOT_ERR_DEGENERATE_DISTANCE;
    case ErrorCode::DegenerateCoordinates: return SOT_ERR_DEGENERATE_COORDINATES;
    case ErrorCode::NotLorentz: return SOT_ERR_NOT_LORENTZ;
    case ErrorCode::NotProjective: return SOT_ERR_NOT_PROJECTIVE;
    case ErrorCode::FixedPoint: return SOT_ERR_FIXED_POINT;
    case ErrorCode::SizeMismatch: return SOT_ERR_SIZE_MISMATCH;
    case ErrorCode::NotUniform: return SOT_ERR_NOT_UNIFORM;
    case ErrorCode::UnsupportedScheme: return SOT_ERR_UNSUPPORTED_SCHEME;
    case ErrorCode::SolverFailure: return SOT_ERR_SOLVER_FAILURE;
    case ErrorCode::IoError: return SOT_ERR_IO;
  }
  return SOT_ERR_UNKNOWN;
}

template <class F>
sot_status guarded(F&& f) {
  try {
    f();
    return SOT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SOT_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return SOT_ERR_UNKNOWN;
  }
}

Mat to_mat(const double* rowmajor, int rows, int cols) {
  if (!rowmajor) fail(ErrorCode::InvalidArgument, "null matrix pointer");
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(rowmajor, rows, cols);
}

void from_mat(const Mat& m, double* rowmajor) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      rowmajor, m.rows(), m.cols()) = m;
}

SpherePoint to_point(const double* p, int dim) {
  if (!p) fail(ErrorCode::InvalidArgument, "null point pointer");
  return SpherePoint::normalized(Eigen::Map<const Vec>(p, dim));
}

void from_point(const SpherePoint& p, double* out) {
  Eigen::Map<Vec>(out, p.ambient_dim()) = p.coords();
}

void require(bool cond, const char* msg) {
  if (!cond) fail(ErrorCode::InvalidArgument, msg);
}

std::vector<SpherePoint> to_points(const double* pts, int N, int dim) {
  require(pts != nullptr, "null points pointer");
  std::vector<SpherePoint> out;
  out.reserve(N);
  for (int i = 0; i < N; ++i)
    out.push_back(SpherePoint::normalized(Eigen::Map<const Vec>(pts + (size_t)i * dim, dim)));
  return out;
}

void from_points(const std::vector<SpherePoint>& pts, double* out) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    from_point(pts[i], out + i * pts[i].ambient_dim());
}

EntropicConfig make_entropic_config(const double* schedule, int schedule_len,
                                    int max_iters, double marginal_tol) {
  EntropicConfig cfg;
  if (schedule && schedule_len > 0)
    cfg.schedule.assign(schedule, schedule + schedule_len);
  if (max_iters > 0) cfg.max_iters = max_iters;
  if (marginal_tol > 0) cfg.marginal_tol = marginal_tol;
  return cfg;
}

}  // namespace

struct sot_lorentz {
  LorentzElement e;
};
struct sot_projective {
  ProjectiveElement e;
};
struct sot_profile {
  MeridianProfile p;
};
struct sot_cloud {
  DiscreteMeasure m;
};
struct sot_plan {
  TransportPlan p;
};

extern "C" {

const char* sot_version(void) { return "0.1.0"; }

const char* sot_last_error(void) { return g_last_error.c_str(); }

sot_status sot_geodesic_distance(const double* p, const double* q, int dim,
                                 double* out) {
  return guarded([&] {
    require(out, "null output");
    *out = geodesic_distance(to_point(p, dim), to_point(q, dim));
  });
}

/* ---- Lorentz ---- */

sot_status sot_lorentz_create(const double* rowmajor, int size, sot_lorentz** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_lorentz{LorentzElement(to_mat(rowmajor, size, size))};
  });
}

sot_status sot_lorentz_identity(int n, sot_lorentz** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_lorentz{LorentzElement::identity(n)};
  });
}

sot_status sot_lorentz_from_generator(const double* v, int len, sot_lorentz** out) {
  return guarded([&] {
    require(out && v, "null argument");
    SymmetricGenerator g{Eigen::Map<const Vec>(v, len)};
    *out = new sot_lorentz{exp_generator(g)};
  });
}

sot_status sot_lorentz_read(const char* path, sot_lorentz** out) {
  return guarded([&] {
    require(out && path, "null argument");
    *out = new sot_lorentz{LorentzElement(read_matrix(path))};
  });
}

sot_status sot_lorentz_write(const sot_lorentz* A, const char* path) {
  return guarded([&] {
    require(A && path, "null argument");
    write_matrix(path, A->e.mat());
  });
}

sot_status sot_lorentz_size(const sot_lorentz* A, int* size) {
  return guarded([&] {
    require(A && size, "null argument");
    *size = static_cast<int>(A->e.mat().rows());
  });
}

sot_status sot_lorentz_get(const sot_lorentz* A, double* rowmajor) {
  return guarded([&] {
    require(A && rowmajor, "null argument");
    from_mat(A->e.mat(), rowmajor);
  });
}

sot_status sot_lorentz_compose(const sot_lorentz* A, const sot_lorentz* B,
                               sot_lorentz** out) {
  return guarded([&] {
    require(A && B && out, "null argument");
    *out = new sot_lorentz{A->e * B->e};
  });
}

sot_status sot_lorentz_act(const sot_lorentz* A, const double* u, double* out) {
  return guarded([&] {
    require(A && out, "null argument");
    int dim = static_cast<int>(A->e.mat().rows()) - 1;
    from_point(conformal_act(A->e, to_point(u, dim)), out);
  });
}

sot_status sot_lorentz_cartan(const sot_lorentz* A, double* gen_v, double* rotation) {
  return guarded([&] {
    require(A, "null argument");
    CartanFactors f = cartan_decompose(A->e);
    if (gen_v) Eigen::Map<Vec>(gen_v, f.generator.v.size()) = f.generator.v;
    if (rotation) from_mat(f.rotation, rotation);
  });
}

void sot_lorentz_destroy(sot_lorentz* A) { delete A; }

/* ---- projective ---- */

sot_status sot_projective_create(const double* rowmajor, int size,
                                 sot_projective** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_projective{ProjectiveElement(to_mat(rowmajor, size, size))};
  });
}

sot_status sot_projective_read(const char* path, sot_projective** out) {
  return guarded([&] {
    require(out && path, "null argument");
    *out = new sot_projective{ProjectiveElement(read_matrix(path))};
  });
}

sot_status sot_projective_write(const sot_projective* A, const char* path) {
  return guarded([&] {
    require(A && path, "null argument");
    write_matrix(path, A->e.mat());
  });
}

sot_status sot_projective_size(const sot_projective* A, int* size) {
  return guarded([&] {
    require(A && size, "null argument");
    *size = static_cast<int>(A->e.mat().rows());
  });
}

sot_status sot_projective_get(const sot_projective* A, double* rowmajor) {
  return guarded([&] {
    require(A && rowmajor, "null argument");
    from_mat(A->e.mat(), rowmajor);
  });
}

sot_status sot_projective_act(const sot_projective* A, const double* p, double* out) {
  return guarded([&] {
    require(A && out, "null argument");
    int dim = static_cast<int>(A->e.mat().rows());
    from_point(projective_act(A->e, to_point(p, dim)), out);
  });
}

sot_status sot_projective_polar(const sot_projective* A, double* sym, double* rot) {
  return guarded([&] {
    require(A, "null argument");
    PolarPair pp = polar_decompose(A->e);
    if (sym) from_mat(pp.symmetric_part, sym);
    if (rot) from_mat(pp.rotation_part, rot);
  });
}

sot_status sot_projective_eigen_clusters(const sot_projective* A, double rel_tol,
                                         int* count, double* eigs) {
  return guarded([&] {
    require(A && count, "null argument");
    PolarPair pp = polar_decompose(A->e);
    std::vector<double> reps = eigenvalue_clusters(pp.symmetric_part, rel_tol);
    *count = static_cast<int>(reps.size());
    if (eigs)
      for (std::size_t i = 0; i < reps.size(); ++i) eigs[i] = reps[i];
  });
}

void sot_projective_destroy(sot_projective* A) { delete A; }

/* ---- profiles ---- */

sot_status sot_profile_create_g(double a, sot_profile** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_profile{g_profile(a)};
  });
}

sot_status sot_profile_create_f(double a, sot_profile** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_profile{f_profile(a)};
  });
}

sot_status sot_profile_eval(const sot_profile* pr, double x, double* out) {
  return guarded([&] {
    require(pr && out, "null argument");
    *out = pr->p.eval(x);
  });
}

sot_status sot_profile_deriv(const sot_profile* pr, double x, double* out) {
  return guarded([&] {
    require(pr && out, "null argument");
    *out = pr->p.deriv(x);
  });
}

sot_status sot_profile_write_csv(const sot_profile* pr, const char* path, int samples) {
  return guarded([&] {
    require(pr && path, "null argument");
    write_profile_csv(path, pr->p, samples);
  });
}

void sot_profile_destroy(sot_profile* pr) { delete pr; }

sot_status sot_conformal_map_apply(double a, const double* p, int dim, double* out) {
  return guarded([&] {
    require(out, "null output");
    from_point(conformal_map(a, dim - 1).forward(to_point(p, dim)), out);
  });
}

sot_status sot_conformal_closed_form_apply(const double* gen_v, int dim,
                                           const double* p, double* out) {
  return guarded([&] {
    require(gen_v && out, "null argument");
    from_point(
        conformal_closed_form_apply(Eigen::Map<const Vec>(gen_v, dim), to_point(p, dim)),
        out);
  });
}

sot_status sot_projective_two_eigen_apply(double a, int k, int l, const double* p,
                                          double* out) {
  return guarded([&] {
    require(out, "null output");
    from_point(projective_map_two_eigen(a, k, l).forward(to_point(p, k + l)), out);
  });
}

sot_status sot_potential_phi(const sot_profile* pr, const double* p, int dim, int k,
                             double* out) {
  return guarded([&] {
    require(pr && out, "null argument");
    *out = potential_phi(pr->p, to_point(p, dim), k);
  });
}

sot_status sot_double_cover_check(double a, int samples, double* max_dev) {
  return guarded([&] {
    require(max_dev, "null output");
    *max_dev = double_cover_check(a, samples);
  });
}

/* ---- c-convexity ---- */

sot_status sot_cconvex_defect_profile_circle(const sot_profile* pr, int N,
                                             double* defect) {
  return guarded([&] {
    require(pr && defect, "null argument");
    GridFunction phi = sample_potential(pr->p, circle_nodes(N), 1);
    *defect = c_convexity_defect(phi);
  });
}

sot_status sot_cconvex_defect_circle_values(int N, const double* values,
                                            double* defect) {
  return guarded([&] {
    require(values && defect, "null argument");
    GridFunction phi(circle_nodes(N), Eigen::Map<const Vec>(values, N));
    *defect = c_convexity_defect(phi);
  });
}

sot_status sot_circle_criterion(const sot_profile* pr, int grid_points,
                                int* pass_monotone, int* pass_zero_mean,
                                double* min_slope_gap, double* integral) {
  return guarded([&] {
    require(pr, "null argument");
    CircleCriterionReport rep = circle_optimality_criterion(pr->p, grid_points);
    if (pass_monotone) *pass_monotone = rep.monotone ? 1 : 0;
    if (pass_zero_mean) *pass_zero_mean = rep.zero_mean ? 1 : 0;
    if (min_slope_gap) *min_slope_gap = rep.min_slope_gap;
    if (integral) *integral = rep.integral;
  });
}

/* ---- symplectic ---- */

sot_status sot_omega_matrix(const double* p, const double* q, int dim, double* out) {
  return guarded([&] {
    require(out, "null output");
    from_mat(omega_matrix(to_point(p, dim), to_point(q, dim)), out);
  });
}

sot_status sot_omega_numeric(const double* p, const double* q, int dim, int i, int j,
                             int block, double* out) {
  return guarded([&] {
    require(out, "null output");
    require(block >= 0 && block <= 2, "block must be 0, 1 or 2");
    *out = omega_numeric(to_point(p, dim), to_point(q, dim), i, j,
                         static_cast<OmegaBlock>(block));
  });
}

sot_status sot_lagrangian_test(const double* P, const double* p, int dim,
                               double* asymmetry, double* distance,
                               double* measured_ratio, double* predicted_ratio,
                               double* dT) {
  return guarded([&] {
    require(P, "null matrix");
    LagrangianReport rep = lagrangian_test(to_mat(P, dim, dim), to_point(p, dim));
    if (asymmetry) *asymmetry = rep.asymmetry;
    if (distance) *distance = rep.d;
    if (measured_ratio) *measured_ratio = rep.measured_ratio;
    if (predicted_ratio) *predicted_ratio = rep.predicted_ratio;
    if (dT) from_mat(rep.dT_matrix, dT);
  });
}

/* ---- discrete OT ---- */

sot_status sot_cloud_sample(int n, int N, sot_scheme scheme, uint64_t seed,
                            sot_cloud** out) {
  return guarded([&] {
    require(out, "null output");
    SampleScheme s;
    switch (scheme) {
      case SOT_SCHEME_UNIFORM_CIRCLE: s = SampleScheme::UniformCircle; break;
      case SOT_SCHEME_FIBONACCI_S2: s = SampleScheme::FibonacciS2; break;
      case SOT_SCHEME_SEEDED_RANDOM: s = SampleScheme::SeededRandom; break;
      default: fail(ErrorCode::UnsupportedScheme, "unknown sampling scheme");
    }
    *out = new sot_cloud{sample_sphere(n, N, s, seed)};
  });
}

sot_status sot_cloud_create(const double* points, int N, int dim, sot_cloud** out) {
  return guarded([&] {
    require(out, "null output");
    *out = new sot_cloud{DiscreteMeasure::uniform(to_points(points, N, dim))};
  });
}

sot_status sot_cloud_size(const sot_cloud* c, int* N, int* dim) {
  return guarded([&] {
    require(c, "null cloud");
    if (N) *N = c->m.size();
    if (dim) *dim = static_cast<int>(c->m.points[0].ambient_dim());
  });
}

sot_status sot_cloud_get_points(const sot_cloud* c, double* points) {
  return guarded([&] {
    require(c && points, "null argument");
    from_points(c->m.points, points);
  });
}

sot_status sot_cloud_mean_spacing(const sot_cloud* c, double* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = mean_spacing(c->m);
  });
}

sot_status sot_cloud_write_csv(const sot_cloud* c, const char* path) {
  return guarded([&] {
    require(c && path, "null argument");
    write_cloud_csv(path, c->m);
  });
}

sot_status sot_cloud_map_lorentz(const sot_cloud* c, const sot_lorentz* A,
                                 sot_cloud** out) {
  return guarded([&] {
    require(c && A && out, "null argument");
    std::vector<SpherePoint> pts;
    pts.reserve(c->m.points.size());
    for (const SpherePoint& p : c->m.points) pts.push_back(conformal_act(A->e, p));
    *out = new sot_cloud{DiscreteMeasure(std::move(pts), c->m.weights)};
  });
}

sot_status sot_cloud_map_projective(const sot_cloud* c, const sot_projective* A,
                                    sot_cloud** out) {
  return guarded([&] {
    require(c && A && out, "null argument");
    std::vector<SpherePoint> pts;
    pts.reserve(c->m.points.size());
    for (const SpherePoint& p : c->m.points) pts.push_back(projective_act(A->e, p));
    *out = new sot_cloud{DiscreteMeasure(std::move(pts), c->m.weights)};
  });
}

void sot_cloud_destroy(sot_cloud* c) { delete c; }

sot_status sot_solve_exact(const sot_cloud* mu, const sot_cloud* nu, sot_plan** out) {
  return guarded([&] {
    require(mu && nu && out, "null argument");
    *out = new sot_plan{solve_exact(mu->m, nu->m)};
  });
}

sot_status sot_solve_entropic(const sot_cloud* mu, const sot_cloud* nu,
                              const double* schedule, int schedule_len, int max_iters,
                              double marginal_tol, sot_plan** out) {
  return guarded([&] {
    require(mu && nu && out, "null argument");
    EntropicConfig cfg =
        make_entropic_config(schedule, schedule_len, max_iters, marginal_tol);
    *out = new sot_plan{solve_entropic(mu->m, nu->m, cfg)};
  });
}

sot_status sot_plan_diagnostics(const sot_plan* pl, double* cost,
                                double* marginal_error, int* converged,
                                double* epsilon) {
  return guarded([&] {
    require(pl, "null plan");
    if (cost) *cost = pl->p.cost;
    if (marginal_error) *marginal_error = pl->p.marginal_error;
    if (converged) *converged = pl->p.converged ? 1 : 0;
    if (epsilon) *epsilon = pl->p.epsilon;
  });
}

sot_status sot_plan_extract_map(const sot_plan* pl, double* out) {
  return guarded([&] {
    require(pl && out, "null argument");
    from_points(extract_map(pl->p), out);
  });
}

sot_status sot_plan_write_csv(const sot_plan* pl, const char* path, double threshold) {
  return guarded([&] {
    require(pl && path, "null argument");
    write_plan_csv(path, pl->p, threshold);
  });
}

void sot_plan_destroy(sot_plan* pl) { delete pl; }

sot_status sot_compare_maps(const double* T1, const double* T2, int N, int dim,
                            double* mean, double* max, double* p95) {
  return guarded([&] {
    MapStats st = compare_maps(to_points(T1, N, dim), to_points(T2, N, dim));
    if (mean) *mean = st.mean;
    if (max) *max = st.max;
    if (p95) *p95 = st.p95;
  });
}

sot_status sot_factorize(const sot_cloud* mu, const sot_cloud* S_of_mu, int use_exact,
                         const double* schedule, int schedule_len, int max_iters,
                         double marginal_tol, double* T, double* U, double* cost,
                         double* marginal_error, double* volume_stat, int* converged) {
  return guarded([&] {
    require(mu && S_of_mu, "null cloud");
    require(mu->m.size() == S_of_mu->m.size(), "cloud sizes differ");
    SolverConfig cfg;
    cfg.exact = use_exact != 0;
    cfg.entropic = make_entropic_config(schedule, schedule_len, max_iters, marginal_tol);
    const auto& images = S_of_mu->m.points;
    const auto& sources = mu->m.points;
    auto S = [&](const SpherePoint& p) -> SpherePoint {
      for (std::size_t i = 0; i < sources.size(); ++i)
        if ((sources[i].coords() - p.coords()).norm() < 1e-14) return images[i];
      fail(ErrorCode::InvalidArgument, "point not in the source cloud");
    };
    NumericalFactorization f = numerical_polar_factorization(S, mu->m, cfg);
    if (T) from_points(f.T_samples, T);
    if (U) from_points(f.U_samples, U);
    if (cost) *cost = f.transport_cost;
    if (marginal_error) *marginal_error = f.marginal_error;
    if (volume_stat) *volume_stat = f.volume_stat;
    if (converged) *converged = f.converged ? 1 : 0;
  });
}

sot_status sot_write_map_csv(const char* path, const double* source,
                             const double* target, int N, int dim) {
  return guarded([&] {
    require(path, "null path");
    write_map_csv(path, to_points(source, N, dim), to_points(target, N, dim));
  });
}

}  // extern "C"
