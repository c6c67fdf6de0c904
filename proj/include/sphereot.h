/* C API for the sphereot library: polar factorization of conformal and
 * projective sphere maps via optimal transport.
 *
 * All functions return a sot_status code; SOT_OK is 0. On failure a
 * thread-local message is available through sot_last_error(). Handles are
 * opaque and must be released with the matching _destroy function.
 * Points are unit vectors of length dim (the ambient dimension n+1).
 */
#ifndef SPHEREOT_H
#define SPHEREOT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sot_status {
  SOT_OK = 0,
  SOT_ERR_INVALID_ARGUMENT = 1,
  SOT_ERR_ANTIPODAL_POINTS = 2,
  SOT_ERR_DEGENERATE_DISTANCE = 3,
  SOT_ERR_DEGENERATE_COORDINATES = 4,
  SOT_ERR_NOT_LORENTZ = 5,
  SOT_ERR_NOT_PROJECTIVE = 6,
  SOT_ERR_FIXED_POINT = 7,
  SOT_ERR_SIZE_MISMATCH = 8,
  SOT_ERR_NOT_UNIFORM = 9,
  SOT_ERR_UNSUPPORTED_SCHEME = 10,
  SOT_ERR_SOLVER_FAILURE = 11,
  SOT_ERR_IO = 12,
  SOT_ERR_UNKNOWN = 99
} sot_status;

typedef struct sot_lorentz sot_lorentz;       /* element of O_o(1, n+1) */
typedef struct sot_projective sot_projective; /* element of GL_+(n+1) */
typedef struct sot_profile sot_profile;       /* meridian displacement profile */
typedef struct sot_cloud sot_cloud;           /* weighted point cloud on S^n */
typedef struct sot_plan sot_plan;             /* transport plan between clouds */

const char* sot_version(void);
const char* sot_last_error(void);

/* ---- geometry ---- */

sot_status sot_geodesic_distance(const double* p, const double* q, int dim,
                                 double* out);

/* ---- Lorentz (conformal) group ---- */

sot_status sot_lorentz_create(const double* rowmajor, int size, sot_lorentz** out);
sot_status sot_lorentz_identity(int n, sot_lorentz** out);
/* exp of the symmetric generator with vector v (length = size - 1 = n + 1) */
sot_status sot_lorentz_from_generator(const double* v, int len, sot_lorentz** out);
sot_status sot_lorentz_read(const char* path, sot_lorentz** out);
sot_status sot_lorentz_write(const sot_lorentz* A, const char* path);
sot_status sot_lorentz_size(const sot_lorentz* A, int* size);
sot_status sot_lorentz_get(const sot_lorentz* A, double* rowmajor);
sot_status sot_lorentz_compose(const sot_lorentz* A, const sot_lorentz* B,
                               sot_lorentz** out);
sot_status sot_lorentz_act(const sot_lorentz* A, const double* u, double* out);
/* Cartan factors A = exp(X_v) diag(1, O); gen_v length size-1, rotation
 * (size-1)^2 row-major. Either output may be NULL. */
sot_status sot_lorentz_cartan(const sot_lorentz* A, double* gen_v, double* rotation);
void sot_lorentz_destroy(sot_lorentz* A);

/* ---- projective group ---- */

sot_status sot_projective_create(const double* rowmajor, int size, sot_projective** out);
sot_status sot_projective_read(const char* path, sot_projective** out);
sot_status sot_projective_write(const sot_projective* A, const char* path);
sot_status sot_projective_size(const sot_projective* A, int* size);
sot_status sot_projective_get(const sot_projective* A, double* rowmajor);
sot_status sot_projective_act(const sot_projective* A, const double* p, double* out);
/* polar factors A = P O; both size^2 row-major, either may be NULL */
sot_status sot_projective_polar(const sot_projective* A, double* sym, double* rot);
/* distinct eigenvalues of the symmetric polar factor at relative tolerance;
 * eigs (length size) receives the ascending cluster representatives */
sot_status sot_projective_eigen_clusters(const sot_projective* A, double rel_tol,
                                         int* count, double* eigs);
void sot_projective_destroy(sot_projective* A);

/* ---- meridian profiles and closed-form maps ---- */

sot_status sot_profile_create_g(double a, sot_profile** out);
sot_status sot_profile_create_f(double a, sot_profile** out);
sot_status sot_profile_eval(const sot_profile* pr, double x, double* out);
sot_status sot_profile_deriv(const sot_profile* pr, double x, double* out);
sot_status sot_profile_write_csv(const sot_profile* pr, const char* path, int samples);
void sot_profile_destroy(sot_profile* pr);

/* closed-form conformal map for generator a e_0 */
sot_status sot_conformal_map_apply(double a, const double* p, int dim, double* out);
/* closed-form conformal map for an arbitrary generator vector */
sot_status sot_conformal_closed_form_apply(const double* gen_v, int dim,
                                           const double* p, double* out);
/* two-eigenvalue projective map diag(e^{a/2} I_k, e^{-a/2} I_l) */
sot_status sot_projective_two_eigen_apply(double a, int k, int l, const double* p,
                                          double* out);
sot_status sot_potential_phi(const sot_profile* pr, const double* p, int dim, int k,
                             double* out);
sot_status sot_double_cover_check(double a, int samples, double* max_dev);

/* ---- c-convexity ---- */

/* defect of the profile potential sampled on N uniform circle nodes */
sot_status sot_cconvex_defect_profile_circle(const sot_profile* pr, int N,
                                             double* defect);
/* defect of arbitrary values on N uniform circle nodes */
sot_status sot_cconvex_defect_circle_values(int N, const double* values,
                                            double* defect);
sot_status sot_circle_criterion(const sot_profile* pr, int grid_points,
                                int* pass_monotone, int* pass_zero_mean,
                                double* min_slope_gap, double* integral);

/* ---- symplectic / Lagrangian test ---- */

/* omega matrix in the adapted frame, 2n x 2n row-major, n = dim - 1 */
sot_status sot_omega_matrix(const double* p, const double* q, int dim, double* out);
/* block: 0 mixed, 1 horizontal, 2 vertical */
sot_status sot_omega_numeric(const double* p, const double* q, int dim, int i, int j,
                             int block, double* out);
/* Lagrangian-graph test of the projective map of matrix P (symmetric positive
 * definite, dim x dim row-major) at p. dT (n x n row-major) may be NULL. */
sot_status sot_lagrangian_test(const double* P, const double* p, int dim,
                               double* asymmetry, double* distance,
                               double* measured_ratio, double* predicted_ratio,
                               double* dT);

/* ---- discrete optimal transport ---- */

typedef enum sot_scheme {
  SOT_SCHEME_UNIFORM_CIRCLE = 0,
  SOT_SCHEME_FIBONACCI_S2 = 1,
  SOT_SCHEME_SEEDED_RANDOM = 2
} sot_scheme;

sot_status sot_cloud_sample(int n, int N, sot_scheme scheme, uint64_t seed,
                            sot_cloud** out);
sot_status sot_cloud_create(const double* points, int N, int dim, sot_cloud** out);
sot_status sot_cloud_size(const sot_cloud* c, int* N, int* dim);
sot_status sot_cloud_get_points(const sot_cloud* c, double* points);
sot_status sot_cloud_mean_spacing(const sot_cloud* c, double* out);
sot_status sot_cloud_write_csv(const sot_cloud* c, const char* path);
/* pushforward clouds */
sot_status sot_cloud_map_lorentz(const sot_cloud* c, const sot_lorentz* A,
                                 sot_cloud** out);
sot_status sot_cloud_map_projective(const sot_cloud* c, const sot_projective* A,
                                    sot_cloud** out);
void sot_cloud_destroy(sot_cloud* c);

sot_status sot_solve_exact(const sot_cloud* mu, const sot_cloud* nu, sot_plan** out);
/* schedule may be NULL to use the default anneal {0.1,...,0.001} */
sot_status sot_solve_entropic(const sot_cloud* mu, const sot_cloud* nu,
                              const double* schedule, int schedule_len, int max_iters,
                              double marginal_tol, sot_plan** out);
sot_status sot_plan_diagnostics(const sot_plan* pl, double* cost,
                                double* marginal_error, int* converged,
                                double* epsilon);
/* barycentric map extraction; out has N * dim entries */
sot_status sot_plan_extract_map(const sot_plan* pl, double* out);
sot_status sot_plan_write_csv(const sot_plan* pl, const char* path, double threshold);
void sot_plan_destroy(sot_plan* pl);

/* geodesic deviation statistics between two maps on the same cloud */
sot_status sot_compare_maps(const double* T1, const double* T2, int N, int dim,
                            double* mean, double* max, double* p95);

/* Numerical Brenier-McCann factorization of the map sending cloud mu to the
 * precomputed image cloud S(mu). T and U receive N * dim coordinates; any
 * output pointer may be NULL. */
sot_status sot_factorize(const sot_cloud* mu, const sot_cloud* S_of_mu, int use_exact,
                         const double* schedule, int schedule_len, int max_iters,
                         double marginal_tol, double* T, double* U, double* cost,
                         double* marginal_error, double* volume_stat, int* converged);

/* map CSV helpers (index, source coords, target coords) */
sot_status sot_write_map_csv(const char* path, const double* source,
                             const double* target, int N, int dim);

#ifdef __cplusplus
}
#endif

#endif /* SPHEREOT_H */
