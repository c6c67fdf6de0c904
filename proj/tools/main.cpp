// sphereot command-line driver. Talks to the library exclusively through the
// C API so the CLI doubles as an end-to-end exercise of the shared-library
// boundary.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sphereot.h"

namespace {

struct CliError {
  sot_status status;
  std::string message;
};

void check(sot_status st) {
  if (st != SOT_OK) throw CliError{st, sot_last_error()};
}

const char* status_name(sot_status st) {
  switch (st) {
    case SOT_OK: return "ok";
    case SOT_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SOT_ERR_ANTIPODAL_POINTS: return "antipodal-points";
    case SOT_ERR_DEGENERATE_DISTANCE: return "degenerate-distance";
    case SOT_ERR_DEGENERATE_COORDINATES: return "degenerate-coordinates";
    case SOT_ERR_NOT_LORENTZ: return "not-lorentz";
    case SOT_ERR_NOT_PROJECTIVE: return "not-projective";
    case SOT_ERR_FIXED_POINT: return "fixed-point";
    case SOT_ERR_SIZE_MISMATCH: return "size-mismatch";
    case SOT_ERR_NOT_UNIFORM: return "not-uniform";
    case SOT_ERR_UNSUPPORTED_SCHEME: return "unsupported-scheme";
    case SOT_ERR_SOLVER_FAILURE: return "solver-failure";
    case SOT_ERR_IO: return "io";
    default: return "unknown";
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// Every report starts with the software version and the fully resolved
// configuration so runs are reproducible from the artifact alone.
std::ofstream open_report(const std::string& out_dir, const std::string& command,
                          const ConfigEcho& cfg) {
  std::filesystem::create_directories(out_dir);
  std::ofstream out(out_dir + "/report.txt");
  if (!out) throw CliError{SOT_ERR_IO, "cannot open " + out_dir + "/report.txt"};
  out << "sphereot " << sot_version() << " -- " << command << "\n";
  out << "config:\n";
  for (const auto& [k, v] : cfg) out << "  " << k << " = " << v << "\n";
  out << "\n";
  return out;
}

double tol_or(const std::map<std::string, double>& tols, const std::string& key,
              double fallback) {
  auto it = tols.find(key);
  return it == tols.end() ? fallback : it->second;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& kvs) {
  std::map<std::string, double> tols;
  for (const std::string& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CliError{SOT_ERR_INVALID_ARGUMENT, "--tol expects KEY=VAL, got " + kv};
    tols[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return tols;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
  return vals;
}

// Product of seeded Givens rotations over all coordinate pairs: always a
// rotation, deterministic in the seed.
std::vector<double> random_rotation(int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::vector<double> R(m * m, 0.0);
  for (int i = 0; i < m; ++i) R[i * m + i] = 1.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double t = ang(rng), c = std::cos(t), s = std::sin(t);
      for (int r = 0; r < m; ++r) {
        double a = R[r * m + i], b = R[r * m + j];
        R[r * m + i] = c * a - s * b;
        R[r * m + j] = s * a + c * b;
      }
    }
  return R;
}

void write_text_matrix(const std::string& path, const double* rowmajor, int rows,
                       int cols) {
  std::ofstream out(path);
  if (!out) throw CliError{SOT_ERR_IO, "cannot open " + path};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out << (j ? " " : "") << fmt(rowmajor[i * cols + j]);
    out << '\n';
  }
}

sot_scheme resolve_scheme(const std::string& name, int n) {
  if (name == "circle") return SOT_SCHEME_UNIFORM_CIRCLE;
  if (name == "fibonacci") return SOT_SCHEME_FIBONACCI_S2;
  if (name == "random") return SOT_SCHEME_SEEDED_RANDOM;
  if (name == "auto")
    return n == 1   ? SOT_SCHEME_UNIFORM_CIRCLE
           : n == 2 ? SOT_SCHEME_FIBONACCI_S2
                    : SOT_SCHEME_SEEDED_RANDOM;
  throw CliError{SOT_ERR_UNSUPPORTED_SCHEME, "unknown scheme: " + name};
}

struct Cloud {
  sot_cloud* handle = nullptr;
  ~Cloud() { sot_cloud_destroy(handle); }
};

struct Lorentz {
  sot_lorentz* handle = nullptr;
  ~Lorentz() { sot_lorentz_destroy(handle); }
};

struct Projective {
  sot_projective* handle = nullptr;
  ~Projective() { sot_projective_destroy(handle); }
};

std::vector<double> cloud_points(sot_cloud* c, int& N, int& dim) {
  check(sot_cloud_size(c, &N, &dim));
  std::vector<double> pts(static_cast<std::size_t>(N) * dim);
  check(sot_cloud_get_points(c, pts.data()));
  return pts;
}

// Fraction of points whose geodesic deviation stays below the bound, plus
// the complementary beyond-3x count used by the open-question pipeline.
struct DeviationCount {
  double within = 0.0;
  double beyond3 = 0.0;
};

DeviationCount deviation_fractions(const std::vector<double>& T1,
                                   const std::vector<double>& T2, int N, int dim,
                                   double spacing) {
  int within = 0, beyond = 0;
  for (int i = 0; i < N; ++i) {
    double d = 0.0;
    check(sot_geodesic_distance(&T1[static_cast<std::size_t>(i) * dim],
                                &T2[static_cast<std::size_t>(i) * dim], dim, &d));
    if (d <= 2.0 * spacing) ++within;
    if (d > 3.0 * spacing) ++beyond;
  }
  return {double(within) / N, double(beyond) / N};
}

// Shared discrete-factorization block for the two factorize commands.
struct FactorizeOutputs {
  std::vector<double> points, T, U, ref;
  int N = 0, dim = 0;
  double spacing = 0, cost = 0, marginal = 0, volume = 0;
  int converged = 0;
  DeviationCount dev;
};

template <class RefMap>
FactorizeOutputs run_factorization(sot_cloud* mu, sot_cloud* nu, bool exact,
                                   const std::vector<double>& schedule, int max_iters,
                                   double marginal_tol, RefMap&& reference) {
  FactorizeOutputs f;
  f.points = cloud_points(mu, f.N, f.dim);
  check(sot_cloud_mean_spacing(mu, &f.spacing));
  f.T.resize(f.points.size());
  f.U.resize(f.points.size());
  check(sot_factorize(mu, nu, exact ? 1 : 0,
                      schedule.empty() ? nullptr : schedule.data(),
                      static_cast<int>(schedule.size()), max_iters, marginal_tol,
                      f.T.data(), f.U.data(), &f.cost, &f.marginal, &f.volume,
                      &f.converged));
  f.ref.resize(f.points.size());
  for (int i = 0; i < f.N; ++i)
    reference(&f.points[static_cast<std::size_t>(i) * f.dim],
              &f.ref[static_cast<std::size_t>(i) * f.dim]);
  f.dev = deviation_fractions(f.T, f.ref, f.N, f.dim, f.spacing);
  return f;
}

void write_factorization(std::ofstream& rep, const std::string& out_dir,
                         const FactorizeOutputs& f) {
  double mean = 0, mx = 0, p95 = 0;
  check(sot_compare_maps(f.T.data(), f.ref.data(), f.N, f.dim, &mean, &mx, &p95));
  rep << "transport_cost: " << fmt(f.cost) << "\n";
  rep << "marginal_error: " << fmt(f.marginal) << "\n";
  rep << "converged: " << (f.converged ? "yes" : "no") << "\n";
  rep << "volume_stat_U: " << fmt(f.volume) << "\n";
  rep << "mean_spacing: " << fmt(f.spacing) << "\n";
  rep << "deviation_vs_closed_form: mean " << fmt(mean) << " max " << fmt(mx)
      << " p95 " << fmt(p95) << "\n";
  rep << "fraction_within_2x_spacing: " << fmt(f.dev.within) << "\n";
  rep << "fraction_beyond_3x_spacing: " << fmt(f.dev.beyond3) << "\n";
  check(sot_write_map_csv((out_dir + "/map_T.csv").c_str(), f.points.data(),
                          f.T.data(), f.N, f.dim));
  check(sot_write_map_csv((out_dir + "/map_U.csv").c_str(), f.points.data(),
                          f.U.data(), f.N, f.dim));
  check(sot_write_map_csv((out_dir + "/map_closed_form.csv").c_str(), f.points.data(),
                          f.ref.data(), f.N, f.dim));
}

// ---- subcommand state ----

struct CommonOpts {
  int n = 2;
  int N = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string scheme = "auto";
  std::vector<std::string> tol_kv;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_config("--config", "", "flat key=value config file (flags win)");
  cmd->add_option("--n", o.n, "sphere dimension");
  cmd->add_option("--N", o.N, "sample count");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--scheme", o.scheme, "sampling scheme: auto|circle|fibonacci|random");
  cmd->add_option("--tol", o.tol_kv, "tolerance override KEY=VAL")->take_all();
}

ConfigEcho common_echo(const CommonOpts& o) {
  ConfigEcho cfg{{"n", std::to_string(o.n)},
                 {"N", std::to_string(o.N)},
                 {"seed", std::to_string(o.seed)},
                 {"scheme", o.scheme},
                 {"out", o.out_dir}};
  for (const std::string& kv : o.tol_kv) cfg.emplace_back("tol", kv);
  return cfg;
}

int cmd_conformal_factorize(const CommonOpts& o, double a, const std::string& matrix,
                            bool exact, const std::string& schedule_csv,
                            int max_iters) {
  auto tols = parse_tols(o.tol_kv);
  double marginal_tol = tol_or(tols, "marginal", 1e-6);
  std::vector<double> schedule =
      schedule_csv.empty() ? std::vector<double>{} : parse_doubles(schedule_csv);

  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("a", fmt(a));
  cfg.emplace_back("matrix", matrix.empty() ? "(generated)" : matrix);
  cfg.emplace_back("solver", exact ? "exact" : "entropic");
  std::ofstream rep = open_report(o.out_dir, "conformal-factorize", cfg);

  Lorentz A;
  if (!matrix.empty()) {
    check(sot_lorentz_read(matrix.c_str(), &A.handle));
    int size = 0;
    check(sot_lorentz_size(A.handle, &size));
    if (size != o.n + 2)
      throw CliError{SOT_ERR_SIZE_MISMATCH, "matrix size does not match --n"};
  } else {
    std::vector<double> v(o.n + 1, 0.0);
    v[0] = a;
    Lorentz E, R;
    check(sot_lorentz_from_generator(v.data(), o.n + 1, &E.handle));
    std::vector<double> rot = random_rotation(o.n + 1, o.seed);
    std::vector<double> big((o.n + 2) * (o.n + 2), 0.0);
    big[0] = 1.0;
    for (int i = 0; i < o.n + 1; ++i)
      for (int j = 0; j < o.n + 1; ++j)
        big[(i + 1) * (o.n + 2) + (j + 1)] = rot[i * (o.n + 1) + j];
    check(sot_lorentz_create(big.data(), o.n + 2, &R.handle));
    check(sot_lorentz_compose(E.handle, R.handle, &A.handle));
  }

  int size = 0;
  check(sot_lorentz_size(A.handle, &size));
  std::vector<double> gen_v(size - 1), rotation((size - 1) * (size - 1));
  check(sot_lorentz_cartan(A.handle, gen_v.data(), rotation.data()));
  double gen_norm = 0;
  for (double g : gen_v) gen_norm += g * g;
  gen_norm = std::sqrt(gen_norm);
  rep << "cartan_generator_norm: " << fmt(gen_norm) << "\n";
  rep << "cartan_generator:";
  for (double g : gen_v) rep << ' ' << fmt(g);
  rep << "\n";
  write_text_matrix(o.out_dir + "/cartan_rotation.txt", rotation.data(), size - 1,
                    size - 1);
  check(sot_lorentz_write(A.handle, (o.out_dir + "/input_lorentz.txt").c_str()));

  Cloud mu, nu;
  check(sot_cloud_sample(o.n, o.N, resolve_scheme(o.scheme, o.n), o.seed, &mu.handle));
  check(sot_cloud_map_lorentz(mu.handle, A.handle, &nu.handle));
  check(sot_cloud_write_csv(mu.handle, (o.out_dir + "/cloud.csv").c_str()));

  FactorizeOutputs f = run_factorization(
      mu.handle, nu.handle, exact, schedule, max_iters, marginal_tol,
      [&](const double* p, double* out) {
        check(sot_conformal_closed_form_apply(gen_v.data(), size - 1, p, out));
      });
  write_factorization(rep, o.out_dir, f);
  return 0;
}

Projective load_projective(const std::string& matrix, const std::string& eigs_csv) {
  Projective P;
  if (!matrix.empty()) {
    check(sot_projective_read(matrix.c_str(), &P.handle));
  } else if (!eigs_csv.empty()) {
    std::vector<double> eigs = parse_doubles(eigs_csv);
    int m = static_cast<int>(eigs.size());
    std::vector<double> diag(m * m, 0.0);
    for (int i = 0; i < m; ++i) diag[i * m + i] = eigs[i];
    check(sot_projective_create(diag.data(), m, &P.handle));
  } else {
    throw CliError{SOT_ERR_INVALID_ARGUMENT, "need --matrix or --eigs"};
  }
  return P;
}

int cmd_projective_factorize(const CommonOpts& o, const std::string& matrix,
                             const std::string& eigs_csv, bool exact,
                             const std::string& schedule_csv, int max_iters,
                             int lagrangian_samples) {
  auto tols = parse_tols(o.tol_kv);
  double marginal_tol = tol_or(tols, "marginal", 1e-6);
  double cluster_tol = tol_or(tols, "cluster", 1e-8);
  double sym_tol = tol_or(tols, "sym", 1e-8);
  std::vector<double> schedule =
      schedule_csv.empty() ? std::vector<double>{} : parse_doubles(schedule_csv);

  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("matrix", matrix.empty() ? "(diag from --eigs)" : matrix);
  if (!eigs_csv.empty()) cfg.emplace_back("eigs", eigs_csv);
  cfg.emplace_back("solver", exact ? "exact" : "entropic");
  cfg.emplace_back("cluster_tol", fmt(cluster_tol));
  std::ofstream rep = open_report(o.out_dir, "projective-factorize", cfg);

  Projective A = load_projective(matrix, eigs_csv);
  int size = 0;
  check(sot_projective_size(A.handle, &size));
  if (size != o.n + 1)
    throw CliError{SOT_ERR_SIZE_MISMATCH, "matrix size does not match --n"};

  std::vector<double> sym(size * size), rot(size * size);
  check(sot_projective_polar(A.handle, sym.data(), rot.data()));
  write_text_matrix(o.out_dir + "/polar_symmetric.txt", sym.data(), size, size);
  write_text_matrix(o.out_dir + "/polar_rotation.txt", rot.data(), size, size);

  int clusters = 0;
  std::vector<double> eig_reps(size);
  check(sot_projective_eigen_clusters(A.handle, cluster_tol, &clusters,
                                      eig_reps.data()));
  rep << "eigenvalue_clusters: " << clusters;
  for (int i = 0; i < clusters; ++i) rep << ' ' << fmt(eig_reps[i]);
  rep << "\n";
  rep << "regime: "
      << (clusters <= 2 ? "closed-form (at most two distinct eigenvalues)"
                        : "open-question pipeline (three or more eigenvalues)")
      << "\n";

  // Lagrangian-graph test of the symmetric factor over a random sample.
  Cloud sample;
  check(sot_cloud_sample(o.n, lagrangian_samples, SOT_SCHEME_SEEDED_RANDOM,
                         o.seed + 1, &sample.handle));
  int M = 0, dim = 0;
  std::vector<double> pts = cloud_points(sample.handle, M, dim);
  std::ofstream lag(o.out_dir + "/lagrangian.csv");
  lag << "index,asymmetry,distance,measured_ratio,predicted_ratio\n";
  double max_asym = 0.0, min_asym = 1e300, max_ratio_err = 0.0;
  int tested = 0;
  for (int i = 0; i < M; ++i) {
    double asym = 0, dist = 0, meas = 0, pred = 0;
    sot_status st = sot_lagrangian_test(sym.data(), &pts[std::size_t(i) * dim], dim,
                                        &asym, &dist, &meas, &pred, nullptr);
    if (st != SOT_OK) continue;  // fixed points etc. carry no information
    ++tested;
    lag << i << ',' << fmt(asym) << ',' << fmt(dist) << ',' << fmt(meas) << ','
        << fmt(pred) << '\n';
    max_asym = std::max(max_asym, asym);
    min_asym = std::min(min_asym, asym);
    max_ratio_err = std::max(max_ratio_err, std::abs(meas - pred));
  }
  rep << "lagrangian_points_tested: " << tested << "\n";
  rep << "lagrangian_max_asymmetry: " << fmt(max_asym) << "\n";
  rep << "lagrangian_min_asymmetry: " << fmt(min_asym) << "\n";
  rep << "lagrangian_max_ratio_error: " << fmt(max_ratio_err) << "\n";
  rep << "lagrangian_verdict: " << (max_asym < sym_tol ? "symmetric" : "asymmetric")
      << "\n";

  Cloud mu, nu;
  check(sot_cloud_sample(o.n, o.N, resolve_scheme(o.scheme, o.n), o.seed, &mu.handle));
  check(sot_cloud_map_projective(mu.handle, A.handle, &nu.handle));
  check(sot_cloud_write_csv(mu.handle, (o.out_dir + "/cloud.csv").c_str()));

  // Reference map: projective action of the symmetric polar factor, which is
  // the closed-form optimal map exactly when it has at most two eigenvalues.
  Projective Psym;
  check(sot_projective_create(sym.data(), size, &Psym.handle));
  FactorizeOutputs f = run_factorization(
      mu.handle, nu.handle, exact, schedule, max_iters, marginal_tol,
      [&](const double* p, double* out) {
        check(sot_projective_act(Psym.handle, p, out));
      });
  write_factorization(rep, o.out_dir, f);
  return 0;
}

int cmd_cconvex_check(const CommonOpts& o, double a, const std::string& kind) {
  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("a", fmt(a));
  cfg.emplace_back("kind", kind);
  std::ofstream rep = open_report(o.out_dir, "cconvex-check", cfg);

  sot_profile* pr = nullptr;
  check(kind == "g" ? sot_profile_create_g(a, &pr) : sot_profile_create_f(a, &pr));

  std::ofstream table(o.out_dir + "/defect_table.csv");
  table << "N,defect\n";
  rep << "defect_table:\n";
  for (int N : {128, 256, 512, 1024}) {
    double defect = 0;
    check(sot_cconvex_defect_profile_circle(pr, N, &defect));
    table << N << ',' << fmt(defect) << '\n';
    rep << "  N=" << N << " defect=" << fmt(defect) << "\n";
  }

  int mono = 0, zero_mean = 0;
  double gap = 0, integral = 0;
  check(sot_circle_criterion(pr, 4096, &mono, &zero_mean, &gap, &integral));
  rep << "circle_criterion_monotone: " << (mono ? "yes" : "no") << "\n";
  rep << "circle_criterion_min_slope_gap: " << fmt(gap) << "\n";
  rep << "circle_criterion_zero_mean: " << (zero_mean ? "yes" : "no") << "\n";
  rep << "circle_criterion_integral: " << fmt(integral) << "\n";

  // Constructed violation: potential of the steep profile -1.5 sin x, whose
  // displacement reverses orientation near 0.
  int N = 512;
  std::vector<double> steep(N);
  for (int i = 0; i < N; ++i) {
    double x = 2.0 * M_PI * i / N;
    steep[i] = 1.5 * (std::cos(x) - 1.0);
  }
  double steep_defect = 0;
  check(sot_cconvex_defect_circle_values(N, steep.data(), &steep_defect));
  rep << "steep_potential_defect: " << fmt(steep_defect) << "\n";

  check(sot_profile_write_csv(pr, (o.out_dir + "/profile.csv").c_str(), 512));
  sot_profile_destroy(pr);
  return 0;
}

int cmd_lagrangian_test(const CommonOpts& o, const std::string& matrix,
                        const std::string& eigs_csv) {
  auto tols = parse_tols(o.tol_kv);
  double sym_tol = tol_or(tols, "sym", 1e-8);
  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("matrix", matrix.empty() ? "(diag from --eigs)" : matrix);
  if (!eigs_csv.empty()) cfg.emplace_back("eigs", eigs_csv);
  std::ofstream rep = open_report(o.out_dir, "lagrangian-test", cfg);

  Projective A = load_projective(matrix, eigs_csv);
  int size = 0;
  check(sot_projective_size(A.handle, &size));
  if (size != o.n + 1)
    throw CliError{SOT_ERR_SIZE_MISMATCH, "matrix size does not match --n"};
  std::vector<double> sym(size * size), rot(size * size);
  check(sot_projective_polar(A.handle, sym.data(), rot.data()));

  Cloud sample;
  check(sot_cloud_sample(o.n, o.N, SOT_SCHEME_SEEDED_RANDOM, o.seed, &sample.handle));
  int M = 0, dim = 0;
  std::vector<double> pts = cloud_points(sample.handle, M, dim);

  std::ofstream csv(o.out_dir + "/lagrangian.csv");
  csv << "index,asymmetry,distance,measured_ratio,predicted_ratio\n";
  // histogram over log10(asymmetry), decades -17..0
  constexpr int kLo = -17;
  std::vector<int> hist(18, 0);
  double max_asym = 0.0, max_ratio_err = 0.0;
  int tested = 0, symmetric_pts = 0;
  for (int i = 0; i < M; ++i) {
    double asym = 0, dist = 0, meas = 0, pred = 0;
    sot_status st = sot_lagrangian_test(sym.data(), &pts[std::size_t(i) * dim], dim,
                                        &asym, &dist, &meas, &pred, nullptr);
    if (st != SOT_OK) continue;
    ++tested;
    csv << i << ',' << fmt(asym) << ',' << fmt(dist) << ',' << fmt(meas) << ','
        << fmt(pred) << '\n';
    int bucket = asym <= 0 ? 0
                           : std::min(17, std::max(0, int(std::log10(asym)) - kLo));
    ++hist[bucket];
    max_asym = std::max(max_asym, asym);
    max_ratio_err = std::max(max_ratio_err, std::abs(meas - pred));
    if (asym < sym_tol) ++symmetric_pts;
  }
  rep << "points_tested: " << tested << "\n";
  rep << "max_asymmetry: " << fmt(max_asym) << "\n";
  rep << "max_ratio_error: " << fmt(max_ratio_err) << "\n";
  rep << "points_below_sym_tol: " << symmetric_pts << "\n";
  rep << "verdict: " << (max_asym < sym_tol ? "symmetric" : "asymmetric") << "\n";
  rep << "asymmetry_histogram (log10 decade: count):\n";
  for (int b = 0; b < 18; ++b)
    if (hist[b]) rep << "  1e" << (kLo + b) << ": " << hist[b] << "\n";
  return 0;
}

int cmd_discrete_ot(const CommonOpts& o, double a, const std::string& matrix,
                    bool exact, const std::string& schedule_csv, int max_iters) {
  auto tols = parse_tols(o.tol_kv);
  double marginal_tol = tol_or(tols, "marginal", 1e-6);
  std::vector<double> schedule =
      schedule_csv.empty() ? std::vector<double>{} : parse_doubles(schedule_csv);
  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("a", fmt(a));
  cfg.emplace_back("matrix", matrix.empty() ? "(generated conformal)" : matrix);
  cfg.emplace_back("solver", exact ? "exact" : "entropic");
  std::ofstream rep = open_report(o.out_dir, "discrete-ot", cfg);

  Lorentz A;
  if (!matrix.empty()) {
    check(sot_lorentz_read(matrix.c_str(), &A.handle));
  } else {
    std::vector<double> v(o.n + 1, 0.0);
    v[0] = a;
    check(sot_lorentz_from_generator(v.data(), o.n + 1, &A.handle));
  }
  int size = 0;
  check(sot_lorentz_size(A.handle, &size));
  if (size != o.n + 2)
    throw CliError{SOT_ERR_SIZE_MISMATCH, "matrix size does not match --n"};
  std::vector<double> gen_v(size - 1), rotation((size - 1) * (size - 1));
  check(sot_lorentz_cartan(A.handle, gen_v.data(), rotation.data()));

  Cloud mu, nu;
  check(sot_cloud_sample(o.n, o.N, resolve_scheme(o.scheme, o.n), o.seed, &mu.handle));
  check(sot_cloud_map_lorentz(mu.handle, A.handle, &nu.handle));
  check(sot_cloud_write_csv(mu.handle, (o.out_dir + "/source.csv").c_str()));
  check(sot_cloud_write_csv(nu.handle, (o.out_dir + "/target.csv").c_str()));

  sot_plan* plan = nullptr;
  if (exact) {
    check(sot_solve_exact(mu.handle, nu.handle, &plan));
  } else {
    check(sot_solve_entropic(mu.handle, nu.handle,
                             schedule.empty() ? nullptr : schedule.data(),
                             static_cast<int>(schedule.size()), max_iters,
                             marginal_tol, &plan));
  }
  double cost = 0, marginal = 0, epsilon = 0;
  int converged = 0;
  check(sot_plan_diagnostics(plan, &cost, &marginal, &converged, &epsilon));
  rep << "transport_cost: " << fmt(cost) << "\n";
  rep << "marginal_error: " << fmt(marginal) << "\n";
  rep << "converged: " << (converged ? "yes" : "no") << "\n";
  rep << "final_epsilon: " << fmt(epsilon) << "\n";

  int N = 0, dim = 0;
  std::vector<double> pts = cloud_points(mu.handle, N, dim);
  std::vector<double> T(pts.size()), ref(pts.size());
  check(sot_plan_extract_map(plan, T.data()));
  for (int i = 0; i < N; ++i)
    check(sot_conformal_closed_form_apply(gen_v.data(), dim,
                                          &pts[std::size_t(i) * dim],
                                          &ref[std::size_t(i) * dim]));
  double mean = 0, mx = 0, p95 = 0;
  check(sot_compare_maps(T.data(), ref.data(), N, dim, &mean, &mx, &p95));
  double spacing = 0;
  check(sot_cloud_mean_spacing(mu.handle, &spacing));
  DeviationCount dev = deviation_fractions(T, ref, N, dim, spacing);
  rep << "mean_spacing: " << fmt(spacing) << "\n";
  rep << "deviation_vs_closed_form: mean " << fmt(mean) << " max " << fmt(mx)
      << " p95 " << fmt(p95) << "\n";
  rep << "fraction_within_2x_spacing: " << fmt(dev.within) << "\n";
  check(sot_write_map_csv((o.out_dir + "/map.csv").c_str(), pts.data(), T.data(), N,
                          dim));
  check(sot_plan_write_csv(plan, (o.out_dir + "/plan.csv").c_str(), 1e-12));
  sot_plan_destroy(plan);
  return 0;
}

int cmd_double_cover(const CommonOpts& o, const std::string& sweep_csv, int samples) {
  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("sweep", sweep_csv);
  cfg.emplace_back("samples", std::to_string(samples));
  std::ofstream rep = open_report(o.out_dir, "double-cover", cfg);
  std::vector<double> sweep = parse_doubles(sweep_csv);
  std::ofstream csv(o.out_dir + "/double_cover.csv");
  csv << "a,max_deviation\n";
  double worst = 0;
  rep << "deviation_table:\n";
  for (double a : sweep) {
    double dev = 0;
    check(sot_double_cover_check(a, samples, &dev));
    csv << fmt(a) << ',' << fmt(dev) << '\n';
    rep << "  a=" << fmt(a) << " max_deviation=" << fmt(dev) << "\n";
    worst = std::max(worst, dev);
  }
  rep << "worst_deviation: " << fmt(worst) << "\n";
  return 0;
}

// Minimal map-CSV reader (index, source coords, target coords) for compare.
void read_map_csv(const std::string& path, std::vector<double>& source,
                  std::vector<double>& target, int& N, int& dim) {
  std::ifstream in(path);
  if (!in) throw CliError{SOT_ERR_IO, "cannot open " + path};
  std::string line;
  if (!std::getline(in, line)) throw CliError{SOT_ERR_IO, "empty map CSV: " + path};
  int cols = 1;
  for (char c : line)
    if (c == ',') ++cols;
  dim = (cols - 1) / 2;
  if (dim < 2 || cols != 1 + 2 * dim)
    throw CliError{SOT_ERR_IO, "malformed map CSV header: " + path};
  source.clear();
  target.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
    if (static_cast<int>(vals.size()) != cols)
      throw CliError{SOT_ERR_IO, "malformed map CSV row in " + path};
    for (int i = 0; i < dim; ++i) source.push_back(vals[1 + i]);
    for (int i = 0; i < dim; ++i) target.push_back(vals[1 + dim + i]);
  }
  N = static_cast<int>(source.size()) / dim;
}

int cmd_compare(const CommonOpts& o, const std::string& map1, const std::string& map2) {
  ConfigEcho cfg = common_echo(o);
  cfg.emplace_back("map1", map1);
  cfg.emplace_back("map2", map2);
  std::ofstream rep = open_report(o.out_dir, "compare", cfg);

  std::vector<double> s1, t1, s2, t2;
  int N1 = 0, d1 = 0, N2 = 0, d2 = 0;
  read_map_csv(map1, s1, t1, N1, d1);
  read_map_csv(map2, s2, t2, N2, d2);
  if (N1 != N2 || d1 != d2)
    throw CliError{SOT_ERR_SIZE_MISMATCH, "map CSVs have different shapes"};
  double src_dev = 0;
  for (std::size_t i = 0; i < s1.size(); ++i)
    src_dev = std::max(src_dev, std::abs(s1[i] - s2[i]));
  rep << "source_coordinate_deviation: " << fmt(src_dev) << "\n";
  double mean = 0, mx = 0, p95 = 0;
  check(sot_compare_maps(t1.data(), t2.data(), N1, d1, &mean, &mx, &p95));
  rep << "deviation: mean " << fmt(mean) << " max " << fmt(mx) << " p95 " << fmt(p95)
      << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sphereot: polar factorization of conformal and projective sphere "
               "maps via optimal transport"};
  app.set_version_flag("--version", std::string(sot_version()));
  app.require_subcommand(1);

  // conformal-factorize
  CommonOpts co;
  double ca = 0.3;
  std::string cmatrix, cschedule;
  bool cexact = false;
  int cmax_iters = 2000;
  CLI::App* conf = app.add_subcommand("conformal-factorize",
                                      "Cartan + Brenier-McCann factorization of a "
                                      "Lorentz element");
  add_common(conf, co);
  conf->add_option("--a", ca, "generator parameter when no matrix is given");
  conf->add_option("--matrix", cmatrix, "Lorentz matrix file (row-major text)");
  conf->add_flag("--exact", cexact, "use the exact assignment solver");
  conf->add_option("--schedule", cschedule, "entropic epsilon schedule, comma list");
  conf->add_option("--max-iters", cmax_iters, "entropic iterations per stage");

  // projective-factorize
  CommonOpts po;
  std::string pmatrix, peigs, pschedule;
  bool pexact = false;
  int pmax_iters = 2000, plag_samples = 200;
  CLI::App* proj = app.add_subcommand("projective-factorize",
                                      "polar + Brenier-McCann factorization of a "
                                      "GL+ element");
  add_common(proj, po);
  proj->add_option("--matrix", pmatrix, "matrix file (row-major text)");
  proj->add_option("--eigs", peigs, "diagonal entries, comma list");
  proj->add_flag("--exact", pexact, "use the exact assignment solver");
  proj->add_option("--schedule", pschedule, "entropic epsilon schedule, comma list");
  proj->add_option("--max-iters", pmax_iters, "entropic iterations per stage");
  proj->add_option("--lagrangian-samples", plag_samples,
                   "points for the Lagrangian-graph test");

  // cconvex-check
  CommonOpts xo;
  double xa = 0.5;
  std::string xkind = "f";
  CLI::App* ccx = app.add_subcommand("cconvex-check",
                                     "c-convexity defect study of a profile "
                                     "potential");
  add_common(ccx, xo);
  ccx->add_option("--a", xa, "profile parameter");
  ccx->add_option("--kind", xkind, "profile kind: g|f");

  // lagrangian-test
  CommonOpts lo;
  std::string lmatrix, leigs;
  CLI::App* lag = app.add_subcommand("lagrangian-test",
                                     "batch Lagrangian-graph test of a projective "
                                     "map");
  add_common(lag, lo);
  lag->add_option("--matrix", lmatrix, "matrix file (row-major text)");
  lag->add_option("--eigs", leigs, "diagonal entries, comma list");

  // discrete-ot
  CommonOpts dot;
  double da = 0.5;
  std::string dmatrix, dschedule;
  bool dexact = false;
  int dmax_iters = 2000;
  CLI::App* dsc = app.add_subcommand("discrete-ot",
                                     "solve transport to a conformal pushforward "
                                     "and extract the map");
  add_common(dsc, dot);
  dsc->add_option("--a", da, "conformal parameter for the generated target");
  dsc->add_option("--matrix", dmatrix, "Lorentz matrix file for the target");
  dsc->add_flag("--exact", dexact, "use the exact assignment solver");
  dsc->add_option("--schedule", dschedule, "entropic epsilon schedule, comma list");
  dsc->add_option("--max-iters", dmax_iters, "entropic iterations per stage");

  // double-cover
  CommonOpts vo;
  std::string vsweep = "0.1,0.7,1.5";
  int vsamples = 1000;
  CLI::App* dcv = app.add_subcommand("double-cover",
                                     "commutation check of the circle double "
                                     "cover");
  add_common(dcv, vo);
  dcv->add_option("--sweep", vsweep, "parameter values, comma list");
  dcv->add_option("--samples", vsamples, "angles per parameter");

  // compare
  CommonOpts mo;
  std::string m1, m2;
  CLI::App* cmp = app.add_subcommand("compare", "geodesic deviation of two map CSVs");
  add_common(cmp, mo);
  cmp->add_option("--map1", m1, "first map CSV")->required();
  cmp->add_option("--map2", m2, "second map CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (conf->parsed())
      return cmd_conformal_factorize(co, ca, cmatrix, cexact, cschedule, cmax_iters);
    if (proj->parsed())
      return cmd_projective_factorize(po, pmatrix, peigs, pexact, pschedule,
                                      pmax_iters, plag_samples);
    if (ccx->parsed()) return cmd_cconvex_check(xo, xa, xkind);
    if (lag->parsed()) return cmd_lagrangian_test(lo, lmatrix, leigs);
    if (dsc->parsed())
      return cmd_discrete_ot(dot, da, dmatrix, dexact, dschedule, dmax_iters);
    if (dcv->parsed()) return cmd_double_cover(vo, vsweep, vsamples);
    if (cmp->parsed()) return cmd_compare(mo, m1, m2);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", status_name(e.status),
                 e.message.c_str());
    return static_cast<int>(e.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error [unknown]: %s\n", e.what());
    return static_cast<int>(SOT_ERR_UNKNOWN);
  }
  return 0;
}
