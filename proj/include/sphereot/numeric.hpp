#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace sphereot {

// Global tolerances and quadrature settings. Input-gate checks read these;
// tests may tighten or relax them through the single instance.
struct NumericPolicy {
  double unit_tol = 1e-9;          // gate for unit-norm / tangency inputs
  double group_gate_tol = 1e-10;   // Lorentz / rotation invariant checks
  double cut_locus_margin = 1e-9;  // reject d >= pi - margin
  double frame_skip_tol = 1e-6;    // Gram-Schmidt near-dependence threshold
  double fd_step = 1e-4;           // central finite-difference step
  int quadrature_order = 32;       // Gauss-Legendre nodes on [0,1]
};

NumericPolicy& policy();

// Gauss-Legendre nodes and weights on [0,1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const Quadrature& get(int order);

  template <class F>
  double integrate01(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }

  // Integral over [0, b] (b may be negative); composite over unit-length
  // panels so accuracy does not degrade on long ranges.
  template <class F>
  double integrate_to(double b, F&& f) const {
    int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b))));
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
      double lo = b * k / panels, w = b / panels;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        s += w * weights[i] * f(lo + w * nodes[i]);
    }
    return s;
  }
};

// sin-stable evaluation of d / sin d, series below the switch point.
double d_over_sin(double d);

inline double clamp_unit(double t) { return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t); }

}  // namespace sphereot
