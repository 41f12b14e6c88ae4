// Convex-roof GME for symmetry-reduced mixed-state families.
#pragma once

#include <cstdint>
#include <vector>

namespace gme {

struct Curve1D {
  std::vector<double> xs;  // strictly increasing, spans [0, 1]
  std::vector<double> ys;

  void validate() const;
  // Linear interpolation between nodes.
  double operator()(double x) const;
};

// Lower convex envelope, evaluated back on the input grid.
Curve1D convex_hull_1d(const Curve1D& curve);

// Uniform grid of n points on [0, 1] with f sampled at each node.
template <class F>
Curve1D sample_curve(int n, F&& f) {
  Curve1D c;
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(i) / (n - 1);
    c.xs.push_back(x);
    c.ys.push_back(f(x));
  }
  return c;
}

// 1 - Lambda^2 of sqrt(q) S(n,k1) + sqrt(1-q) S(n,k2) on the grid, and its hull.
Curve1D pure_symmetric_curve(int n, int k1, int k2, int grid);
Curve1D mixed_symmetric_curve(int n, int k1, int k2, int grid);
// Convex-roof E_sin2 of s |S(n,k1)><.| + (1-s) |S(n,k2)><.|.
double mixed_symmetric_gme(int n, int k1, int k2, double s, int grid = 401);

struct ConvexityAudit {
  int segments = 0;
  int violations = 0;        // segments with a second difference below -tol
  double worst = 0;          // most negative second difference seen
};

// E_sin2 of x GHZ + y W + (1-x-y) Wtilde, convexified in two passes on an (x, r) grid, y = (1-x) r.
class GhzWSurface {
 public:
  explicit GhzWSurface(int grid = 401);
  double pure(double x, double y) const;   // interpolated pure-state surface
  double mixed(double x, double y) const;  // interpolated convexified surface
  ConvexityAudit audit(int segments = 1000, std::uint64_t seed = 0, double tol = 1e-6) const;
  int grid() const { return n_; }

 private:
  double interp(const std::vector<double>& v, double x, double y) const;
  int n_;
  std::vector<double> pure_, mixed_;  // row-major [ix][ir]
};

double ghz_w_wtilde_mixed_gme(double x, double y, int grid = 401);

}  // namespace gme
