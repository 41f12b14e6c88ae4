#include "gme/mixedhull.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gme/geomopt.hpp"
#include "gme/qstate.hpp"

namespace gme {

void Curve1D::validate() const {
  if (xs.size() != ys.size() || xs.size() < 2) throw precondition_error("curve needs >= 2 matched samples");
  for (size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw precondition_error("curve abscissae must be strictly increasing");
  if (std::abs(xs.front()) > 1e-12 || std::abs(xs.back() - 1) > 1e-12)
    throw precondition_error("curve must span [0, 1]");
}

double Curve1D::operator()(double x) const {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  size_t j = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return (1 - t) * ys[j - 1] + t * ys[j];
}

Curve1D convex_hull_1d(const Curve1D& c) {
  c.validate();
  // Monotone chain, lower half only.
  std::vector<size_t> h;
  for (size_t i = 0; i < c.xs.size(); ++i) {
    while (h.size() >= 2) {
      size_t a = h[h.size() - 2], b = h.back();
      double cross = (c.xs[b] - c.xs[a]) * (c.ys[i] - c.ys[a]) - (c.ys[b] - c.ys[a]) * (c.xs[i] - c.xs[a]);
      if (cross <= 0)
        h.pop_back();
      else
        break;
    }
    h.push_back(i);
  }
  Curve1D out{c.xs, c.ys};
  for (size_t s = 0; s + 1 < h.size(); ++s) {
    size_t a = h[s], b = h[s + 1];
    for (size_t i = a + 1; i < b; ++i) {
      double t = (c.xs[i] - c.xs[a]) / (c.xs[b] - c.xs[a]);
      out.ys[i] = std::min(c.ys[i], (1 - t) * c.ys[a] + t * c.ys[b]);
    }
  }
  return out;
}

Curve1D pure_symmetric_curve(int n, int k1, int k2, int grid) {
  if (grid < 101) throw precondition_error("grid must be >= 101");
  return sample_curve(grid, [&](double q) {
    double l = two_term_symmetric_lambda(n, k1, k2, q);
    return std::max(0.0, 1 - l * l);
  });
}

Curve1D mixed_symmetric_curve(int n, int k1, int k2, int grid) {
  return convex_hull_1d(pure_symmetric_curve(n, k1, k2, grid));
}

double mixed_symmetric_gme(int n, int k1, int k2, double s, int grid) {
  if (s < 0 || s > 1) throw precondition_error("mixture weight must lie in [0, 1]");
  return mixed_symmetric_curve(n, k1, k2, grid)(s);
}

GhzWSurface::GhzWSurface(int grid) : n_(grid) {
  if (grid < 3) throw precondition_error("grid must be >= 3");
  const int n = n_;
  pure_.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    double x = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      double r = static_cast<double>(j) / (n - 1);
      double l = ghz_w_lambda(x, std::min(1 - x, (1 - x) * r));
      pure_[i * n + j] = std::max(0.0, 1 - l * l);
    }
  }
  mixed_ = pure_;
  Curve1D line;
  for (int i = 0; i < n; ++i) line.xs.push_back(static_cast<double>(i) / (n - 1));
  line.ys.resize(n);
  // Pass 1: along r at fixed x.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) line.ys[j] = mixed_[i * n + j];
    auto h = convex_hull_1d(line);
    for (int j = 0; j < n; ++j) mixed_[i * n + j] = h.ys[j];
  }
  // Pass 2: along x at fixed r.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) line.ys[i] = mixed_[i * n + j];
    auto h = convex_hull_1d(line);
    for (int i = 0; i < n; ++i) mixed_[i * n + j] = h.ys[i];
  }
}

double GhzWSurface::interp(const std::vector<double>& v, double x, double y) const {
  if (x < -1e-12 || y < -1e-12 || x + y > 1 + 1e-12) throw precondition_error("need x, y >= 0 and x + y <= 1");
  x = std::clamp(x, 0.0, 1.0);
  double r = x < 1 ? std::clamp(y / (1 - x), 0.0, 1.0) : 0.0;
  const int n = n_;
  double fx = x * (n - 1), fr = r * (n - 1);
  int i = std::min(static_cast<int>(fx), n - 2), j = std::min(static_cast<int>(fr), n - 2);
  double tx = fx - i, tr = fr - j;
  return (1 - tx) * ((1 - tr) * v[i * n + j] + tr * v[i * n + j + 1]) +
         tx * ((1 - tr) * v[(i + 1) * n + j] + tr * v[(i + 1) * n + j + 1]);
}

double GhzWSurface::pure(double x, double y) const { return interp(pure_, x, y); }
double GhzWSurface::mixed(double x, double y) const { return interp(mixed_, x, y); }

ConvexityAudit GhzWSurface::audit(int segments, std::uint64_t seed, double tol) const {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  auto point = [&] {
    double a = u(rng), b = u(rng);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    return std::pair<double, double>{a, b};
  };
  ConvexityAudit out;
  for (int s = 0; s < segments; ++s) {
    auto [x0, y0] = point();
    auto [x1, y1] = point();
    double v[11];
    for (int k = 0; k <= 10; ++k) {
      double t = k / 10.0;
      v[k] = mixed(x0 + t * (x1 - x0), y0 + t * (y1 - y0));
    }
    double w = 0;
    for (int k = 1; k < 10; ++k) w = std::min(w, v[k - 1] - 2 * v[k] + v[k + 1]);
    ++out.segments;
    if (w < -tol) ++out.violations;
    out.worst = std::min(out.worst, w);
  }
  return out;
}

double ghz_w_wtilde_mixed_gme(double x, double y, int grid) { return GhzWSurface(grid).mixed(x, y); }

}  // namespace gme
