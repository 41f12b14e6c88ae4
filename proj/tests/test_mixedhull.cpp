#include <cmath>

#include "doctest.h"
#include "gme/geomopt.hpp"
#include "gme/mixedhull.hpp"

using namespace gme;

TEST_CASE("hull of a convex curve is the curve") {
  auto c = sample_curve(101, [](double x) { return (x - 0.3) * (x - 0.3); });
  auto h = convex_hull_1d(c);
  for (size_t i = 0; i < c.ys.size(); ++i) CHECK(h.ys[i] == doctest::Approx(c.ys[i]));
}

TEST_CASE("hull of a concave curve is the chord") {
  auto c = sample_curve(51, [](double x) { return std::sin(M_PI * x); });
  auto h = convex_hull_1d(c);
  for (double y : h.ys) CHECK(std::abs(y) < 1e-12);
}

TEST_CASE("hull is convex and below the curve") {
  auto c = sample_curve(201, [](double x) { return std::cos(9 * x) + x; });
  auto h = convex_hull_1d(c);
  for (size_t i = 0; i < c.ys.size(); ++i) CHECK(h.ys[i] <= c.ys[i] + 1e-14);
  for (size_t i = 1; i + 1 < h.ys.size(); ++i) CHECK(h.ys[i - 1] + h.ys[i + 1] - 2 * h.ys[i] >= -1e-12);
}

TEST_CASE("curve validation and interpolation") {
  Curve1D bad{{0, 0.5, 0.4, 1}, {0, 0, 0, 0}};
  CHECK_THROWS_AS(bad.validate(), precondition_error);
  Curve1D c{{0, 1}, {1, 3}};
  CHECK(c(0.25) == doctest::Approx(1.5));
}

TEST_CASE("pure symmetric curve samples the solver value") {
  auto c = pure_symmetric_curve(3, 2, 1, 101);
  for (int i = 0; i < 101; i += 10) {
    const double q = c.xs[i];
    const double l = entanglement_eigenvalue(two_term_symmetric_state(3, 2, 1, q)).lambda_max;
    CHECK(c.ys[i] == doctest::Approx(1 - l * l).epsilon(1e-8));
  }
}

TEST_CASE("mixed symmetric GME endpoints and convexity") {
  CHECK(mixed_symmetric_gme(3, 2, 1, 1.0) == doctest::Approx(5.0 / 9));
  CHECK(mixed_symmetric_gme(3, 2, 1, 0.0) == doctest::Approx(5.0 / 9));
  // Equal mixture of W and Wtilde: the hull hits the pure superposition value at the midpoint.
  const double mid = mixed_symmetric_gme(3, 2, 1, 0.5);
  CHECK(mid <= 5.0 / 9);
  auto c = mixed_symmetric_curve(3, 2, 1, 101);
  for (size_t i = 1; i + 1 < c.ys.size(); ++i) CHECK(c.ys[i - 1] + c.ys[i + 1] - 2 * c.ys[i] >= -1e-12);
}

TEST_CASE("GHZ/W/Wtilde surface") {
  GhzWSurface s(101);
  CHECK(s.pure(1, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s.pure(0, 1) == doctest::Approx(5.0 / 9).epsilon(1e-9));
  CHECK(s.mixed(1, 0) == doctest::Approx(0.5).epsilon(1e-9));
  for (double x : {0.1, 0.4, 0.7})
    for (double y : {0.1, 0.2}) CHECK(s.mixed(x, y) <= s.pure(x, y) + 1e-12);
  auto a = s.audit(300, 1);
  CHECK(a.segments == 300);
  CHECK(a.violations == 0);
  CHECK_THROWS_AS(s.mixed(0.8, 0.5), precondition_error);
}
