#include <cmath>

#include "doctest.h"
#include "gme/geomopt.hpp"
#include "gme/ree.hpp"

using namespace gme;

TEST_CASE("F at a single Dicke component is the pure-state bound") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 0; k <= n; ++k) {
      std::vector<double> p(n + 1, 0.0);
      p[k] = 1;
      const double l = lambda_symmetric(n, k);
      CHECK(F_function(n, p) == doctest::Approx(-2 * std::log2(l)).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("F is the relative entropy to the phase-averaged product state") {
  const std::vector<std::vector<double>> cases = {{0.2, 0.5, 0.3, 0}, {0, 0.4, 0, 0.6}, {0.1, 0.1, 0.1, 0.7}};
  for (const auto& p : cases) {
    double a = 0;
    for (int k = 0; k <= 3; ++k) a += k * p[k];
    auto rho = symmetric_mixture(3, p);
    CHECK(relative_entropy(rho, phase_averaged_product(3, a / 3)) == doctest::Approx(F_function(3, p)).epsilon(1e-10));
  }
}

TEST_CASE("co F matches the closed forms where F is convex") {
  const int fam[5][3] = {{3, 2, 1}, {3, 0, 1}, {4, 0, 1}, {4, 1, 2}, {4, 1, 3}};
  for (const auto& f : fam)
    for (double s : {0.15, 0.5, 0.85}) {
      auto cf = ree_closed_form(f[0], f[1], f[2], s);
      REQUIRE(cf.has_value());
      auto cv = conjectured_ree(f[0], f[1], f[2], s);
      CHECK(cv.value == doctest::Approx(*cf).epsilon(1e-9));
      CHECK(cv.conjecture);
    }
  CHECK_FALSE(conjectured_ree(2, 0, 1, 0.3).conjecture);
  CHECK_FALSE(ree_closed_form(4, 0, 3, 0.5).has_value());
}

TEST_CASE("rho_{4;0,3} hull lies strictly below F in the middle") {
  auto f = F_curve(4, 0, 3, 401);
  auto h = convex_hull_1d(f);
  bool below = false;
  for (size_t i = 0; i < f.ys.size(); ++i) below = below || h.ys[i] < f.ys[i] - 1e-6;
  CHECK(below);
}

TEST_CASE("lower bound values") {
  CHECK(ree_lower_bound(ghz_state(3)).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ree_lower_bound(w_state()).value == doctest::Approx(std::log2(9.0 / 4)).epsilon(1e-10));
}

TEST_CASE("numeric REE of pure two-qubit states is the entanglement entropy") {
  Rng rng(3);
  for (int t = 0; t < 3; ++t) {
    auto psi = random_pure({2, 2}, rng);
    const double S = von_neumann_entropy(partial_trace(psi, {0}));
    auto res = numeric_ree(projector(psi));
    CHECK(res.value >= S - 1e-9);
    CHECK(res.value == doctest::Approx(S).epsilon(5e-3).scale(1));
  }
}

TEST_CASE("numeric REE returns a consistent separable ansatz") {
  auto rho = two_term_mixture(3, 2, 1, 0.3);
  auto res = numeric_ree(rho);
  res.ansatz.validate();
  CHECK(relative_entropy(rho, res.ansatz.sigma(rho.dims)) == doctest::Approx(res.value).epsilon(1e-9));
  CHECK(res.value == doctest::Approx(*ree_closed_form(3, 2, 1, 0.3)).epsilon(1e-2).scale(1));
}

TEST_CASE("separable inputs give zero") {
  auto res = numeric_ree(maximally_mixed({2, 2, 2}));
  CHECK(res.value < 1e-6);
}

TEST_CASE("Plenio-Vedral bound saturates for W") {
  auto pv = plenio_vedral_bound(w_state());
  CHECK_FALSE(pv.partial);
  CHECK(pv.value == doctest::Approx(std::log2(9.0 / 4)).epsilon(1e-6));
}

TEST_CASE("symmetric family recognition") {
  auto rho = two_term_mixture(3, 0, 1, 0.25);
  auto v = symmetric_family_ree(rho);
  REQUIRE(v.has_value());
  CHECK(*v == doctest::Approx(*ree_closed_form(3, 0, 1, 0.25)).epsilon(1e-6));
  Rng rng(1);
  CHECK_FALSE(symmetric_family_ree(random_density({2, 2, 2}, 2, rng)).has_value());
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(ree_closed_form(3, 2, 1, 1.5), precondition_error);
  CHECK_THROWS_AS(F_function(2, {0.5, 0.5}), precondition_error);
}
