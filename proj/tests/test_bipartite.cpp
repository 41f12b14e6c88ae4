#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "gme/bipartite.hpp"
#include "gme/geomopt.hpp"

using namespace gme;

namespace {

// Wootters concurrence from the spin-flipped matrix, computed directly.
double wootters(const DensityMatrix& rho) {
  Eigen::Matrix4cd yy = Eigen::kroneckerProduct(pauli(2), pauli(2)).eval();
  Eigen::Matrix4cd R = rho.m * yy * rho.m.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(R);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

PartitionSpec first(int n) { return PartitionSpec::from_group({0}, n); }

}  // namespace

TEST_CASE("Schmidt decomposition reconstructs the state") {
  Rng rng(1);
  auto psi = random_pure({2, 3, 2}, rng);
  auto cut = PartitionSpec::from_group({1}, 3);
  auto s = schmidt(psi, cut);
  double norm = 0;
  for (double c : s.coefficients) norm += c * c;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  for (size_t i = 1; i < s.coefficients.size(); ++i) CHECK(s.coefficients[i] <= s.coefficients[i - 1]);
  // Reduced state on party 1 has eigenvalues c_i^2.
  auto r = partial_trace(psi, {1});
  auto ev = hermitian_eigenvalues(r.m);
  std::vector<double> sq;
  for (double c : s.coefficients) sq.push_back(c * c);
  std::sort(sq.begin(), sq.end());
  for (int i = 0; i < ev.size(); ++i) CHECK(ev(i) == doctest::Approx(sq[i]).epsilon(1e-10));
}

TEST_CASE("concurrence matches the Wootters spin-flip formula") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const int rank = 1 + t % 4;
    auto rho = random_density({2, 2}, rank, rng);
    // The oracle takes square roots of near-zero eigenvalues when rho is rank deficient.
    CHECK(concurrence(rho) == doctest::Approx(wootters(rho)).epsilon(rank == 4 ? 1e-10 : 1e-7));
  }
  CHECK(concurrence(bell_state(2)) == doctest::Approx(1.0));
  CHECK(concurrence(projector(bell_state(1))) == doctest::Approx(1.0));
}

TEST_CASE("Werner two-qubit concurrence is max(0, (3r-1)/2)") {
  for (double r : {0.2, 1.0 / 3, 0.5, 0.9}) {
    CHECK(concurrence(werner_two_qubit(r)) == doctest::Approx(std::max(0.0, (3 * r - 1) / 2)).scale(1));
  }
}

TEST_CASE("entanglement of formation") {
  CHECK(eof_from_concurrence(1) == doctest::Approx(1.0));
  CHECK(eof_from_concurrence(0) == doctest::Approx(0.0));
  // Pure states: EoF = entropy of the reduced state.
  Rng rng(3);
  auto psi = random_pure({2, 2}, rng);
  CHECK(eof(projector(psi)) == doctest::Approx(von_neumann_entropy(partial_trace(psi, {0}))).epsilon(1e-9));
}

TEST_CASE("negativity") {
  auto bell = projector(bell_state(0));
  CHECK(negativity(bell, first(2)) == doctest::Approx(1.0));
  CHECK(!is_ppt(bell, first(2)));
  CHECK(is_ppt(maximally_mixed({2, 2}), first(2)));
  // Pure state negativity = (sum c_i)^2 - 1.
  Rng rng(4);
  auto psi = random_pure({3, 3}, rng);
  auto s = schmidt(psi, first(2));
  double sum = 0;
  for (double c : s.coefficients) sum += c;
  CHECK(negativity(projector(psi), first(2)) == doctest::Approx(sum * sum - 1).epsilon(1e-10));
}

TEST_CASE("two-qubit GME from concurrence agrees with the solver on pure states") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto psi = random_pure({2, 2}, rng);
    const double l = entanglement_eigenvalue(psi).lambda_max;
    CHECK(gme_two_qubit(projector(psi)) == doctest::Approx(1 - l * l).epsilon(1e-9));
  }
  CHECK(gme_from_concurrence(1) == doctest::Approx(0.5));
}

TEST_CASE("Werner and isotropic families") {
  for (int d : {2, 3, 4}) {
    auto w = werner_state(-1, d);
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1;
    CHECK((w.m * swap).trace().real() == doctest::Approx(-1.0));
    auto iso = isotropic_state(0.7, d);
    auto phi = max_entangled(d);
    CHECK((phi.amps.adjoint() * iso.m * phi.amps)(0).real() == doctest::Approx(0.7));
    CHECK(werner_gme(0.2, d) == 0.0);
    CHECK(isotropic_gme(0.5 / d, d) == 0.0);
    // Monotone in the entangled range.
    CHECK(isotropic_gme(0.9, d) > isotropic_gme(0.8, d));
  }
  // Werner two-qubit states are isotropic up to a local unitary: E(f) matches the concurrence formula.
  for (double f : {-1.0, -0.5, -0.1}) {
    CHECK(werner_gme(f, 2) == doctest::Approx(gme_two_qubit(werner_state(f, 2))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(werner_gme(1.5, 2), precondition_error);
}

TEST_CASE("thermal Werner state") {
  // Antiferromagnet (J < 0) at low T approaches the singlet.
  auto t = thermal_werner(-1, 0.01);
  CHECK(t.r == doctest::Approx(1.0).epsilon(1e-6));
  auto hot = thermal_werner(-1, 1000);
  CHECK(hot.r == doctest::Approx(0.0).scale(1).epsilon(1e-2));
  CHECK((t.rho.m - werner_two_qubit(t.r).m).norm() < 1e-12);
}
