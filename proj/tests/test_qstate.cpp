#include <sstream>

#include "doctest.h"
#include "gme/qstate.hpp"
#include "gme/qstfile.hpp"

using namespace gme;

TEST_CASE("flatten and unflatten are inverse, party 0 most significant") {
  Dims d{2, 3, 2};
  CHECK(flatten({1, 0, 0}, d) == 6);
  CHECK(flatten({0, 2, 1}, d) == 5);
  for (long i = 0; i < total_dim(d); ++i) CHECK(flatten(unflatten(i, d), d) == i);
}

TEST_CASE("state constructors validate") {
  Eigen::VectorXcd v(2);
  v << 1, 1;
  CHECK_THROWS_AS(PureState({2}, v), precondition_error);
  CHECK_THROWS_AS(PureState({3}, v / std::sqrt(2.0)), precondition_error);
  CHECK_THROWS_AS(normalized({2}, Eigen::VectorXcd::Zero(2)), precondition_error);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2}, m), precondition_error);
  CHECK_THROWS_AS(PartitionSpec::from_group({0, 3}, 3), precondition_error);
  CHECK_THROWS_AS(PartitionSpec::from_group({0, 1, 2}, 3), precondition_error);
}

TEST_CASE("GHZ reduced states are maximally mixed") {
  auto g = ghz_state(3);
  auto r = partial_trace(g, {0});
  CHECK(r.m.isApprox(0.5 * Eigen::MatrixXcd::Identity(2, 2), 1e-14));
  CHECK(von_neumann_entropy(r) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(von_neumann_entropy(projector(g)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("partial trace of a product state returns the factor") {
  Rng rng(1);
  auto a = random_pure({2}, rng), b = random_pure({3}, rng);
  auto ab = tensor_product(a, b);
  auto rb = partial_trace(ab, {1});
  CHECK((rb.m - b.amps * b.amps.adjoint()).norm() < 1e-13);
  auto ra = partial_trace(projector(ab), {0});
  CHECK((ra.m - a.amps * a.amps.adjoint()).norm() < 1e-13);
}

TEST_CASE("partial transpose of a Bell state is swap / 2") {
  auto pt = partial_transpose(projector(bell_state(0)), PartitionSpec::from_group({1}, 2));
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1;
  CHECK((pt - 0.5 * swap).norm() < 1e-14);
}

TEST_CASE("permute_parties moves amplitudes") {
  auto s = basis_state({2, 3}, {1, 2});
  auto p = permute_parties(s, {1, 0});
  CHECK(p.dims == Dims{3, 2});
  CHECK(std::abs(p.amp({2, 1}) - cplx(1)) < 1e-15);
}

TEST_CASE("relative entropy of a pure state to the maximally mixed qubit is one bit") {
  auto rho = projector(basis_state({2}, {0}));
  CHECK(relative_entropy(rho, maximally_mixed({2})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isinf(relative_entropy(maximally_mixed({2}), rho)));
}

TEST_CASE("fidelity between pure states is the squared overlap") {
  Rng rng(3);
  auto a = random_pure({2, 2}, rng), b = random_pure({2, 2}, rng);
  const double want = std::norm(a.amps.dot(b.amps));
  CHECK(fidelity(a, b) == doctest::Approx(want).epsilon(1e-12));
  CHECK(fidelity(projector(a), projector(b)) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("random unitaries are unitary") {
  Rng rng(5);
  auto U = random_unitary(5, rng);
  CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("entropies") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(shannon_entropy({0.25, 0.25, 0.5}) == doctest::Approx(1.5));
}

TEST_CASE("QST round trip") {
  Rng rng(11);
  auto psi = random_pure({2, 3}, rng);
  std::stringstream ss;
  write_qst(ss, psi);
  auto back = std::get<PureState>(parse_qst(ss));
  CHECK((back.amps - psi.amps).norm() < 1e-12);

  auto rho = random_density({2, 2}, 2, rng);
  std::stringstream sm;
  write_qst(sm, rho);
  auto rb = std::get<DensityMatrix>(parse_qst(sm));
  CHECK((rb.m - rho.m).norm() < 1e-12);
}

TEST_CASE("QST rejects malformed input") {
  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return parse_qst(in);
  };
  CHECK_THROWS_AS(bad("banana\n2\n0 1 0\n"), format_error);
  CHECK_THROWS_AS(bad("pure\n2 2\n0 0 1 0\n0 1 1 0\n"), format_error);  // not normalized
  CHECK_THROWS_AS(bad("pure\n2\n2 1 0\n"), format_error);                // index out of range
  CHECK_THROWS_AS(bad("pure\n2\n0 x 0\n"), format_error);
  auto ok = bad("# comment\npure\n2\n1 1 0\n");
  CHECK(std::holds_alternative<PureState>(ok));
}
