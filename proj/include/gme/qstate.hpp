// Dense pure and mixed states on a tensor product of finite local spaces.
// Party 0 is the most significant index of the flattened amplitude vector.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gme {

using cplx = std::complex<double>;
using Dims = std::vector<int>;
using Rng = std::mt19937_64;

// Thrown when an operation's precondition does not hold.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown by the QST loader on malformed input.
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative routine cannot reach its tolerance.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kSupportCutoff = 1e-12;
constexpr int kMaxPureQubits = 14;
constexpr int kMaxMixedQubits = 12;

long total_dim(const Dims& dims);

// Multi-index <-> flat index helpers.
std::vector<int> unflatten(long idx, const Dims& dims);
long flatten(const std::vector<int>& digits, const Dims& dims);

struct PureState {
  Dims dims;
  Eigen::VectorXcd amps;

  PureState() = default;
  // Validates dims and normalization (1e-10).
  PureState(Dims d, Eigen::VectorXcd a);
  int parties() const { return static_cast<int>(dims.size()); }
  long dim() const { return amps.size(); }
  cplx amp(const std::vector<int>& digits) const { return amps(flatten(digits, dims)); }
};

struct DensityMatrix {
  Dims dims;
  Eigen::MatrixXcd m;

  DensityMatrix() = default;
  // Validates Hermiticity, unit trace and positivity; symmetrizes round-off.
  DensityMatrix(Dims d, Eigen::MatrixXcd mat);
  int parties() const { return static_cast<int>(dims.size()); }
  long dim() const { return m.rows(); }
};

struct ProductState {
  std::vector<Eigen::VectorXcd> locals;

  Dims dims() const;
  Eigen::VectorXcd full() const;
  PureState state() const;
};

struct PartitionSpec {
  std::vector<int> group_a;
  std::vector<int> group_b;

  // Builds the cut group_a : complement for n parties; validates.
  static PartitionSpec from_group(std::vector<int> a, int n);
  void validate(int n) const;
};

// Normalizes and wraps. Throws precondition_error on zero vectors.
PureState normalized(const Dims& dims, const Eigen::VectorXcd& v);
PureState basis_state(const Dims& dims, const std::vector<int>& digits);
PureState ghz_state(int n, int d = 2);
// Bell states on two qubits: 0 Phi+, 1 Phi-, 2 Psi+, 3 Psi-.
PureState bell_state(int which);
PureState max_entangled(int d);

DensityMatrix projector(const PureState& psi);
DensityMatrix maximally_mixed(const Dims& dims);
DensityMatrix mix(const std::vector<double>& weights, const std::vector<DensityMatrix>& rhos);

PureState tensor_product(const PureState& a, const PureState& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& keep);

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, const PartitionSpec& cut);

// Reorders parties: new party i is old party perm[i].
PureState permute_parties(const PureState& psi, const std::vector<int>& perm);
DensityMatrix permute_parties(const DensityMatrix& rho, const std::vector<int>& perm);

// Applies a local operator on one party (not renormalized).
Eigen::VectorXcd apply_local(const Eigen::VectorXcd& v, const Dims& dims, int party,
                             const Eigen::MatrixXcd& op);

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);
double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy(const std::vector<double>& p);
double binary_entropy(double x);
// S(rho||sigma) in bits, +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const PureState& a, const PureState& b);

// Matrix logarithm (base 2) of a positive semidefinite operator restricted to its support.
Eigen::MatrixXcd log2_psd(const Eigen::MatrixXcd& m);

Eigen::MatrixXcd random_unitary(int d, Rng& rng);
PureState random_pure(const Dims& dims, Rng& rng);
DensityMatrix random_density(const Dims& dims, int rank, Rng& rng);
Eigen::VectorXcd random_unit_vector(int d, Rng& rng);

Eigen::Matrix2cd pauli(int which);  // 0 = I, 1 = X, 2 = Y, 3 = Z

}  // namespace gme
