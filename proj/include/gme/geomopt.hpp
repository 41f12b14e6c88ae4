// Geometric measure of entanglement for pure states.
#pragma once

#include <cstdint>
#include <vector>

#include "gme/qstate.hpp"

namespace gme {

struct HartreeConfig {
  int max_iterations = 2000;
  double tolerance = 1e-11;  // on |delta Lambda| per sweep
  int restarts = 32;         // random starts
  std::uint64_t seed = 0;
  bool symmetric_ansatz = true;  // add one shared-vector start when all dims agree

  void validate() const;
};

struct EntanglementReport {
  double lambda_max = 0;
  double e_sin2 = 0;
  double e_log2 = 0;
  ProductState closest;
  bool converged = false;
  int iterations_used = 0;
};

EntanglementReport make_report(double lambda, ProductState closest, bool converged, int iterations);

// Alternating maximization of |<phi|psi>| over product states, best of all starts.
EntanglementReport entanglement_eigenvalue(const PureState& psi, const HartreeConfig& cfg = {});

// Contracts v with the conjugates of every local vector except the one at party.
Eigen::VectorXcd contract_except(const Eigen::VectorXcd& v, const Dims& dims,
                                 const std::vector<Eigen::VectorXcd>& locals, int party);

// Single alternating run from a given product state.
EntanglementReport hartree_run(const PureState& psi, ProductState start, const HartreeConfig& cfg);

// Largest Schmidt coefficient across a bipartite cut.
double schmidt_lambda(const PureState& psi, const PartitionSpec& cut);

// Permutation-symmetric state with counts[j] parties in level j.
PureState symmetric_state(int n, const std::vector<int>& counts);
// Qubit S(n,k): k parties in |0>, n-k in |1>.
PureState dicke_state(int n, int k);
PureState w_state();
PureState wtilde_state();

double lambda_symmetric(int n, const std::vector<int>& counts);
double lambda_symmetric(int n, int k);

PureState det_state(int n);
double lambda_det(int n);

// sqrt(r) S(n,k1) + e^{i phase} sqrt(1-r) S(n,k2).
PureState two_term_symmetric_state(int n, int k1, int k2, double r, double phase = 0.0);
double two_term_symmetric_lambda(int n, int k1, int k2, double r);
// Lambda of sum_k sqrt(q_k) S(n,k) with q_k >= 0 (a shared-vector optimum for non-negative amplitudes).
double symmetric_superposition_lambda(int n, const std::vector<double>& q);

// sqrt(x) GHZ + sqrt(y) W + sqrt(1-x-y) Wtilde on three qubits.
PureState ghz_w_state(double x, double y);
double ghz_w_lambda(double x, double y);

// Tr(W_opt |psi><psi|) with W_opt = Lambda^2 I - |psi><psi|.
double optimal_witness_value(const PureState& psi, const HartreeConfig& cfg = {});

// Lambda^2 from the correlation-function expansion, maximized over Bloch vectors.
double correlation_lambda_sq(const PureState& psi, std::uint64_t seed = 0);
// (1/2^N) sum over subsets of <prod r_j.sigma_j> for the given Bloch vectors.
double correlation_expansion(const PureState& psi, const std::vector<Eigen::Vector3d>& bloch);

// log2(1 + N x^2) - (N x^2 / (1 + N x^2)) log2 N.
double log_monotone_witness(int N, double x);

}  // namespace gme
