// Resource-theory demonstrations: pure-state yield, the Werner recursion and Schumacher compression.
#pragma once

#include <vector>

#include "gme/qstate.hpp"

namespace gme {

// (1/n) sum_k P(k) log2 C(n,k), P(k) = C(n,k) cos^{2(n-k)} sin^{2k}.
double pure_yield(double theta, int n);

// r' = 2r(1+2r) / (3(1+r^2)) for two pairs of r |Psi+><Psi+| + (1-r)/4 I.
double werner_step(double r);
// Same step from the four-qubit circuit: bilateral CNOT, keep when the target pair agrees.
double werner_step_circuit(double r);

struct DistillationTrace {
  std::vector<int> steps;
  std::vector<double> values;  // r after each step (step 0 is the input)

  void validate() const;
};
DistillationTrace werner_iterate(double r0, int steps);

struct SchumacherReport {
  double entropy;       // S(rho) of the single-letter ensemble
  double lambda_q;      // larger eigenvalue, cos^2(pi/8)
  double p_lambda;      // weight of the four-dimensional likely subspace
  double f1, f2, fidelity;
  double baseline;      // send two letters, guess |Q> for the third
  double simulated;     // ensemble average of the actual compress/decompress map
};
SchumacherReport schumacher_demo();

}  // namespace gme
